#include "skyloop/sim.hpp"

#include <cmath>

#include "skyloop/textutil.hpp"

namespace skyloop {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Unit {
    double north;
    double east;
};

// Heading to horizontal unit vector. Exact at the compass quadrants so that
// cardinal legs produce clean deltas instead of 1e-16 residue.
Unit heading_unit(double heading_degrees) {
    double h = normalize_yaw(heading_degrees);
    if (std::fmod(h, 90.0) == 0.0) {
        int quadrant = static_cast<int>(h / 90.0) % 4;
        switch (quadrant) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    double rad = h * kPi / 180.0;
    return {std::cos(rad), std::sin(rad)};
}

bool is_translation(Verb verb) {
    switch (verb) {
        case Verb::Forward:
        case Verb::Backward:
        case Verb::Left:
        case Verb::Right:
        case Verb::Up:
        case Verb::Down:
            return true;
        default:
            return false;
    }
}

BodyDirection body_direction_for(Verb verb) {
    switch (verb) {
        case Verb::Forward: return BodyDirection::Forward;
        case Verb::Backward: return BodyDirection::Backward;
        case Verb::Left: return BodyDirection::Left;
        case Verb::Right: return BodyDirection::Right;
        case Verb::Up: return BodyDirection::Up;
        default: return BodyDirection::Down;
    }
}

}  // namespace

double normalize_yaw(double yaw_degrees) {
    double y = std::fmod(yaw_degrees, 360.0);
    if (y < 0.0) y += 360.0;
    if (y == 360.0) y = 0.0;
    return y == 0.0 ? 0.0 : y;  // collapse -0
}

NedDelta body_to_ned(double yaw_degrees, BodyDirection direction, double distance) {
    switch (direction) {
        case BodyDirection::Up:
            return {0.0, 0.0, -distance};
        case BodyDirection::Down:
            return {0.0, 0.0, distance};
        default:
            break;
    }
    double offset = 0.0;
    switch (direction) {
        case BodyDirection::Forward: offset = 0.0; break;
        case BodyDirection::Right: offset = 90.0; break;
        case BodyDirection::Backward: offset = 180.0; break;
        case BodyDirection::Left: offset = 270.0; break;
        default: break;
    }
    Unit u = heading_unit(yaw_degrees + offset);
    return {distance * u.north, distance * u.east, 0.0};
}

Transition compose(const std::vector<Transition>& transitions) {
    Transition total;
    for (const Transition& t : transitions) {
        total.d_north += t.d_north;
        total.d_east += t.d_east;
        total.d_down += t.d_down;
        total.d_yaw += t.d_yaw;
    }
    return total;
}

const char* action_error_name(ActionErrorKind kind) {
    switch (kind) {
        case ActionErrorKind::NotAirborne: return "NotAirborne";
        case ActionErrorKind::AlreadyAirborne: return "AlreadyAirborne";
        case ActionErrorKind::AltitudeViolation: return "AltitudeViolation";
        case ActionErrorKind::DistanceViolation: return "DistanceViolation";
        case ActionErrorKind::NonPositiveArgument: return "NonPositiveArgument";
    }
    return "?";
}

std::string action_error_message(const ActionError& error) {
    std::string out = action_error_name(error.kind);
    if (!error.detail.empty()) {
        out += ": ";
        out += error.detail;
    }
    return out;
}

Expected<StepOutcome, ActionError> apply(const UavState& state, const Command& action,
                                         const SimConfig& config) {
    const Verb verb = action.verb;

    double arg = 0.0;
    if (verb_takes_argument(verb)) {
        if (!action.argument || !std::isfinite(*action.argument) || *action.argument <= 0.0) {
            return ActionError{ActionErrorKind::NonPositiveArgument,
                               std::string(verb_name(verb)) + " requires a positive finite argument"};
        }
        arg = *action.argument;
    }

    if (verb == Verb::Takeoff) {
        if (state.airborne) {
            return ActionError{ActionErrorKind::AlreadyAirborne, "takeoff while already airborne"};
        }
    } else {
        if (!state.airborne) {
            const char* what = verb == Verb::Land ? "land" : "movement or rotation";
            return ActionError{ActionErrorKind::NotAirborne,
                               std::string(what) + " requires the UAV to be airborne"};
        }
    }

    if ((verb == Verb::Takeoff || is_translation(verb)) && arg > config.max_leg_distance) {
        return ActionError{ActionErrorKind::DistanceViolation,
                           "leg of " + format_fixed(arg, 2) + " m exceeds the " +
                               format_fixed(config.max_leg_distance, 2) + " m limit"};
    }

    UavState next = state;
    Transition delta;

    switch (verb) {
        case Verb::Takeoff: {
            if (arg > config.max_altitude) {
                return ActionError{ActionErrorKind::AltitudeViolation,
                                   "takeoff to " + format_fixed(arg, 2) + " m exceeds the " +
                                       format_fixed(config.max_altitude, 2) + " m ceiling"};
            }
            next.down = -arg;
            next.airborne = true;
            delta.d_down = -arg;
            break;
        }
        case Verb::Land: {
            delta.d_down = -state.down;
            next.down = 0.0;
            next.airborne = false;
            break;
        }
        case Verb::TurnCw:
        case Verb::TurnCcw: {
            delta.d_yaw = verb == Verb::TurnCw ? arg : -arg;
            next.yaw = normalize_yaw(state.yaw + delta.d_yaw);
            break;
        }
        default: {  // translations
            NedDelta ned = body_to_ned(state.yaw, body_direction_for(verb), arg);
            double new_down = state.down + ned.d_down;
            if (-new_down > config.max_altitude) {
                return ActionError{ActionErrorKind::AltitudeViolation,
                                   "altitude " + format_fixed(-new_down, 2) + " m exceeds the " +
                                       format_fixed(config.max_altitude, 2) + " m ceiling"};
            }
            if (new_down > 0.0) {
                return ActionError{ActionErrorKind::AltitudeViolation,
                                   "motion would drive the UAV below ground level"};
            }
            next.north += ned.d_north;
            next.east += ned.d_east;
            next.down = new_down;
            delta.d_north = ned.d_north;
            delta.d_east = ned.d_east;
            delta.d_down = ned.d_down;
            break;
        }
    }

    return StepOutcome{next, delta};
}

}  // namespace skyloop
