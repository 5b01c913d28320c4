#pragma once

#include <string>
#include <vector>

#include "skyloop/command.hpp"
#include "skyloop/expected.hpp"

namespace skyloop {

// UAV pose in the NED frame. Altitude above ground is negative `down`;
// yaw is a compass heading: 0 = North, clockwise-positive, kept in [0, 360).
struct UavState {
    double north = 0.0;
    double east = 0.0;
    double down = 0.0;
    double yaw = 0.0;
    bool airborne = false;

    static UavState initial() { return UavState{}; }
};

// Per-action state delta [dN, dE, dD, dYaw]. Yaw records the commanded
// rotation unnormalized (turn_cw(450) yields +450 here even though the
// state stores 90).
struct Transition {
    double d_north = 0.0;
    double d_east = 0.0;
    double d_down = 0.0;
    double d_yaw = 0.0;
};

Transition compose(const std::vector<Transition>& transitions);

struct SimConfig {
    double max_altitude = 120.0;      // meters above ground
    double max_leg_distance = 100.0;  // meters per single action
    double position_epsilon = 1e-6;   // meters, change-detection threshold
    double yaw_epsilon = 1e-6;        // degrees, change-detection threshold
};

enum class ActionErrorKind {
    NotAirborne,
    AlreadyAirborne,
    AltitudeViolation,
    DistanceViolation,
    NonPositiveArgument,
};

struct ActionError {
    ActionErrorKind kind = ActionErrorKind::NotAirborne;
    std::string detail;
};

const char* action_error_name(ActionErrorKind kind);
// "NotAirborne: movement requires the UAV to be airborne"
std::string action_error_message(const ActionError& error);

struct StepOutcome {
    UavState state;
    Transition transition;
};

// The deterministic transition function. Pure: the result depends only on
// (state, action, config).
Expected<StepOutcome, ActionError> apply(const UavState& state, const Command& action,
                                         const SimConfig& config);

enum class BodyDirection { Forward, Backward, Left, Right, Up, Down };

struct NedDelta {
    double d_north = 0.0;
    double d_east = 0.0;
    double d_down = 0.0;
};

// Body-frame direction at the given heading to an NED displacement.
NedDelta body_to_ned(double yaw_degrees, BodyDirection direction, double distance);

double normalize_yaw(double yaw_degrees);  // into [0, 360)

}  // namespace skyloop
