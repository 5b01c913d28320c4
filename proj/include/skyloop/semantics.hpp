#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skyloop/expected.hpp"
#include "skyloop/flightlang.hpp"
#include "skyloop/sim.hpp"

namespace skyloop {

struct FormatConfig {
    double position_epsilon = 1e-6;  // meters below this are "no change"
    double yaw_epsilon = 1e-6;       // degrees below this are "no change"
};

struct ObservationStep {
    int index = 0;  // 1-based action number
    std::string text;
    bool ok = true;
    Transition delta;
    std::optional<ActionError> error;
    double north_after = 0.0;
    double east_after = 0.0;
    double down_after = 0.0;
};

struct TrajectoryObservation {
    std::vector<ObservationStep> steps;
    std::string rendered;  // "Action k: ..." lines joined with '\n'
};

// Per-step natural-language trajectory description:
//   rotation:    "Rotate 90.00 degrees clockwise in Yaw. The UAV now faces East."
//   translation: "Move 5.00 meters East while facing North. The UAV moves to [0.00, 5.00, -5.00]."
//   error:       "Error in executing forward(2.00) with error message NotAirborne: ..."
//   no-op:       "No change in state."
// All numbers use two decimals with a '.' separator.
TrajectoryObservation transform(const ExecutionTrace& trace, const FormatConfig& fmt = {});

// Raw numeric rendering for the numerical-observation ablation:
//   "Action 1: state [0.00, 0.00, -5.00, 0.00]"  /  "Action 2: error NotAirborne"
std::string render_numeric(const ExecutionTrace& trace);

// Compact delta phrasing without position, for feedback text:
// "Move 4.00 meters East" / "Rotate 90.00 degrees clockwise" / "no change".
std::string describe_transition(const Transition& delta, const FormatConfig& fmt = {});

// Compass name at the exact quadrants, else "heading <deg> degrees".
std::string facing_name(double yaw_degrees, double yaw_epsilon = 1e-6);

struct ObservedStep {
    Transition delta;
    bool errored = false;
};

struct ObservationParseError {
    int line = 0;  // 1-based into the rendered text
    std::string message;
};

// Inverse of transform for rendered text produced with the default format;
// the test oracle for the transformation round trip. Error steps come back
// as zero transitions with the errored flag set.
Expected<std::vector<ObservedStep>, ObservationParseError> parse_observation(
    const std::string& rendered);

}  // namespace skyloop
