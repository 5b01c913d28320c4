#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace skyloop {

// The flight-command skill set. One verb per primitive UAV action; every
// verb except land takes exactly one positive scalar argument.
enum class Verb {
    Takeoff,
    Land,
    Forward,
    Backward,
    Left,
    Right,
    Up,
    Down,
    TurnCw,
    TurnCcw,
};

struct Command {
    Verb verb = Verb::Land;
    std::optional<double> argument;
    int source_line = 0;

    bool operator==(const Command& other) const {
        return verb == other.verb && argument == other.argument;
    }
};

const char* verb_name(Verb verb);
std::optional<Verb> verb_from_name(std::string_view lowercase_name);
bool verb_takes_argument(Verb verb);

// Canonical rendering, e.g. "forward(2.00)" or "land". Used in observation
// error sentences and transcripts.
std::string command_label(const Command& cmd);

}  // namespace skyloop
