#include "skyloop/command.hpp"

#include "skyloop/textutil.hpp"

namespace skyloop {

const char* verb_name(Verb verb) {
    switch (verb) {
        case Verb::Takeoff: return "takeoff";
        case Verb::Land: return "land";
        case Verb::Forward: return "forward";
        case Verb::Backward: return "backward";
        case Verb::Left: return "left";
        case Verb::Right: return "right";
        case Verb::Up: return "up";
        case Verb::Down: return "down";
        case Verb::TurnCw: return "turn_cw";
        case Verb::TurnCcw: return "turn_ccw";
    }
    return "?";
}

std::optional<Verb> verb_from_name(std::string_view name) {
    static const struct {
        const char* name;
        Verb verb;
    } table[] = {
        {"takeoff", Verb::Takeoff}, {"land", Verb::Land},     {"forward", Verb::Forward},
        {"backward", Verb::Backward}, {"left", Verb::Left},   {"right", Verb::Right},
        {"up", Verb::Up},           {"down", Verb::Down},     {"turn_cw", Verb::TurnCw},
        {"turn_ccw", Verb::TurnCcw},
    };
    for (const auto& row : table) {
        if (name == row.name) return row.verb;
    }
    return std::nullopt;
}

bool verb_takes_argument(Verb verb) { return verb != Verb::Land; }

std::string command_label(const Command& cmd) {
    std::string out = verb_name(cmd.verb);
    if (cmd.argument) {
        out += "(";
        out += format_fixed(*cmd.argument, 2);
        out += ")";
    }
    return out;
}

}  // namespace skyloop
