#include "skyloop/semantics.hpp"

#include <cctype>
#include <cmath>

#include "skyloop/textutil.hpp"

namespace skyloop {

namespace {

std::string meters(double magnitude) { return format_fixed(std::fabs(magnitude), 2); }

struct Clause {
    double magnitude;
    const char* direction;
};

std::vector<Clause> translation_clauses(const Transition& delta, const FormatConfig& fmt) {
    std::vector<Clause> clauses;
    if (std::fabs(delta.d_north) > fmt.position_epsilon) {
        clauses.push_back({delta.d_north, delta.d_north > 0 ? "North" : "South"});
    }
    if (std::fabs(delta.d_east) > fmt.position_epsilon) {
        clauses.push_back({delta.d_east, delta.d_east > 0 ? "East" : "West"});
    }
    if (std::fabs(delta.d_down) > fmt.position_epsilon) {
        // NED down is positive toward the ground; speak in Up/Down altitude terms.
        clauses.push_back({delta.d_down, delta.d_down < 0 ? "Up" : "Down"});
    }
    return clauses;
}

std::string step_sentences(const TraceStep& step, const FormatConfig& fmt) {
    if (!step.ok) {
        return "Error in executing " + step.action_label + " with error message " +
               action_error_message(*step.error) + ".";
    }
    const Transition& d = step.delta;
    if (std::fabs(d.d_yaw) > fmt.yaw_epsilon) {
        std::string text = "Rotate " + format_fixed(std::fabs(d.d_yaw), 2) + " degrees " +
                           (d.d_yaw > 0 ? "clockwise" : "counter-clockwise") + " in Yaw.";
        text += " The UAV now faces " + facing_name(step.state_after.yaw, fmt.yaw_epsilon) + ".";
        return text;
    }
    auto clauses = translation_clauses(d, fmt);
    if (clauses.empty()) {
        return "No change in state.";
    }
    std::string facing = facing_name(step.state_after.yaw, fmt.yaw_epsilon);
    std::string text;
    for (const Clause& c : clauses) {
        text += "Move " + meters(c.magnitude) + " meters " + c.direction + " while facing " +
                facing + ". ";
    }
    text += "The UAV moves to [" + format_fixed(step.state_after.north, 2) + ", " +
            format_fixed(step.state_after.east, 2) + ", " +
            format_fixed(step.state_after.down, 2) + "].";
    return text;
}

}  // namespace

std::string facing_name(double yaw_degrees, double yaw_epsilon) {
    struct Cardinal {
        double yaw;
        const char* name;
    };
    static const Cardinal cardinals[] = {
        {0.0, "North"}, {90.0, "East"}, {180.0, "South"}, {270.0, "West"}, {360.0, "North"}};
    for (const Cardinal& c : cardinals) {
        if (std::fabs(yaw_degrees - c.yaw) <= yaw_epsilon) return c.name;
    }
    return "heading " + format_fixed(yaw_degrees, 2) + " degrees";
}

TrajectoryObservation transform(const ExecutionTrace& trace, const FormatConfig& fmt) {
    TrajectoryObservation obs;
    obs.steps.reserve(trace.steps.size());
    for (size_t i = 0; i < trace.steps.size(); ++i) {
        const TraceStep& step = trace.steps[i];
        ObservationStep out;
        out.index = static_cast<int>(i) + 1;
        out.ok = step.ok;
        out.delta = step.ok ? step.delta : Transition{};
        out.error = step.error;
        out.north_after = step.state_after.north;
        out.east_after = step.state_after.east;
        out.down_after = step.state_after.down;
        out.text = step_sentences(step, fmt);
        if (!obs.rendered.empty()) obs.rendered += "\n";
        obs.rendered += "Action " + std::to_string(out.index) + ": " + out.text;
        obs.steps.push_back(std::move(out));
    }
    return obs;
}

std::string render_numeric(const ExecutionTrace& trace) {
    std::string out;
    for (size_t i = 0; i < trace.steps.size(); ++i) {
        const TraceStep& step = trace.steps[i];
        if (!out.empty()) out += "\n";
        out += "Action " + std::to_string(i + 1) + ": ";
        if (step.ok) {
            out += "state [" + format_fixed(step.state_after.north, 2) + ", " +
                   format_fixed(step.state_after.east, 2) + ", " +
                   format_fixed(step.state_after.down, 2) + ", " +
                   format_fixed(step.state_after.yaw, 2) + "]";
        } else {
            out += "error " + std::string(action_error_name(step.error->kind));
        }
    }
    return out;
}

std::string describe_transition(const Transition& delta, const FormatConfig& fmt) {
    if (std::fabs(delta.d_yaw) > fmt.yaw_epsilon) {
        return "Rotate " + format_fixed(std::fabs(delta.d_yaw), 2) + " degrees " +
               (delta.d_yaw > 0 ? "clockwise" : "counter-clockwise");
    }
    auto clauses = translation_clauses(delta, fmt);
    if (clauses.empty()) return "no change";
    std::string text;
    for (size_t i = 0; i < clauses.size(); ++i) {
        if (i > 0) text += " and ";
        text += "Move " + meters(clauses[i].magnitude) + " meters " + clauses[i].direction;
    }
    return text;
}

namespace {

// Splits on '.' followed by whitespace or end of text; keeps numbers like
// "5.00" intact. The trailing period of each sentence is dropped.
std::vector<std::string> split_sentences(const std::string& text) {
    std::vector<std::string> out;
    std::string current;
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.' && (i + 1 == text.size() || text[i + 1] == ' ')) {
            out.push_back(trim(current));
            current.clear();
            ++i;  // skip the following space, if any
        } else {
            current.push_back(c);
        }
    }
    if (!trim(current).empty()) out.push_back(trim(current));
    return out;
}

bool take_token(std::string_view& rest, std::string_view token) {
    if (!starts_with(rest, token)) return false;
    rest.remove_prefix(token.size());
    return true;
}

bool take_number(std::string_view& rest, double& value) {
    size_t len = 0;
    while (len < rest.size() &&
           (std::isdigit(static_cast<unsigned char>(rest[len])) || rest[len] == '.' ||
            rest[len] == '-')) {
        ++len;
    }
    if (len == 0) return false;
    if (!parse_plain_number(rest.substr(0, len), value)) return false;
    rest.remove_prefix(len);
    return true;
}

bool parse_facing(std::string_view rest) {
    if (rest == "North" || rest == "East" || rest == "South" || rest == "West") return true;
    std::string_view r = rest;
    double yaw = 0.0;
    return take_token(r, "heading ") && take_number(r, yaw) && r == " degrees";
}

}  // namespace

Expected<std::vector<ObservedStep>, ObservationParseError> parse_observation(
    const std::string& rendered) {
    std::vector<ObservedStep> steps;
    const std::vector<std::string> lines = split_lines(rendered);
    for (size_t li = 0; li < lines.size(); ++li) {
        const int line_no = static_cast<int>(li) + 1;
        if (trim(lines[li]).empty()) continue;
        std::string_view rest = lines[li];
        double index = 0.0;
        if (!take_token(rest, "Action ") || !take_number(rest, index) || !take_token(rest, ": ")) {
            return ObservationParseError{line_no, "expected 'Action <k>: ' prefix"};
        }
        ObservedStep step;
        std::string body(rest);
        if (starts_with(body, "Error in executing ")) {
            step.errored = true;
            steps.push_back(step);
            continue;
        }
        const std::vector<std::string> sentences = split_sentences(body);
        if (sentences.empty()) {
            return ObservationParseError{line_no, "empty action description"};
        }
        if (sentences.size() == 1 && sentences[0] == "No change in state") {
            steps.push_back(step);
            continue;
        }
        bool saw_move = false;
        bool closed = false;
        for (const std::string& sentence : sentences) {
            std::string_view s = sentence;
            if (take_token(s, "Rotate ")) {
                double degrees = 0.0;
                if (!take_number(s, degrees) || !take_token(s, " degrees ")) {
                    return ObservationParseError{line_no, "malformed rotation sentence"};
                }
                double sign;
                if (take_token(s, "counter-clockwise")) {
                    sign = -1.0;
                } else if (take_token(s, "clockwise")) {
                    sign = 1.0;
                } else {
                    return ObservationParseError{line_no, "malformed rotation sentence"};
                }
                if (s != " in Yaw") {
                    return ObservationParseError{line_no, "malformed rotation sentence"};
                }
                step.delta.d_yaw += sign * degrees;
            } else if (take_token(s, "Move ")) {
                double distance = 0.0;
                if (!take_number(s, distance) || !take_token(s, " meters ")) {
                    return ObservationParseError{line_no, "malformed move sentence"};
                }
                if (take_token(s, "North")) {
                    step.delta.d_north += distance;
                } else if (take_token(s, "South")) {
                    step.delta.d_north -= distance;
                } else if (take_token(s, "East")) {
                    step.delta.d_east += distance;
                } else if (take_token(s, "West")) {
                    step.delta.d_east -= distance;
                } else if (take_token(s, "Up")) {
                    step.delta.d_down -= distance;
                } else if (take_token(s, "Down")) {
                    step.delta.d_down += distance;
                } else {
                    return ObservationParseError{line_no, "unknown move direction"};
                }
                if (!take_token(s, " while facing ") || !parse_facing(s)) {
                    return ObservationParseError{line_no, "malformed move sentence"};
                }
                saw_move = true;
            } else if (take_token(s, "The UAV now faces ")) {
                if (!parse_facing(s)) {
                    return ObservationParseError{line_no, "malformed facing sentence"};
                }
                closed = true;
            } else if (take_token(s, "The UAV moves to [")) {
                double n = 0.0, e = 0.0, d = 0.0;
                if (!take_number(s, n) || !take_token(s, ", ") || !take_number(s, e) ||
                    !take_token(s, ", ") || !take_number(s, d) || s != "]") {
                    return ObservationParseError{line_no, "malformed position sentence"};
                }
                if (!saw_move) {
                    return ObservationParseError{line_no, "position sentence without moves"};
                }
                closed = true;
            } else {
                return ObservationParseError{line_no, "unrecognized sentence: " + sentence};
            }
        }
        if (!closed) {
            return ObservationParseError{line_no, "action description is missing its closing sentence"};
        }
        steps.push_back(step);
    }
    return steps;
}

}  // namespace skyloop
