#include "skyloop/flightlang.hpp"

#include <cctype>

#include "skyloop/textutil.hpp"

namespace skyloop {

namespace {

bool is_verb_char(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\v' || c == '\f'; }

size_t skip_spaces(const std::string& line, size_t i) {
    while (i < line.size() && is_space(line[i])) ++i;
    return i;
}

ParseError make_error(int line, size_t col0, ParseErrorKind kind, std::string message) {
    return ParseError{line, static_cast<int>(col0) + 1, kind, std::move(message)};
}

// Parses one non-blank, comment-stripped line into a command.
Expected<Command, ParseError> parse_line(const std::string& line, int line_no) {
    size_t i = skip_spaces(line, 0);
    size_t verb_start = i;
    while (i < line.size() && is_verb_char(line[i])) ++i;
    if (i == verb_start) {
        return make_error(line_no, verb_start, ParseErrorKind::UnknownVerb,
                          "expected a command verb");
    }
    std::string verb_text = to_lower(std::string_view(line).substr(verb_start, i - verb_start));
    auto verb = verb_from_name(verb_text);
    if (!verb) {
        return make_error(line_no, verb_start, ParseErrorKind::UnknownVerb,
                          "unknown verb '" + verb_text + "'");
    }

    Command cmd;
    cmd.verb = *verb;
    cmd.source_line = line_no;

    i = skip_spaces(line, i);
    bool has_parens = i < line.size() && line[i] == '(';

    if (!has_parens) {
        if (verb_takes_argument(*verb)) {
            return make_error(line_no, verb_start, ParseErrorKind::BadArity,
                              verb_text + " takes exactly one argument, e.g. " + verb_text + "(5)");
        }
        if (i < line.size()) {
            return make_error(line_no, i, ParseErrorKind::TrailingGarbage,
                              "unexpected text after command");
        }
        return cmd;
    }

    // verb(number)
    size_t open = i;
    size_t close = line.find(')', open + 1);
    if (close == std::string::npos) {
        return make_error(line_no, open, ParseErrorKind::BadArity, "missing closing ')'");
    }
    std::string inner = trim(std::string_view(line).substr(open + 1, close - open - 1));
    size_t inner_start = skip_spaces(line, open + 1);

    if (!verb_takes_argument(*verb)) {
        return make_error(line_no, open, ParseErrorKind::BadArity,
                          verb_text + " takes no argument");
    }
    if (inner.empty()) {
        return make_error(line_no, open, ParseErrorKind::BadArity,
                          verb_text + " takes exactly one argument");
    }
    double value = 0.0;
    if (!parse_plain_number(inner, value)) {
        return make_error(line_no, inner_start, ParseErrorKind::BadNumber,
                          "'" + inner + "' is not a plain decimal number");
    }
    if (value <= 0.0) {
        return make_error(line_no, inner_start, ParseErrorKind::NonPositive,
                          "argument must be positive");
    }
    cmd.argument = value;

    size_t rest = skip_spaces(line, close + 1);
    if (rest < line.size()) {
        return make_error(line_no, rest, ParseErrorKind::TrailingGarbage,
                          "unexpected text after command");
    }
    return cmd;
}

// A line is a comment when its first non-space character is '#'.
bool is_comment_or_blank(const std::string& line) {
    size_t i = skip_spaces(line, 0);
    return i >= line.size() || line[i] == '#';
}

}  // namespace

const char* parse_error_name(ParseErrorKind kind) {
    switch (kind) {
        case ParseErrorKind::UnknownVerb: return "UnknownVerb";
        case ParseErrorKind::BadArity: return "BadArity";
        case ParseErrorKind::BadNumber: return "BadNumber";
        case ParseErrorKind::NonPositive: return "NonPositive";
        case ParseErrorKind::EmptyScript: return "EmptyScript";
        case ParseErrorKind::TrailingGarbage: return "TrailingGarbage";
    }
    return "?";
}

Expected<FlightScript, ParseError> parse(const std::string& source) {
    FlightScript script;
    script.source_text = source;
    const std::vector<std::string> lines = split_lines(source);
    for (size_t idx = 0; idx < lines.size(); ++idx) {
        if (is_comment_or_blank(lines[idx])) continue;
        auto parsed = parse_line(lines[idx], static_cast<int>(idx) + 1);
        if (!parsed) return parsed.error();
        script.commands.push_back(*parsed);
    }
    if (script.commands.empty()) {
        return ParseError{1, 1, ParseErrorKind::EmptyScript, "no commands in script"};
    }
    return script;
}

std::string pretty_print(const FlightScript& script) {
    std::string out;
    for (const Command& cmd : script.commands) {
        out += verb_name(cmd.verb);
        if (cmd.argument) {
            out += "(";
            out += format_shortest(*cmd.argument);
            out += ")";
        }
        out += "\n";
    }
    return out;
}

ExecutionTrace run(const FlightScript& script, const SimConfig& config) {
    ExecutionTrace trace;
    trace.initial_state = UavState::initial();
    UavState state = trace.initial_state;
    trace.steps.reserve(script.commands.size());
    for (const Command& cmd : script.commands) {
        TraceStep step;
        step.action_label = command_label(cmd);
        auto outcome = apply(state, cmd, config);
        if (outcome) {
            state = outcome->state;
            step.ok = true;
            step.delta = outcome->transition;
        } else {
            step.ok = false;
            step.error = outcome.error();
        }
        step.state_after = state;
        trace.steps.push_back(std::move(step));
    }
    return trace;
}

std::vector<Transition> successful_transitions(const ExecutionTrace& trace) {
    std::vector<Transition> out;
    out.reserve(trace.steps.size());
    for (const TraceStep& step : trace.steps) {
        if (step.ok) out.push_back(step.delta);
    }
    return out;
}

Expected<std::string, ExtractionError> extract_script(const std::string& llm_response) {
    const size_t fence = llm_response.find("```");
    if (fence != std::string::npos) {
        size_t body_start = llm_response.find('\n', fence);
        if (body_start == std::string::npos) {
            return ExtractionError{"empty code fence"};
        }
        ++body_start;
        size_t closing = llm_response.find("```", body_start);
        // An unterminated fence is common LLM noise; take the remainder.
        std::string body = closing == std::string::npos
                               ? llm_response.substr(body_start)
                               : llm_response.substr(body_start, closing - body_start);
        if (trim(body).empty()) {
            return ExtractionError{"empty code fence"};
        }
        return body;
    }

    // No fence: keep the lines that already look like script lines.
    std::string out;
    bool any_command = false;
    for (const std::string& line : split_lines(llm_response)) {
        if (is_comment_or_blank(line)) {
            out += line;
            out += "\n";
            continue;
        }
        if (parse_line(line, 1)) {
            out += line;
            out += "\n";
            any_command = true;
        }
    }
    if (!any_command) {
        return ExtractionError{"response contains no flight commands"};
    }
    return out;
}

}  // namespace skyloop
