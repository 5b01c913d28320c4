#pragma once

#include <optional>
#include <string>
#include <vector>

#include "skyloop/command.hpp"
#include "skyloop/expected.hpp"
#include "skyloop/sim.hpp"

namespace skyloop {

// Grammar: one command per line, `verb` or `verb(number)`. Verbs are
// case-insensitive; blank lines and `#` comments are ignored; numbers are
// plain decimals with an optional fractional part.

struct FlightScript {
    std::vector<Command> commands;
    std::string source_text;
};

enum class ParseErrorKind {
    UnknownVerb,
    BadArity,
    BadNumber,
    NonPositive,
    EmptyScript,
    TrailingGarbage,
};

struct ParseError {
    int line = 0;    // 1-based
    int column = 0;  // 1-based
    ParseErrorKind kind = ParseErrorKind::EmptyScript;
    std::string message;
};

const char* parse_error_name(ParseErrorKind kind);

Expected<FlightScript, ParseError> parse(const std::string& source);

// Canonical text form; parse(pretty_print(s)) yields an equal command list.
std::string pretty_print(const FlightScript& script);

// One executed (or refused) action. `ok` steps carry the delta; failed steps
// leave the state untouched.
struct TraceStep {
    std::string action_label;  // e.g. "forward(2.00)"
    bool ok = true;
    Transition delta;
    std::optional<ActionError> error;
    UavState state_after;
};

struct ExecutionTrace {
    UavState initial_state;
    std::vector<TraceStep> steps;

    const UavState& final_state() const {
        return steps.empty() ? initial_state : steps.back().state_after;
    }
};

// Executes every command in order on a fresh simulator at the origin.
// A failing action is recorded and skipped; execution continues so the
// observation covers the whole script.
ExecutionTrace run(const FlightScript& script, const SimConfig& config);

// Transitions of the successful steps, in order.
std::vector<Transition> successful_transitions(const ExecutionTrace& trace);

struct ExtractionError {
    std::string message;
};

// Pulls the command script out of an LLM response: first fenced code block
// if present, otherwise the lines that look like commands or comments.
Expected<std::string, ExtractionError> extract_script(const std::string& llm_response);

}  // namespace skyloop
