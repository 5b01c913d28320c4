#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "skyloop/expected.hpp"
#include "skyloop/flightlang.hpp"
#include "skyloop/llmclient.hpp"
#include "skyloop/metrics.hpp"

namespace skyloop {

struct ModelParams {
    std::string model = "o3-mini";
    double temperature = 0.0;
    int max_output_tokens = 4096;
};

enum class Decision { Yes, No };

struct Verdict {
    Decision decision = Decision::No;
    std::string explanation;  // non-empty whenever decision is No
};

// ---- prompts -------------------------------------------------------------

struct PromptExample {
    std::string task;
    std::string script;  // must parse; may carry '#' reasoning comments
};

struct GeneratorPrompt {
    std::string guidelines;
    std::string skill_api_reference;
    std::string constraints;
    std::vector<PromptExample> examples;
};

struct EvaluatorReference {
    std::string task;
    std::string observation;
    Verdict verdict;
};

struct EvaluatorPrompt {
    std::string roles;
    std::string rules;
    std::vector<EvaluatorReference> references;
};

// Which sections go into the evaluator system prompt (the role section is
// always present); dropping rules or references reproduces the weaker
// evaluator configurations.
struct EvaluatorPromptConfig {
    bool include_rules = true;
    bool include_references = true;
};

// Plain-text prompt files with [section] headers; see data/prompts/.
Expected<GeneratorPrompt, std::string> load_generator_prompt(const std::string& path);
Expected<EvaluatorPrompt, std::string> load_evaluator_prompt(const std::string& path);

// Deterministic assembly: identical inputs give byte-identical prompts.
std::string assemble_generator_prompt(const GeneratorPrompt& prompt);
std::string assemble_evaluator_prompt(const EvaluatorPrompt& prompt,
                                      const EvaluatorPromptConfig& config = {});

// Empty when the prompt is well formed: all sections non-empty and every
// example script parses and runs without action errors.
std::vector<std::string> generator_prompt_problems(const GeneratorPrompt& prompt,
                                                   const SimConfig& sim_config = {});

// ---- generation ----------------------------------------------------------

struct GenerationError {
    enum class Kind { Llm, Extraction, Parse, Precondition };
    Kind kind = Kind::Llm;
    std::string message;
    std::optional<LlmError> llm_error;
    std::optional<ParseError> parse_error;
    std::string raw_response;
};

enum class VerdictRule { Structured, Substring };

struct EvaluationError {
    enum class Kind { Llm, MissingVerdict };
    Kind kind = Kind::Llm;
    std::string message;
    std::optional<LlmError> llm_error;
    std::string raw_response;
};

// The code-generator role. Keeps the conversation so refinement rounds see
// the task, every script attempt, and all feedback.
class Generator {
public:
    Generator(std::shared_ptr<ChatBackend> backend, GeneratorPrompt prompt,
              ModelParams params = {});

    Expected<FlightScript, GenerationError> generate(const std::string& task);
    Expected<FlightScript, GenerationError> refine(const Verdict& feedback);

    // Self-refine mode: the generator judges its own trajectory inside the
    // same conversation instead of consulting a second model.
    Expected<Verdict, EvaluationError> evaluate_own(const std::string& task,
                                                    const std::string& observation,
                                                    const std::string& rules);

    const std::vector<ChatTurn>& conversation() const { return turns_; }

private:
    Expected<FlightScript, GenerationError> complete_and_parse(const std::string& user_turn);

    std::shared_ptr<ChatBackend> backend_;
    GeneratorPrompt prompt_;
    std::string system_prompt_;
    ModelParams params_;
    std::vector<ChatTurn> turns_;
    bool has_task_ = false;
};

// ---- evaluation ----------------------------------------------------------

// Extracts the verdict from raw evaluator output. Structured mode wants a
// `VERDICT: YES|NO` line and ignores stray YES/NO tokens elsewhere;
// substring mode is the looser contains-"YES" rule.
Expected<Verdict, EvaluationError> parse_verdict(const std::string& response, VerdictRule rule);

Expected<Verdict, EvaluationError> evaluate(const std::string& task,
                                            const std::string& observation, ChatBackend& backend,
                                            const EvaluatorPrompt& prompt,
                                            const EvaluatorPromptConfig& config = {},
                                            VerdictRule rule = VerdictRule::Structured,
                                            const ModelParams& params = {});

// Deterministic ground-truth evaluator: YES only on an exact sequence match
// under the tolerances; otherwise NO naming the first deviating action.
Verdict oracle_evaluate(const ExecutionTrace& trace, const std::vector<Transition>& ground_truth,
                        const ToleranceConfig& tolerances = {});

}  // namespace skyloop
