#include "skyloop/agents.hpp"

#include <utility>

#include "skyloop/semantics.hpp"
#include "skyloop/textutil.hpp"

namespace skyloop {

namespace {

struct Section {
    std::string name;
    std::string content;
};

bool is_section_header(const std::string& line, std::string& name) {
    std::string t = trim(line);
    if (t.size() < 3 || t.front() != '[' || t.back() != ']') return false;
    std::string inner = t.substr(1, t.size() - 2);
    for (char c : inner) {
        if (!(std::islower(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    name = inner;
    return true;
}

std::vector<Section> parse_sections(const std::string& text) {
    std::vector<Section> sections;
    std::string current_name;
    std::string current_body;
    bool in_section = false;
    for (const std::string& line : split_lines(text)) {
        std::string name;
        if (is_section_header(line, name)) {
            if (in_section) sections.push_back({current_name, trim(current_body)});
            current_name = name;
            current_body.clear();
            in_section = true;
        } else if (in_section) {
            current_body += line;
            current_body += "\n";
        }
    }
    if (in_section) sections.push_back({current_name, trim(current_body)});
    return sections;
}

}  // namespace

Expected<GeneratorPrompt, std::string> load_generator_prompt(const std::string& path) {
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const std::exception& e) {
        return std::string(e.what());
    }
    GeneratorPrompt prompt;
    std::optional<std::string> pending_task;
    for (const Section& section : parse_sections(text)) {
        if (section.name == "guidelines") {
            prompt.guidelines = section.content;
        } else if (section.name == "skill_api") {
            prompt.skill_api_reference = section.content;
        } else if (section.name == "constraints") {
            prompt.constraints = section.content;
        } else if (section.name == "example_task") {
            if (pending_task) return std::string("example_task without a following example_script");
            pending_task = section.content;
        } else if (section.name == "example_script") {
            if (!pending_task) return std::string("example_script without a preceding example_task");
            prompt.examples.push_back({*pending_task, section.content});
            pending_task.reset();
        } else {
            return "unknown section [" + section.name + "] in " + path;
        }
    }
    if (pending_task) return std::string("example_task without a following example_script");
    if (prompt.guidelines.empty() || prompt.skill_api_reference.empty() ||
        prompt.constraints.empty() || prompt.examples.empty()) {
        return "generator prompt " + path +
               " must provide guidelines, skill_api, constraints and at least one example";
    }
    for (const PromptExample& ex : prompt.examples) {
        auto parsed = parse(ex.script);
        if (!parsed) {
            return "example script for task '" + ex.task + "' does not parse: line " +
                   std::to_string(parsed.error().line) + ": " + parsed.error().message;
        }
    }
    return prompt;
}

Expected<EvaluatorPrompt, std::string> load_evaluator_prompt(const std::string& path) {
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const std::exception& e) {
        return std::string(e.what());
    }
    EvaluatorPrompt prompt;
    EvaluatorReference pending;
    int have = 0;  // fields of the pending reference collected so far
    for (const Section& section : parse_sections(text)) {
        if (section.name == "roles") {
            prompt.roles = section.content;
        } else if (section.name == "rules") {
            prompt.rules = section.content;
        } else if (section.name == "reference_task") {
            if (have != 0) return std::string("incomplete evaluator reference block");
            pending.task = section.content;
            have = 1;
        } else if (section.name == "reference_observation") {
            if (have != 1) return std::string("reference_observation out of order");
            pending.observation = section.content;
            have = 2;
        } else if (section.name == "reference_verdict") {
            if (have != 2) return std::string("reference_verdict out of order");
            if (section.content == "YES") {
                pending.verdict.decision = Decision::Yes;
            } else if (section.content == "NO") {
                pending.verdict.decision = Decision::No;
            } else {
                return "reference_verdict must be YES or NO, got '" + section.content + "'";
            }
            have = 3;
        } else if (section.name == "reference_explanation") {
            if (have != 3) return std::string("reference_explanation out of order");
            pending.verdict.explanation = section.content;
            if (pending.verdict.decision == Decision::No && pending.verdict.explanation.empty()) {
                return std::string("NO reference verdicts need a non-empty explanation");
            }
            prompt.references.push_back(pending);
            pending = EvaluatorReference{};
            have = 0;
        } else {
            return "unknown section [" + section.name + "] in " + path;
        }
    }
    if (have != 0) return std::string("incomplete evaluator reference block");
    if (prompt.roles.empty() || prompt.rules.empty() || prompt.references.empty()) {
        return "evaluator prompt " + path + " must provide roles, rules and references";
    }
    return prompt;
}

std::string assemble_generator_prompt(const GeneratorPrompt& prompt) {
    std::string out;
    out += "## Guidelines\n" + prompt.guidelines + "\n\n";
    out += "## Skill API\n" + prompt.skill_api_reference + "\n\n";
    out += "## Constraints\n" + prompt.constraints + "\n\n";
    out += "## Examples\n";
    for (size_t i = 0; i < prompt.examples.size(); ++i) {
        out += "\n### Example " + std::to_string(i + 1) + "\n";
        out += "Task: " + prompt.examples[i].task + "\n";
        out += "Script:\n```\n" + prompt.examples[i].script + "\n```\n";
    }
    return out;
}

std::string assemble_evaluator_prompt(const EvaluatorPrompt& prompt,
                                      const EvaluatorPromptConfig& config) {
    std::string out;
    out += "## Role\n" + prompt.roles + "\n";
    if (config.include_rules) {
        out += "\n## Rules\n" + prompt.rules + "\n";
    }
    if (config.include_references) {
        out += "\n## References\n";
        for (size_t i = 0; i < prompt.references.size(); ++i) {
            const EvaluatorReference& ref = prompt.references[i];
            out += "\n### Reference " + std::to_string(i + 1) + "\n";
            out += "Task: " + ref.task + "\n";
            out += "Observation:\n" + ref.observation + "\n";
            out += std::string("VERDICT: ") +
                   (ref.verdict.decision == Decision::Yes ? "YES" : "NO") + "\n";
            if (!ref.verdict.explanation.empty()) {
                out += "Explanation: " + ref.verdict.explanation + "\n";
            }
        }
    }
    return out;
}

std::vector<std::string> generator_prompt_problems(const GeneratorPrompt& prompt,
                                                   const SimConfig& sim_config) {
    std::vector<std::string> problems;
    if (prompt.guidelines.empty()) problems.push_back("guidelines section is empty");
    if (prompt.skill_api_reference.empty()) problems.push_back("skill_api section is empty");
    if (prompt.constraints.empty()) problems.push_back("constraints section is empty");
    if (prompt.examples.empty()) problems.push_back("no examples");
    for (size_t i = 0; i < prompt.examples.size(); ++i) {
        auto parsed = parse(prompt.examples[i].script);
        if (!parsed) {
            problems.push_back("example " + std::to_string(i + 1) + " does not parse: " +
                               parsed.error().message);
            continue;
        }
        ExecutionTrace trace = run(*parsed, sim_config);
        for (const TraceStep& step : trace.steps) {
            if (!step.ok) {
                problems.push_back("example " + std::to_string(i + 1) + " fails at " +
                                   step.action_label + ": " + action_error_message(*step.error));
                break;
            }
        }
    }
    return problems;
}

// ---- generation ----------------------------------------------------------

Generator::Generator(std::shared_ptr<ChatBackend> backend, GeneratorPrompt prompt,
                     ModelParams params)
    : backend_(std::move(backend)),
      prompt_(std::move(prompt)),
      system_prompt_(assemble_generator_prompt(prompt_)),
      params_(std::move(params)) {}

Expected<FlightScript, GenerationError> Generator::complete_and_parse(
    const std::string& user_turn) {
    // Merge consecutive user turns so a failed round never breaks the
    // user/assistant alternation.
    if (!turns_.empty() && turns_.back().role == "user") {
        turns_.back().content += "\n\n" + user_turn;
    } else {
        turns_.push_back({"user", user_turn});
    }

    ChatRequest request;
    request.system_prompt = system_prompt_;
    request.turns = turns_;
    request.model = params_.model;
    request.temperature = params_.temperature;
    request.max_output_tokens = params_.max_output_tokens;
    request.agent = "generator";

    auto response = backend_->complete(request);
    if (!response) {
        GenerationError err;
        err.kind = GenerationError::Kind::Llm;
        err.llm_error = response.error();
        err.message = "generator call failed: " + response.error().message;
        return err;
    }
    turns_.push_back({"assistant", response->content});

    auto extracted = extract_script(response->content);
    if (!extracted) {
        GenerationError err;
        err.kind = GenerationError::Kind::Extraction;
        err.message = "no script in generator response: " + extracted.error().message;
        err.raw_response = response->content;
        return err;
    }
    auto parsed = parse(*extracted);
    if (!parsed) {
        GenerationError err;
        err.kind = GenerationError::Kind::Parse;
        err.parse_error = parsed.error();
        err.message = "script does not parse: line " + std::to_string(parsed.error().line) +
                      ", column " + std::to_string(parsed.error().column) + " (" +
                      parse_error_name(parsed.error().kind) + "): " + parsed.error().message;
        err.raw_response = response->content;
        return err;
    }
    return *parsed;
}

Expected<FlightScript, GenerationError> Generator::generate(const std::string& task) {
    if (task.empty()) {
        GenerationError err;
        err.kind = GenerationError::Kind::Precondition;
        err.message = "task description is empty";
        return err;
    }
    if (has_task_) {
        GenerationError err;
        err.kind = GenerationError::Kind::Precondition;
        err.message = "generator already holds a task; use refine";
        return err;
    }
    has_task_ = true;
    return complete_and_parse(task);
}

Expected<FlightScript, GenerationError> Generator::refine(const Verdict& feedback) {
    if (!has_task_) {
        GenerationError err;
        err.kind = GenerationError::Kind::Precondition;
        err.message = "refine called before generate";
        return err;
    }
    std::string turn = "Evaluation feedback:\n" + feedback.explanation +
                       "\n\nThe trajectory deviated as described; emit a corrected full script.";
    return complete_and_parse(turn);
}

Expected<Verdict, EvaluationError> Generator::evaluate_own(const std::string& task,
                                                           const std::string& observation,
                                                           const std::string& rules) {
    if (!has_task_) {
        EvaluationError err;
        err.kind = EvaluationError::Kind::Llm;
        err.message = "self-evaluation requested before any generation";
        return err;
    }
    std::string turn =
        "Now act as the evaluator of your own script. Compare the trajectory observation below "
        "with the task description.\n\nRules:\n" +
        rules + "\n\nTask: " + task + "\n\nTrajectory observation:\n" + observation +
        "\n\nRespond with a line \"VERDICT: YES\" or \"VERDICT: NO\" followed by an explanation "
        "of any deviation.";
    if (!turns_.empty() && turns_.back().role == "user") {
        turns_.back().content += "\n\n" + turn;
    } else {
        turns_.push_back({"user", turn});
    }

    ChatRequest request;
    request.system_prompt = system_prompt_;
    request.turns = turns_;
    request.model = params_.model;
    request.temperature = params_.temperature;
    request.max_output_tokens = params_.max_output_tokens;
    request.agent = "generator";

    auto response = backend_->complete(request);
    if (!response) {
        EvaluationError err;
        err.kind = EvaluationError::Kind::Llm;
        err.llm_error = response.error();
        err.message = "self-evaluation call failed: " + response.error().message;
        return err;
    }
    turns_.push_back({"assistant", response->content});
    return parse_verdict(response->content, VerdictRule::Structured);
}

// ---- evaluation ----------------------------------------------------------

Expected<Verdict, EvaluationError> parse_verdict(const std::string& response, VerdictRule rule) {
    if (rule == VerdictRule::Substring) {
        Verdict verdict;
        verdict.decision = response.find("YES") != std::string::npos ? Decision::Yes : Decision::No;
        verdict.explanation = trim(response);
        if (verdict.decision == Decision::No && verdict.explanation.empty()) {
            verdict.explanation = "(no explanation provided)";
        }
        return verdict;
    }

    std::optional<Decision> decision;
    std::string explanation;
    for (const std::string& line : split_lines(response)) {
        std::string t = trim(line);
        if (!decision && starts_with(t, "VERDICT:")) {
            std::string token = trim(t.substr(8));
            if (token == "YES") {
                decision = Decision::Yes;
                continue;
            }
            if (token == "NO") {
                decision = Decision::No;
                continue;
            }
            EvaluationError err;
            err.kind = EvaluationError::Kind::MissingVerdict;
            err.message = "VERDICT line carries neither YES nor NO: '" + t + "'";
            err.raw_response = response;
            return err;
        }
        if (!t.empty()) {
            if (!explanation.empty()) explanation += "\n";
            explanation += t;
        }
    }
    if (!decision) {
        EvaluationError err;
        err.kind = EvaluationError::Kind::MissingVerdict;
        err.message = "no VERDICT line in evaluator response";
        err.raw_response = response;
        return err;
    }
    Verdict verdict;
    verdict.decision = *decision;
    verdict.explanation = explanation;
    if (verdict.decision == Decision::No && verdict.explanation.empty()) {
        verdict.explanation = "(no explanation provided)";
    }
    return verdict;
}

Expected<Verdict, EvaluationError> evaluate(const std::string& task,
                                            const std::string& observation, ChatBackend& backend,
                                            const EvaluatorPrompt& prompt,
                                            const EvaluatorPromptConfig& config, VerdictRule rule,
                                            const ModelParams& params) {
    if (observation.empty()) {
        EvaluationError err;
        err.kind = EvaluationError::Kind::Llm;
        err.message = "observation is empty";
        return err;
    }
    ChatRequest request;
    request.system_prompt = assemble_evaluator_prompt(prompt, config);
    request.model = params.model;
    request.temperature = params.temperature;
    request.max_output_tokens = params.max_output_tokens;
    request.agent = "evaluator";
    request.turns.push_back(
        {"user", "Task: " + task + "\n\nTrajectory observation:\n" + observation +
                     "\n\nDoes the trajectory satisfy the task? Respond with a line "
                     "\"VERDICT: YES\" or \"VERDICT: NO\" followed by your explanation."});

    auto response = backend.complete(request);
    if (!response) {
        EvaluationError err;
        err.kind = EvaluationError::Kind::Llm;
        err.llm_error = response.error();
        err.message = "evaluator call failed: " + response.error().message;
        return err;
    }
    return parse_verdict(response->content, rule);
}

Verdict oracle_evaluate(const ExecutionTrace& trace, const std::vector<Transition>& ground_truth,
                        const ToleranceConfig& tolerances) {
    const std::vector<Transition> executed = successful_transitions(trace);

    // 1-based observation index of each successful step, plus error info.
    std::vector<int> action_index;
    int first_error_action = 0;
    int error_count = 0;
    std::string first_error_message;
    for (size_t i = 0; i < trace.steps.size(); ++i) {
        if (trace.steps[i].ok) {
            action_index.push_back(static_cast<int>(i) + 1);
        } else {
            ++error_count;
            if (first_error_action == 0) {
                first_error_action = static_cast<int>(i) + 1;
                first_error_message = action_error_message(*trace.steps[i].error);
            }
        }
    }

    if (success(executed, ground_truth, tolerances) == 1 && error_count == 0) {
        return Verdict{Decision::Yes, "Trajectory matches the expected transitions."};
    }

    std::string why;
    if (executed.empty()) {
        why = "No actions executed; expected " + std::to_string(ground_truth.size()) +
              " transitions.";
    } else {
        const size_t shared = std::min(executed.size(), ground_truth.size());
        size_t mismatch = shared;
        for (size_t i = 0; i < shared; ++i) {
            if (!transitions_match(executed[i], ground_truth[i], tolerances)) {
                mismatch = i;
                break;
            }
        }
        if (mismatch < shared) {
            why = "Action " + std::to_string(action_index[mismatch]) +
                  " deviates: expected " + describe_transition(ground_truth[mismatch]) +
                  ", but the trajectory shows " + describe_transition(executed[mismatch]) + ".";
        } else if (executed.size() < ground_truth.size()) {
            why = "Only " + std::to_string(executed.size()) + " of " +
                  std::to_string(ground_truth.size()) +
                  " expected transitions were executed; the next expected action is " +
                  describe_transition(ground_truth[executed.size()]) + ".";
        } else if (executed.size() > ground_truth.size()) {
            why = "The trajectory has " + std::to_string(executed.size() - ground_truth.size()) +
                  " extra action(s) beyond the " + std::to_string(ground_truth.size()) +
                  " expected; the first extra one is action " +
                  std::to_string(action_index[ground_truth.size()]) + " (" +
                  describe_transition(executed[ground_truth.size()]) + ").";
        } else {
            why = "Trajectory transitions match, but some actions raised execution errors.";
        }
    }
    if (error_count > 0) {
        why += " Additionally, " + std::to_string(error_count) +
               " action(s) failed to execute; the first error is at action " +
               std::to_string(first_error_action) + " (" + first_error_message + ").";
    }
    return Verdict{Decision::No, why};
}

}  // namespace skyloop
