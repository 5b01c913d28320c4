#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "skyloop/expected.hpp"

namespace skyloop {

struct ChatTurn {
    std::string role;  // "user" or "assistant"
    std::string content;
};

struct ChatRequest {
    std::string system_prompt;
    std::vector<ChatTurn> turns;  // alternating, first turn is "user"
    std::string model = "o3-mini";
    double temperature = 0.0;
    int max_output_tokens = 4096;
    // Routing tag for the scripted backend: "generator" or "evaluator".
    std::string agent = "generator";
};

struct TokenUsage {
    long long prompt_tokens = 0;
    long long completion_tokens = 0;
};

struct LlmResponse {
    std::string content;
    TokenUsage usage;
};

enum class LlmErrorKind {
    Timeout,
    HttpStatus,
    Exhausted,
    MalformedResponse,
    MissingApiKey,
};

struct LlmError {
    LlmErrorKind kind = LlmErrorKind::MalformedResponse;
    int status_code = 0;       // HttpStatus only
    std::string body_excerpt;  // HttpStatus only
    std::string message;

    // Errors no retry or refinement round can fix.
    bool fatal() const { return kind == LlmErrorKind::MissingApiKey || kind == LlmErrorKind::Exhausted; }
};

const char* llm_error_name(LlmErrorKind kind);

enum class BackendKind { Http, Scripted };

struct BackendConfig {
    BackendKind kind = BackendKind::Scripted;
    // http
    std::string endpoint_url;             // e.g. "http://127.0.0.1:8080/v1"
    std::string api_key_env_var;          // name of the env var holding the key
    double timeout_seconds = 60.0;
    int max_retries = 3;
    double retry_backoff_seconds = 1.0;   // exponential base
    // scripted
    std::string script_path;
};

using LogSink = std::function<void(const std::string&)>;

class ChatBackend {
public:
    virtual ~ChatBackend() = default;
    virtual Expected<LlmResponse, LlmError> complete(const ChatRequest& request) = 0;
};

// POSTs OpenAI-compatible chat completions. Transport failures and
// HTTP 429/5xx are retried with exponential backoff; other 4xx are not.
class HttpBackend : public ChatBackend {
public:
    HttpBackend(BackendConfig config, LogSink log = nullptr);
    Expected<LlmResponse, LlmError> complete(const ChatRequest& request) override;

private:
    BackendConfig config_;
    LogSink log_;
};

// Replays canned responses from a script file, in order, per agent tag.
class ScriptedBackend : public ChatBackend {
public:
    // Throws std::runtime_error when the file is missing or malformed.
    explicit ScriptedBackend(const std::string& script_path);

    struct Entry {
        std::string agent;
        std::string content;
    };
    explicit ScriptedBackend(std::vector<Entry> entries);

    Expected<LlmResponse, LlmError> complete(const ChatRequest& request) override;

private:
    std::vector<Entry> entries_;
    std::mutex mutex_;
    size_t generator_cursor_ = 0;
    size_t evaluator_cursor_ = 0;
};

// Builds the configured backend; scripted script files are loaded eagerly.
Expected<std::shared_ptr<ChatBackend>, LlmError> make_backend(const BackendConfig& config,
                                                              LogSink log = nullptr);

}  // namespace skyloop
