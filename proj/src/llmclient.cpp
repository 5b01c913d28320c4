#include "skyloop/llmclient.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "skyloop/textutil.hpp"

namespace skyloop {

namespace {

using nlohmann::json;

std::string excerpt(const std::string& body, size_t limit = 200) {
    if (body.size() <= limit) return body;
    return body.substr(0, limit) + "...";
}

bool retryable_status(int status) { return status == 429 || (status >= 500 && status < 600); }

// "http://host:port/v1" -> base "http://host:port", prefix "/v1"
void split_endpoint(const std::string& url, std::string& base, std::string& prefix) {
    size_t scheme = url.find("://");
    size_t path_start = scheme == std::string::npos ? url.find('/') : url.find('/', scheme + 3);
    if (path_start == std::string::npos) {
        base = url;
        prefix.clear();
        return;
    }
    base = url.substr(0, path_start);
    prefix = url.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
}

}  // namespace

const char* llm_error_name(LlmErrorKind kind) {
    switch (kind) {
        case LlmErrorKind::Timeout: return "Timeout";
        case LlmErrorKind::HttpStatus: return "HttpStatus";
        case LlmErrorKind::Exhausted: return "Exhausted";
        case LlmErrorKind::MalformedResponse: return "MalformedResponse";
        case LlmErrorKind::MissingApiKey: return "MissingApiKey";
    }
    return "?";
}

HttpBackend::HttpBackend(BackendConfig config, LogSink log)
    : config_(std::move(config)), log_(std::move(log)) {}

Expected<LlmResponse, LlmError> HttpBackend::complete(const ChatRequest& request) {
    std::string api_key;
    if (!config_.api_key_env_var.empty()) {
        const char* value = std::getenv(config_.api_key_env_var.c_str());
        if (value == nullptr || *value == '\0') {
            return LlmError{LlmErrorKind::MissingApiKey, 0, "",
                            "environment variable " + config_.api_key_env_var + " is not set"};
        }
        api_key = value;
    }

    std::string base, prefix;
    split_endpoint(config_.endpoint_url, base, prefix);
    const std::string path = prefix + "/chat/completions";

    json body;
    body["model"] = request.model;
    body["temperature"] = request.temperature;
    body["max_tokens"] = request.max_output_tokens;
    json messages = json::array();
    messages.push_back({{"role", "system"}, {"content", request.system_prompt}});
    for (const ChatTurn& turn : request.turns) {
        messages.push_back({{"role", turn.role}, {"content", turn.content}});
    }
    body["messages"] = messages;
    const std::string payload = body.dump();

    httplib::Headers headers;
    if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);

    const int attempts = 1 + std::max(0, config_.max_retries);
    LlmError last{LlmErrorKind::Timeout, 0, "", "no attempt made"};

    for (int attempt = 1; attempt <= attempts; ++attempt) {
        if (log_) {
            log_("POST " + base + path + " agent=" + request.agent + " attempt " +
                 std::to_string(attempt) + "/" + std::to_string(attempts));
        }
        httplib::Client client(base);
        const auto timeout = std::chrono::milliseconds(
            static_cast<long long>(config_.timeout_seconds * 1000.0));
        client.set_connection_timeout(timeout);
        client.set_read_timeout(timeout);
        client.set_write_timeout(timeout);

        auto res = client.Post(path, headers, payload, "application/json");
        if (!res) {
            const auto err = res.error();
            const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                                   err == httplib::Error::Read || err == httplib::Error::Write;
            last = LlmError{timed_out ? LlmErrorKind::Timeout : LlmErrorKind::HttpStatus, 0, "",
                            "transport error: " + httplib::to_string(err)};
        } else if (res->status == 200) {
            try {
                json parsed = json::parse(res->body);
                const json& choices = parsed.at("choices");
                if (!choices.is_array() || choices.empty()) {
                    return LlmError{LlmErrorKind::MalformedResponse, 0, excerpt(res->body),
                                    "response has no choices"};
                }
                LlmResponse out;
                out.content = choices.at(0).at("message").at("content").get<std::string>();
                if (parsed.contains("usage")) {
                    const json& usage = parsed["usage"];
                    out.usage.prompt_tokens = usage.value("prompt_tokens", 0LL);
                    out.usage.completion_tokens = usage.value("completion_tokens", 0LL);
                }
                return out;
            } catch (const json::exception& e) {
                return LlmError{LlmErrorKind::MalformedResponse, 0, excerpt(res->body),
                                std::string("cannot parse completion response: ") + e.what()};
            }
        } else {
            LlmError status_error{LlmErrorKind::HttpStatus, res->status, excerpt(res->body),
                                  "HTTP " + std::to_string(res->status)};
            if (!retryable_status(res->status)) {
                return status_error;  // plain 4xx is not transient
            }
            last = std::move(status_error);
        }

        if (attempt < attempts) {
            const double delay = config_.retry_backoff_seconds * std::pow(2.0, attempt - 1);
            if (log_) {
                log_("attempt " + std::to_string(attempt) + " failed (" + last.message +
                     "); retrying in " + format_fixed(delay, 3) + " s");
            }
            std::this_thread::sleep_for(std::chrono::duration<double>(delay));
        }
    }
    return last;
}

ScriptedBackend::ScriptedBackend(const std::string& script_path) {
    json doc;
    try {
        doc = json::parse(read_text_file(script_path));
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed script file " + script_path + ": " + e.what());
    }
    const json& list = doc.is_array() ? doc : doc.at("entries");
    if (!list.is_array()) {
        throw std::runtime_error("script file " + script_path + " has no entry list");
    }
    for (const json& item : list) {
        Entry entry;
        entry.agent = item.at("agent").get<std::string>();
        entry.content = item.at("content").get<std::string>();
        if (entry.agent != "generator" && entry.agent != "evaluator") {
            throw std::runtime_error("script entry agent must be generator or evaluator");
        }
        entries_.push_back(std::move(entry));
    }
}

ScriptedBackend::ScriptedBackend(std::vector<Entry> entries) : entries_(std::move(entries)) {}

Expected<LlmResponse, LlmError> ScriptedBackend::complete(const ChatRequest& request) {
    std::lock_guard<std::mutex> lock(mutex_);
    size_t& cursor = request.agent == "evaluator" ? evaluator_cursor_ : generator_cursor_;
    size_t seen = 0;
    for (const Entry& entry : entries_) {
        if (entry.agent != request.agent) continue;
        if (seen == cursor) {
            ++cursor;
            LlmResponse out;
            out.content = entry.content;
            return out;
        }
        ++seen;
    }
    return LlmError{LlmErrorKind::Exhausted, 0, "",
                    "scripted backend has no more '" + request.agent + "' responses"};
}

Expected<std::shared_ptr<ChatBackend>, LlmError> make_backend(const BackendConfig& config,
                                                              LogSink log) {
    if (config.kind == BackendKind::Scripted) {
        try {
            return std::shared_ptr<ChatBackend>(new ScriptedBackend(config.script_path));
        } catch (const std::exception& e) {
            return LlmError{LlmErrorKind::MalformedResponse, 0, "", e.what()};
        }
    }
    return std::shared_ptr<ChatBackend>(new HttpBackend(config, std::move(log)));
}

}  // namespace skyloop
