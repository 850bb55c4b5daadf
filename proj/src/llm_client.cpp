#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "vgqa/llm_client.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "vgqa/errors.hpp"

namespace vgqa {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string prompt_digest(const std::string& prompt) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(prompt)));
  return buf;
}

namespace {

struct SplitUrl {
  std::string base;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw DataError("endpoint URL needs a scheme: " + url);
  }
  size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

class HttpLlmClient : public LlmClient {
 public:
  explicit HttpLlmClient(LlmConfig config) : config_(std::move(config)) {
    if (config_.endpoint.empty()) throw DataError("no endpoint configured");
    if (config_.model.empty()) throw DataError("no model configured");
  }

  std::string complete(const std::string& system,
                       const std::string& user) override {
    nlohmann::json body = {
        {"model", config_.model},
        {"messages",
         {{{"role", "system"}, {"content", system}},
          {{"role", "user"}, {"content", user}}}},
        {"temperature", LlmConfig::temperature},
        {"max_tokens", config_.max_tokens},
    };

    httplib::Headers headers;
    if (!config_.api_key_env.empty()) {
      const char* key = std::getenv(config_.api_key_env.c_str());
      if (!key || !*key) {
        throw DataError("credential environment variable not set: " +
                        config_.api_key_env);
      }
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    SplitUrl url = split_url(config_.endpoint);
    httplib::Client client(url.base);
    client.set_connection_timeout(10);
    client.set_read_timeout(120);

    std::string payload = body.dump();
    for (int attempt = 0; attempt < config_.max_attempts; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(250 << attempt));
      }
      auto res = client.Post(url.path, headers, payload, "application/json");
      if (!res || res->status >= 500) continue;
      if (res->status != 200) {
        throw TransportError("endpoint returned status " +
                             std::to_string(res->status) + ": " + res->body);
      }
      return parse_content(res->body);
    }
    throw TransportError("cannot reach " + config_.endpoint + " after " +
                         std::to_string(config_.max_attempts) + " attempts");
  }

 private:
  static std::string parse_content(const std::string& body) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError(std::string("malformed completion body: ") + e.what());
    }
    if (!doc.contains("choices") || !doc["choices"].is_array() ||
        doc["choices"].empty() ||
        !doc["choices"][0].contains("message") ||
        !doc["choices"][0]["message"].contains("content") ||
        !doc["choices"][0]["message"]["content"].is_string()) {
      throw DataError("completion body lacks choices[0].message.content");
    }
    return doc["choices"][0]["message"]["content"].get<std::string>();
  }

  LlmConfig config_;
};

}  // namespace

std::unique_ptr<LlmClient> make_http_llm_client(const LlmConfig& config) {
  return std::make_unique<HttpLlmClient>(config);
}

FixtureLlmClient FixtureLlmClient::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open fixture file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("fixture parse error in " + path + ": " + e.what());
  }
  if (!doc.contains("records") || !doc["records"].is_array()) {
    throw DataError("fixture file lacks a records array: " + path);
  }
  FixtureLlmClient client;
  for (const auto& r : doc["records"]) {
    if (!r.contains("question") || !r.contains("response")) {
      throw DataError("fixture record needs question and response: " + path);
    }
    client.record(build_llm_prompt(r["question"].get<std::string>()),
                  r["response"].get<std::string>());
  }
  return client;
}

void FixtureLlmClient::record(const std::string& prompt,
                              const std::string& response) {
  responses_[prompt_digest(prompt)] = response;
}

std::string FixtureLlmClient::complete(const std::string& system,
                                       const std::string& user) {
  std::string digest = prompt_digest(system + user);
  auto it = responses_.find(digest);
  if (it == responses_.end()) {
    throw TransportError("no recorded response for prompt digest " + digest);
  }
  return it->second;
}

FunctionalProgram llm_parse(const std::string& q, LlmClient& client) {
  std::string prompt = build_llm_prompt(q);
  std::string system = kLlmPrePrompt;
  std::string response = client.complete(system, prompt.substr(system.size()));
  auto program = extract_program_from_response(response);
  if (!program) {
    throw DataError("language model response contained no program for: " + q);
  }
  return *program;
}

}  // namespace vgqa
