#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "vgqa/nlq.hpp"

namespace vgqa {

struct LlmConfig {
  std::string endpoint;  // chat-completion URL, e.g. https://host/v1/chat/completions
  std::string model;
  std::string api_key_env = "VGQA_API_KEY";
  int max_tokens = 512;
  int max_attempts = 3;
  // Sampling temperature is pinned to 0 for reproducibility and is not
  // configurable.
  static constexpr double temperature = 0.0;
};

class LlmClient {
 public:
  virtual ~LlmClient() = default;

  // Sends one system+user exchange; returns the assistant text.
  virtual std::string complete(const std::string& system,
                               const std::string& user) = 0;
};

// POSTs to an OpenAI-style chat-completion endpoint. Transport failures and
// 5xx responses retry with exponential backoff up to config.max_attempts,
// then raise TransportError. Malformed response bodies raise DataError.
std::unique_ptr<LlmClient> make_http_llm_client(const LlmConfig& config);

std::uint64_t fnv1a64(const std::string& bytes);
std::string prompt_digest(const std::string& prompt);  // 16 hex chars

// Replays recorded transcripts keyed by prompt digest; the unit and
// acceptance suites exercise the LLM path without any network. Unknown
// digests raise TransportError, mirroring an unreachable endpoint.
class FixtureLlmClient : public LlmClient {
 public:
  static FixtureLlmClient from_file(const std::string& path);

  void record(const std::string& prompt, const std::string& response);
  std::string complete(const std::string& system,
                       const std::string& user) override;

 private:
  std::map<std::string, std::string> responses_;  // digest -> response
};

// build_llm_prompt + one completion + extract_program_from_response.
// Extraction failure raises DataError (parse-failure).
FunctionalProgram llm_parse(const std::string& q, LlmClient& client);

}  // namespace vgqa
