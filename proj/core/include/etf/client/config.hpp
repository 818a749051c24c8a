#pragma once

#include <chrono>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "etf/client/chat_model.hpp"

namespace etf::client {

struct BackoffPolicy {
  std::chrono::milliseconds initial{500};
  double multiplier = 2.0;
  std::chrono::milliseconds max_delay{8000};
  std::chrono::milliseconds ceiling{60000};  // total sleep across retries of one call
};

struct BackendConfig {
  std::string endpoint;  // full URL of the chat-completion route
  std::string model;
  double temperature = 0.3;
  int max_new_tokens = 4000;
  std::string api_key_env;  // name of the variable holding the key, never the key
  int max_retries = 4;
  int max_in_flight = 4;
  std::chrono::milliseconds request_timeout{120000};
  BackoffPolicy backoff;

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

/// One config per role; the generator may list several models.
struct ClientConfig {
  std::vector<BackendConfig> generate{BackendConfig{}};
  BackendConfig ner;
  BackendConfig judge;
  BackendConfig direct;

  const BackendConfig& for_role(Role role) const;
};

/// Reads {"defaults": {...}, "generate": {...} | [...], "ner": {...},
/// "judge": {...}, "direct": {...}}. Every section is optional; values in a
/// role section override "defaults"; a missing "direct" section copies
/// "judge". A literal "api_key" field is rejected.
ClientConfig parse_client_config(const nlohmann::json& doc);
ClientConfig load_client_config(const std::filesystem::path& path);

BackendConfig parse_backend_config(const nlohmann::json& section, const BackendConfig& base = {});
nlohmann::ordered_json to_json(const BackendConfig& cfg);

}  // namespace etf::client
