#include "etf/client/config.hpp"

#include <fstream>

#include "etf/errors.hpp"
#include "etf/match/normalize.hpp"

namespace etf::client {

using nlohmann::json;

std::string_view to_string(Role role) {
  switch (role) {
    case Role::GENERATE: return "GENERATE";
    case Role::NER: return "NER";
    case Role::JUDGE: return "JUDGE";
    case Role::DIRECT: return "DIRECT";
  }
  return "UNKNOWN";
}

std::optional<Role> parse_role(std::string_view text) {
  for (Role r : {Role::GENERATE, Role::NER, Role::JUDGE, Role::DIRECT}) {
    if (match::iequals(text, to_string(r))) return r;
  }
  return std::nullopt;
}

void BackendConfig::validate() const {
  if (!(temperature >= 0.0 && temperature <= 2.0)) {
    throw ConfigError("temperature must lie in [0, 2], got " + std::to_string(temperature));
  }
  if (max_new_tokens <= 0) throw ConfigError("max_new_tokens must be positive");
  if (max_retries < 0) throw ConfigError("max_retries must not be negative");
  if (max_in_flight <= 0) throw ConfigError("max_in_flight must be positive");
  if (request_timeout.count() <= 0) throw ConfigError("request_timeout_ms must be positive");
  if (backoff.multiplier < 1.0) throw ConfigError("backoff.multiplier must be at least 1");
  if (backoff.initial.count() < 0 || backoff.max_delay.count() < 0 || backoff.ceiling.count() < 0) {
    throw ConfigError("backoff delays must not be negative");
  }
}

const BackendConfig& ClientConfig::for_role(Role role) const {
  switch (role) {
    case Role::GENERATE: return generate.front();
    case Role::NER: return ner;
    case Role::JUDGE: return judge;
    case Role::DIRECT: return direct;
  }
  return judge;
}

BackendConfig parse_backend_config(const json& section, const BackendConfig& base) {
  if (!section.is_object()) throw ConfigError("backend section must be an object");
  if (section.contains("api_key")) {
    throw ConfigError("config files must not hold credentials; name an environment variable in api_key_env");
  }
  BackendConfig cfg = base;
  try {
    cfg.endpoint = section.value("endpoint", cfg.endpoint);
    cfg.model = section.value("model", cfg.model);
    cfg.temperature = section.value("temperature", cfg.temperature);
    cfg.max_new_tokens = section.value("max_new_tokens", cfg.max_new_tokens);
    cfg.api_key_env = section.value("api_key_env", cfg.api_key_env);
    cfg.max_retries = section.value("max_retries", cfg.max_retries);
    cfg.max_in_flight = section.value("max_in_flight", cfg.max_in_flight);
    cfg.request_timeout = std::chrono::milliseconds(section.value("request_timeout_ms", cfg.request_timeout.count()));
    if (auto it = section.find("backoff"); it != section.end()) {
      const json& b = *it;
      cfg.backoff.initial = std::chrono::milliseconds(b.value("initial_ms", cfg.backoff.initial.count()));
      cfg.backoff.multiplier = b.value("multiplier", cfg.backoff.multiplier);
      cfg.backoff.max_delay = std::chrono::milliseconds(b.value("max_delay_ms", cfg.backoff.max_delay.count()));
      cfg.backoff.ceiling = std::chrono::milliseconds(b.value("ceiling_ms", cfg.backoff.ceiling.count()));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid backend config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ClientConfig parse_client_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  BackendConfig defaults;
  if (auto it = doc.find("defaults"); it != doc.end()) defaults = parse_backend_config(*it);

  auto section = [&](const char* key) {
    auto it = doc.find(key);
    return it == doc.end() ? defaults : parse_backend_config(*it, defaults);
  };

  ClientConfig out;
  out.generate.clear();
  if (auto it = doc.find("generate"); it != doc.end() && it->is_array()) {
    for (const json& item : *it) out.generate.push_back(parse_backend_config(item, defaults));
    if (out.generate.empty()) throw ConfigError("'generate' lists no models");
  } else {
    out.generate.push_back(section("generate"));
  }
  out.ner = section("ner");
  out.judge = section("judge");
  out.direct = doc.contains("direct") ? section("direct") : out.judge;
  return out;
}

ClientConfig load_client_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("config file " + path.string() + " is not valid JSON");
  return parse_client_config(doc);
}

nlohmann::ordered_json to_json(const BackendConfig& cfg) {
  nlohmann::ordered_json j;
  j["endpoint"] = cfg.endpoint;
  j["model"] = cfg.model;
  j["temperature"] = cfg.temperature;
  j["max_new_tokens"] = cfg.max_new_tokens;
  j["api_key_env"] = cfg.api_key_env;
  j["max_retries"] = cfg.max_retries;
  j["max_in_flight"] = cfg.max_in_flight;
  j["request_timeout_ms"] = cfg.request_timeout.count();
  j["backoff"] = {{"initial_ms", cfg.backoff.initial.count()},
                  {"multiplier", cfg.backoff.multiplier},
                  {"max_delay_ms", cfg.backoff.max_delay.count()},
                  {"ceiling_ms", cfg.backoff.ceiling.count()}};
  return j;
}

}  // namespace etf::client
