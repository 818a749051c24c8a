#include "etf/client/model_client.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <spdlog/spdlog.h>
#include <thread>

#include "etf/match/normalize.hpp"
#include "etf/prompts.hpp"

namespace etf::client {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::REPLAY: return "replay";
    case Mode::LIVE: return "live";
    case Mode::ORACLE: return "oracle";
  }
  return "unknown";
}

std::optional<Mode> parse_mode(std::string_view text) {
  for (Mode m : {Mode::REPLAY, Mode::LIVE, Mode::ORACLE}) {
    if (match::iequals(text, to_string(m))) return m;
  }
  return std::nullopt;
}

InFlightLimiter& InFlightLimiter::global() {
  static InFlightLimiter instance;
  return instance;
}

InFlightLimiter::Slot InFlightLimiter::acquire(int limit) {
  std::unique_lock lock(mutex_);
  cv_.wait(lock, [&] { return in_flight_ < std::max(1, limit); });
  ++in_flight_;
  peak_ = std::max(peak_, in_flight_);
  return Slot(this);
}

void InFlightLimiter::release() {
  {
    std::lock_guard lock(mutex_);
    --in_flight_;
  }
  cv_.notify_all();
}

int InFlightLimiter::in_flight() const {
  std::lock_guard lock(mutex_);
  return in_flight_;
}

int InFlightLimiter::peak() const {
  std::lock_guard lock(mutex_);
  return peak_;
}

void InFlightLimiter::reset_peak() {
  std::lock_guard lock(mutex_);
  peak_ = in_flight_;
}

nlohmann::ordered_json build_request_body(const BackendConfig& cfg, std::string_view prompt) {
  nlohmann::ordered_json body;
  body["model"] = cfg.model;
  body["messages"] = nlohmann::ordered_json::array({{{"role", "user"}, {"content", std::string(prompt)}}});
  body["temperature"] = cfg.temperature;
  body["max_tokens"] = cfg.max_new_tokens;
  return body;
}

std::string parse_completion(std::string_view body) {
  auto doc = nlohmann::json::parse(body, nullptr, false);
  if (doc.is_discarded()) throw MalformedBackendOutput("completion response is not JSON");
  try {
    const auto& content = doc.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) throw MalformedBackendOutput("completion content is not a string");
    return content.get<std::string>();
  } catch (const nlohmann::json::exception&) {
    throw MalformedBackendOutput("completion response lacks choices[0].message.content");
  }
}

ModelClient::ModelClient(ClientConfig config, Options options)
    : config_(std::move(config)), options_(std::move(options)) {
  if (options_.fixtures_dir) fixtures_.emplace(*options_.fixtures_dir);
  if (options_.mode == Mode::REPLAY && !fixtures_) throw ConfigError("replay mode needs a fixture directory");
  if (options_.record_fixtures && !fixtures_) throw ConfigError("recording fixtures needs a fixture directory");
  if (!options_.sleeper) options_.sleeper = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  if (!options_.limiter) options_.limiter = &InFlightLimiter::global();
  if (options_.mode == Mode::LIVE && !options_.transport) options_.transport = std::make_shared<HttpTransport>();
}

std::string ModelClient::role_key(Role role, const BackendConfig& cfg) {
  std::string key(to_string(role));
  if (role == Role::GENERATE && !cfg.model.empty()) key += "@" + cfg.model;
  return key;
}

std::size_t ModelClient::network_requests() const {
  std::lock_guard lock(memo_mutex_);
  return network_requests_;
}

std::string ModelClient::complete(Role role, const std::string& prompt, int attempt) {
  return complete_with(config_.for_role(role), role, prompt, attempt);
}

std::string ModelClient::complete_with(const BackendConfig& cfg, Role role, const std::string& prompt, int attempt) {
  const std::string fp = fingerprint(role_key(role, cfg), prompt, attempt);
  {
    std::lock_guard lock(memo_mutex_);
    if (auto it = memo_.find(fp); it != memo_.end()) return it->second;
  }
  std::string text;
  switch (options_.mode) {
    case Mode::REPLAY: {
      auto hit = fixtures_->get(fp);
      if (!hit) throw MissingFixture("no fixture for request", std::string(to_string(role)), fp);
      text = std::move(*hit);
      break;
    }
    case Mode::LIVE:
      text = call_live(cfg, role, prompt, fp);
      if (options_.record_fixtures) fixtures_->put(fp, text);
      break;
    case Mode::ORACLE:
      throw BackendUnavailable("oracle mode does not query models", std::string(to_string(role)), fp);
  }
  std::lock_guard lock(memo_mutex_);
  return memo_.emplace(fp, std::move(text)).first->second;
}

std::string ModelClient::call_live(const BackendConfig& cfg, Role role, const std::string& prompt,
                                   const std::string& fp) {
  const std::string role_name(to_string(role));
  if (cfg.endpoint.empty()) throw ConfigError("no endpoint configured for role " + role_name);

  HttpRequest request;
  request.url = cfg.endpoint;
  request.body = build_request_body(cfg, prompt).dump();
  request.timeout = cfg.request_timeout;
  if (!cfg.api_key_env.empty()) {
    const char* key = std::getenv(cfg.api_key_env.c_str());
    if (!key || !*key) throw ConfigError("environment variable " + cfg.api_key_env + " is not set");
    request.headers.emplace_back("Authorization", std::string("Bearer ") + key);
  }

  std::chrono::milliseconds slept{0};
  std::chrono::milliseconds delay = cfg.backoff.initial;
  enum class Failure { None, RateLimited, Timeout, Unavailable } last = Failure::None;
  std::string last_detail;

  for (int attempt = 0;; ++attempt) {
    try {
      HttpResponse response;
      {
        auto slot = options_.limiter->acquire(cfg.max_in_flight);
        {
          std::lock_guard lock(memo_mutex_);
          ++network_requests_;
        }
        response = options_.transport->post(request);
      }
      if (response.status >= 200 && response.status < 300) return parse_completion(response.body);
      if (response.status == 401 || response.status == 403) {
        throw Unauthorized("HTTP " + std::to_string(response.status), role_name, fp);
      }
      last_detail = "HTTP " + std::to_string(response.status);
      if (response.status == 429) {
        last = Failure::RateLimited;
      } else if (response.status == 408) {
        last = Failure::Timeout;
      } else if (response.status >= 500) {
        last = Failure::Unavailable;
      } else {
        throw BackendUnavailable(last_detail + ": " + response.body.substr(0, 200), role_name, fp);
      }
    } catch (const TransportError& e) {
      last = e.timed_out() ? Failure::Timeout : Failure::Unavailable;
      last_detail = e.what();
    }

    bool retries_left = attempt < cfg.max_retries && slept + delay <= cfg.backoff.ceiling;
    if (!retries_left) break;
    spdlog::debug("{}: {} (retry {} in {} ms)", role_name, last_detail, attempt + 1, delay.count());
    options_.sleeper(delay);
    slept += delay;
    auto next = std::chrono::milliseconds(static_cast<long long>(std::llround(delay.count() * cfg.backoff.multiplier)));
    delay = std::min(next, cfg.backoff.max_delay);
  }

  const std::string what = last_detail + " after retries";
  switch (last) {
    case Failure::RateLimited: throw RateLimitedExhausted(what, role_name, fp);
    case Failure::Timeout: throw TimeoutError(what, role_name, fp);
    default: throw BackendUnavailable(what, role_name, fp);
  }
}

ner::Summary generate_summary(const code::SourceUnit& code, ModelClient& client, const BackendConfig& cfg) {
  if (!code::has_content(code.text)) throw EmptySourceError();
  ner::Summary summary;
  summary.id = code.id;
  summary.source_model = cfg.model;
  summary.text = client.complete_with(cfg, Role::GENERATE, prompts::render_summary_generation(code.text));
  return summary;
}

}  // namespace etf::client
