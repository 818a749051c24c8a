#pragma once

#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>

#include "etf/client/chat_model.hpp"
#include "etf/client/config.hpp"
#include "etf/client/fixture_store.hpp"
#include "etf/client/transport.hpp"
#include "etf/code/token.hpp"
#include "etf/ner/types.hpp"

namespace etf::client {

enum class Mode { REPLAY, LIVE, ORACLE };

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);

using Sleeper = std::function<void(std::chrono::milliseconds)>;

/// Caps concurrent requests. One instance is shared by the whole process.
class InFlightLimiter {
 public:
  class Slot {
   public:
    explicit Slot(InFlightLimiter* owner) : owner_(owner) {}
    Slot(Slot&& o) noexcept : owner_(std::exchange(o.owner_, nullptr)) {}
    Slot(const Slot&) = delete;
    Slot& operator=(const Slot&) = delete;
    Slot& operator=(Slot&&) = delete;
    ~Slot() {
      if (owner_) owner_->release();
    }

   private:
    InFlightLimiter* owner_;
  };

  static InFlightLimiter& global();

  /// Blocks until fewer than `limit` requests are running.
  Slot acquire(int limit);
  int in_flight() const;
  int peak() const;
  void reset_peak();

 private:
  void release();

  mutable std::mutex mutex_;
  std::condition_variable cv_;
  int in_flight_ = 0;
  int peak_ = 0;
};

/// The request body sent for one prompt.
nlohmann::ordered_json build_request_body(const BackendConfig& cfg, std::string_view prompt);

/// Text of choices[0].message.content. Throws MalformedBackendOutput.
std::string parse_completion(std::string_view body);

/// ChatModel over HTTP (live) or over a fixture directory (replay).
///
/// Responses are memoized per fingerprint for the lifetime of the client.
/// Replay mode never touches the transport. Live mode retries 429, 408, 5xx
/// and transport failures with exponential backoff; with `record_fixtures`
/// every live answer is also written to the fixture directory.
class ModelClient : public ChatModel {
 public:
  struct Options {
    Mode mode = Mode::REPLAY;
    std::optional<std::filesystem::path> fixtures_dir;
    bool record_fixtures = false;
    std::shared_ptr<Transport> transport;  // defaults to HttpTransport in live mode
    Sleeper sleeper;                       // defaults to std::this_thread::sleep_for
    InFlightLimiter* limiter = nullptr;    // defaults to InFlightLimiter::global()
  };

  ModelClient(ClientConfig config, Options options);

  std::string complete(Role role, const std::string& prompt, int attempt = 0) override;
  std::string complete_with(const BackendConfig& cfg, Role role, const std::string& prompt, int attempt = 0);

  /// Role part of the fingerprint; generator answers are keyed per model.
  static std::string role_key(Role role, const BackendConfig& cfg);

  const ClientConfig& config() const noexcept { return config_; }
  Mode mode() const noexcept { return options_.mode; }
  std::size_t network_requests() const;

 private:
  std::string call_live(const BackendConfig& cfg, Role role, const std::string& prompt, const std::string& fp);

  ClientConfig config_;
  Options options_;
  std::optional<FixtureStore> fixtures_;
  mutable std::mutex memo_mutex_;
  std::map<std::string, std::string> memo_;
  std::size_t network_requests_ = 0;
};

/// Renders the summary-generation prompt and returns the raw completion.
/// Throws EmptySourceError before any request when the code is blank.
ner::Summary generate_summary(const code::SourceUnit& code, ModelClient& client, const BackendConfig& cfg);

}  // namespace etf::client
