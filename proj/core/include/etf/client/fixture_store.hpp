#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace etf::client {

/// Lowercase hex SHA-256 of `role_key + "\n" + prompt`. Retries (attempt > 0)
/// append "\n#attempt=<n>" so they never collide with the first answer.
std::string fingerprint(std::string_view role_key, std::string_view prompt, int attempt = 0);

std::string sha256_hex(std::string_view data);

/// Canned responses stored as `<fingerprint>.txt` files in one directory.
class FixtureStore {
 public:
  explicit FixtureStore(std::filesystem::path dir);

  const std::filesystem::path& directory() const noexcept { return dir_; }
  std::optional<std::string> get(const std::string& fingerprint) const;
  bool contains(const std::string& fingerprint) const;

  /// Writes through a temporary file so readers never see partial content.
  void put(const std::string& fingerprint, std::string_view response);

 private:
  std::filesystem::path file_for(const std::string& fingerprint) const;

  std::filesystem::path dir_;
  mutable std::mutex mutex_;
};

}  // namespace etf::client
