#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "etf/client/chat_model.hpp"
#include "etf/code/entities.hpp"

namespace etf::test {

inline std::filesystem::path data_dir() { return ETF_TEST_DATA; }

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("etf-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// Chat model answering from a callback and logging every call.
class ScriptedModel : public client::ChatModel {
 public:
  struct Call {
    client::Role role;
    std::string prompt;
    int attempt;
  };
  using Responder = std::function<std::string(client::Role, const std::string&, int)>;

  explicit ScriptedModel(Responder responder) : responder_(std::move(responder)) {}

  std::string complete(client::Role role, const std::string& prompt, int attempt = 0) override {
    {
      std::lock_guard lock(mutex_);
      calls_.push_back({role, prompt, attempt});
    }
    return responder_(role, prompt, attempt);
  }

  std::vector<Call> calls() const {
    std::lock_guard lock(mutex_);
    return calls_;
  }

 private:
  Responder responder_;
  mutable std::mutex mutex_;
  std::vector<Call> calls_;
};

inline code::SourceUnit unit(std::string text, std::string id = "u") { return {std::move(id), std::move(text)}; }

/// (name, kind) pairs of an entity set in extraction order.
inline std::vector<std::pair<std::string, code::EntityKind>> pairs(const code::CodeEntitySet& set) {
  std::vector<std::pair<std::string, code::EntityKind>> out;
  for (const auto& e : set.entities) out.emplace_back(e.name, e.kind);
  return out;
}

inline bool has(const code::CodeEntitySet& set, std::string_view name, code::EntityKind kind) {
  return set.find(name, kind) != nullptr;
}

}  // namespace etf::test
