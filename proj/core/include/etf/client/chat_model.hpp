#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace etf::client {

enum class Role { GENERATE, NER, JUDGE, DIRECT };

std::string_view to_string(Role role);
std::optional<Role> parse_role(std::string_view text);

/// Anything that turns a rendered prompt into response text.
class ChatModel {
 public:
  virtual ~ChatModel() = default;

  /// `attempt` > 0 asks for a fresh answer after the previous one could not
  /// be interpreted; implementations must not serve it from the attempt-0
  /// cache entry.
  virtual std::string complete(Role role, const std::string& prompt, int attempt = 0) = 0;
};

}  // namespace etf::client
