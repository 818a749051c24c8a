#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include "etf/errors.hpp"

namespace etf::client {

struct HttpRequest {
  std::string url;
  std::string body;
  std::vector<std::pair<std::string, std::string>> headers;
  std::chrono::milliseconds timeout{120000};
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

/// Network-level failure: no HTTP status was received.
class TransportError : public Error {
 public:
  TransportError(const std::string& what, bool timed_out) : Error(what), timed_out_(timed_out) {}
  bool timed_out() const noexcept { return timed_out_; }

 private:
  bool timed_out_;
};

class Transport {
 public:
  virtual ~Transport() = default;
  /// POSTs a JSON body. Throws TransportError when the exchange fails below HTTP.
  virtual HttpResponse post(const HttpRequest& request) = 0;
};

/// cpp-httplib client; https URLs use OpenSSL.
class HttpTransport : public Transport {
 public:
  HttpResponse post(const HttpRequest& request) override;
};

}  // namespace etf::client
