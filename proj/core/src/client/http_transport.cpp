#include <httplib.h>

#include "etf/client/transport.hpp"

namespace etf::client {
namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw TransportError("endpoint is not an absolute URL: " + url, false);
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

HttpResponse HttpTransport::post(const HttpRequest& request) {
  SplitUrl target = split_url(request.url);
  httplib::Client client(target.origin);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(request.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(request.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  httplib::Headers headers;
  for (const auto& [k, v] : request.headers) headers.emplace(k, v);
  auto result = client.Post(target.path, headers, request.body, "application/json");
  if (!result) {
    const httplib::Error err = result.error();
    bool timed_out = err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read;
    throw TransportError("HTTP request to " + target.origin + " failed: " + httplib::to_string(err), timed_out);
  }
  return HttpResponse{result->status, result->body};
}

}  // namespace etf::client
