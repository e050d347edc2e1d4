#include "sutte/fetch.hpp"

#include <httplib.h>

namespace sutte {

bool is_url(std::string_view input) {
  return input.rfind("http://", 0) == 0 || input.rfind("https://", 0) == 0;
}

std::string fetch_csv(std::string_view url, std::chrono::milliseconds timeout) {
  const std::string text(url);
  if (!is_url(text)) throw FetchError(FetchErrorKind::BadUrl, "not an http(s) URL: " + text);

  const auto scheme_end = text.find("://") + 3;
  const auto path_start = text.find('/', scheme_end);
  const std::string origin = text.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : text.substr(path_start);
  if (origin.size() <= scheme_end) throw FetchError(FetchErrorKind::BadUrl, "URL has no host: " + text);

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (text.rfind("https://", 0) == 0) {
    throw FetchError(FetchErrorKind::BadUrl, "https is not supported by this build: " + text);
  }
#endif

  httplib::Client client(origin);
  if (!client.is_valid()) throw FetchError(FetchErrorKind::BadUrl, "invalid URL: " + text);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  client.set_follow_location(true);

  const auto started = std::chrono::steady_clock::now();
  auto result = client.Get(path);
  if (!result) {
    const auto err = result.error();
    const auto elapsed = std::chrono::steady_clock::now() - started;
    // httplib reports a read timeout as a plain read error.
    if (err == httplib::Error::ConnectionTimeout ||
        (err == httplib::Error::Read && elapsed >= timeout * 9 / 10)) {
      throw FetchError(FetchErrorKind::Timeout, "timed out fetching " + text);
    }
    throw FetchError(FetchErrorKind::Network, "network error fetching " + text + ": " + httplib::to_string(err));
  }
  if (result->status == 404) {
    throw FetchError(FetchErrorKind::NotFound, "not found (404): " + text, 404);
  }
  if (result->status != 200) {
    throw FetchError(FetchErrorKind::HttpStatus,
                     "unexpected HTTP status " + std::to_string(result->status) + ": " + text,
                     result->status);
  }
  return std::move(result->body);
}

}  // namespace sutte
