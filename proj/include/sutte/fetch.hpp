#pragma once

#include <chrono>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sutte {

enum class FetchErrorKind { Network, Timeout, NotFound, HttpStatus, BadUrl };

class FetchError : public std::runtime_error {
 public:
  FetchError(FetchErrorKind kind, const std::string& what, int status = 0)
      : std::runtime_error(what), kind_(kind), status_(status) {}

  FetchErrorKind kind() const { return kind_; }
  int status() const { return status_; }

 private:
  FetchErrorKind kind_;
  int status_;
};

bool is_url(std::string_view input);

/// GETs an http(s) URL and returns the body verbatim on status 200, following
/// redirects. `timeout` bounds connecting and each read.
std::string fetch_csv(std::string_view url, std::chrono::milliseconds timeout);

}  // namespace sutte
