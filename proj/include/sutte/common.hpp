#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace sutte {

/// Column vector of any scalar; the numeric kernels are written against this.
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Date = std::chrono::year_month_day;

/// Base for every error the library raises on bad input data.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strict ISO-8601 calendar date, "YYYY-MM-DD". Returns nullopt on anything else.
std::optional<Date> parse_date(std::string_view text);
std::string to_string(Date date);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

/// Parses a full token as a finite double; nullopt on trailing junk, inf or nan.
std::optional<double> parse_number(std::string_view text);

}  // namespace sutte
