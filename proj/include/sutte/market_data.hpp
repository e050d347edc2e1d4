#pragma once

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "sutte/common.hpp"

namespace sutte {

/// One trading day. `open` is carried for completeness; no formula reads it.
struct Bar {
  Date date;
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;
  std::optional<double> volume;

  bool operator==(const Bar&) const = default;
};

/// Date-ordered daily bars for one symbol, stored column-wise.
///
/// Bar indices in the public API are 1-based (bar k is `bar(k)`), matching the
/// trading-day index used by every indicator. The Eigen column accessors are
/// ordinary 0-based vectors of length size().
///
/// Construction enforces the series invariants: non-empty, dates strictly
/// increasing. Price consistency is *not* enforced here; see validate_series.
class BarSeries {
 public:
  using PriceMatrix = Eigen::Matrix<double, Eigen::Dynamic, 4>;

  BarSeries(std::string symbol, const std::vector<Bar>& bars);

  const std::string& symbol() const { return symbol_; }
  std::size_t size() const { return dates_.size(); }

  Bar bar(std::size_t k) const;
  std::vector<Bar> bars() const;
  const std::vector<Date>& dates() const { return dates_; }
  Date date(std::size_t k) const { return dates_.at(k - 1); }
  Date first_date() const { return dates_.front(); }
  Date last_date() const { return dates_.back(); }

  auto open() const { return prices_.col(0); }
  auto high() const { return prices_.col(1); }
  auto low() const { return prices_.col(2); }
  auto close() const { return prices_.col(3); }

  const std::vector<std::optional<double>>& volume() const { return volume_; }

  bool operator==(const BarSeries& other) const;

 private:
  std::string symbol_;
  std::vector<Date> dates_;
  PriceMatrix prices_;
  std::vector<std::optional<double>> volume_;
};

enum class Severity { Warning, Error };

std::string_view to_string(Severity severity);

struct ValidationIssue {
  std::size_t row = 0;  // CSV line number for parse findings, 1-based bar index otherwise
  std::string field;
  std::string description;
  Severity severity = Severity::Warning;
};

struct ValidationReport {
  std::string symbol;
  std::vector<ValidationIssue> issues;
  std::size_t rows_checked = 0;

  bool has_errors() const;
  std::size_t count(Severity severity) const;
};

/// Output of parse_csv: the bars plus the rows dropped for carrying "null".
struct ParsedCsv {
  BarSeries series;
  std::vector<ValidationIssue> dropped;
};

/// Parses Yahoo-style historical CSV ("Date,Open,High,Low,Close,Adj Close,Volume").
///
/// Date, Open, High, Low and Close are required; Adj Close and Volume are
/// optional and Adj Close is discarded. Column names match case-insensitively
/// in any order. Rows are sorted ascending by date. A row holding the literal
/// `null` in any price field is dropped and reported as a warning.
///
/// Throws DataError on a missing column, malformed date or number, duplicate
/// date, or when no data rows remain.
ParsedCsv parse_csv(std::string_view text, std::string symbol);

/// Writes the series in the layout parse_csv reads, Adj Close = Close.
/// Numbers use the shortest round-trip form so parse_csv(write_csv(s)) == s.
void write_csv(std::ostream& out, const BarSeries& series);
std::string write_csv(const BarSeries& series);

/// Records every OHLC invariant violation. Findings are errors when `strict`
/// is set and warnings otherwise; the series itself is never altered.
ValidationReport validate_series(const BarSeries& series, bool strict);

/// Bars with start <= date <= end, in order. Throws DataError if start > end
/// or if no bar falls in the window.
BarSeries slice_by_date(const BarSeries& series, Date start, Date end);

}  // namespace sutte
