#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "sutte/common.hpp"
#include "sutte/market_data.hpp"

namespace sutte {

/// A named indicator aligned to bar indices of its source series.
///
/// `values(i)` belongs to bar `valid_from + i` (1-based) and is dated
/// `dates[i]`. The series always runs to the last bar of its source.
struct IndicatorSeries {
  std::string name;
  std::map<std::string, int> params;
  std::size_t valid_from = 1;
  std::vector<Date> dates;
  Eigen::VectorXd values;
  std::string symbol;

  std::size_t size() const { return static_cast<std::size_t>(values.size()); }
  std::size_t last_index() const { return valid_from + size() - 1; }
  bool contains(std::size_t k) const { return k >= valid_from && k <= last_index(); }

  /// Value at 1-based bar index k; throws std::out_of_range outside the domain.
  double at(std::size_t k) const;
};

/// Builds an IndicatorSeries over the tail of `series` starting at bar
/// `valid_from`. Throws DataError if a value is not finite.
IndicatorSeries make_indicator(std::string name, std::map<std::string, int> params,
                               const BarSeries& series, std::size_t valid_from,
                               Eigen::VectorXd values);

namespace kernels {

/// Neumaier-compensated running sum.
template <typename Scalar>
class CompensatedSum {
 public:
  void add(Scalar v) {
    const Scalar t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  Scalar value() const { return sum_ + carry_; }

 private:
  Scalar sum_{0};
  Scalar carry_{0};
};

/// Trailing mean over `window` samples; output(i) covers x(i)..x(i + window - 1).
///
/// Sliding compensated sum of deviations from x(0), so a constant input yields
/// that constant exactly and drift stays bounded on long series.
template <typename Derived>
Vector<typename Derived::Scalar> sma(const Eigen::MatrixBase<Derived>& x, Eigen::Index window) {
  using Scalar = typename Derived::Scalar;
  assert(window >= 1 && window <= x.size());
  const Eigen::Index count = x.size() - window + 1;
  Vector<Scalar> out(count);
  const Scalar shift = x(0);
  const auto n = static_cast<Scalar>(window);
  CompensatedSum<Scalar> sum;
  for (Eigen::Index i = 0; i < window; ++i) sum.add(x(i) - shift);
  out(0) = shift + sum.value() / n;
  for (Eigen::Index i = window; i < x.size(); ++i) {
    sum.add(x(i) - shift);
    sum.add(-(x(i - window) - shift));
    out(i - window + 1) = shift + sum.value() / n;
  }
  return out;
}

/// EMA with alpha = 2 / (window + 1), seeded with the first sample.
template <typename Derived>
Vector<typename Derived::Scalar> ema(const Eigen::MatrixBase<Derived>& x, Eigen::Index window) {
  using Scalar = typename Derived::Scalar;
  assert(window >= 1 && x.size() >= 1);
  Vector<Scalar> out(x.size());
  const Scalar alpha = Scalar(2) / static_cast<Scalar>(window + 1);
  out(0) = x(0);
  for (Eigen::Index i = 1; i < x.size(); ++i) {
    // prev + alpha * (x - prev) == alpha * x + (1 - alpha) * prev, and is exact on a flat input.
    out(i) = alpha == Scalar(1) ? x(i) : out(i - 1) + alpha * (x(i) - out(i - 1));
  }
  return out;
}

template <typename Derived>
Vector<typename Derived::Scalar> macd(const Eigen::MatrixBase<Derived>& x, Eigen::Index short_window,
                                      Eigen::Index long_window) {
  return ema(x, short_window) - ema(x, long_window);
}

}  // namespace kernels

/// SMA(n) of close; defined from bar n. Throws DataError if the series is shorter than n.
IndicatorSeries sma(const BarSeries& series, int n = 5);

/// EMA(n) of close seeded with the first close; defined from bar 1.
IndicatorSeries ema(const BarSeries& series, int n);

/// EMA(short_n) - EMA(long_n) of close. Throws DataError unless 1 <= short_n < long_n.
IndicatorSeries macd(const BarSeries& series, int short_n = 12, int long_n = 26);

/// "index,date,value" rows after a header line. `comment` lines, if any, are
/// written first, each prefixed with "# ".
void write_indicator_csv(std::ostream& out, const IndicatorSeries& ind,
                         const std::vector<std::string>& comment = {});

/// Reads what write_indicator_csv wrote; '#' lines are skipped. Name and
/// params are not part of the CSV body and must be restored by the caller.
IndicatorSeries read_indicator_csv(std::istream& in);

nlohmann::ordered_json to_json(const IndicatorSeries& ind);
IndicatorSeries indicator_from_json(const nlohmann::ordered_json& j);

}  // namespace sutte
