#pragma once

#include <cassert>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "sutte/common.hpp"
#include "sutte/indicators.hpp"
#include "sutte/market_data.hpp"

namespace sutte {

namespace kernels {

// Error metrics over equal-length, non-empty actual/predicted vectors.

template <typename DA, typename DP>
typename DA::Scalar mean_absolute_deviation(const Eigen::MatrixBase<DA>& actual,
                                            const Eigen::MatrixBase<DP>& predicted) {
  assert(actual.size() > 0 && actual.size() == predicted.size());
  return (actual - predicted).cwiseAbs().mean();
}

template <typename DA, typename DP>
typename DA::Scalar mean_squared_error(const Eigen::MatrixBase<DA>& actual,
                                       const Eigen::MatrixBase<DP>& predicted) {
  assert(actual.size() > 0 && actual.size() == predicted.size());
  return (actual - predicted).array().square().mean();
}

/// In percent. Every actual must be non-zero.
template <typename DA, typename DP>
typename DA::Scalar mean_absolute_percentage_error(const Eigen::MatrixBase<DA>& actual,
                                                   const Eigen::MatrixBase<DP>& predicted) {
  using Scalar = typename DA::Scalar;
  assert(actual.size() > 0 && actual.size() == predicted.size());
  return ((actual - predicted).array() / actual.array()).abs().mean() * Scalar(100);
}

}  // namespace kernels

/// Forecasts paired with the closes they target.
///
/// Pair i scores `predicted(i)`, the indicator value at bar
/// `indices[i] - horizon`, against `actual(i)`, the close at bar `indices[i]`.
struct PairedSeries {
  std::vector<std::size_t> indices;
  std::vector<Date> dates;
  Eigen::VectorXd actual;
  Eigen::VectorXd predicted;
  std::size_t horizon = 1;
  std::size_t skipped_zero_actuals = 0;

  std::size_t size() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
};

/// Pairs ind(k) with C_{k+horizon} for every k where both exist. Zero closes
/// are left out and counted. Throws DataError if nothing pairs up or horizon < 1.
PairedSeries align_forecast(const IndicatorSeries& ind, const BarSeries& series, std::size_t horizon = 1);

/// Drops pairs targeting bars before `first_index`.
PairedSeries restrict_from(const PairedSeries& pairs, std::size_t first_index);

// Throw DataError on an empty pairing.
double mad(const PairedSeries& pairs);
double mse(const PairedSeries& pairs);
double mape(const PairedSeries& pairs);

/// A forecasting method taking part in a comparison.
struct MethodSpec {
  enum class Kind { SuttePred, Sma, Macd };

  Kind kind = Kind::SuttePred;
  int window = 5;
  int short_window = 12;
  int long_window = 26;

  static MethodSpec sutte_pred() { return {}; }
  static MethodSpec sma(int n) { return {Kind::Sma, n}; }
  static MethodSpec macd(int s, int l) { return {Kind::Macd, 5, s, l}; }

  /// "SUTTE-PRED", "SMA(5)", "MACD(12,26)".
  std::string label() const;
  IndicatorSeries compute(const BarSeries& series) const;

  bool operator==(const MethodSpec&) const = default;
};

/// Accepts the labels above and the bare names "sutte", "sma", "macd"
/// (case-insensitive), the latter taking `default_sma` / `default_macd`.
MethodSpec parse_method_spec(std::string_view text, int default_sma = 5, int default_short = 12,
                             int default_long = 26);

struct EvaluationReport {
  std::string method;
  std::map<std::string, int> params;
  double mad = 0.0;
  double mse = 0.0;
  double mape = 0.0;
  std::size_t n = 0;
  std::size_t horizon = 1;
  std::size_t skipped_zero_actuals = 0;
  Date first_date;
  Date last_date;
  std::string note;
};

EvaluationReport make_report(const std::string& method, const std::map<std::string, int>& params,
                             const PairedSeries& pairs);

/// Scores every method over the same target bars: the intersection of their
/// paired domains, so each report has the same n. Reports keep the order of
/// `methods`. Throws DataError if any method cannot be computed or the common
/// domain is empty.
std::vector<EvaluationReport> compare_methods(const BarSeries& series, std::span<const MethodSpec> methods,
                                              std::size_t horizon = 1);

nlohmann::ordered_json to_json(const EvaluationReport& report);

/// Aligned text table: Indicator | MSE | MAD | MAPE | n.
std::string render_table(std::span<const EvaluationReport> reports);

}  // namespace sutte
