#pragma once

#include <Eigen/Core>

#include "sutte/common.hpp"
#include "sutte/indicators.hpp"
#include "sutte/market_data.hpp"

namespace sutte {

inline constexpr const char* kSutteLowName = "SUTTE%L";
inline constexpr const char* kSutteHighName = "SUTTE%H";
inline constexpr const char* kSuttePredName = "SUTTE-PRED";

namespace kernels {

// All three take full-length price columns and return one value per bar from
// the second bar on: output(i) belongs to bar i + 2 (1-based).

/// Two-day close midpoint, (C_k + C_{k-1}) / 2.
template <typename Derived>
Vector<typename Derived::Scalar> close_midpoint(const Eigen::MatrixBase<Derived>& close) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index m = close.size() - 1;
  return (close.tail(m) + close.head(m)) / Scalar(2);
}

/// Lower curve: close midpoint plus the close's distance above the low.
template <typename DC, typename DL>
Vector<typename DC::Scalar> sutte_low(const Eigen::MatrixBase<DC>& close, const Eigen::MatrixBase<DL>& low) {
  const Eigen::Index m = close.size() - 1;
  return close_midpoint(close) + (close.tail(m) - low.tail(m));
}

/// Upper curve: close midpoint plus the high's distance above the close.
template <typename DC, typename DH>
Vector<typename DC::Scalar> sutte_high(const Eigen::MatrixBase<DC>& close, const Eigen::MatrixBase<DH>& high) {
  const Eigen::Index m = close.size() - 1;
  return close_midpoint(close) + (high.tail(m) - close.tail(m));
}

/// Point forecast: mean of the two curves, evaluated in that order so that
/// pred == (low + high) / 2 holds exactly.
template <typename DL, typename DH>
Vector<typename DL::Scalar> sutte_pred_from_curves(const Eigen::MatrixBase<DL>& low_curve,
                                                   const Eigen::MatrixBase<DH>& high_curve) {
  using Scalar = typename DL::Scalar;
  return (low_curve + high_curve) / Scalar(2);
}

template <typename DC, typename DH, typename DL>
Vector<typename DC::Scalar> sutte_pred(const Eigen::MatrixBase<DC>& close, const Eigen::MatrixBase<DH>& high,
                                       const Eigen::MatrixBase<DL>& low) {
  return sutte_pred_from_curves(sutte_low(close, low), sutte_high(close, high));
}

}  // namespace kernels

// Each throws DataError on a series with fewer than 2 bars. Bars are used
// verbatim, including OHLC-inconsistent ones admitted by lenient ingestion.
IndicatorSeries sutte_l(const BarSeries& series);
IndicatorSeries sutte_h(const BarSeries& series);
IndicatorSeries sutte_pred(const BarSeries& series);

}  // namespace sutte
