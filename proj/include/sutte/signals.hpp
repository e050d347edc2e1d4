#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "sutte/common.hpp"
#include "sutte/indicators.hpp"

namespace sutte {

enum class SignalKind { Buy, Sell };
enum class Regime { Bullish, Bearish, Neutral };

std::string_view to_string(SignalKind kind);
std::string_view to_string(Regime regime);

struct SignalEvent {
  std::size_t bar_index = 0;  // 1-based
  Date date;
  SignalKind kind = SignalKind::Buy;
  double l_value = 0.0;
  double h_value = 0.0;

  bool operator==(const SignalEvent&) const = default;
};

namespace kernels {

/// Regime changes of `upper - lower` as (position, +1 | -1).
///
/// The starting regime is the sign at position 0 and never fires. A change
/// fires at the first position whose strict sign differs from the last
/// confirmed regime; exact ties neither fire nor reset the regime. With
/// `min_regime_bars = d > 0`, the new sign must hold for d further positions
/// and the event is placed on the confirming position.
template <typename DA, typename DB>
std::vector<std::pair<Eigen::Index, int>> regime_changes(const Eigen::MatrixBase<DA>& a,
                                                         const Eigen::MatrixBase<DB>& b,
                                                         std::size_t min_regime_bars = 0) {
  auto sign = [&](Eigen::Index i) { return (a(i) > b(i)) - (a(i) < b(i)); };
  std::vector<std::pair<Eigen::Index, int>> out;
  if (a.size() == 0) return out;
  int regime = sign(0);
  int candidate = 0;
  std::size_t run = 0;
  for (Eigen::Index i = 1; i < a.size(); ++i) {
    const int s = sign(i);
    if (s == 0 || s == regime) {
      candidate = 0;
      run = 0;
      continue;
    }
    run = s == candidate ? run + 1 : 1;
    candidate = s;
    if (run > min_regime_bars) {
      out.emplace_back(i, s);
      regime = s;
      candidate = 0;
      run = 0;
    }
  }
  return out;
}

}  // namespace kernels

/// Buy where SUTTE%L moves above SUTTE%H, Sell where it moves below.
///
/// `l` and `h` must be the SUTTE%L / SUTTE%H pair of one series (same domain
/// and dates); DataError otherwise. Events come back in index order and
/// alternate in kind. Each uses only bars k-1..k (or the confirmation run when
/// `min_regime_bars` > 0).
std::vector<SignalEvent> detect_crossovers(const IndicatorSeries& l, const IndicatorSeries& h,
                                           std::size_t min_regime_bars = 0);

/// Which curve dominates at bar k. Throws std::out_of_range outside either domain.
Regime regime_at(const IndicatorSeries& l, const IndicatorSeries& h, std::size_t k);

struct SignalSummary {
  std::size_t buys = 0;
  std::size_t sells = 0;
  std::optional<Date> first;
  std::optional<Date> last;
};

SignalSummary summarize(const std::vector<SignalEvent>& events);
std::string to_string(const SignalSummary& summary);

void write_signals_csv(std::ostream& out, const std::vector<SignalEvent>& events,
                       const std::vector<std::string>& comment = {});
nlohmann::ordered_json to_json(const std::vector<SignalEvent>& events);

}  // namespace sutte
