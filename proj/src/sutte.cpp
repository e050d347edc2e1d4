#include "sutte/sutte.hpp"

namespace sutte {

namespace {

void require_two_bars(const BarSeries& series, const char* name) {
  if (series.size() < 2) {
    throw DataError(std::string(name) + " needs at least 2 bars, series '" + series.symbol() + "' has " +
                    std::to_string(series.size()));
  }
}

}  // namespace

IndicatorSeries sutte_l(const BarSeries& series) {
  require_two_bars(series, kSutteLowName);
  return make_indicator(kSutteLowName, {}, series, 2, kernels::sutte_low(series.close(), series.low()));
}

IndicatorSeries sutte_h(const BarSeries& series) {
  require_two_bars(series, kSutteHighName);
  return make_indicator(kSutteHighName, {}, series, 2, kernels::sutte_high(series.close(), series.high()));
}

IndicatorSeries sutte_pred(const BarSeries& series) {
  require_two_bars(series, kSuttePredName);
  return make_indicator(kSuttePredName, {}, series, 2,
                        kernels::sutte_pred(series.close(), series.high(), series.low()));
}

}  // namespace sutte
