#pragma once

#include <string>
#include <vector>

#include "sutte/indicators.hpp"
#include "sutte/market_data.hpp"
#include "sutte/signals.hpp"

namespace sutte::app {

struct ChartData {
  const BarSeries* bars = nullptr;
  std::vector<const IndicatorSeries*> curves;  // drawn after the close line, in order
  std::vector<SignalEvent> signals;
};

/// Static SVG: one <polyline> per series (close first), one marker element per
/// signal, date labels along the x axis. `comment` lines become XML comments
/// at the top of the file.
std::string render_svg(const ChartData& chart, const std::vector<std::string>& comment);

/// Long-format "date,series,value" rows: every plotted series, then one row per
/// signal (series "BUY"/"SELL", value = close at that bar).
std::string render_long_csv(const ChartData& chart, const std::vector<std::string>& comment);

}  // namespace sutte::app
