#include "sutte/signals.hpp"

#include <ostream>
#include <stdexcept>

#include "sutte/sutte.hpp"

namespace sutte {

std::string_view to_string(SignalKind kind) { return kind == SignalKind::Buy ? "Buy" : "Sell"; }

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Bullish: return "Bullish";
    case Regime::Bearish: return "Bearish";
    case Regime::Neutral: return "Neutral";
  }
  return "?";
}

std::vector<SignalEvent> detect_crossovers(const IndicatorSeries& l, const IndicatorSeries& h,
                                           std::size_t min_regime_bars) {
  if (l.name != kSutteLowName || h.name != kSutteHighName) {
    throw DataError("crossover detection expects (" + std::string(kSutteLowName) + ", " + kSutteHighName +
                    "), got (" + l.name + ", " + h.name + ")");
  }
  if (l.valid_from != h.valid_from || l.size() != h.size() || l.dates != h.dates) {
    throw DataError("SUTTE%L and SUTTE%H do not cover the same bars");
  }

  std::vector<SignalEvent> events;
  for (const auto& [i, sign] : kernels::regime_changes(l.values, h.values, min_regime_bars)) {
    const auto pos = static_cast<std::size_t>(i);
    events.push_back({l.valid_from + pos, l.dates[pos], sign > 0 ? SignalKind::Buy : SignalKind::Sell,
                      l.values(i), h.values(i)});
  }
  return events;
}

Regime regime_at(const IndicatorSeries& l, const IndicatorSeries& h, std::size_t k) {
  const double lv = l.at(k);
  const double hv = h.at(k);
  if (lv > hv) return Regime::Bullish;
  if (hv > lv) return Regime::Bearish;
  return Regime::Neutral;
}

SignalSummary summarize(const std::vector<SignalEvent>& events) {
  SignalSummary s;
  for (const auto& e : events) (e.kind == SignalKind::Buy ? s.buys : s.sells)++;
  if (!events.empty()) {
    s.first = events.front().date;
    s.last = events.back().date;
  }
  return s;
}

std::string to_string(const SignalSummary& summary) {
  std::string out = "buys=" + std::to_string(summary.buys) + " sells=" + std::to_string(summary.sells);
  if (summary.first) out += " first=" + to_string(*summary.first) + " last=" + to_string(*summary.last);
  return out;
}

void write_signals_csv(std::ostream& out, const std::vector<SignalEvent>& events,
                       const std::vector<std::string>& comment) {
  for (const auto& line : comment) out << "# " << line << '\n';
  out << "date,kind,sutte_l,sutte_h\n";
  for (const auto& e : events) {
    out << to_string(e.date) << ',' << to_string(e.kind) << ',' << format_number(e.l_value) << ','
        << format_number(e.h_value) << '\n';
  }
}

nlohmann::ordered_json to_json(const std::vector<SignalEvent>& events) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : events) {
    arr.push_back({{"bar_index", e.bar_index},
                   {"date", to_string(e.date)},
                   {"kind", std::string(to_string(e.kind))},
                   {"sutte_l", e.l_value},
                   {"sutte_h", e.h_value}});
  }
  return arr;
}

}  // namespace sutte
