#include "app/plot.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

namespace sutte::app {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char*, 4> kColors = {"#222222", "#1f77b4", "#d62728", "#2ca02c"};

std::string num(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.2f", v);
  return buf.data();
}

std::string escape(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Scale {
  std::size_t bars;
  double lo;
  double hi;

  double x(std::size_t k) const {
    const double w = kWidth - kLeft - kRight;
    if (bars <= 1) return kLeft + w / 2;
    return kLeft + w * static_cast<double>(k - 1) / static_cast<double>(bars - 1);
  }
  double y(double v) const { return kTop + (kHeight - kTop - kBottom) * (hi - v) / (hi - lo); }
};

}  // namespace

std::string render_svg(const ChartData& chart, const std::vector<std::string>& comment) {
  const BarSeries& bars = *chart.bars;
  double lo = bars.close().minCoeff();
  double hi = bars.close().maxCoeff();
  for (const auto* c : chart.curves) {
    lo = std::min(lo, c->values.minCoeff());
    hi = std::max(hi, c->values.maxCoeff());
  }
  if (hi - lo < 1e-12) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = (hi - lo) * 0.05;
  const Scale s{bars.size(), lo - pad, hi + pad};

  std::ostringstream out;
  for (const auto& line : comment) out << "<!-- " << escape(line) << " -->\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<title>" << escape(bars.symbol()) << " Sutte Indicator</title>\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"#ffffff\"/>\n";

  const double x0 = kLeft;
  const double x1 = kWidth - kRight;
  const double y0 = kTop;
  const double y1 = kHeight - kBottom;
  out << "<g class=\"axes\" stroke=\"#888888\" fill=\"none\">"
      << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x1) << "\" y2=\"" << num(y1) << "\"/>"
      << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x0) << "\" y2=\"" << num(y1) << "\"/>"
      << "</g>\n";

  // Price ticks.
  for (int i = 0; i <= 4; ++i) {
    const double v = s.lo + (s.hi - s.lo) * i / 4.0;
    out << "<text class=\"price-label\" x=\"" << num(x0 - 6) << "\" y=\"" << num(s.y(v) + 4)
        << "\" text-anchor=\"end\">" << num(v) << "</text>\n";
  }
  // Date ticks at up to six evenly spaced bars.
  const std::size_t n = bars.size();
  const std::size_t ticks = std::min<std::size_t>(6, n);
  std::size_t last_tick = 0;
  for (std::size_t i = 0; i < ticks; ++i) {
    const std::size_t k = ticks == 1 ? 1 : 1 + (i * (n - 1) + (ticks - 1) / 2) / (ticks - 1);
    if (k == last_tick) continue;
    last_tick = k;
    out << "<text class=\"date-label\" x=\"" << num(s.x(k)) << "\" y=\"" << num(y1 + 18)
        << "\" text-anchor=\"middle\">" << to_string(bars.date(k)) << "</text>\n";
  }

  auto polyline = [&](const std::string& name, std::size_t first, const auto& values, const char* color) {
    out << "<polyline class=\"series\" data-series=\"" << escape(name) << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      if (i > 0) out << ' ';
      out << num(s.x(first + static_cast<std::size_t>(i))) << ',' << num(s.y(values(i)));
    }
    out << "\"/>\n";
  };
  polyline("Close", 1, bars.close(), kColors[0]);
  for (std::size_t i = 0; i < chart.curves.size(); ++i) {
    polyline(chart.curves[i]->name, chart.curves[i]->valid_from, chart.curves[i]->values,
             kColors[(i + 1) % kColors.size()]);
  }

  for (const auto& e : chart.signals) {
    const double x = s.x(e.bar_index);
    const double y = s.y(bars.bar(e.bar_index).close);
    if (e.kind == SignalKind::Buy) {
      out << "<path class=\"marker buy\" data-date=\"" << to_string(e.date) << "\" fill=\"#2ca02c\" d=\"M"
          << num(x) << ',' << num(y + 6) << " l-6,10 h12 z\"/>\n";
    } else {
      out << "<path class=\"marker sell\" data-date=\"" << to_string(e.date) << "\" fill=\"#d62728\" d=\"M"
          << num(x) << ',' << num(y - 6) << " l-6,-10 h12 z\"/>\n";
    }
  }

  // Legend.
  std::vector<std::string> names = {"Close"};
  for (const auto* c : chart.curves) names.push_back(c->name);
  for (std::size_t i = 0; i < names.size(); ++i) {
    const double ly = kTop + 10 + 18.0 * static_cast<double>(i);
    out << "<g class=\"legend\"><line x1=\"" << num(x1 + 12) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(x1 + 32)
        << "\" y2=\"" << num(ly) << "\" stroke=\"" << kColors[i % kColors.size()] << "\" stroke-width=\"2\"/>"
        << "<text x=\"" << num(x1 + 38) << "\" y=\"" << num(ly + 4) << "\">" << escape(names[i]) << "</text></g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_long_csv(const ChartData& chart, const std::vector<std::string>& comment) {
  const BarSeries& bars = *chart.bars;
  std::ostringstream out;
  for (const auto& line : comment) out << "# " << line << '\n';
  out << "date,series,value\n";
  for (std::size_t k = 1; k <= bars.size(); ++k) {
    out << to_string(bars.date(k)) << ",Close," << format_number(bars.bar(k).close) << '\n';
  }
  for (const auto* c : chart.curves) {
    for (std::size_t i = 0; i < c->size(); ++i) {
      out << to_string(c->dates[i]) << ',' << c->name << ',' << format_number(c->values(static_cast<Eigen::Index>(i)))
          << '\n';
    }
  }
  for (const auto& e : chart.signals) {
    out << to_string(e.date) << ',' << (e.kind == SignalKind::Buy ? "BUY" : "SELL") << ','
        << format_number(bars.bar(e.bar_index).close) << '\n';
  }
  return out.str();
}

}  // namespace sutte::app
