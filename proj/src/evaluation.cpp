#include "sutte/evaluation.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "sutte/sutte.hpp"

namespace sutte {

PairedSeries align_forecast(const IndicatorSeries& ind, const BarSeries& series, std::size_t horizon) {
  if (horizon < 1) throw DataError("forecast horizon must be at least 1");
  PairedSeries p;
  p.horizon = horizon;
  std::vector<double> actual;
  std::vector<double> predicted;
  for (std::size_t k = ind.valid_from; k <= ind.last_index() && k + horizon <= series.size(); ++k) {
    const std::size_t t = k + horizon;
    const double y = series.bar(t).close;
    if (y == 0.0) {
      ++p.skipped_zero_actuals;
      continue;
    }
    p.indices.push_back(t);
    p.dates.push_back(series.date(t));
    actual.push_back(y);
    predicted.push_back(ind.at(k));
  }
  if (p.empty()) {
    throw DataError(ind.name + ": no bars to pair at horizon " + std::to_string(horizon) +
                    " (series has " + std::to_string(series.size()) + " bars)");
  }
  const auto n = static_cast<Eigen::Index>(actual.size());
  p.actual = Eigen::Map<const Eigen::VectorXd>(actual.data(), n);
  p.predicted = Eigen::Map<const Eigen::VectorXd>(predicted.data(), n);
  return p;
}

PairedSeries restrict_from(const PairedSeries& pairs, std::size_t first_index) {
  const auto it = std::lower_bound(pairs.indices.begin(), pairs.indices.end(), first_index);
  const auto skip = static_cast<Eigen::Index>(it - pairs.indices.begin());
  const auto keep = static_cast<Eigen::Index>(pairs.indices.end() - it);
  PairedSeries out;
  out.indices.assign(it, pairs.indices.end());
  out.dates.assign(pairs.dates.begin() + skip, pairs.dates.end());
  out.actual = pairs.actual.tail(keep);
  out.predicted = pairs.predicted.tail(keep);
  out.horizon = pairs.horizon;
  // Carried over as-is; compare_methods recounts it for the kept range.
  out.skipped_zero_actuals = pairs.skipped_zero_actuals;
  return out;
}

namespace {

void require_pairs(const PairedSeries& p, const char* metric) {
  if (p.empty()) throw DataError(std::string(metric) + " of an empty pairing");
}

}  // namespace

double mad(const PairedSeries& p) {
  require_pairs(p, "MAD");
  return kernels::mean_absolute_deviation(p.actual, p.predicted);
}

double mse(const PairedSeries& p) {
  require_pairs(p, "MSE");
  return kernels::mean_squared_error(p.actual, p.predicted);
}

double mape(const PairedSeries& p) {
  require_pairs(p, "MAPE");
  return kernels::mean_absolute_percentage_error(p.actual, p.predicted);
}

std::string MethodSpec::label() const {
  switch (kind) {
    case Kind::SuttePred: return kSuttePredName;
    case Kind::Sma: return "SMA(" + std::to_string(window) + ")";
    case Kind::Macd: return "MACD(" + std::to_string(short_window) + "," + std::to_string(long_window) + ")";
  }
  return {};
}

IndicatorSeries MethodSpec::compute(const BarSeries& series) const {
  switch (kind) {
    case Kind::SuttePred: return sutte::sutte_pred(series);
    case Kind::Sma: return sutte::sma(series, window);
    case Kind::Macd: return sutte::macd(series, short_window, long_window);
  }
  throw std::logic_error("unknown method kind");
}

namespace {

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    const auto tok = text.substr(start, end - start);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw DataError("bad integer '" + std::string(tok) + "'");
    }
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

}  // namespace

MethodSpec parse_method_spec(std::string_view text, int default_sma, int default_short, int default_long) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  const auto open = upper.find('(');
  const std::string head = upper.substr(0, open);
  std::vector<int> args;
  if (open != std::string::npos) {
    if (upper.back() != ')') throw DataError("bad method spec '" + std::string(text) + "'");
    args = parse_int_list(std::string_view(upper).substr(open + 1, upper.size() - open - 2));
  }
  if ((head == "SUTTE" || head == "SUTTE-PRED") && args.empty()) return MethodSpec::sutte_pred();
  if (head == "SMA" && args.size() <= 1) return MethodSpec::sma(args.empty() ? default_sma : args[0]);
  if (head == "MACD" && (args.empty() || args.size() == 2)) {
    return args.empty() ? MethodSpec::macd(default_short, default_long) : MethodSpec::macd(args[0], args[1]);
  }
  throw DataError("unknown method '" + std::string(text) + "' (expected SUTTE-PRED, SMA(n) or MACD(s,l))");
}

EvaluationReport make_report(const std::string& method, const std::map<std::string, int>& params,
                             const PairedSeries& pairs) {
  EvaluationReport r;
  r.method = method;
  r.params = params;
  r.mad = mad(pairs);
  r.mse = mse(pairs);
  r.mape = mape(pairs);
  r.n = pairs.size();
  r.horizon = pairs.horizon;
  r.skipped_zero_actuals = pairs.skipped_zero_actuals;
  r.first_date = pairs.dates.front();
  r.last_date = pairs.dates.back();
  return r;
}

std::vector<EvaluationReport> compare_methods(const BarSeries& series, std::span<const MethodSpec> methods,
                                              std::size_t horizon) {
  if (methods.empty()) throw DataError("no methods to compare");
  if (horizon < 1) throw DataError("forecast horizon must be at least 1");

  std::vector<IndicatorSeries> forecasts;
  std::size_t first_target = 0;
  for (const auto& m : methods) {
    forecasts.push_back(m.compute(series));
    first_target = std::max(first_target, forecasts.back().valid_from + horizon);
  }
  if (first_target > series.size()) {
    throw DataError("series '" + series.symbol() + "' is too short to score every method at horizon " +
                    std::to_string(horizon) + ": needs " + std::to_string(first_target) + " bars, has " +
                    std::to_string(series.size()));
  }

  std::vector<EvaluationReport> reports;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    auto pairs = restrict_from(align_forecast(forecasts[i], series, horizon), first_target);
    // Recount zero closes over the shared target range only.
    pairs.skipped_zero_actuals = 0;
    for (std::size_t t = first_target; t <= series.size(); ++t) {
      if (series.bar(t).close == 0.0) ++pairs.skipped_zero_actuals;
    }
    auto report = make_report(methods[i].label(), forecasts[i].params, pairs);
    if (methods[i].kind == MethodSpec::Kind::Macd) {
      report.note = "MACD line scored directly against price";
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

nlohmann::ordered_json to_json(const EvaluationReport& r) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [key, value] : r.params) params[key] = value;
  nlohmann::ordered_json j = {{"method", r.method},
                              {"params", params},
                              {"mad", r.mad},
                              {"mse", r.mse},
                              {"mape", r.mape},
                              {"n", r.n},
                              {"horizon", r.horizon},
                              {"skipped_zero_actuals", r.skipped_zero_actuals},
                              {"date_range", {to_string(r.first_date), to_string(r.last_date)}}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

namespace {

std::string fixed(double v) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.6f", v);
  return buf.data();
}

}  // namespace

std::string render_table(std::span<const EvaluationReport> reports) {
  const std::array<std::string, 5> head = {"Indicator", "MSE", "MAD", "MAPE", "n"};
  std::vector<std::array<std::string, 5>> rows;
  for (const auto& r : reports) rows.push_back({r.method, fixed(r.mse), fixed(r.mad), fixed(r.mape), std::to_string(r.n)});

  std::array<std::size_t, 5> width{};
  for (std::size_t c = 0; c < 5; ++c) {
    width[c] = head[c].size();
    for (const auto& row : rows) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  auto emit = [&](const std::array<std::string, 5>& cells) {
    for (std::size_t c = 0; c < 5; ++c) {
      if (c > 0) out << " | ";
      // Name column left-aligned, numbers right-aligned.
      const std::string pad(width[c] - cells[c].size(), ' ');
      out << (c == 0 ? cells[c] + pad : pad + cells[c]);
    }
    out << '\n';
  };
  emit(head);
  std::string rule;
  for (std::size_t c = 0; c < 5; ++c) rule += (c > 0 ? "-+-" : "") + std::string(width[c], '-');
  out << rule << '\n';
  for (const auto& row : rows) emit(row);
  return out.str();
}

}  // namespace sutte
