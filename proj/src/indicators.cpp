#include "sutte/indicators.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>

namespace sutte {

double IndicatorSeries::at(std::size_t k) const {
  if (!contains(k)) {
    throw std::out_of_range(name + ": bar index " + std::to_string(k) + " outside [" +
                            std::to_string(valid_from) + ", " + std::to_string(last_index()) + "]");
  }
  return values(static_cast<Eigen::Index>(k - valid_from));
}

IndicatorSeries make_indicator(std::string name, std::map<std::string, int> params,
                               const BarSeries& series, std::size_t valid_from,
                               Eigen::VectorXd values) {
  if (valid_from < 1 || valid_from + static_cast<std::size_t>(values.size()) != series.size() + 1) {
    throw std::logic_error(name + ": values do not cover bars " + std::to_string(valid_from) + ".." +
                           std::to_string(series.size()));
  }
  if (!values.allFinite()) throw DataError(name + ": computed a non-finite value");
  IndicatorSeries ind;
  ind.name = std::move(name);
  ind.params = std::move(params);
  ind.valid_from = valid_from;
  ind.dates.assign(series.dates().begin() + static_cast<std::ptrdiff_t>(valid_from - 1),
                   series.dates().end());
  ind.values = std::move(values);
  ind.symbol = series.symbol();
  return ind;
}

IndicatorSeries sma(const BarSeries& series, int n) {
  const std::string name = "SMA(" + std::to_string(n) + ")";
  if (n < 1) throw DataError(name + ": window must be at least 1");
  if (series.size() < static_cast<std::size_t>(n)) {
    throw DataError(name + " needs " + std::to_string(n) + " bars, series has " +
                    std::to_string(series.size()));
  }
  return make_indicator(name, {{"n", n}}, series, static_cast<std::size_t>(n),
                        kernels::sma(series.close(), n));
}

IndicatorSeries ema(const BarSeries& series, int n) {
  const std::string name = "EMA(" + std::to_string(n) + ")";
  if (n < 1) throw DataError(name + ": window must be at least 1");
  return make_indicator(name, {{"n", n}}, series, 1, kernels::ema(series.close(), n));
}

IndicatorSeries macd(const BarSeries& series, int short_n, int long_n) {
  const std::string name = "MACD(" + std::to_string(short_n) + "," + std::to_string(long_n) + ")";
  if (short_n < 1 || short_n >= long_n) {
    throw DataError(name + ": requires 1 <= short window < long window");
  }
  return make_indicator(name, {{"short", short_n}, {"long", long_n}}, series, 1,
                        kernels::macd(series.close(), short_n, long_n));
}

void write_indicator_csv(std::ostream& out, const IndicatorSeries& ind,
                         const std::vector<std::string>& comment) {
  for (const auto& line : comment) out << "# " << line << '\n';
  out << "index,date,value\n";
  for (std::size_t i = 0; i < ind.size(); ++i) {
    out << ind.valid_from + i << ',' << to_string(ind.dates[i]) << ','
        << format_number(ind.values(static_cast<Eigen::Index>(i))) << '\n';
  }
}

IndicatorSeries read_indicator_csv(std::istream& in) {
  IndicatorSeries ind;
  std::vector<double> values;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "index,date,value") throw DataError("indicator CSV: unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw DataError("indicator CSV: malformed row '" + line + "'");
    }
    const auto index = parse_number(std::string_view(line).substr(0, c1));
    const auto date = parse_date(std::string_view(line).substr(c1 + 1, c2 - c1 - 1));
    const auto value = parse_number(std::string_view(line).substr(c2 + 1));
    if (!index || !date || !value) throw DataError("indicator CSV: malformed row '" + line + "'");
    const auto k = static_cast<std::size_t>(*index);
    if (values.empty()) {
      ind.valid_from = k;
    } else if (k != ind.valid_from + values.size()) {
      throw DataError("indicator CSV: indices are not contiguous at '" + line + "'");
    }
    ind.dates.push_back(*date);
    values.push_back(*value);
  }
  if (!header_seen || values.empty()) throw DataError("indicator CSV: no data rows");
  ind.values = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  return ind;
}

nlohmann::ordered_json to_json(const IndicatorSeries& ind) {
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < ind.size(); ++i) {
    points.push_back({{"date", to_string(ind.dates[i])}, {"value", ind.values(static_cast<Eigen::Index>(i))}});
  }
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [key, value] : ind.params) params[key] = value;
  return {{"name", ind.name},
          {"symbol", ind.symbol},
          {"params", params},
          {"valid_from", ind.valid_from},
          {"points", points}};
}

IndicatorSeries indicator_from_json(const nlohmann::ordered_json& j) {
  try {
    IndicatorSeries ind;
    ind.name = j.at("name").get<std::string>();
    ind.symbol = j.value("symbol", std::string());
    for (const auto& [key, value] : j.at("params").items()) ind.params[key] = value.get<int>();
    ind.valid_from = j.at("valid_from").get<std::size_t>();
    const auto& points = j.at("points");
    ind.values.resize(static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto date = parse_date(points[i].at("date").get<std::string>());
      if (!date) throw DataError("indicator JSON: bad date");
      ind.dates.push_back(*date);
      ind.values(static_cast<Eigen::Index>(i)) = points[i].at("value").get<double>();
    }
    if (ind.valid_from < 1 || ind.values.size() == 0) throw DataError("indicator JSON: empty or invalid domain");
    return ind;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("indicator JSON: ") + e.what());
  }
}

}  // namespace sutte
