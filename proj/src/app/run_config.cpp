#include "app/run_config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "sutte/evaluation.hpp"
#include "sutte/fetch.hpp"

#ifndef SUTTE_VERSION
#define SUTTE_VERSION "0.0.0"
#endif

namespace sutte::app {

std::string tool_version() { return SUTTE_VERSION; }

std::string to_string(OutputFormat format) { return format == OutputFormat::Json ? "json" : "csv"; }

void RunConfig::check() const {
  if (sma_window < 1) throw UsageError("sma_window must be >= 1");
  if (macd_windows.first < 1 || macd_windows.first >= macd_windows.second) {
    throw UsageError("macd windows must satisfy 1 <= short < long");
  }
  if (horizon < 1) throw UsageError("horizon must be >= 1");
  if (date_window && date_window->second < date_window->first) {
    throw UsageError("date window start is after its end");
  }
  if (input.find("://") != std::string::npos && !is_url(input)) {
    throw UsageError("unsupported URL scheme (expected http or https): " + input);
  }
  if (symbol.empty()) throw UsageError("--symbol is required");
  const bool safe = std::all_of(symbol.begin(), symbol.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '.' || c == '-' || c == '_' || c == '^';
  });
  if (!safe || symbol.front() == '.') throw UsageError("symbol '" + symbol + "' must be [A-Za-z0-9._^-]");
  for (const auto& m : methods) {
    try {
      parse_method_spec(m, sma_window, macd_windows.first, macd_windows.second);
    } catch (const DataError& e) {
      throw UsageError(e.what());
    }
  }
}

std::vector<std::string> RunConfig::method_labels() const {
  std::vector<std::string> out;
  if (methods.empty()) {
    out = {MethodSpec::sutte_pred().label(), MethodSpec::sma(sma_window).label(),
           MethodSpec::macd(macd_windows.first, macd_windows.second).label()};
  } else {
    for (const auto& m : methods) {
      out.push_back(parse_method_spec(m, sma_window, macd_windows.first, macd_windows.second).label());
    }
  }
  return out;
}

std::string RunConfig::canonical() const {
  std::string labels;
  for (const auto& l : method_labels()) labels += (labels.empty() ? "" : ",") + l;
  std::string out;
  out += "input=" + input;
  out += " symbol=" + symbol;
  out += " date_window=" +
         (date_window ? sutte::to_string(date_window->first) + "," + sutte::to_string(date_window->second) : "");
  out += " sma_window=" + std::to_string(sma_window);
  out += " macd_windows=" + std::to_string(macd_windows.first) + "," + std::to_string(macd_windows.second);
  out += " horizon=" + std::to_string(horizon);
  out += " strict_validation=" + std::string(strict_validation ? "true" : "false");
  out += " output_format=" + to_string(output_format);
  out += " methods=" + labels;
  out += " min_regime_bars=" + std::to_string(min_regime_bars);
  return out;
}

std::string RunConfig::hash() const {
  std::uint64_t h = 14695981039346656037ULL;
  for (const unsigned char c : canonical()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(h));
  return buf.data();
}

std::vector<std::string> RunConfig::header_lines() const {
  return {"sutte " + tool_version() + " config=" + hash(), canonical()};
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int to_int(const std::string& key, const std::string& value) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size()) {
    throw UsageError(key + ": expected an integer, got '" + value + "'");
  }
  return v;
}

std::pair<std::string, std::string> split_pair(const std::string& key, const std::string& value) {
  const auto comma = value.find(',');
  if (comma == std::string::npos) throw UsageError(key + ": expected two comma-separated values");
  return {trim(value.substr(0, comma)), trim(value.substr(comma + 1))};
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw UsageError(key + ": expected true or false, got '" + value + "'");
}

Date to_date(const std::string& key, const std::string& value) {
  const auto d = parse_date(value);
  if (!d) throw UsageError(key + ": expected YYYY-MM-DD, got '" + value + "'");
  return *d;
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "input") {
    c.input = value;
  } else if (key == "symbol") {
    c.symbol = value;
  } else if (key == "date_window") {
    if (value.empty()) {
      c.date_window.reset();
    } else {
      const auto [a, b] = split_pair(key, value);
      c.date_window = std::pair{to_date(key, a), to_date(key, b)};
    }
  } else if (key == "sma_window") {
    c.sma_window = to_int(key, value);
  } else if (key == "macd_windows") {
    const auto [a, b] = split_pair(key, value);
    c.macd_windows = {to_int(key, a), to_int(key, b)};
  } else if (key == "horizon") {
    const int h = to_int(key, value);
    if (h < 1) throw UsageError("horizon must be >= 1");
    c.horizon = static_cast<std::size_t>(h);
  } else if (key == "strict_validation") {
    c.strict_validation = to_bool(key, value);
  } else if (key == "output_dir") {
    c.output_dir = value;
  } else if (key == "output_format") {
    if (value == "csv") {
      c.output_format = OutputFormat::Csv;
    } else if (value == "json") {
      c.output_format = OutputFormat::Json;
    } else {
      throw UsageError("output_format must be csv or json, got '" + value + "'");
    }
  } else if (key == "methods") {
    c.methods.clear();
    std::size_t start = 0;
    // Method labels such as MACD(12,26) contain commas; split on ';' or on commas outside parentheses.
    int depth = 0;
    for (std::size_t i = 0; i <= value.size(); ++i) {
      const char ch = i < value.size() ? value[i] : ',';
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if ((ch == ',' && depth == 0) || ch == ';') {
        const auto tok = trim(value.substr(start, i - start));
        if (!tok.empty()) c.methods.push_back(tok);
        start = i + 1;
      }
    }
  } else if (key == "min_regime_bars") {
    const int d = to_int(key, value);
    if (d < 0) throw UsageError("min_regime_bars must be >= 0");
    c.min_regime_bars = static_cast<std::size_t>(d);
  } else if (key == "timeout_ms") {
    c.timeout = std::chrono::milliseconds(to_int(key, value));
  } else {
    throw UsageError("unknown config key '" + key + "'");
  }
}

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv("SUTTE_CACHE_DIR"); env != nullptr && *env != '\0') return env;
  return ".sutte";
}

}  // namespace sutte::app
