#include "sutte/market_data.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <ostream>
#include <sstream>

namespace sutte {

BarSeries::BarSeries(std::string symbol, const std::vector<Bar>& bars)
    : symbol_(std::move(symbol)), prices_(static_cast<Eigen::Index>(bars.size()), 4) {
  if (bars.empty()) throw DataError("bar series for '" + symbol_ + "' is empty");
  dates_.reserve(bars.size());
  volume_.reserve(bars.size());
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const Bar& b = bars[i];
    if (i > 0 && !(dates_.back() < b.date)) {
      throw DataError("bar dates must be strictly increasing: " + to_string(dates_.back()) +
                      " followed by " + to_string(b.date));
    }
    dates_.push_back(b.date);
    prices_.row(static_cast<Eigen::Index>(i)) << b.open, b.high, b.low, b.close;
    volume_.push_back(b.volume);
  }
}

Bar BarSeries::bar(std::size_t k) const {
  if (k < 1 || k > size()) throw std::out_of_range("bar index out of range");
  const auto r = static_cast<Eigen::Index>(k - 1);
  return Bar{dates_[k - 1], prices_(r, 0), prices_(r, 1), prices_(r, 2), prices_(r, 3),
             volume_[k - 1]};
}

std::vector<Bar> BarSeries::bars() const {
  std::vector<Bar> out;
  out.reserve(size());
  for (std::size_t k = 1; k <= size(); ++k) out.push_back(bar(k));
  return out;
}

bool BarSeries::operator==(const BarSeries& other) const {
  return symbol_ == other.symbol_ && dates_ == other.dates_ && prices_ == other.prices_ &&
         volume_ == other.volume_;
}

std::string_view to_string(Severity severity) {
  return severity == Severity::Error ? "error" : "warning";
}

bool ValidationReport::has_errors() const { return count(Severity::Error) > 0; }

std::size_t ValidationReport::count(Severity severity) const {
  return static_cast<std::size_t>(std::count_if(
      issues.begin(), issues.end(), [&](const ValidationIssue& i) { return i.severity == severity; }));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
}

enum Column { kDate, kOpen, kHigh, kLow, kClose, kAdjClose, kVolume, kColumnCount };

constexpr std::array<std::string_view, kColumnCount> kColumnNames = {
    "date", "open", "high", "low", "close", "adj close", "volume"};

constexpr std::array<std::string_view, kColumnCount> kDisplayNames = {
    "Date", "Open", "High", "Low", "Close", "Adj Close", "Volume"};

std::string row_error(std::size_t line, std::string_view what) {
  return "line " + std::to_string(line) + ": " + std::string(what);
}

struct Row {
  std::size_t line;
  Bar bar;
};

}  // namespace

ParsedCsv parse_csv(std::string_view text, std::string symbol) {
  // UTF-8 byte-order mark.
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<std::pair<std::size_t, std::string_view>> lines;
  {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      auto line = text.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!trim(line).empty()) lines.emplace_back(line_no, line);
      start = end + 1;
    }
  }
  if (lines.empty()) throw DataError("CSV input is empty (no header row)");

  std::array<std::optional<std::size_t>, kColumnCount> index{};
  const auto header = split(lines.front().second, ',');
  for (std::size_t i = 0; i < header.size(); ++i) {
    const auto name = lower(header[i]);
    for (std::size_t c = 0; c < kColumnCount; ++c) {
      if (name == kColumnNames[c] || (c == kAdjClose && name == "adj_close")) index[c] = i;
    }
  }
  for (std::size_t c = kDate; c <= kClose; ++c) {
    if (!index[c]) throw DataError("missing required column '" + std::string(kDisplayNames[c]) + "'");
  }

  std::vector<Row> rows;
  std::vector<ValidationIssue> dropped;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto [line_no, line] = lines[li];
    const auto fields = split(line, ',');
    if (fields.size() != header.size()) {
      throw DataError(row_error(line_no, "expected " + std::to_string(header.size()) +
                                             " fields, found " + std::to_string(fields.size())));
    }
    const auto date = parse_date(fields[*index[kDate]]);
    if (!date) {
      throw DataError(row_error(line_no, "unparseable date '" + std::string(fields[*index[kDate]]) + "'"));
    }

    std::optional<std::size_t> null_column;
    std::array<double, 4> price{};
    for (std::size_t c = kOpen; c <= kClose; ++c) {
      const auto field = fields[*index[c]];
      if (field == "null") {
        if (!null_column) null_column = c;
        continue;
      }
      const auto v = parse_number(field);
      if (!v) {
        throw DataError(row_error(line_no, "unparseable " + std::string(kDisplayNames[c]) + " '" +
                                               std::string(field) + "'"));
      }
      price[c - kOpen] = *v;
    }
    if (null_column) {
      dropped.push_back({line_no, std::string(kDisplayNames[*null_column]),
                         "row dropped: null price", Severity::Warning});
      continue;
    }

    std::optional<double> volume;
    if (index[kVolume]) {
      const auto field = fields[*index[kVolume]];
      if (!field.empty() && field != "null") {
        volume = parse_number(field);
        if (!volume) throw DataError(row_error(line_no, "unparseable Volume '" + std::string(field) + "'"));
      }
    }
    rows.push_back({line_no, Bar{*date, price[0], price[1], price[2], price[3], volume}});
  }
  if (rows.empty()) throw DataError("CSV has no usable data rows");

  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.bar.date < b.bar.date; });
  std::vector<Bar> bars;
  bars.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].bar.date == rows[i - 1].bar.date) {
      throw DataError(row_error(rows[i].line, "duplicate date " + to_string(rows[i].bar.date) +
                                                  " (also on line " + std::to_string(rows[i - 1].line) + ")"));
    }
    bars.push_back(rows[i].bar);
  }
  return ParsedCsv{BarSeries(std::move(symbol), bars), std::move(dropped)};
}

void write_csv(std::ostream& out, const BarSeries& series) {
  out << "Date,Open,High,Low,Close,Adj Close,Volume\n";
  for (const Bar& b : series.bars()) {
    out << to_string(b.date) << ',' << format_number(b.open) << ',' << format_number(b.high) << ','
        << format_number(b.low) << ',' << format_number(b.close) << ',' << format_number(b.close)
        << ',' << (b.volume ? format_number(*b.volume) : std::string()) << '\n';
  }
}

std::string write_csv(const BarSeries& series) {
  std::ostringstream out;
  write_csv(out, series);
  return out.str();
}

ValidationReport validate_series(const BarSeries& series, bool strict) {
  ValidationReport report{series.symbol(), {}, series.size()};
  const Severity severity = strict ? Severity::Error : Severity::Warning;
  auto flag = [&](std::size_t k, std::string field, std::string what) {
    report.issues.push_back({k, std::move(field), std::move(what), severity});
  };

  for (std::size_t k = 1; k <= series.size(); ++k) {
    const Bar b = series.bar(k);
    const std::array<std::pair<const char*, double>, 4> prices = {
        {{"open", b.open}, {"high", b.high}, {"low", b.low}, {"close", b.close}}};
    for (const auto& [field, value] : prices) {
      if (!(value > 0.0)) flag(k, field, "non-positive price");
    }
    if (b.high < b.close) flag(k, "high", "high < close");
    if (b.high < b.open) flag(k, "high", "high < open");
    if (b.low > b.close) flag(k, "low", "low > close");
    if (b.low > b.open) flag(k, "low", "low > open");
    if (b.low > b.high) flag(k, "low", "low > high");
    if (b.volume && *b.volume < 0.0) flag(k, "volume", "negative volume");
  }
  return report;
}

BarSeries slice_by_date(const BarSeries& series, Date start, Date end) {
  if (end < start) {
    throw DataError("date window start " + to_string(start) + " is after end " + to_string(end));
  }
  std::vector<Bar> kept;
  for (const Bar& b : series.bars()) {
    if (!(b.date < start) && !(end < b.date)) kept.push_back(b);
  }
  if (kept.empty()) {
    throw DataError("no bars for '" + series.symbol() + "' between " + to_string(start) + " and " +
                    to_string(end));
  }
  return BarSeries(series.symbol(), kept);
}

}  // namespace sutte
