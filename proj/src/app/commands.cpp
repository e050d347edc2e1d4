#include "app/commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "app/artifacts.hpp"
#include "app/plot.hpp"
#include "app/run_config.hpp"
#include "sutte/evaluation.hpp"
#include "sutte/fetch.hpp"
#include "sutte/indicators.hpp"
#include "sutte/market_data.hpp"
#include "sutte/signals.hpp"
#include "sutte/sutte.hpp"

namespace sutte::app {

namespace fs = std::filesystem;

namespace {

struct Context {
  RunConfig config;
  ArtifactLayout layout;
  std::ostream& out;
  std::ostream& err;
};

struct LoadedData {
  BarSeries series;
  ValidationReport report;
};

// ---------------------------------------------------------------------------
// Raw data and validation

std::string obtain_raw(const Context& ctx, bool refresh) {
  const std::string& input = ctx.config.input;
  if (!is_url(input)) {
    if (!fs::is_regular_file(input)) throw DataError("input file not found: " + input);
    std::string text = read_file(input);
    if (refresh) {
      write_file(ctx.layout.raw_csv(), text);
      write_file(ctx.layout.raw_source(), input + "\n");
    }
    return text;
  }
  if (!refresh && fs::exists(ctx.layout.raw_csv()) && fs::exists(ctx.layout.raw_source()) &&
      read_file(ctx.layout.raw_source()) == input + "\n") {
    return read_file(ctx.layout.raw_csv());
  }
  std::string text = fetch_csv(input, ctx.config.timeout);
  write_file(ctx.layout.raw_csv(), text);
  write_file(ctx.layout.raw_source(), input + "\n");
  return text;
}

nlohmann::ordered_json report_json(const ValidationReport& r, bool strict) {
  auto issues = nlohmann::ordered_json::array();
  for (const auto& i : r.issues) {
    issues.push_back({{"row", i.row},
                      {"field", i.field},
                      {"description", i.description},
                      {"severity", std::string(to_string(i.severity))}});
  }
  return {{"symbol", r.symbol}, {"strict", strict}, {"rows_checked", r.rows_checked}, {"issues", issues}};
}

void print_report(std::ostream& os, const ValidationReport& r) {
  os << "validation " << r.symbol << ": rows=" << r.rows_checked << " warnings=" << r.count(Severity::Warning)
     << " errors=" << r.count(Severity::Error) << '\n';
  for (const auto& i : r.issues) {
    os << "  row " << i.row << ' ' << i.field << ": " << i.description << " (" << to_string(i.severity) << ")\n";
  }
}

LoadedData parse_and_check(const Context& ctx, const std::string& raw) {
  auto parsed = parse_csv(raw, ctx.config.symbol);
  BarSeries series = ctx.config.date_window
                         ? slice_by_date(parsed.series, ctx.config.date_window->first, ctx.config.date_window->second)
                         : std::move(parsed.series);
  ValidationReport report = validate_series(series, ctx.config.strict_validation);
  report.issues.insert(report.issues.begin(), parsed.dropped.begin(), parsed.dropped.end());
  return {std::move(series), std::move(report)};
}

/// Bars for every downstream command; fails under strict validation with errors.
LoadedData load(const Context& ctx) {
  auto data = parse_and_check(ctx, obtain_raw(ctx, false));
  if (data.report.has_errors()) {
    print_report(ctx.err, data.report);
    throw DataError("strict validation rejected " + ctx.config.symbol);
  }
  return data;
}

// ---------------------------------------------------------------------------
// Indicators

std::vector<IndicatorSeries> compute_indicators(const Context& ctx, const BarSeries& series) {
  const auto& c = ctx.config;
  std::vector<IndicatorSeries> out;
  std::vector<std::string> failures;
  auto attempt = [&](auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const DataError& e) {
      failures.push_back(e.what());
    }
  };
  attempt([&] { return sutte_l(series); });
  attempt([&] { return sutte_h(series); });
  attempt([&] { return sutte_pred(series); });
  attempt([&] { return sma(series, c.sma_window); });
  attempt([&] { return macd(series, c.macd_windows.first, c.macd_windows.second); });
  if (!failures.empty()) {
    std::string msg = "cannot compute indicators:";
    for (const auto& f : failures) msg += "\n  " + f;
    throw DataError(msg);
  }
  return out;
}

std::vector<IndicatorSeries> write_indicators(const Context& ctx, const BarSeries& series) {
  auto all = compute_indicators(ctx, series);
  for (const auto& ind : all) write_indicator(ctx.layout.indicator(ind.name), ind, ctx.config);
  return all;
}

struct SutteCurves {
  IndicatorSeries low;
  IndicatorSeries high;
};

bool covers(const IndicatorSeries& ind, const BarSeries& series) {
  return ind.valid_from == 2 && ind.size() + 1 == series.size() &&
         std::equal(ind.dates.begin(), ind.dates.end(), series.dates().begin() + 1);
}

/// SUTTE%L/%H from cached artifacts when they belong to this config, else
/// recomputed (and re-persisted with every other indicator).
SutteCurves sutte_curves(const Context& ctx, const std::optional<BarSeries>& known) {
  const auto fmt = ctx.config.output_format;
  auto low = read_indicator(ctx.layout.indicator(kSutteLowName), fmt);
  auto high = read_indicator(ctx.layout.indicator(kSutteHighName), fmt);
  if (low && high) {
    if (low->config_hash != high->config_hash) {
      throw DataError("integrity error: cached " + std::string(kSutteLowName) + " (config " + low->config_hash +
                      ") and " + kSutteHighName + " (config " + high->config_hash + ") come from different runs");
    }
    if (low->config_hash == ctx.config.hash()) {
      if (low->series.name != kSutteLowName || high->series.name != kSutteHighName ||
          low->series.valid_from != high->series.valid_from || low->series.dates != high->series.dates) {
        throw DataError("integrity error: cached SUTTE%L and SUTTE%H do not cover the same bars");
      }
      if (!known || (covers(low->series, *known) && covers(high->series, *known))) {
        low->series.symbol = high->series.symbol = ctx.config.symbol;
        return {std::move(low->series), std::move(high->series)};
      }
    }
  }
  const BarSeries series = known ? *known : load(ctx).series;
  auto all = write_indicators(ctx, series);
  return {std::move(all[0]), std::move(all[1])};
}

// ---------------------------------------------------------------------------
// Commands

int cmd_fetch(const Context& ctx, bool store_raw) {
  const auto data = parse_and_check(ctx, obtain_raw(ctx, store_raw));
  write_file(ctx.layout.validation(), dump(envelope(ctx.config, report_json(data.report, ctx.config.strict_validation))));
  print_report(ctx.out, data.report);
  if (store_raw) ctx.out << "stored " << ctx.layout.raw_csv().string() << " (" << data.series.size() << " bars)\n";
  return data.report.has_errors() ? kExitData : kExitOk;
}

int cmd_indicators(const Context& ctx) {
  const auto data = load(ctx);
  const auto all = write_indicators(ctx, data.series);
  for (const auto& ind : all) {
    ctx.out << ind.name << ": bars " << ind.valid_from << ".." << ind.last_index() << " -> "
            << ctx.layout.indicator(ind.name).string() << '\n';
  }
  return kExitOk;
}

std::vector<SignalEvent> write_signals(const Context& ctx, const SutteCurves& curves) {
  const auto events = detect_crossovers(curves.low, curves.high, ctx.config.min_regime_bars);
  if (ctx.config.output_format == OutputFormat::Json) {
    write_file(ctx.layout.signals(), dump(envelope(ctx.config, {{"symbol", ctx.config.symbol}, {"signals", to_json(events)}})));
  } else {
    std::ostringstream os;
    write_signals_csv(os, events, ctx.config.header_lines());
    write_file(ctx.layout.signals(), os.str());
  }
  return events;
}

int cmd_signals(const Context& ctx) {
  const auto events = write_signals(ctx, sutte_curves(ctx, std::nullopt));
  ctx.out << "signals " << ctx.config.symbol << ": " << to_string(summarize(events)) << '\n';
  return kExitOk;
}

int cmd_evaluate(const Context& ctx) {
  const auto data = load(ctx);
  std::vector<MethodSpec> specs;
  for (const auto& label : ctx.config.method_labels()) specs.push_back(parse_method_spec(label));
  const auto reports = compare_methods(data.series, specs, ctx.config.horizon);

  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  write_file(ctx.layout.evaluation_json(), dump(envelope(ctx.config, {{"symbol", ctx.config.symbol}, {"reports", arr}})));

  const std::string table = render_table(reports);
  std::string text;
  for (const auto& line : ctx.config.header_lines()) text += "# " + line + "\n";
  write_file(ctx.layout.evaluation_table(), text + table);
  ctx.out << table;
  return kExitOk;
}

int cmd_plot(const Context& ctx) {
  const auto data = load(ctx);
  const auto curves = sutte_curves(ctx, data.series);
  const auto pred = sutte_pred(data.series);
  const auto events = write_signals(ctx, curves);

  ChartData chart{&data.series, {&curves.low, &curves.high, &pred}, events};
  write_file(ctx.layout.chart_svg(), render_svg(chart, ctx.config.header_lines()));
  write_file(ctx.layout.chart_csv(), render_long_csv(chart, ctx.config.header_lines()));
  ctx.out << "chart " << ctx.layout.chart_svg().string() << " (" << events.size() << " signal markers)\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Argument handling

struct Parsed {
  std::string command;
  RunConfig config;
};

struct EarlyExit {
  std::string text;
};

Parsed parse_args(const std::vector<std::string>& args) {
  CLI::App cli{"Sutte Indicator toolkit: indicators, crossover signals and forecast evaluation for OHLC data",
               "sutte"};
  cli.set_version_flag("--version", tool_version());

  std::string command;
  std::map<std::string, std::string> flags;
  auto flag = [&](const std::string& name, const std::string& key, const std::string& help) {
    return cli.add_option_function<std::string>(name, [&flags, key](const std::string& v) { flags[key] = v; }, help);
  };
  std::string config_file;
  std::string start;
  std::string end;

  cli.add_option("command", command, "fetch | validate | indicators | signals | evaluate | plot")
      ->required()
      ->check(CLI::IsMember({"fetch", "validate", "indicators", "signals", "evaluate", "plot"}));
  cli.add_option("--config", config_file, "key = value file; flags take precedence");
  flag("--input", "input", "CSV file path or http(s) URL");
  flag("--symbol", "symbol", "symbol identifier, used for file names");
  cli.add_option("--start", start, "first date of the window (YYYY-MM-DD)");
  cli.add_option("--end", end, "last date of the window (YYYY-MM-DD)");
  flag("--sma-window", "sma_window", "SMA window n (default 5)");
  flag("--macd", "macd_windows", "MACD windows S,L (default 12,26)");
  flag("--horizon", "horizon", "forecast horizon in bars (default 1)");
  cli.add_flag_function("--strict", [&flags](std::int64_t) { flags["strict_validation"] = "true"; },
                        "reject OHLC-inconsistent bars");
  flag("--format", "output_format", "csv | json")->check(CLI::IsMember({"csv", "json"}));
  flag("--out", "output_dir", "output directory (default $SUTTE_CACHE_DIR or .sutte)");
  flag("--methods", "methods", "evaluate only: e.g. sutte,sma,macd or SMA(10);MACD(12,26)");
  flag("--min-regime-bars", "min_regime_bars", "bars a new regime must persist before it signals (default 0)");
  flag("--timeout-ms", "timeout_ms", "network timeout in milliseconds (default 10000)");

  std::vector<const char*> argv = {"sutte"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    cli.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw EarlyExit{cli.help()};
  } catch (const CLI::CallForVersion&) {
    throw EarlyExit{tool_version() + "\n"};
  }

  Parsed p;
  p.command = command;
  p.config.output_dir = default_output_dir();
  if (!config_file.empty()) {
    for (const auto& [key, value] : read_config_file(config_file)) apply_setting(p.config, key, value);
  }
  for (const auto& [key, value] : flags) apply_setting(p.config, key, value);
  if (!start.empty() || !end.empty()) {
    const auto current = p.config.date_window;
    const std::string lo = !start.empty() ? start : current ? sutte::to_string(current->first) : "0001-01-01";
    const std::string hi = !end.empty() ? end : current ? sutte::to_string(current->second) : "9999-12-31";
    apply_setting(p.config, "date_window", lo + "," + hi);
  }

  if (p.config.input.empty()) {
    // Fall back to the input recorded by an earlier fetch of this symbol.
    const ArtifactLayout layout(p.config.output_dir, p.config.symbol, p.config.output_format);
    if (!p.config.symbol.empty() && fs::exists(layout.raw_source())) {
      std::string recorded = read_file(layout.raw_source());
      while (!recorded.empty() && (recorded.back() == '\n' || recorded.back() == '\r')) recorded.pop_back();
      p.config.input = recorded;
    } else {
      throw UsageError("--input is required");
    }
  }
  p.config.check();
  return p;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Parsed parsed;
  try {
    parsed = parse_args(args);
  } catch (const EarlyExit& e) {
    out << e.text;
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "sutte: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "sutte: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "sutte: " << e.what() << '\n';
    return kExitData;
  }

  const Context ctx{parsed.config, ArtifactLayout(parsed.config.output_dir, parsed.config.symbol, parsed.config.output_format),
                    out, err};
  try {
    const auto& cmd = parsed.command;
    if (cmd == "fetch") return cmd_fetch(ctx, true);
    if (cmd == "validate") return cmd_fetch(ctx, false);
    if (cmd == "indicators") return cmd_indicators(ctx);
    if (cmd == "signals") return cmd_signals(ctx);
    if (cmd == "evaluate") return cmd_evaluate(ctx);
    if (cmd == "plot") return cmd_plot(ctx);
    err << "sutte: unknown command " << cmd << '\n';
    return kExitUsage;
  } catch (const FetchError& e) {
    err << "sutte: " << e.what() << '\n';
    return e.kind() == FetchErrorKind::BadUrl ? kExitUsage : kExitNetwork;
  } catch (const DataError& e) {
    err << "sutte: " << e.what() << '\n';
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    err << "sutte: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace sutte::app
