#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sutte/common.hpp"

namespace sutte::app {

/// Bad command line or config file; exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

std::string to_string(OutputFormat format);

struct RunConfig {
  std::string input;
  std::string symbol;
  std::optional<std::pair<Date, Date>> date_window;
  int sma_window = 5;
  std::pair<int, int> macd_windows{12, 26};
  std::size_t horizon = 1;
  bool strict_validation = false;
  std::filesystem::path output_dir;
  OutputFormat output_format = OutputFormat::Csv;
  std::vector<std::string> methods;  // evaluate only; empty means all three
  std::size_t min_regime_bars = 0;
  std::chrono::milliseconds timeout{10000};

  /// Throws UsageError when a field is out of range.
  void check() const;

  /// Method labels after defaults are applied, e.g. {"SUTTE-PRED", "SMA(5)", "MACD(12,26)"}.
  std::vector<std::string> method_labels() const;

  /// Space-separated key=value pairs of every field that shapes artifact
  /// content. output_dir and timeout are left out.
  std::string canonical() const;

  /// 16 hex digits of 64-bit FNV-1a over canonical().
  std::string hash() const;

  /// Comment lines opening every artifact: tool version + hash, then canonical().
  std::vector<std::string> header_lines() const;
};

/// Flat "key = value" file; '#' starts a comment line. Keys are RunConfig
/// field names. Throws UsageError on malformed lines or unknown keys.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

/// Applies one key (a RunConfig field name) to `config`.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Default output directory: $SUTTE_CACHE_DIR if set, else ".sutte".
std::filesystem::path default_output_dir();

std::string tool_version();

}  // namespace sutte::app
