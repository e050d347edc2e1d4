#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "app/run_config.hpp"
#include "sutte/indicators.hpp"

namespace sutte::app {

/// Where each command writes under the output directory.
class ArtifactLayout {
 public:
  ArtifactLayout(std::filesystem::path root, std::string symbol, OutputFormat format)
      : root_(std::move(root)), symbol_(std::move(symbol)), format_(format) {}

  std::filesystem::path raw_csv() const { return root_ / "raw" / (symbol_ + ".csv"); }
  std::filesystem::path raw_source() const { return root_ / "raw" / (symbol_ + ".source"); }
  std::filesystem::path validation() const { return root_ / "raw" / (symbol_ + ".validation.json"); }
  std::filesystem::path indicator(std::string_view series_name) const;
  std::filesystem::path signals() const { return root_ / "signals" / (symbol_ + ext()); }
  std::filesystem::path evaluation_json() const { return root_ / "evaluation" / (symbol_ + ".json"); }
  std::filesystem::path evaluation_table() const { return root_ / "evaluation" / (symbol_ + ".txt"); }
  std::filesystem::path chart_svg() const { return root_ / "plot" / (symbol_ + ".svg"); }
  std::filesystem::path chart_csv() const { return root_ / "plot" / (symbol_ + ".long.csv"); }

 private:
  std::string ext() const { return format_ == OutputFormat::Json ? ".json" : ".csv"; }

  std::filesystem::path root_;
  std::string symbol_;
  OutputFormat format_;
};

/// "SUTTE%L" -> "sutte_l", "MACD(12,26)" -> "macd_12_26".
std::string file_slug(std::string_view series_name);

/// Writes through a sibling temp file and a rename, creating parent directories.
void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

/// JSON artifact envelope: generator, config hash, effective config, then `payload`'s members.
nlohmann::ordered_json envelope(const RunConfig& config, const nlohmann::ordered_json& payload);

std::string dump(const nlohmann::ordered_json& j);

void write_indicator(const std::filesystem::path& path, const IndicatorSeries& ind, const RunConfig& config);

struct CachedIndicator {
  IndicatorSeries series;
  std::string config_hash;
};

/// Reads an indicator artifact written by write_indicator; nullopt if the file is absent.
std::optional<CachedIndicator> read_indicator(const std::filesystem::path& path, OutputFormat format);

}  // namespace sutte::app
