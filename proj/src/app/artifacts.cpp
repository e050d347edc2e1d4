#include "app/artifacts.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace sutte::app {

namespace fs = std::filesystem;

std::string file_slug(std::string_view name) {
  std::string out;
  for (const unsigned char c : name) {
    if (std::isalnum(c)) {
      out += static_cast<char>(std::tolower(c));
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

fs::path ArtifactLayout::indicator(std::string_view series_name) const {
  return root_ / "indicators" / (symbol_ + "." + file_slug(series_name) + ext());
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw DataError("failed writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::ordered_json envelope(const RunConfig& config, const nlohmann::ordered_json& payload) {
  nlohmann::ordered_json j = {{"generator", "sutte " + tool_version()},
                              {"config_hash", config.hash()},
                              {"config", config.canonical()}};
  for (const auto& [key, value] : payload.items()) j[key] = value;
  return j;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

void write_indicator(const fs::path& path, const IndicatorSeries& ind, const RunConfig& config) {
  if (config.output_format == OutputFormat::Json) {
    write_file(path, dump(envelope(config, to_json(ind))));
    return;
  }
  auto comment = config.header_lines();
  comment.push_back("series=" + ind.name);
  std::ostringstream out;
  write_indicator_csv(out, ind, comment);
  write_file(path, out.str());
}

namespace {

std::string hash_from_header(const std::string& first_line) {
  const auto pos = first_line.find("config=");
  return pos == std::string::npos ? std::string() : first_line.substr(pos + 7, 16);
}

}  // namespace

std::optional<CachedIndicator> read_indicator(const fs::path& path, OutputFormat format) {
  if (!fs::exists(path)) return std::nullopt;
  const std::string text = read_file(path);
  CachedIndicator cached;
  if (format == OutputFormat::Json) {
    nlohmann::ordered_json j;
    try {
      j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw DataError("corrupt artifact " + path.string() + ": " + e.what());
    }
    cached.series = indicator_from_json(j);
    cached.config_hash = j.value("config_hash", std::string());
    return cached;
  }
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  cached.config_hash = hash_from_header(line);
  for (std::string l; std::getline(in, l) && !l.empty() && l.front() == '#';) {
    if (l.rfind("# series=", 0) == 0) cached.series.name = l.substr(9);
  }
  in.clear();
  in.seekg(0);
  const std::string name = cached.series.name;
  cached.series = read_indicator_csv(in);
  cached.series.name = name;
  return cached;
}

}  // namespace sutte::app
