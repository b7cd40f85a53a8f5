#pragma once

#include "apiswap/selector.hpp"

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace apiswap {

struct PipelineConfig {
  /// "group:artifact[:version]"; the latest release is used without a version.
  std::vector<std::string> libraries;
  /// Pre-unpacked source trees in subdirectories named group:artifact:version.
  std::optional<std::filesystem::path> lib_dir;
  std::filesystem::path repo_list;
  std::filesystem::path work_dir = "work";
  /// Source-archive cache; <work_dir>/cache when empty.
  std::filesystem::path cache_dir;
  SelectorConfig selector;
  int jobs = 1;
  std::string base_url;
  std::string git_binary;
  /// Prefix for cloning owner/name entries of the repo list.
  std::string clone_base;
  std::size_t max_file_bytes = std::size_t{1} << 20;
  /// Skip repositories that never add an import of an indexed package.
  bool prepass = true;
  /// Stop analyze after this many newly processed repositories.
  std::optional<std::size_t> max_repos;
  std::optional<std::filesystem::path> labels;
  std::vector<int> thresholds{1, 2, 3, 4, 5};

  /// Defaults, with the environment applied.
  static PipelineConfig defaults();
  /// APISWAP_MAVEN_BASE_URL, APISWAP_GIT and APISWAP_CLONE_BASE override the
  /// matching fields when set.
  void apply_environment();

  std::filesystem::path effective_cache_dir() const;

  /// Throws Usage.
  void validate() const;
};

/// Parses the flat TOML subset used for config files: `key = value` lines,
/// optional [section] headers (keys become "section.key"), strings, integers,
/// booleans and single-line arrays. Throws Usage with the line number.
nlohmann::json parse_toml_subset(std::string_view text);

/// Applies recognised keys; unknown keys raise Usage.
void apply_config(PipelineConfig &config, const nlohmann::json &doc);

/// Loads a .json or .toml file (by extension; other names are tried as JSON
/// first) on top of `config`.
void load_config_file(PipelineConfig &config, const std::filesystem::path &path);

/// "1,2,5" -> {1, 2, 5}. Throws Usage.
std::vector<int> parse_thresholds(std::string_view text);

} // namespace apiswap
