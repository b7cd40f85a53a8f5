#pragma once

#include "apiswap/detector.hpp"
#include "apiswap/library_miner.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace apiswap::fixtures {

enum class NoiseKind {
  Wrapper,            // m already calls the API: trips (2)
  RenameOnly,         // m's file is renamed but m survives: trips (4)
  FormattingChange,   // whitespace churn around the rewrite: still a replacement
  PartialReplacement, // one call site and the declaration stay: trips (4)
  ApiDeclaredLocally, // the commit also declares a method named like the API: trips (5)
  UnindexedImport,    // API class imported from a package outside the index: trips the import check
};

std::string_view to_string(NoiseKind kind) noexcept;
/// Throws Usage for unknown names.
NoiseKind parse_noise_kind(std::string_view name);
/// The condition the noise is built to trip; nullopt for FormattingChange.
std::optional<Condition> tripped_condition(NoiseKind kind) noexcept;

/// A library method that injections can switch to.
struct FixtureApi {
  std::string package_name;
  std::string class_name;
  std::string method_name;
  int arity = 1;
  LibraryCoordinate library;
  /// Name of the home-grown method it replaces.
  std::string custom_name;
};

const std::vector<FixtureApi> &api_pool();
const FixtureApi &pool_entry(const std::string &api_name);

struct InjectionSpec {
  /// Defaults to the pool entry's custom_name.
  std::string method_name;
  /// Body of m including braces; a loop over the arguments when empty.
  std::string body_template;
  /// k, the number of call sites rewritten.
  int call_sites = 1;
  std::string api_name;
  std::set<NoiseKind> noise;
};

struct FixtureRepoSpec {
  /// "owner/name"
  std::string repo_id;
  std::vector<InjectionSpec> injections;
  int filler_commits = 6;
  /// Adds a side branch merged back with --no-ff.
  bool with_merge = false;
};

struct ManifestEntry {
  std::string repo_id;
  std::string sha;
  std::string method_name;
  int method_arity = 0;
  std::string method_signature;
  std::string api_name;
  int expected_count = 0;
  std::vector<std::string> noise;
  /// Condition expected to fail, e.g. "(2)"; empty for must-detect entries.
  std::string reason;

  bool operator==(const ManifestEntry &) const = default;
};

struct FixtureManifest {
  std::vector<ManifestEntry> must_detect;
  std::vector<ManifestEntry> must_not_detect;

  std::string to_json() const;
};

/// Builds a real git repository at repo_dir (which must not exist yet).
/// Every random choice comes from `seed`. Throws GitUnavailable.
FixtureManifest build_fixture(const FixtureRepoSpec &spec, std::uint64_t seed,
                              const std::filesystem::path &repo_dir,
                              const std::string &git_binary = Git::default_binary());

/// Java stubs for every pool API under lib_dir/<group:artifact:version>/,
/// the layout the --lib-dir option reads.
void write_fixture_libraries(const std::filesystem::path &lib_dir);

/// Six repositories, 26 injections covering k = 1..5 and every noise kind;
/// the first repository has more than 50 commits and a merge.
std::vector<FixtureRepoSpec> default_corpus(std::uint64_t seed);

struct Corpus {
  std::filesystem::path root;
  std::filesystem::path lib_dir;
  std::filesystem::path repo_list;
  std::vector<std::filesystem::path> repos;
  FixtureManifest manifest;
};

/// Builds every repository under root/<owner>/<name>, the stub libraries
/// under root/libs, root/repos.txt and root/manifest.json.
Corpus build_corpus(const std::vector<FixtureRepoSpec> &specs, std::uint64_t seed,
                    const std::filesystem::path &root,
                    const std::string &git_binary = Git::default_binary());

} // namespace apiswap::fixtures
