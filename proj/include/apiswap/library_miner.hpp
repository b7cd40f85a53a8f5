#pragma once

#include "apiswap/java/surface.hpp"

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace apiswap {

struct LibraryCoordinate {
  std::string group_id;
  std::string artifact_id;
  std::string version;

  /// "group:artifact:version"
  std::string to_string() const;
  /// Accepts "group:artifact:version" and, with allow_missing_version,
  /// "group:artifact". Throws Usage.
  static LibraryCoordinate parse(std::string_view text, bool allow_missing_version = false);

  auto operator<=>(const LibraryCoordinate &) const = default;
};

struct ApiRecord {
  LibraryCoordinate library;
  std::string package_name;
  /// Relative to the unpacked source tree.
  std::string file_path;
  std::string simple_name;
  int arity = 0;
  std::string signature_text;
  std::string declaring_type;
  int start_line = 1;
  /// A @Deprecated annotation is present on the declaration.
  bool deprecated = false;

  bool operator==(const ApiRecord &) const = default;
};

/// Public methods and packages of one library source tree.
struct LibraryContents {
  std::vector<ApiRecord> apis;
  std::set<std::string> packages;
  std::size_t files = 0;
  std::vector<std::string> warnings;
};

/// One ApiRecord per public method declaration; packages are taken from
/// package declarations, so any archive layout works. Files are visited in
/// path order, records in source order.
LibraryContents index_library(const std::filesystem::path &source_tree,
                              const LibraryCoordinate &coord);

class ApiIndex {
public:
  /// Replaces any previous contents for the same coordinate.
  void add(const LibraryCoordinate &coord, LibraryContents contents);

  const std::vector<ApiRecord> &apis() const noexcept { return apis_; }
  const std::map<std::string, std::set<LibraryCoordinate>> &packages() const noexcept
  {
    return packages_;
  }
  std::set<LibraryCoordinate> libraries() const;

  std::vector<const ApiRecord *> find(const std::string &name) const;
  std::vector<const ApiRecord *> find(const std::string &name, int arity) const;
  /// Libraries with at least one API named `name`.
  std::set<LibraryCoordinate> libraries_exporting(const std::string &name) const;

  /// The longest dotted prefix of `dotted_path` (itself included) that is a
  /// known package, or an empty string.
  std::string resolve_package(std::string_view dotted_path) const;

  /// api-index.jsonl and packages.jsonl under dir, written atomically.
  void write(const std::filesystem::path &dir) const;
  static ApiIndex read(const std::filesystem::path &dir);

private:
  void rebuild();

  std::map<LibraryCoordinate, LibraryContents> libraries_;
  std::vector<ApiRecord> apis_;
  std::map<std::string, std::set<LibraryCoordinate>> packages_;
  std::unordered_map<std::string, std::vector<std::size_t>> by_name_;
};

/// HTTP(S) or file:// access to a Maven-layout repository.
class RepositoryClient {
public:
  explicit RepositoryClient(std::string base_url = default_base_url());

  /// $APISWAP_MAVEN_BASE_URL, else Maven Central.
  static std::string default_base_url();

  const std::string &base_url() const noexcept { return base_url_; }
  /// Body of <base>/<relative_path>. Throws NotFound (404 / missing file) or
  /// NetworkError.
  std::string get(const std::string &relative_path);
  std::size_t request_count() const noexcept { return requests_; }

private:
  std::string base_url_;
  std::size_t requests_ = 0;
};

std::string metadata_path(const std::string &group_id, const std::string &artifact_id);
std::string sources_jar_path(const LibraryCoordinate &coord);

/// Component-wise comparison over '.'/'-' separated parts: numeric parts
/// numerically, anything else lexicographically; a missing part sorts first.
int compare_versions(std::string_view a, std::string_view b);

/// The <release> of a maven-metadata.xml document, else its greatest listed
/// version. Throws MetadataParseError.
std::string latest_version_from_metadata(std::string_view xml);

LibraryCoordinate resolve_latest_version(RepositoryClient &client, const std::string &group_id,
                                         const std::string &artifact_id);

/// Downloads and unpacks <artifact>-<version>-sources.jar below
/// cache_dir/<group>/<artifact>/<version>/src. A completed cache entry is
/// returned without any request. Throws NotFound, NetworkError, ArchiveCorrupt.
std::filesystem::path fetch_library_sources(RepositoryClient &client,
                                            const LibraryCoordinate &coord,
                                            const std::filesystem::path &cache_dir);

} // namespace apiswap
