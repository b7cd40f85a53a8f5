#pragma once

#include "apiswap/git.hpp"
#include "apiswap/java/surface.hpp"
#include "apiswap/repo_history.hpp"

#include <atomic>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace apiswap {

using SurfacePtr = std::shared_ptr<const java::FileSurface>;

/// Parse results keyed by blob id. Surfaces are parsed with an empty
/// file_path so that identical content at different paths shares an entry.
class ParseCache {
public:
  explicit ParseCache(std::size_t max_entries = 200000) : max_entries_(max_entries) {}

  SurfacePtr find(const std::string &blob) const;
  SurfacePtr get_or_parse(const std::string &blob, std::string_view source);
  std::size_t size() const;
  std::size_t hits() const;
  void clear();

private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, SurfacePtr> entries_;
  std::size_t max_entries_;
  mutable std::atomic<std::size_t> hits_{0};
};

/// D, I and the import sets of one snapshot, organised per file.
class SnapshotIndex {
public:
  struct Entry {
    std::string blob;
    SurfacePtr surface;
  };

  std::string sha;

  void put(const std::string &path, Entry entry);
  void erase(const std::string &path);
  const Entry *file(const std::string &path) const;
  const std::map<std::string, Entry> &files() const noexcept { return files_; }

  std::size_t declaration_count() const noexcept { return total_decls_; }
  std::size_t invocation_count() const noexcept { return total_calls_; }
  std::size_t count_declarations(const std::string &name) const;
  std::size_t count_declarations(const std::string &name, int arity) const;
  std::size_t count_invocations(const std::string &name) const;
  std::size_t count_invocations(const std::string &name, int arity) const;

  /// First match in path order, then source order; file_path is filled in.
  std::optional<java::MethodDeclaration> find_declaration(const std::string &name, int arity) const;
  /// Declaration named `name` with the smallest arity >= min_arity.
  std::optional<java::MethodDeclaration> find_declaration_at_least(const std::string &name,
                                                                   int min_arity) const;
  std::vector<java::MethodDeclaration> declarations() const;
  std::vector<java::MethodInvocation> invocations() const;

  /// Canonical text form: a header line then one JSON line per file in path order.
  std::string serialize() const;

private:
  void account(const java::FileSurface &s, const std::string &path, int sign);

  std::map<std::string, Entry> files_;
  std::unordered_map<std::string, std::map<std::string, std::size_t>> decl_paths_;
  std::unordered_map<std::string, std::size_t> decl_keys_;
  std::unordered_map<std::string, std::size_t> call_names_;
  std::unordered_map<std::string, std::size_t> call_keys_;
  std::size_t total_decls_ = 0;
  std::size_t total_calls_ = 0;
};

struct SnapshotOptions {
  /// Larger .java blobs are skipped and logged.
  std::size_t max_file_bytes = std::size_t{1} << 20;
};

/// Builds snapshot indices from the object store without touching the
/// working tree.
class SnapshotBuilder {
public:
  SnapshotBuilder(const Git &git, ParseCache &cache, SnapshotOptions options = {});

  /// From-scratch index of every .java blob in the commit's tree.
  /// Throws MissingCommit.
  SnapshotIndex build(const std::string &sha);
  /// Moves an index of the parent commit to `sha` by re-parsing only the
  /// files whose blobs changed.
  void advance(SnapshotIndex &index, const std::string &sha,
               const std::vector<ChangedFile> &changes);

  /// "sha path size" for each oversized file skipped so far.
  const std::vector<std::string> &skipped() const noexcept { return skipped_; }

private:
  void load(SnapshotIndex &index, const std::string &sha,
            const std::vector<std::pair<std::string, std::string>> &path_blobs);

  const Git &git_;
  ParseCache &cache_;
  SnapshotOptions options_;
  std::vector<std::string> skipped_;
};

} // namespace apiswap
