#pragma once

#include "apiswap/git.hpp"
#include "apiswap/word_diff.hpp"

#include <optional>
#include <string>
#include <vector>

namespace apiswap {

enum class ChangeKind { Modified, Renamed, Added, Deleted };

std::string_view to_string(ChangeKind kind) noexcept;

struct ChangedFile {
  /// New path; the old path for deletions.
  std::string path;
  ChangeKind kind = ChangeKind::Modified;
  /// Set for renames only.
  std::string old_path;
  /// Blob ids on each side; empty when the side does not exist.
  std::string old_blob;
  std::string new_blob;

  bool operator==(const ChangedFile &) const = default;
};

struct CommitStep {
  std::string repo_id;
  std::string sha;
  std::string parent_sha;
  std::string message;
  /// Changes touching a .java path on at least one side.
  std::vector<ChangedFile> changed_java_files;
};

bool is_java_path(std::string_view path) noexcept;

/// refs/remotes/origin/HEAD when present, else HEAD.
std::string default_branch(const Git &git);

/// Oldest-first first-parent chain of `branch` (default branch when empty);
/// the root commit yields no step. Empty repositories yield no steps.
/// Throws NotARepository, UnknownBranch.
std::vector<CommitStep> linear_history(const Git &git, const std::string &repo_id,
                                       const std::optional<std::string> &branch = std::nullopt);

/// Rename-aware tree diff between two commits, restricted to .java paths.
/// A rename between a .java and a non-.java path is reported as a deletion or
/// an addition of the .java side.
std::vector<ChangedFile> changed_java_files(const Git &git, const std::string &parent_sha,
                                            const std::string &sha);

/// Whitespace-insensitive word diff (-M) of one Modified or Renamed file,
/// parsed into adjacent deleted/added pairs. Other change kinds yield no pairs.
std::vector<ReplacedCallPair> word_diff(const Git &git, const std::string &parent_sha,
                                        const std::string &sha, const ChangedFile &file);

} // namespace apiswap
