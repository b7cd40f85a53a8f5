#pragma once

#include "apiswap/process.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace apiswap {

/// Thin wrapper over the git executable, isolated from user/system config so
/// that output formats are stable.
class Git {
public:
  explicit Git(std::filesystem::path repo, std::string binary = default_binary());

  /// $APISWAP_GIT, else "git".
  static std::string default_binary();

  const std::filesystem::path &repo() const noexcept { return repo_; }
  const std::string &binary() const noexcept { return binary_; }

  /// Throws GitUnavailable when the executable cannot be started.
  ProcessResult exec(const std::vector<std::string> &args, std::string_view input = {},
                     const EnvOverrides &extra_env = {}) const;
  /// Like exec, but a nonzero exit raises GitInvocationError.
  std::string run(const std::vector<std::string> &args, std::string_view input = {},
                  const EnvOverrides &extra_env = {}) const;

  /// Streams stdout to `sink`; see run_process_streaming.
  ProcessResult stream(const std::vector<std::string> &args, const OutputSink &sink) const;

  bool is_repository() const;
  /// Full commit id for a revision, or nullopt when it does not name a commit.
  std::optional<std::string> resolve_commit(const std::string &rev) const;
  /// Blob contents in request order; nullopt for ids the object store lacks.
  std::vector<std::optional<std::string>> read_blobs(const std::vector<std::string> &ids) const;

  /// Verifies the binary runs; throws GitUnavailable otherwise.
  static void require_available(const std::string &binary = default_binary());

private:
  std::filesystem::path repo_;
  std::string binary_;
};

} // namespace apiswap
