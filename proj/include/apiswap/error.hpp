#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace apiswap {

enum class Errc {
  NotFound,
  NetworkError,
  ArchiveCorrupt,
  MetadataParseError,
  NotARepository,
  UnknownBranch,
  MissingCommit,
  GitInvocationError,
  GitUnavailable,
  UnknownPair,
  SchemaError,
  UnresolvedLabel,
  Usage,
  Io,
};

std::string_view to_string(Errc code) noexcept;

/// Error raised by every pipeline stage; code() identifies the failure kind.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string &message);

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

} // namespace apiswap
