#include "apiswap/error.hpp"

namespace apiswap {

std::string_view to_string(Errc code) noexcept
{
  switch (code) {
  case Errc::NotFound: return "NotFound";
  case Errc::NetworkError: return "NetworkError";
  case Errc::ArchiveCorrupt: return "ArchiveCorrupt";
  case Errc::MetadataParseError: return "MetadataParseError";
  case Errc::NotARepository: return "NotARepository";
  case Errc::UnknownBranch: return "UnknownBranch";
  case Errc::MissingCommit: return "MissingCommit";
  case Errc::GitInvocationError: return "GitInvocationError";
  case Errc::GitUnavailable: return "GitUnavailable";
  case Errc::UnknownPair: return "UnknownPair";
  case Errc::SchemaError: return "SchemaError";
  case Errc::UnresolvedLabel: return "UnresolvedLabel";
  case Errc::Usage: return "Usage";
  case Errc::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string &message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
{
}

} // namespace apiswap
