#pragma once

#include "apiswap/detector.hpp"
#include "apiswap/library_miner.hpp"

#include <compare>
#include <set>
#include <string>
#include <vector>

namespace apiswap {

struct RhsKey {
  std::string api_simple_name;
  std::set<LibraryCoordinate> libraries;

  auto operator<=>(const RhsKey &) const = default;
};

/// One custom implementation on the left-hand side of a rule.
struct RuleMember {
  std::string repo_id;
  std::string sha;
  std::string signature_text;
  std::string body_text;
  std::string file_path;
  std::string commit_message;
  int replacement_count = 0;

  bool operator==(const RuleMember &) const = default;
};

struct ReplacementRule {
  RhsKey rhs_key;
  /// Sorted by (repo_id, sha, signature_text), one entry per triple.
  std::vector<RuleMember> lhs;

  int support() const noexcept { return static_cast<int>(lhs.size()); }

  bool operator==(const ReplacementRule &) const = default;
};

/// Partitions candidates by right-hand side. Candidates naming the same API
/// are keyed by the intersection of their library sets when that intersection
/// is non-empty; otherwise each keeps its own set. Rules come out by
/// descending support, then key.
std::vector<ReplacementRule> cluster_by_rhs(const std::vector<CandidateReplacement> &candidates);

} // namespace apiswap
