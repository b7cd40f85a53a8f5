#pragma once

#include "apiswap/java/surface.hpp"
#include "apiswap/library_miner.hpp"
#include "apiswap/repo_history.hpp"
#include "apiswap/snapshot.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace apiswap {

struct CandidateReplacement {
  std::string repo_id;
  std::string sha;
  java::MethodDeclaration custom_method;
  std::string api_simple_name;
  int api_arity = 0;
  std::string api_receiver_text;
  std::set<LibraryCoordinate> candidate_libraries;
  std::set<std::string> file_paths;
  int replacement_count = 0;
  std::string commit_message;

  bool operator==(const CandidateReplacement &) const = default;
};

/// The five conditions followed by the import check, in evaluation order.
enum class Condition {
  DeclaredBefore,     // (1)
  BodyNotWrapper,     // (2)
  ApiInvokedAfter,    // (3)
  MethodGoneAfter,    // (4)
  ApiNotDeclaredAfter,// (5)
  ImportMatched,
};
inline constexpr std::size_t kConditionCount = 6;

/// "(1)".."(5)" and "import".
std::string_view to_string(Condition c) noexcept;

enum class CheckState { Pass, Fail, Skipped };

std::string_view to_string(CheckState s) noexcept;

struct ConditionTrace {
  std::string m_name;
  int m_arity = 0;
  std::string api_name;
  std::array<CheckState, kConditionCount> checks{};
  /// Distinct pairs that produced this (m, API) event group.
  int pair_count = 0;
  bool emitted = false;
  /// All checks passed, but every pair was already credited to an earlier
  /// (m, API) group of the same step.
  bool superseded = false;

  CheckState state(Condition c) const { return checks[static_cast<std::size_t>(c)]; }
  std::optional<Condition> first_failure() const;
};

struct DetectionTelemetry {
  std::size_t pairs = 0;
  std::size_t events = 0;
  std::size_t groups = 0;
  std::size_t emitted = 0;
  std::size_t superseded = 0;
  std::array<std::size_t, kConditionCount> failures{};

  DetectionTelemetry &operator+=(const DetectionTelemetry &o);
};

struct DetectionResult {
  std::vector<CandidateReplacement> candidates;
  std::vector<ConditionTrace> traces;
  DetectionTelemetry telemetry;
};

/// Runs conditions (1)-(5) and the import check over the (m, API) events of
/// one commit step. `before` and `after` index the parent and the commit.
DetectionResult detect(const CommitStep &step, const SnapshotIndex &before,
                       const SnapshotIndex &after, const std::vector<ReplacedCallPair> &pairs,
                       const ApiIndex &index);

/// Trace of the group for m (any arity when m_arity is unset) and API.
/// Throws UnknownPair when detect never saw that pair in the step.
const ConditionTrace &resolve_condition_trace(const DetectionResult &result,
                                              const std::string &m_name,
                                              const std::string &api_name,
                                              std::optional<int> m_arity = std::nullopt);

} // namespace apiswap
