#pragma once

#include "apiswap/detector.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace apiswap {

enum class Label { TruePositive, FalsePositive };

std::string_view to_string(Label label) noexcept;

struct CandidateRef {
  std::string repo_id;
  std::string sha;
  std::string method_signature;
  std::string api_simple_name;

  auto operator<=>(const CandidateRef &) const = default;
};

CandidateRef ref_of(const CandidateReplacement &c);

struct LabeledCandidate {
  CandidateRef ref;
  Label label = Label::FalsePositive;
  std::vector<std::string> annotator_ids;
  bool conflict_resolved = false;
  /// Copied from the resolved candidate.
  int replacement_count = 0;
};

/// RFC 4180 records (quoted fields, doubled quotes, CRLF or LF line ends).
/// Throws SchemaError on an unterminated quote.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);
std::string csv_escape(std::string_view field);

/// Parses a labels CSV with header `repo,sha,method_signature,api,label`
/// (extra optional columns: annotators, conflict_resolved) and resolves each
/// row against the stored candidates. Labels may be TP/FP or
/// TruePositive/FalsePositive. Throws SchemaError, UnresolvedLabel.
std::vector<LabeledCandidate> parse_labels(std::string_view csv,
                                           const std::vector<CandidateReplacement> &candidates);
std::vector<LabeledCandidate> import_labels(const std::filesystem::path &path,
                                            const std::vector<CandidateReplacement> &candidates);

/// A labels CSV with every candidate and an empty label column, ready for
/// manual review.
std::string label_template(const std::vector<CandidateReplacement> &candidates);

struct PrecisionRow {
  int threshold = 1;
  int instances = 0;
  int true_positives = 0;

  /// One-decimal percentage rounded half-up, "n/a" when there are no
  /// instances.
  std::string precision_text() const;
};

/// Exact round-half-up of 100 * num / den to one decimal, e.g. "83.8".
std::string format_percent(long long num, long long den);

std::vector<PrecisionRow> precision_report(const std::vector<LabeledCandidate> &labeled,
                                           const std::vector<int> &thresholds);

std::string render_table(const std::vector<PrecisionRow> &rows);
std::string render_csv(const std::vector<PrecisionRow> &rows);

} // namespace apiswap
