#pragma once

#include "apiswap/config.hpp"
#include "apiswap/detector.hpp"
#include "apiswap/git.hpp"
#include "apiswap/library_miner.hpp"
#include "apiswap/snapshot.hpp"

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace apiswap {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitPartial = 2, kExitFailure = 3 };

struct StageOutcome {
  int exit_code = kExitOk;
  /// Human-readable result, printed by the CLI.
  std::string summary;
  std::vector<std::string> warnings;
};

/// File names inside the work dir.
struct WorkLayout {
  std::filesystem::path root;

  std::filesystem::path index_dir() const { return root; }
  std::filesystem::path api_index() const { return root / "api-index.jsonl"; }
  std::filesystem::path packages() const { return root / "packages.jsonl"; }
  std::filesystem::path library_skips() const { return root / "mine-libs-skipped.txt"; }
  std::filesystem::path analyze_dir() const { return root / "analyze"; }
  std::filesystem::path ledger() const { return analyze_dir() / "completed.txt"; }
  std::filesystem::path repo_candidates(const std::string &repo_id) const;
  std::filesystem::path repo_traces(const std::string &repo_id) const;
  std::filesystem::path repo_summary(const std::string &repo_id) const;
  std::filesystem::path clone_dir(const std::string &repo_id) const;
  std::filesystem::path telemetry() const { return analyze_dir() / "telemetry.json"; }
  std::filesystem::path candidates() const { return root / "candidates.jsonl"; }
  std::filesystem::path filtered() const { return root / "filtered.jsonl"; }
  std::filesystem::path rules() const { return root / "rules.jsonl"; }
  std::filesystem::path report_text() const { return root / "report.txt"; }
  std::filesystem::path report_csv() const { return root / "report.csv"; }
  std::filesystem::path label_template() const { return root / "labels-template.csv"; }
};

/// "owner/name" -> "owner__name"
std::string repo_slug(const std::string &repo_id);

struct RepoEntry {
  std::string repo_id;
  /// Existing local clone, or empty when the repository must be cloned.
  std::filesystem::path local_path;
};

/// Lines are either a local repository directory (repo_id = its last two path
/// components) or "owner/name". Blank lines and '#' comments are ignored.
std::vector<RepoEntry> read_repo_list(const std::filesystem::path &path);

struct RepoAnalysis {
  std::string repo_id;
  std::vector<CandidateReplacement> candidates;
  /// (commit sha, trace) for every (m, API) group seen.
  std::vector<std::pair<std::string, ConditionTrace>> traces;
  DetectionTelemetry telemetry;
  std::size_t steps = 0;
  bool skipped_by_prepass = false;
};

struct AnalyzeOptions {
  std::size_t max_file_bytes = std::size_t{1} << 20;
  bool prepass = true;
};

/// True when some first-parent commit adds an import resolving to an indexed
/// package. Stops reading history at the first hit.
bool adds_indexed_import(const Git &git, const ApiIndex &index, const std::string &rev);

/// Runs the analyzer over one repository's first-parent history.
RepoAnalysis analyze_repository(const Git &git, const std::string &repo_id,
                                const ApiIndex &index, ParseCache &cache,
                                const AnalyzeOptions &options = {});

StageOutcome cmd_mine_libs(const PipelineConfig &config);
StageOutcome cmd_analyze(const PipelineConfig &config);
StageOutcome cmd_filter(const PipelineConfig &config);
StageOutcome cmd_cluster(const PipelineConfig &config);
StageOutcome cmd_report(const PipelineConfig &config);
/// analyze, filter and cluster in one go (plus report when labels are set).
StageOutcome cmd_run(const PipelineConfig &config);

} // namespace apiswap
