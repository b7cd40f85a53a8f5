// Command-line driver for the mining pipeline.

#include "apiswap/config.hpp"
#include "apiswap/error.hpp"
#include "apiswap/fixtures.hpp"
#include "apiswap/pipeline.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <iostream>

namespace {

// Values given on the command line; applied last.
struct Overrides {
  std::string work_dir, config, lib_dir, repos, base_url, git, labels, thresholds, cache_dir;
  std::vector<std::string> libraries;
  int jobs = 0;
  int min_replacements = 0;
  bool keep_trivial = false;
  bool no_prepass = false;
  std::size_t max_repos = 0;
  int verbosity = 0;
  bool quiet = false;
};

apiswap::PipelineConfig resolve(const Overrides &o)
{
  auto config = apiswap::PipelineConfig::defaults();
  if (!o.config.empty()) {
    apiswap::load_config_file(config, o.config);
  }
  config.apply_environment();
  if (!o.work_dir.empty()) config.work_dir = o.work_dir;
  if (!o.lib_dir.empty()) config.lib_dir = o.lib_dir;
  if (!o.repos.empty()) config.repo_list = o.repos;
  if (!o.base_url.empty()) config.base_url = o.base_url;
  if (!o.git.empty()) config.git_binary = o.git;
  if (!o.labels.empty()) config.labels = o.labels;
  if (!o.cache_dir.empty()) config.cache_dir = o.cache_dir;
  if (!o.thresholds.empty()) config.thresholds = apiswap::parse_thresholds(o.thresholds);
  if (!o.libraries.empty()) config.libraries = o.libraries;
  if (o.jobs != 0) config.jobs = o.jobs;
  if (o.min_replacements != 0) config.selector.min_replacements = o.min_replacements;
  if (o.keep_trivial) config.selector.drop_trivial = false;
  if (o.no_prepass) config.prepass = false;
  if (o.max_repos != 0) config.max_repos = o.max_repos;
  config.validate();
  return config;
}

int report(const apiswap::StageOutcome &outcome)
{
  std::cout << outcome.summary;
  if (!outcome.summary.empty() && outcome.summary.back() != '\n') {
    std::cout << '\n';
  }
  return outcome.exit_code;
}

} // namespace

int main(int argc, char **argv)
{
  auto logger = spdlog::stderr_color_mt("apiswap");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("%^%l%$: %v");

  CLI::App app{"Mine custom-method to library-API replacements from git histories"};
  app.require_subcommand(1);
  Overrides o;
  app.add_option("--work-dir,-w", o.work_dir, "Directory holding every stage's outputs");
  app.add_option("--jobs,-j", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--config,-c", o.config, "TOML or JSON configuration file")->check(CLI::ExistingFile);
  app.add_flag("--verbose,-v", o.verbosity, "More logging (repeatable)");
  app.add_flag("--quiet,-q", o.quiet, "Warnings and errors only");

  auto *mine = app.add_subcommand("mine-libs", "Index the public methods of the libraries");
  mine->add_option("--library,-l", o.libraries, "group:artifact[:version] (repeatable)");
  mine->add_option("--lib-dir", o.lib_dir, "Unpacked source trees named group:artifact:version");
  mine->add_option("--base-url", o.base_url, "Maven repository base URL");
  mine->add_option("--cache-dir", o.cache_dir, "Source archive cache");

  auto add_analyze_flags = [&](CLI::App *cmd) {
    cmd->add_option("--repos,-r", o.repos, "File listing owner/name entries or local repository paths");
    cmd->add_option("--git", o.git, "git binary");
    cmd->add_option("--max-repos", o.max_repos, "Stop after this many newly analysed repositories");
    cmd->add_flag("--no-prepass", o.no_prepass, "Analyse repositories even without an indexed import");
  };
  auto add_selector_flags = [&](CLI::App *cmd) {
    cmd->add_option("--min-replacements,-t", o.min_replacements, "Call-replacement threshold t")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--keep-trivial", o.keep_trivial, "Keep getters, setters and main methods");
  };
  auto add_report_flags = [&](CLI::App *cmd) {
    cmd->add_option("--labels", o.labels, "Labelled candidates CSV")->check(CLI::ExistingFile);
    cmd->add_option("--thresholds", o.thresholds, "Comma-separated thresholds, e.g. 1,2,3,4,5");
  };

  auto *analyze = app.add_subcommand("analyze", "Detect replacement candidates in repository histories");
  add_analyze_flags(analyze);
  auto *filter = app.add_subcommand("filter", "Apply the call-replacement threshold and trivial-method filter");
  add_selector_flags(filter);
  auto *cluster = app.add_subcommand("cluster", "Group filtered candidates into replacement rules");
  auto *rep = app.add_subcommand("report", "Precision per threshold from labelled candidates");
  add_report_flags(rep);
  rep->add_flag("--keep-trivial", o.keep_trivial, "Include trivial methods in the label template");
  auto *run = app.add_subcommand("run", "analyze, filter and cluster (and report with --labels)");
  add_analyze_flags(run);
  add_selector_flags(run);
  add_report_flags(run);

  std::string fixture_out;
  std::uint64_t seed = 1;
  auto *fixture = app.add_subcommand("make-fixture", "Build the synthetic fixture corpus");
  fixture->add_option("dir", fixture_out, "Output directory (must not exist)")->required();
  fixture->add_option("--seed", seed, "Random seed");
  fixture->add_option("--git", o.git, "git binary");

  CLI11_PARSE(app, argc, argv);

  if (o.quiet) {
    spdlog::set_level(spdlog::level::warn);
  } else if (o.verbosity > 0) {
    spdlog::set_level(spdlog::level::debug);
  }

  try {
    if (fixture->parsed()) {
      if (std::filesystem::exists(fixture_out)) {
        throw apiswap::Error(apiswap::Errc::Usage, fixture_out + " already exists");
      }
      const auto git = o.git.empty() ? apiswap::Git::default_binary() : o.git;
      const auto corpus = apiswap::fixtures::build_corpus(apiswap::fixtures::default_corpus(seed),
                                                          seed, fixture_out, git);
      std::cout << corpus.repos.size() << " repositories, "
                << corpus.manifest.must_detect.size() << " must-detect and "
                << corpus.manifest.must_not_detect.size() << " must-not-detect entries\n"
                << "libraries: " << corpus.lib_dir.string() << "\nrepository list: "
                << corpus.repo_list.string() << '\n';
      return apiswap::kExitOk;
    }
    const auto config = resolve(o);
    if (mine->parsed()) return report(apiswap::cmd_mine_libs(config));
    if (analyze->parsed()) return report(apiswap::cmd_analyze(config));
    if (filter->parsed()) return report(apiswap::cmd_filter(config));
    if (cluster->parsed()) return report(apiswap::cmd_cluster(config));
    if (rep->parsed()) return report(apiswap::cmd_report(config));
    if (run->parsed()) return report(apiswap::cmd_run(config));
  } catch (const apiswap::Error &e) {
    spdlog::error("{}", e.what());
    return e.code() == apiswap::Errc::Usage || e.code() == apiswap::Errc::SchemaError ||
                   e.code() == apiswap::Errc::UnresolvedLabel
               ? apiswap::kExitUsage
               : apiswap::kExitFailure;
  } catch (const std::exception &e) {
    spdlog::error("{}", e.what());
    return apiswap::kExitFailure;
  }
  return apiswap::kExitUsage;
}
