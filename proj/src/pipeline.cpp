#include "apiswap/pipeline.hpp"

#include "apiswap/clustering.hpp"
#include "apiswap/error.hpp"
#include "apiswap/fsutil.hpp"
#include "apiswap/report.hpp"
#include "apiswap/repo_history.hpp"
#include "apiswap/selector.hpp"
#include "apiswap/serialization.hpp"

#include <spdlog/spdlog.h>

#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <unistd.h>

namespace apiswap {
namespace {

std::string_view trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) {
    return {};
  }
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

/// Runs fn(i) for i in [0, n) on up to `jobs` threads.
template <typename Fn> void parallel_for(std::size_t n, int jobs, Fn &&fn)
{
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        fn(i);
      }
    });
  }
  for (auto &t : pool) {
    t.join();
  }
}

// An added import line of a unified diff: "+import [static] a.b.C;".
std::string added_import_path(std::string_view line)
{
  if (line.substr(0, 1) != "+") {
    return {};
  }
  std::string_view rest = trim(line.substr(1));
  if (rest.substr(0, 7) != "import " && rest.substr(0, 7) != "import\t") {
    return {};
  }
  rest = trim(rest.substr(7));
  if (rest.substr(0, 7) == "static " || rest.substr(0, 7) == "static\t") {
    rest = trim(rest.substr(7));
  }
  const auto semi = rest.find(';');
  if (semi == std::string_view::npos) {
    return {};
  }
  std::string path;
  for (char c : rest.substr(0, semi)) {
    if (c != ' ' && c != '\t') {
      path += c;
    }
  }
  if (path.size() > 2 && path.compare(path.size() - 2, 2, ".*") == 0) {
    path.resize(path.size() - 2);
  }
  return path;
}

std::set<std::string> read_ledger(const std::filesystem::path &path)
{
  std::set<std::string> done;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    const auto tab = line.find('\t');
    if (tab != std::string::npos) {
      done.insert(line.substr(0, tab));
    }
  }
  return done;
}

nlohmann::json telemetry_json(const DetectionTelemetry &t)
{
  nlohmann::json failures = nlohmann::json::object();
  for (std::size_t k = 0; k < kConditionCount; ++k) {
    failures[std::string(to_string(static_cast<Condition>(k)))] = t.failures[k];
  }
  return {{"pairs", t.pairs},       {"events", t.events},         {"groups", t.groups},
          {"emitted", t.emitted},   {"superseded", t.superseded}, {"failures", failures}};
}

DetectionTelemetry telemetry_from_json(const nlohmann::json &j)
{
  DetectionTelemetry t;
  t.pairs = j.value("pairs", std::size_t{0});
  t.events = j.value("events", std::size_t{0});
  t.groups = j.value("groups", std::size_t{0});
  t.emitted = j.value("emitted", std::size_t{0});
  t.superseded = j.value("superseded", std::size_t{0});
  for (std::size_t k = 0; k < kConditionCount; ++k) {
    t.failures[k] = j.at("failures").value(std::string(to_string(static_cast<Condition>(k))),
                                           std::size_t{0});
  }
  return t;
}

ApiIndex load_index(const WorkLayout &work)
{
  if (!std::filesystem::exists(work.api_index()) || !std::filesystem::exists(work.packages())) {
    throw Error(Errc::Usage, "no API index in " + work.root.string() + "; run mine-libs first");
  }
  return ApiIndex::read(work.index_dir());
}

std::vector<CandidateReplacement> load_candidates(const std::filesystem::path &path,
                                                  const char *producer)
{
  if (!std::filesystem::exists(path)) {
    throw Error(Errc::Usage, path.string() + " does not exist; run " + producer + " first");
  }
  return read_candidates(path);
}

Git open_repository(const RepoEntry &entry, const PipelineConfig &config, const WorkLayout &work)
{
  if (!entry.local_path.empty()) {
    return Git(entry.local_path, config.git_binary);
  }
  const auto dir = work.clone_dir(entry.repo_id);
  Git git(dir, config.git_binary);
  if (std::filesystem::exists(dir / ".git") || std::filesystem::exists(dir / "HEAD")) {
    return git;
  }
  auto staging = dir;
  staging += ".partial." + std::to_string(::getpid());
  std::filesystem::remove_all(staging);
  std::filesystem::create_directories(staging.parent_path());
  Git outside(staging.parent_path(), config.git_binary);
  // Full clone: history walking needs every first parent.
  outside.run({"clone", "-q", "--no-tags", config.clone_base + "/" + entry.repo_id + ".git",
               staging.string()});
  std::filesystem::rename(staging, dir);
  return git;
}

} // namespace

std::filesystem::path WorkLayout::repo_candidates(const std::string &repo_id) const
{
  return analyze_dir() / "repos" / (repo_slug(repo_id) + ".jsonl");
}

std::filesystem::path WorkLayout::repo_traces(const std::string &repo_id) const
{
  return analyze_dir() / "traces" / (repo_slug(repo_id) + ".jsonl");
}

std::filesystem::path WorkLayout::repo_summary(const std::string &repo_id) const
{
  return analyze_dir() / "repos" / (repo_slug(repo_id) + ".summary.json");
}

std::filesystem::path WorkLayout::clone_dir(const std::string &repo_id) const
{
  return root / "clones" / repo_slug(repo_id);
}

std::string repo_slug(const std::string &repo_id)
{
  std::string out;
  for (char c : repo_id) {
    if (c == '/') {
      out += "__";
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.') {
      out += c;
    } else {
      out += '_';
    }
  }
  return out;
}

std::vector<RepoEntry> read_repo_list(const std::filesystem::path &path)
{
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error &) {
    throw Error(Errc::Usage, "cannot read repository list " + path.string());
  }
  std::vector<RepoEntry> entries;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    const std::string line(trim(raw));
    if (line.empty() || line.front() == '#') {
      continue;
    }
    RepoEntry e;
    std::error_code ec;
    if (std::filesystem::is_directory(line, ec)) {
      const auto abs = std::filesystem::weakly_canonical(line);
      e.local_path = abs;
      e.repo_id = abs.parent_path().filename().string() + "/" + abs.filename().string();
    } else {
      const auto slash = line.find('/');
      if (slash == std::string::npos || slash == 0 || slash + 1 == line.size() ||
          line.find('/', slash + 1) != std::string::npos) {
        throw Error(Errc::Usage, "repository list entry '" + line +
                                     "' is neither a directory nor owner/name");
      }
      e.repo_id = line;
    }
    if (seen.insert(e.repo_id).second) {
      entries.push_back(std::move(e));
    }
  }
  return entries;
}

bool adds_indexed_import(const Git &git, const ApiIndex &index, const std::string &rev)
{
  bool found = false;
  std::string pending;
  const auto scan = [&](std::string_view line) {
    const std::string path = added_import_path(line);
    if (!path.empty() && !index.resolve_package(path).empty()) {
      found = true;
    }
  };
  const ProcessResult r = git.stream(
      {"log", "--first-parent", "-m", "-p", "-U0", "--no-color", "--no-ext-diff", "--format=",
       rev, "--", "*.java"},
      [&](std::string_view chunk) {
        pending.append(chunk);
        std::size_t start = 0;
        for (auto eol = pending.find('\n'); eol != std::string::npos && !found;
             eol = pending.find('\n', start)) {
          scan(std::string_view(pending).substr(start, eol - start));
          start = eol + 1;
        }
        pending.erase(0, start);
        return !found;
      });
  if (!found && !pending.empty()) {
    scan(pending);
  }
  if (!found && r.exit_code != 0) {
    throw Error(Errc::GitInvocationError, "git log failed during the dependency pre-pass: " + r.err);
  }
  return found;
}

RepoAnalysis analyze_repository(const Git &git, const std::string &repo_id,
                                const ApiIndex &index, ParseCache &cache,
                                const AnalyzeOptions &options)
{
  RepoAnalysis out;
  out.repo_id = repo_id;
  if (!git.is_repository()) {
    throw Error(Errc::NotARepository, git.repo().string() + " is not a git repository");
  }
  const std::string branch = default_branch(git);
  if (!git.resolve_commit(branch)) {
    return out; // nothing committed
  }
  if (options.prepass && !adds_indexed_import(git, index, branch)) {
    out.skipped_by_prepass = true;
    return out;
  }

  const auto steps = linear_history(git, repo_id, branch);
  out.steps = steps.size();
  if (steps.empty()) {
    return out;
  }
  SnapshotBuilder builder(git, cache, {options.max_file_bytes});
  SnapshotIndex current = builder.build(steps.front().parent_sha);
  for (const auto &step : steps) {
    std::vector<ReplacedCallPair> pairs;
    for (const auto &f : step.changed_java_files) {
      auto more = word_diff(git, step.parent_sha, step.sha, f);
      pairs.insert(pairs.end(), std::make_move_iterator(more.begin()),
                   std::make_move_iterator(more.end()));
    }
    if (pairs.empty()) {
      builder.advance(current, step.sha, step.changed_java_files);
      continue;
    }
    SnapshotIndex next = current;
    builder.advance(next, step.sha, step.changed_java_files);
    DetectionResult r = detect(step, current, next, pairs, index);
    out.telemetry += r.telemetry;
    for (auto &c : r.candidates) {
      out.candidates.push_back(std::move(c));
    }
    for (auto &t : r.traces) {
      out.traces.emplace_back(step.sha, std::move(t));
    }
    current = std::move(next);
  }
  return out;
}

StageOutcome cmd_mine_libs(const PipelineConfig &config)
{
  config.validate();
  const WorkLayout work{config.work_dir};
  struct Task {
    std::string label;
    LibraryCoordinate coord;
    std::filesystem::path tree; // empty: fetch from the repository
  };
  std::vector<Task> tasks;
  std::vector<std::string> warnings;
  if (config.lib_dir) {
    if (!std::filesystem::is_directory(*config.lib_dir)) {
      throw Error(Errc::Usage, "library directory " + config.lib_dir->string() + " does not exist");
    }
    std::vector<std::filesystem::path> dirs;
    for (const auto &e : std::filesystem::directory_iterator(*config.lib_dir)) {
      if (e.is_directory()) {
        dirs.push_back(e.path());
      }
    }
    std::sort(dirs.begin(), dirs.end());
    for (const auto &d : dirs) {
      try {
        tasks.push_back({d.filename().string(), LibraryCoordinate::parse(d.filename().string()), d});
      } catch (const Error &e) {
        warnings.push_back(d.string() + ": directory name is not group:artifact:version, skipped");
      }
    }
  }
  for (const auto &text : config.libraries) {
    tasks.push_back({text, LibraryCoordinate::parse(text, true), {}});
  }
  if (tasks.empty()) {
    throw Error(Errc::Usage, "no libraries given (use --library or --lib-dir)");
  }

  std::vector<std::optional<std::pair<LibraryCoordinate, LibraryContents>>> results(tasks.size());
  std::vector<std::string> errors(tasks.size());
  parallel_for(tasks.size(), config.jobs, [&](std::size_t i) {
    Task task = tasks[i];
    try {
      if (task.tree.empty()) {
        RepositoryClient client(config.base_url);
        if (task.coord.version.empty()) {
          task.coord = resolve_latest_version(client, task.coord.group_id, task.coord.artifact_id);
        }
        task.tree = fetch_library_sources(client, task.coord, config.effective_cache_dir());
      }
      results[i] = std::make_pair(task.coord, index_library(task.tree, task.coord));
      spdlog::info("indexed {}: {} public methods", task.coord.to_string(),
                   results[i]->second.apis.size());
    } catch (const Error &e) {
      errors[i] = task.label + ": " + e.what();
    } catch (const std::exception &e) {
      errors[i] = task.label + ": " + e.what();
    }
  });

  ApiIndex index;
  std::size_t ok = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (results[i]) {
      index.add(results[i]->first, std::move(results[i]->second));
      ++ok;
    } else {
      warnings.push_back(errors[i]);
    }
  }
  for (const auto &w : warnings) {
    spdlog::warn("skipped library {}", w);
  }
  std::string skip_log;
  for (const auto &w : warnings) {
    skip_log += w + "\n";
  }
  write_file_atomic(work.library_skips(), skip_log);

  StageOutcome outcome;
  outcome.warnings = warnings;
  if (ok == 0) {
    outcome.exit_code = kExitFailure;
    outcome.summary = "every library failed; no index written";
    return outcome;
  }
  index.write(work.index_dir());
  outcome.exit_code = warnings.empty() ? kExitOk : kExitPartial;
  outcome.summary = "indexed " + std::to_string(ok) + " of " + std::to_string(tasks.size()) +
                    " libraries: " + std::to_string(index.apis().size()) + " APIs in " +
                    std::to_string(index.packages().size()) + " packages";
  return outcome;
}

StageOutcome cmd_analyze(const PipelineConfig &config)
{
  config.validate();
  const WorkLayout work{config.work_dir};
  if (config.repo_list.empty()) {
    throw Error(Errc::Usage, "no repository list given (use --repos)");
  }
  const ApiIndex index = load_index(work);
  const auto repos = read_repo_list(config.repo_list);
  std::filesystem::create_directories(work.analyze_dir());

  const std::set<std::string> ledger = read_ledger(work.ledger());
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < repos.size(); ++i) {
    if (!ledger.count(repos[i].repo_id) ||
        !std::filesystem::exists(work.repo_candidates(repos[i].repo_id)) ||
        !std::filesystem::exists(work.repo_summary(repos[i].repo_id))) {
      todo.push_back(i);
    }
  }
  const std::size_t resumed = repos.size() - todo.size();
  bool stopped_early = false;
  if (config.max_repos && todo.size() > *config.max_repos) {
    todo.resize(*config.max_repos);
    stopped_early = true;
  }

  ParseCache cache;
  std::mutex ledger_mutex;
  std::ofstream ledger_out(work.ledger(), std::ios::app);
  std::vector<std::string> failures(todo.size());
  const AnalyzeOptions options{config.max_file_bytes, config.prepass};
  parallel_for(todo.size(), config.jobs, [&](std::size_t k) {
    const RepoEntry &entry = repos[todo[k]];
    try {
      const Git git = open_repository(entry, config, work);
      const RepoAnalysis a = analyze_repository(git, entry.repo_id, index, cache, options);
      std::string traces;
      for (const auto &[sha, trace] : a.traces) {
        nlohmann::json j = trace;
        j["sha"] = sha;
        traces += to_json_line(j);
      }
      write_file_atomic(work.repo_traces(entry.repo_id), traces);
      write_file_atomic(work.repo_summary(entry.repo_id),
                        to_json_line({{"repo_id", entry.repo_id},
                                      {"steps", a.steps},
                                      {"skipped_by_prepass", a.skipped_by_prepass},
                                      {"candidates", a.candidates.size()},
                                      {"telemetry", telemetry_json(a.telemetry)}}));
      write_file_atomic(work.repo_candidates(entry.repo_id), candidates_to_jsonl(a.candidates));
      const std::lock_guard lock(ledger_mutex);
      ledger_out << entry.repo_id << '\t' << (a.skipped_by_prepass ? "skipped-prepass" : "done")
                 << '\n';
      ledger_out.flush();
      spdlog::info("{}: {} steps, {} candidates{}", entry.repo_id, a.steps, a.candidates.size(),
                   a.skipped_by_prepass ? " (no indexed import ever added; skipped)" : "");
    } catch (const std::exception &e) {
      failures[k] = entry.repo_id + ": " + e.what();
      spdlog::warn("repository {} failed: {}", entry.repo_id, e.what());
    }
  });

  StageOutcome outcome;
  for (const auto &f : failures) {
    if (!f.empty()) {
      outcome.warnings.push_back(f);
    }
  }

  // Assemble in repository-list order from whatever is complete.
  std::string all;
  DetectionTelemetry total;
  std::size_t complete = 0, skipped = 0;
  for (const auto &entry : repos) {
    if (!std::filesystem::exists(work.repo_candidates(entry.repo_id)) ||
        !std::filesystem::exists(work.repo_summary(entry.repo_id))) {
      continue;
    }
    ++complete;
    all += read_file(work.repo_candidates(entry.repo_id));
    const auto summary = nlohmann::json::parse(read_file(work.repo_summary(entry.repo_id)));
    total += telemetry_from_json(summary.at("telemetry"));
    skipped += summary.value("skipped_by_prepass", false) ? 1 : 0;
  }
  const bool finished = complete == repos.size();
  if (finished) {
    write_file_atomic(work.candidates(), all);
    nlohmann::json t = telemetry_json(total);
    t["repositories"] = repos.size();
    t["skipped_by_prepass"] = skipped;
    write_file_atomic(work.telemetry(), t.dump(2) + "\n");
  }

  const std::size_t failed = outcome.warnings.size();
  outcome.summary = std::to_string(complete) + "/" + std::to_string(repos.size()) +
                    " repositories analysed (" + std::to_string(resumed) + " resumed, " +
                    std::to_string(skipped) + " skipped by pre-pass, " + std::to_string(failed) +
                    " failed); " + std::to_string(total.emitted) + " candidates";
  if (stopped_early) {
    outcome.summary += "; stopped early, rerun to resume";
  }
  if (!finished) {
    outcome.summary += "; candidates.jsonl not written until every repository completes";
  }
  if (!todo.empty() && failed == todo.size() && complete == 0) {
    outcome.exit_code = kExitFailure;
  } else if (!finished) {
    outcome.exit_code = kExitPartial;
  }
  return outcome;
}

StageOutcome cmd_filter(const PipelineConfig &config)
{
  config.validate();
  const WorkLayout work{config.work_dir};
  const auto candidates = load_candidates(work.candidates(), "analyze");
  const auto kept = select(candidates, config.selector);
  write_file_atomic(work.filtered(), candidates_to_jsonl(kept));
  return {kExitOk,
          "kept " + std::to_string(kept.size()) + " of " + std::to_string(candidates.size()) +
              " candidates (t >= " + std::to_string(config.selector.min_replacements) +
              (config.selector.drop_trivial ? ", trivial methods dropped)" : ", trivial methods kept)"),
          {}};
}

StageOutcome cmd_cluster(const PipelineConfig &config)
{
  config.validate();
  const WorkLayout work{config.work_dir};
  const auto filtered = load_candidates(work.filtered(), "filter");
  const auto rules = cluster_by_rhs(filtered);
  write_file_atomic(work.rules(), rules_to_jsonl(rules));
  return {kExitOk,
          std::to_string(rules.size()) + " replacement rules from " +
              std::to_string(filtered.size()) + " candidates",
          {}};
}

StageOutcome cmd_report(const PipelineConfig &config)
{
  config.validate();
  const WorkLayout work{config.work_dir};
  const auto candidates = load_candidates(work.candidates(), "analyze");
  if (!config.labels) {
    SelectorConfig all = config.selector;
    all.min_replacements = 1;
    write_file_atomic(work.label_template(), label_template(select(candidates, all)));
    return {kExitOk,
            "no labels given; wrote " + work.label_template().string() +
                " for manual review (fill the label column with TP or FP)",
            {}};
  }
  const auto labeled = import_labels(*config.labels, candidates);
  const auto rows = precision_report(labeled, config.thresholds);
  const std::string table = render_table(rows);
  write_file_atomic(work.report_text(), table);
  write_file_atomic(work.report_csv(), render_csv(rows));
  return {kExitOk, table, {}};
}

StageOutcome cmd_run(const PipelineConfig &config)
{
  StageOutcome analyzed = cmd_analyze(config);
  if (analyzed.exit_code != kExitOk &&
      !std::filesystem::exists(WorkLayout{config.work_dir}.candidates())) {
    return analyzed;
  }
  StageOutcome outcome = analyzed;
  for (auto *stage : {&cmd_filter, &cmd_cluster}) {
    const StageOutcome s = (*stage)(config);
    outcome.summary += "\n" + s.summary;
  }
  if (config.labels) {
    outcome.summary += "\n" + cmd_report(config).summary;
  }
  return outcome;
}

} // namespace apiswap
