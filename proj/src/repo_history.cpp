#include "apiswap/repo_history.hpp"

#include "apiswap/error.hpp"

namespace apiswap {
namespace {

std::vector<std::string_view> split(std::string_view s, char sep)
{
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      next = s.size();
    }
    parts.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
  return parts;
}

std::string strip_trailing_newlines(std::string s)
{
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) {
    s.pop_back();
  }
  return s;
}

bool null_blob(std::string_view id) { return id.find_first_not_of('0') == std::string_view::npos; }

} // namespace

std::string_view to_string(ChangeKind kind) noexcept
{
  switch (kind) {
  case ChangeKind::Modified: return "Modified";
  case ChangeKind::Renamed: return "Renamed";
  case ChangeKind::Added: return "Added";
  case ChangeKind::Deleted: return "Deleted";
  }
  return "Modified";
}

bool is_java_path(std::string_view path) noexcept
{
  return path.size() > 5 && path.substr(path.size() - 5) == ".java";
}

std::string default_branch(const Git &git)
{
  const ProcessResult r = git.exec({"symbolic-ref", "-q", "refs/remotes/origin/HEAD"});
  if (r.exit_code == 0) {
    const std::string ref = strip_trailing_newlines(r.out);
    if (!ref.empty()) {
      return ref;
    }
  }
  return "HEAD";
}

std::vector<CommitStep> linear_history(const Git &git, const std::string &repo_id,
                                       const std::optional<std::string> &branch)
{
  if (!git.is_repository()) {
    throw Error(Errc::NotARepository, git.repo().string() + " is not a git repository");
  }
  const std::string rev = branch && !branch->empty() ? *branch : default_branch(git);
  const auto tip = git.resolve_commit(rev);
  if (!tip) {
    if (!branch && rev == "HEAD") {
      return {}; // unborn HEAD: nothing committed yet
    }
    throw Error(Errc::UnknownBranch, "unknown branch " + rev + " in " + git.repo().string());
  }

  const std::string log =
      git.run({"log", "--first-parent", "--reverse", "--format=%H%x01%P%x01%B%x02", *tip});
  std::vector<CommitStep> steps;
  for (std::string_view record : split(log, '\x02')) {
    while (!record.empty() && (record.front() == '\n' || record.front() == '\r')) {
      record.remove_prefix(1);
    }
    if (record.empty()) {
      continue;
    }
    const auto fields = split(record, '\x01');
    if (fields.size() != 3) {
      throw Error(Errc::GitInvocationError, "unexpected git log record");
    }
    const auto parents = split(fields[1], ' ');
    if (parents.empty() || parents.front().empty()) {
      continue; // root commit
    }
    CommitStep step;
    step.repo_id = repo_id;
    step.sha = std::string(fields[0]);
    step.parent_sha = std::string(parents.front());
    step.message = strip_trailing_newlines(std::string(fields[2]));
    steps.push_back(std::move(step));
  }
  for (auto &step : steps) {
    step.changed_java_files = changed_java_files(git, step.parent_sha, step.sha);
  }
  return steps;
}

std::vector<ChangedFile> changed_java_files(const Git &git, const std::string &parent_sha,
                                            const std::string &sha)
{
  const std::string raw =
      git.run({"diff-tree", "-r", "-z", "-M", "--raw", "--no-abbrev", "--no-commit-id", parent_sha, sha});
  const auto tokens = split(raw, '\0');
  std::vector<ChangedFile> files;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const std::string_view meta = tokens[i++];
    if (meta.empty()) {
      continue;
    }
    if (meta.front() != ':') {
      throw Error(Errc::GitInvocationError, "unexpected diff-tree record: " + std::string(meta));
    }
    // :old_mode new_mode old_blob new_blob status
    const auto cols = split(meta.substr(1), ' ');
    if (cols.size() != 5 || cols[4].empty() || i >= tokens.size()) {
      throw Error(Errc::GitInvocationError, "unexpected diff-tree record: " + std::string(meta));
    }
    const char status = cols[4].front();
    std::string old_blob = null_blob(cols[2]) ? "" : std::string(cols[2]);
    std::string new_blob = null_blob(cols[3]) ? "" : std::string(cols[3]);
    const std::string first(tokens[i++]);
    std::string second;
    if (status == 'R' || status == 'C') {
      if (i >= tokens.size()) {
        throw Error(Errc::GitInvocationError, "diff-tree rename record without target path");
      }
      second = std::string(tokens[i++]);
    }

    ChangedFile f;
    switch (status) {
    case 'A':
    case 'C':
      if (!is_java_path(status == 'C' ? second : first)) {
        continue;
      }
      f = {status == 'C' ? second : first, ChangeKind::Added, "", "", new_blob};
      break;
    case 'D':
      if (!is_java_path(first)) {
        continue;
      }
      f = {first, ChangeKind::Deleted, "", old_blob, ""};
      break;
    case 'R': {
      const bool from_java = is_java_path(first), to_java = is_java_path(second);
      if (from_java && to_java) {
        f = {second, ChangeKind::Renamed, first, old_blob, new_blob};
      } else if (from_java) {
        f = {first, ChangeKind::Deleted, "", old_blob, ""};
      } else if (to_java) {
        f = {second, ChangeKind::Added, "", "", new_blob};
      } else {
        continue;
      }
      break;
    }
    default: // M, T
      if (!is_java_path(first)) {
        continue;
      }
      f = {first, ChangeKind::Modified, "", old_blob, new_blob};
      break;
    }
    files.push_back(std::move(f));
  }
  return files;
}

std::vector<ReplacedCallPair> word_diff(const Git &git, const std::string &parent_sha,
                                        const std::string &sha, const ChangedFile &file)
{
  if (file.kind != ChangeKind::Modified && file.kind != ChangeKind::Renamed) {
    return {};
  }
  std::vector<std::string> args{"diff", "--no-color", "--no-ext-diff", "--word-diff=plain",
                                "--unified=0", "--ignore-all-space", "-M", parent_sha, sha, "--"};
  if (file.kind == ChangeKind::Renamed) {
    args.push_back(":(literal)" + file.old_path);
  }
  args.push_back(":(literal)" + file.path);
  return extract_pairs(parse_word_diff(git.run(args)), file.path);
}

} // namespace apiswap
