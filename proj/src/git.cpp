#include "apiswap/git.hpp"

#include "apiswap/error.hpp"

#include <cstdlib>

namespace apiswap {
namespace {

const EnvOverrides &isolated_env()
{
  static const EnvOverrides env = {
      {"GIT_CONFIG_NOSYSTEM", "1"}, {"GIT_CONFIG_GLOBAL", "/dev/null"},
      {"GIT_TERMINAL_PROMPT", "0"}, {"LC_ALL", "C"},
      {"GIT_PAGER", "cat"},
  };
  return env;
}

} // namespace

Git::Git(std::filesystem::path repo, std::string binary)
    : repo_(std::move(repo)), binary_(std::move(binary))
{
}

std::string Git::default_binary()
{
  const char *env = std::getenv("APISWAP_GIT");
  return env && *env ? env : "git";
}

ProcessResult Git::exec(const std::vector<std::string> &args, std::string_view input,
                        const EnvOverrides &extra_env) const
{
  std::vector<std::string> argv{binary_};
  argv.insert(argv.end(), args.begin(), args.end());
  EnvOverrides env = isolated_env();
  env.insert(env.end(), extra_env.begin(), extra_env.end());
  try {
    return run_process(argv, repo_, input, env);
  } catch (const Error &e) {
    throw Error(Errc::GitUnavailable, e.what());
  }
}

std::string Git::run(const std::vector<std::string> &args, std::string_view input,
                     const EnvOverrides &extra_env) const
{
  ProcessResult r = exec(args, input, extra_env);
  if (r.exit_code != 0) {
    std::string cmd = "git";
    for (const auto &a : args) {
      cmd += ' ' + a;
    }
    throw Error(Errc::GitInvocationError,
                cmd + " exited " + std::to_string(r.exit_code) + ": " + r.err);
  }
  return std::move(r.out);
}

ProcessResult Git::stream(const std::vector<std::string> &args, const OutputSink &sink) const
{
  std::vector<std::string> argv{binary_};
  argv.insert(argv.end(), args.begin(), args.end());
  try {
    return run_process_streaming(argv, repo_, isolated_env(), sink);
  } catch (const Error &e) {
    throw Error(Errc::GitUnavailable, e.what());
  }
}

bool Git::is_repository() const
{
  std::error_code ec;
  if (!std::filesystem::is_directory(repo_, ec)) {
    return false;
  }
  const ProcessResult r = exec({"rev-parse", "--git-dir"});
  return r.exit_code == 0;
}

std::optional<std::string> Git::resolve_commit(const std::string &rev) const
{
  ProcessResult r = exec({"rev-parse", "--verify", "--quiet", "--end-of-options", rev + "^{commit}"});
  if (r.exit_code != 0) {
    return std::nullopt;
  }
  while (!r.out.empty() && (r.out.back() == '\n' || r.out.back() == '\r')) {
    r.out.pop_back();
  }
  return r.out;
}

std::vector<std::optional<std::string>> Git::read_blobs(const std::vector<std::string> &ids) const
{
  std::vector<std::optional<std::string>> result;
  if (ids.empty()) {
    return result;
  }
  std::string request;
  for (const auto &id : ids) {
    request += id;
    request += '\n';
  }
  const std::string out = run({"cat-file", "--batch"}, request);
  result.reserve(ids.size());
  std::size_t pos = 0;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const std::size_t eol = out.find('\n', pos);
    if (eol == std::string::npos) {
      throw Error(Errc::GitInvocationError, "truncated cat-file output");
    }
    const std::string_view header(out.data() + pos, eol - pos);
    pos = eol + 1;
    if (header.size() >= 8 && header.substr(header.size() - 8) == " missing") {
      result.emplace_back(std::nullopt);
      continue;
    }
    const auto space = header.rfind(' ');
    if (space == std::string_view::npos) {
      throw Error(Errc::GitInvocationError, "malformed cat-file header: " + std::string(header));
    }
    const std::size_t size = std::stoull(std::string(header.substr(space + 1)));
    if (pos + size > out.size()) {
      throw Error(Errc::GitInvocationError, "truncated cat-file payload");
    }
    result.emplace_back(out.substr(pos, size));
    pos += size + 1;
  }
  return result;
}

void Git::require_available(const std::string &binary)
{
  Git probe(std::filesystem::path{}, binary);
  const ProcessResult r = probe.exec({"--version"});
  if (r.exit_code != 0) {
    throw Error(Errc::GitUnavailable, binary + " --version failed: " + r.err);
  }
}

} // namespace apiswap
