#include "apiswap/process.hpp"

#include "apiswap/error.hpp"

#include <cerrno>
#include <csignal>
#include <cstring>
#include <fcntl.h>
#include <map>
#include <poll.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

extern char **environ;

namespace apiswap {
namespace {

struct Pipe {
  int fd[2] = {-1, -1};
  Pipe()
  {
    if (::pipe2(fd, O_CLOEXEC) != 0) {
      throw Error(Errc::Io, std::string("pipe: ") + std::strerror(errno));
    }
  }
  ~Pipe()
  {
    close_end(0);
    close_end(1);
  }
  void close_end(int i)
  {
    if (fd[i] >= 0) {
      ::close(fd[i]);
      fd[i] = -1;
    }
  }
};

std::vector<std::string> merged_environment(const EnvOverrides &overrides)
{
  std::map<std::string, std::string> vars;
  for (char **e = environ; e && *e; ++e) {
    std::string_view kv(*e);
    const auto eq = kv.find('=');
    if (eq != std::string_view::npos) {
      vars[std::string(kv.substr(0, eq))] = std::string(kv.substr(eq + 1));
    }
  }
  for (const auto &[k, v] : overrides) {
    vars[k] = v;
  }
  std::vector<std::string> out;
  out.reserve(vars.size());
  for (const auto &[k, v] : vars) {
    out.push_back(k + "=" + v);
  }
  return out;
}

ProcessResult run_impl(const std::vector<std::string> &argv, const std::filesystem::path &cwd,
                       std::string_view input, const EnvOverrides &env, const OutputSink *sink)
{
  if (argv.empty()) {
    throw Error(Errc::Io, "run_process: empty argv");
  }
  // Writing to a child that exited early must not kill us.
  static const bool sigpipe_ignored = [] {
    std::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)sigpipe_ignored;

  Pipe in, out, err;
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, in.fd[0], 0);
  posix_spawn_file_actions_adddup2(&actions, out.fd[1], 1);
  posix_spawn_file_actions_adddup2(&actions, err.fd[1], 2);
  if (!cwd.empty()) {
    posix_spawn_file_actions_addchdir_np(&actions, cwd.c_str());
  }

  std::vector<char *> args;
  for (const auto &a : argv) {
    args.push_back(const_cast<char *>(a.c_str()));
  }
  args.push_back(nullptr);

  std::vector<std::string> env_strings = merged_environment(env);
  std::vector<char *> envp;
  for (auto &s : env_strings) {
    envp.push_back(s.data());
  }
  envp.push_back(nullptr);

  // Children get the default SIGPIPE back so they stop when we stop reading.
  posix_spawnattr_t attr;
  posix_spawnattr_init(&attr);
  sigset_t defaults;
  sigemptyset(&defaults);
  sigaddset(&defaults, SIGPIPE);
  posix_spawnattr_setsigdefault(&attr, &defaults);
  posix_spawnattr_setflags(&attr, POSIX_SPAWN_SETSIGDEF);

  pid_t pid = 0;
  const int rc = ::posix_spawnp(&pid, args[0], &actions, &attr, args.data(), envp.data());
  posix_spawn_file_actions_destroy(&actions);
  posix_spawnattr_destroy(&attr);
  if (rc != 0) {
    throw Error(Errc::Io, "cannot start " + argv[0] + ": " + std::strerror(rc));
  }
  in.close_end(0);
  out.close_end(1);
  err.close_end(1);
  if (input.empty()) {
    in.close_end(1);
  } else {
    ::fcntl(in.fd[1], F_SETFL, O_NONBLOCK);
  }

  ProcessResult result;
  std::size_t written = 0;
  char buf[65536];
  while (out.fd[0] >= 0 || err.fd[0] >= 0) {
    pollfd fds[3];
    int n = 0;
    int out_slot = -1, err_slot = -1, in_slot = -1;
    if (out.fd[0] >= 0) {
      out_slot = n;
      fds[n++] = {out.fd[0], POLLIN, 0};
    }
    if (err.fd[0] >= 0) {
      err_slot = n;
      fds[n++] = {err.fd[0], POLLIN, 0};
    }
    if (in.fd[1] >= 0) {
      in_slot = n;
      fds[n++] = {in.fd[1], POLLOUT, 0};
    }
    if (::poll(fds, n, -1) < 0) {
      if (errno == EINTR) {
        continue;
      }
      break;
    }
    auto drain = [&](int slot, Pipe &p, std::string &sink) {
      if (slot < 0 || !(fds[slot].revents & (POLLIN | POLLHUP | POLLERR))) {
        return;
      }
      const ssize_t got = ::read(p.fd[0], buf, sizeof buf);
      if (got > 0) {
        sink.append(buf, static_cast<std::size_t>(got));
      } else if (got == 0 || errno != EINTR) {
        p.close_end(0);
      }
    };
    if (sink && out_slot >= 0 && (fds[out_slot].revents & (POLLIN | POLLHUP | POLLERR))) {
      const ssize_t got = ::read(out.fd[0], buf, sizeof buf);
      if (got > 0) {
        if (!(*sink)(std::string_view(buf, static_cast<std::size_t>(got)))) {
          // Grandchildren may still hold the pipe; closing it ends them too.
          ::kill(pid, SIGTERM);
          out.close_end(0);
        }
      } else if (got == 0 || errno != EINTR) {
        out.close_end(0);
      }
    } else {
      drain(out_slot, out, result.out);
    }
    drain(err_slot, err, result.err);
    if (in_slot >= 0 && (fds[in_slot].revents & (POLLOUT | POLLERR | POLLHUP))) {
      const ssize_t put = ::write(in.fd[1], input.data() + written, input.size() - written);
      if (put > 0) {
        written += static_cast<std::size_t>(put);
      }
      if ((put < 0 && errno != EAGAIN && errno != EINTR) || written == input.size()) {
        in.close_end(1);
      }
    }
  }
  in.close_end(1);

  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    result.exit_code = 128 + WTERMSIG(status);
  }
  return result;
}

} // namespace

ProcessResult run_process(const std::vector<std::string> &argv, const std::filesystem::path &cwd,
                          std::string_view input, const EnvOverrides &env)
{
  return run_impl(argv, cwd, input, env, nullptr);
}

ProcessResult run_process_streaming(const std::vector<std::string> &argv,
                                    const std::filesystem::path &cwd, const EnvOverrides &env,
                                    const OutputSink &sink)
{
  return run_impl(argv, cwd, {}, env, &sink);
}

} // namespace apiswap
