#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace apiswap {

struct ProcessResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

using EnvOverrides = std::vector<std::pair<std::string, std::string>>;

/// Runs argv[0] (looked up on PATH) and collects both output streams.
/// A child killed by a signal reports exit_code 128 + signo.
/// Throws Error(Io) when the program cannot be started at all.
ProcessResult run_process(const std::vector<std::string> &argv,
                          const std::filesystem::path &cwd = {},
                          std::string_view input = {}, const EnvOverrides &env = {});

/// Receives stdout chunks as they arrive; returning false stops the child
/// (SIGTERM) and ends the run.
using OutputSink = std::function<bool(std::string_view chunk)>;

/// Streaming variant: stdout goes to `sink` instead of being collected.
/// Returns the result with an empty `out`.
ProcessResult run_process_streaming(const std::vector<std::string> &argv,
                                    const std::filesystem::path &cwd, const EnvOverrides &env,
                                    const OutputSink &sink);

} // namespace apiswap
