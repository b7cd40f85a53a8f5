#include "apiswap/fsutil.hpp"

#include "apiswap/error.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace apiswap {

std::string read_file(const std::filesystem::path &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::Io, "cannot read " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void write_file_atomic(const std::filesystem::path &path, std::string_view content)
{
  static std::atomic<unsigned> counter{0};
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      throw Error(Errc::Io, "cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(Errc::Io, "cannot rename onto " + path.string() + ": " + ec.message());
  }
}

} // namespace apiswap
