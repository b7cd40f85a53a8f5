#include "apiswap/zip_archive.hpp"

#include "apiswap/error.hpp"

#include <zlib.h>

#include <cstdint>
#include <fstream>

namespace apiswap {
namespace {

constexpr std::uint32_t kEndOfCentralDir = 0x06054b50;
constexpr std::uint32_t kCentralHeader = 0x02014b50;
constexpr std::uint32_t kLocalHeader = 0x04034b50;

[[noreturn]] void corrupt(const std::string &why) { throw Error(Errc::ArchiveCorrupt, why); }

struct Reader {
  std::string_view buf;

  std::uint32_t u16(std::size_t at) const
  {
    if (at + 2 > buf.size()) {
      corrupt("read past end of archive");
    }
    return static_cast<std::uint8_t>(buf[at]) | static_cast<std::uint8_t>(buf[at + 1]) << 8;
  }
  std::uint32_t u32(std::size_t at) const { return u16(at) | u16(at + 2) << 16; }
  std::string_view bytes(std::size_t at, std::size_t n) const
  {
    if (at > buf.size() || n > buf.size() - at) {
      corrupt("entry extends past end of archive");
    }
    return buf.substr(at, n);
  }
};

std::string inflate_raw(std::string_view in, std::size_t expected)
{
  std::string out(expected, '\0');
  z_stream zs{};
  if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) {
    corrupt("inflateInit2 failed");
  }
  zs.next_in = reinterpret_cast<Bytef *>(const_cast<char *>(in.data()));
  zs.avail_in = static_cast<uInt>(in.size());
  zs.next_out = reinterpret_cast<Bytef *>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&zs, Z_FINISH);
  const std::size_t produced = zs.total_out;
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || produced != expected) {
    corrupt("deflate stream damaged");
  }
  return out;
}

bool escapes(const std::string &name)
{
  if (name.empty() || name.front() == '/' || name.find('\\') != std::string::npos ||
      name.find(':') != std::string::npos) {
    return true;
  }
  for (const auto &part : std::filesystem::path(name)) {
    if (part == "..") {
      return true;
    }
  }
  return false;
}

} // namespace

std::vector<ZipEntry> read_zip(std::string_view archive)
{
  const Reader r{archive};
  if (archive.size() < 22) {
    corrupt("too small to be a zip archive");
  }
  std::size_t eocd = std::string_view::npos;
  const std::size_t floor = archive.size() > 22 + 0xffff ? archive.size() - 22 - 0xffff : 0;
  for (std::size_t at = archive.size() - 22 + 1; at-- > floor;) {
    if (r.u32(at) == kEndOfCentralDir) {
      eocd = at;
      break;
    }
  }
  if (eocd == std::string_view::npos) {
    corrupt("no end-of-central-directory record");
  }
  const std::uint32_t count = r.u16(eocd + 10);
  const std::uint32_t cd_offset = r.u32(eocd + 16);
  if (count == 0xffff || cd_offset == 0xffffffff) {
    corrupt("zip64 archives are not supported");
  }

  std::vector<ZipEntry> entries;
  std::size_t at = cd_offset;
  for (std::uint32_t k = 0; k < count; ++k) {
    if (r.u32(at) != kCentralHeader) {
      corrupt("bad central directory header");
    }
    const std::uint32_t flags = r.u16(at + 8);
    const std::uint32_t method = r.u16(at + 10);
    const std::uint32_t crc = r.u32(at + 16);
    const std::uint32_t csize = r.u32(at + 20);
    const std::uint32_t usize = r.u32(at + 24);
    const std::uint32_t name_len = r.u16(at + 28);
    const std::uint32_t extra_len = r.u16(at + 30);
    const std::uint32_t comment_len = r.u16(at + 32);
    const std::uint32_t local = r.u32(at + 42);
    std::string name(r.bytes(at + 46, name_len));
    at += 46 + name_len + extra_len + comment_len;

    if (!name.empty() && name.back() == '/') {
      continue;
    }
    if (flags & 1) {
      corrupt("encrypted entry " + name);
    }
    if (csize == 0xffffffff || usize == 0xffffffff || local == 0xffffffff) {
      corrupt("zip64 archives are not supported");
    }
    if (r.u32(local) != kLocalHeader) {
      corrupt("bad local header for " + name);
    }
    const std::size_t data_at = local + 30 + r.u16(local + 26) + r.u16(local + 28);
    const std::string_view raw = r.bytes(data_at, csize);
    std::string data;
    if (method == 0) {
      if (csize != usize) {
        corrupt("stored entry size mismatch for " + name);
      }
      data = std::string(raw);
    } else if (method == 8) {
      data = inflate_raw(raw, usize);
    } else {
      corrupt("unsupported compression method " + std::to_string(method) + " for " + name);
    }
    const auto actual = crc32(0L, reinterpret_cast<const Bytef *>(data.data()),
                              static_cast<uInt>(data.size()));
    if (actual != crc) {
      corrupt("CRC mismatch for " + name);
    }
    entries.push_back({std::move(name), std::move(data)});
  }
  return entries;
}

std::size_t extract_zip(std::string_view archive, const std::filesystem::path &dest)
{
  const auto entries = read_zip(archive);
  for (const auto &e : entries) {
    if (escapes(e.name)) {
      corrupt("entry escapes the destination: " + e.name);
    }
  }
  std::size_t written = 0;
  for (const auto &e : entries) {
    const auto target = dest / e.name;
    std::filesystem::create_directories(target.parent_path());
    std::ofstream out(target, std::ios::binary | std::ios::trunc);
    out.write(e.data.data(), static_cast<std::streamsize>(e.data.size()));
    if (!out) {
      throw Error(Errc::Io, "cannot write " + target.string());
    }
    ++written;
  }
  return written;
}

} // namespace apiswap
