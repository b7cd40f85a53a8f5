#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace apiswap {

struct ZipEntry {
  std::string name;
  std::string data;
};

/// Reads every file entry of a zip/jar held in memory (stored or deflated,
/// CRC-checked). Zip64 archives are rejected. Throws ArchiveCorrupt.
std::vector<ZipEntry> read_zip(std::string_view archive);

/// Writes the archive's files below dest; entry names that would escape dest
/// are rejected. Returns the number of files written.
std::size_t extract_zip(std::string_view archive, const std::filesystem::path &dest);

} // namespace apiswap
