#include "apiswap/library_miner.hpp"

#include "apiswap/error.hpp"
#include "apiswap/fsutil.hpp"
#include "apiswap/java/lexer.hpp"
#include "apiswap/serialization.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <sstream>

namespace apiswap {

std::string LibraryCoordinate::to_string() const
{
  return group_id + ":" + artifact_id + ":" + version;
}

LibraryCoordinate LibraryCoordinate::parse(std::string_view text, bool allow_missing_version)
{
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ':') {
      parts.emplace_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  const bool ok = (parts.size() == 3 || (allow_missing_version && parts.size() == 2)) &&
                  std::none_of(parts.begin(), parts.end(), [](const auto &p) { return p.empty(); });
  if (!ok) {
    throw Error(Errc::Usage, "bad library coordinate '" + std::string(text) +
                                 "' (expected group:artifact" +
                                 (allow_missing_version ? "[:version])" : ":version)"));
  }
  return {parts[0], parts[1], parts.size() == 3 ? parts[2] : ""};
}

LibraryContents index_library(const std::filesystem::path &source_tree,
                              const LibraryCoordinate &coord)
{
  namespace fs = std::filesystem;
  if (!fs::is_directory(source_tree)) {
    throw Error(Errc::NotFound, "source tree " + source_tree.string() + " does not exist");
  }
  std::vector<std::string> files;
  for (auto it = fs::recursive_directory_iterator(source_tree); it != fs::end(it); ++it) {
    if (it->is_regular_file() && it->path().extension() == ".java") {
      files.push_back(fs::relative(it->path(), source_tree).generic_string());
    }
  }
  std::sort(files.begin(), files.end());

  LibraryContents out;
  out.files = files.size();
  for (const auto &rel : files) {
    bool repaired = false;
    const std::string text = java::sanitize_utf8(read_file(source_tree / rel), &repaired);
    const java::FileSurface surface = java::parse_file(text, rel);
    if (surface.parse_degraded) {
      out.warnings.push_back(rel + ": parse degraded");
    }
    for (const auto &e : surface.errors) {
      out.warnings.push_back(rel + ": " + e);
    }
    const std::string package = surface.package_name.value_or("");
    if (surface.package_name) {
      out.packages.insert(package);
    }
    for (const auto &d : surface.declarations) {
      if (!d.is_public()) {
        continue;
      }
      out.apis.push_back({coord, package, rel, d.simple_name, d.arity, d.signature_text,
                          d.declaring_type, d.start_line, d.is_deprecated});
    }
  }
  // Public methods of default-package types still carry a (blank) package key.
  for (const auto &a : out.apis) {
    if (a.package_name.empty()) {
      out.packages.insert("");
      break;
    }
  }
  for (const auto &w : out.warnings) {
    spdlog::debug("{}: {}", coord.to_string(), w);
  }
  return out;
}

void ApiIndex::add(const LibraryCoordinate &coord, LibraryContents contents)
{
  for (auto &a : contents.apis) {
    a.library = coord;
  }
  libraries_[coord] = std::move(contents);
  rebuild();
}

void ApiIndex::rebuild()
{
  apis_.clear();
  packages_.clear();
  by_name_.clear();
  for (const auto &[coord, contents] : libraries_) {
    for (const auto &p : contents.packages) {
      packages_[p].insert(coord);
    }
    for (const auto &a : contents.apis) {
      by_name_[a.simple_name].push_back(apis_.size());
      apis_.push_back(a);
    }
  }
}

std::set<LibraryCoordinate> ApiIndex::libraries() const
{
  std::set<LibraryCoordinate> out;
  for (const auto &[coord, contents] : libraries_) {
    out.insert(coord);
  }
  return out;
}

std::vector<const ApiRecord *> ApiIndex::find(const std::string &name) const
{
  std::vector<const ApiRecord *> out;
  if (const auto it = by_name_.find(name); it != by_name_.end()) {
    for (std::size_t k : it->second) {
      out.push_back(&apis_[k]);
    }
  }
  return out;
}

std::vector<const ApiRecord *> ApiIndex::find(const std::string &name, int arity) const
{
  auto out = find(name);
  out.erase(std::remove_if(out.begin(), out.end(), [&](const ApiRecord *a) { return a->arity != arity; }),
            out.end());
  return out;
}

std::set<LibraryCoordinate> ApiIndex::libraries_exporting(const std::string &name) const
{
  std::set<LibraryCoordinate> out;
  for (const ApiRecord *a : find(name)) {
    out.insert(a->library);
  }
  return out;
}

std::string ApiIndex::resolve_package(std::string_view dotted_path) const
{
  std::string_view candidate = dotted_path;
  while (!candidate.empty()) {
    if (const auto it = packages_.find(std::string(candidate)); it != packages_.end()) {
      return it->first;
    }
    const auto dot = candidate.rfind('.');
    if (dot == std::string_view::npos) {
      break;
    }
    candidate = candidate.substr(0, dot);
  }
  return {};
}

void ApiIndex::write(const std::filesystem::path &dir) const
{
  std::string apis;
  for (const auto &a : apis_) {
    apis += to_json_line(a);
  }
  std::string packages;
  for (const auto &[name, coords] : packages_) {
    packages += to_json_line({{"package", name}, {"libraries", coords}});
  }
  // Libraries that exported nothing are still recorded, so a re-read index
  // knows what was mined.
  std::string libraries;
  for (const auto &[coord, contents] : libraries_) {
    libraries += to_json_line({{"library", coord}, {"files", contents.files},
                               {"apis", contents.apis.size()}});
  }
  write_file_atomic(dir / "api-index.jsonl", apis);
  write_file_atomic(dir / "packages.jsonl", packages);
  write_file_atomic(dir / "libraries.jsonl", libraries);
}

ApiIndex ApiIndex::read(const std::filesystem::path &dir)
{
  const auto for_each_line = [](const std::filesystem::path &path, auto &&fn) {
    std::istringstream in(read_file(path));
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      ++n;
      if (line.empty()) {
        continue;
      }
      try {
        fn(nlohmann::json::parse(line));
      } catch (const nlohmann::json::exception &e) {
        throw Error(Errc::SchemaError, path.string() + ":" + std::to_string(n) + ": " + e.what());
      }
    }
  };

  ApiIndex index;
  if (std::filesystem::exists(dir / "libraries.jsonl")) {
    for_each_line(dir / "libraries.jsonl", [&](const nlohmann::json &j) {
      auto &contents = index.libraries_[j.at("library").get<LibraryCoordinate>()];
      contents.files = j.value("files", std::size_t{0});
    });
  }
  for_each_line(dir / "api-index.jsonl", [&](const nlohmann::json &j) {
    auto record = j.get<ApiRecord>();
    index.libraries_[record.library].apis.push_back(std::move(record));
  });
  for_each_line(dir / "packages.jsonl", [&](const nlohmann::json &j) {
    const auto name = required<std::string>(j, "package");
    for (const auto &coord : j.at("libraries").get<std::vector<LibraryCoordinate>>()) {
      index.libraries_[coord].packages.insert(name);
    }
  });
  index.rebuild();
  return index;
}

} // namespace apiswap
