#include "apiswap/snapshot.hpp"

#include "apiswap/error.hpp"
#include "apiswap/serialization.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <mutex>

namespace apiswap {
namespace {

std::string key(const std::string &name, int arity) { return name + '/' + std::to_string(arity); }

template <typename Map> std::size_t lookup(const Map &m, const std::string &k)
{
  const auto it = m.find(k);
  return it == m.end() ? 0 : it->second;
}

template <typename Map> void bump(Map &m, const std::string &k, int sign)
{
  auto &v = m[k];
  v += sign;
  if (v == 0) {
    m.erase(k);
  }
}

} // namespace

SurfacePtr ParseCache::find(const std::string &blob) const
{
  std::shared_lock lock(mutex_);
  const auto it = entries_.find(blob);
  if (it == entries_.end()) {
    return nullptr;
  }
  ++hits_;
  return it->second;
}

SurfacePtr ParseCache::get_or_parse(const std::string &blob, std::string_view source)
{
  if (SurfacePtr hit = find(blob)) {
    return hit;
  }
  auto parsed = std::make_shared<const java::FileSurface>(java::parse_file(source, ""));
  std::unique_lock lock(mutex_);
  if (entries_.size() >= max_entries_) {
    entries_.clear();
  }
  entries_[blob] = parsed; // identical content parses identically, so races are benign
  return parsed;
}

std::size_t ParseCache::size() const
{
  std::shared_lock lock(mutex_);
  return entries_.size();
}

std::size_t ParseCache::hits() const { return hits_.load(); }

void ParseCache::clear()
{
  std::unique_lock lock(mutex_);
  entries_.clear();
}

void SnapshotIndex::account(const java::FileSurface &s, const std::string &path, int sign)
{
  for (const auto &d : s.declarations) {
    auto &per_path = decl_paths_[d.simple_name];
    bump(per_path, path, sign);
    if (per_path.empty()) {
      decl_paths_.erase(d.simple_name);
    }
    bump(decl_keys_, key(d.simple_name, d.arity), sign);
  }
  for (const auto &i : s.invocations) {
    bump(call_names_, i.simple_name, sign);
    bump(call_keys_, key(i.simple_name, i.arg_count), sign);
  }
  if (sign > 0) {
    total_decls_ += s.declarations.size();
    total_calls_ += s.invocations.size();
  } else {
    total_decls_ -= s.declarations.size();
    total_calls_ -= s.invocations.size();
  }
}

void SnapshotIndex::put(const std::string &path, Entry entry)
{
  erase(path);
  account(*entry.surface, path, +1);
  files_.emplace(path, std::move(entry));
}

void SnapshotIndex::erase(const std::string &path)
{
  const auto it = files_.find(path);
  if (it == files_.end()) {
    return;
  }
  account(*it->second.surface, path, -1);
  files_.erase(it);
}

const SnapshotIndex::Entry *SnapshotIndex::file(const std::string &path) const
{
  const auto it = files_.find(path);
  return it == files_.end() ? nullptr : &it->second;
}

std::size_t SnapshotIndex::count_declarations(const std::string &name) const
{
  const auto it = decl_paths_.find(name);
  if (it == decl_paths_.end()) {
    return 0;
  }
  std::size_t n = 0;
  for (const auto &[path, count] : it->second) {
    n += count;
  }
  return n;
}

std::size_t SnapshotIndex::count_declarations(const std::string &name, int arity) const
{
  return lookup(decl_keys_, key(name, arity));
}

std::size_t SnapshotIndex::count_invocations(const std::string &name) const
{
  return lookup(call_names_, name);
}

std::size_t SnapshotIndex::count_invocations(const std::string &name, int arity) const
{
  return lookup(call_keys_, key(name, arity));
}

std::optional<java::MethodDeclaration> SnapshotIndex::find_declaration(const std::string &name,
                                                                       int arity) const
{
  if (count_declarations(name, arity) == 0) {
    return std::nullopt;
  }
  return find_declaration_at_least(name, arity).value();
}

std::optional<java::MethodDeclaration>
SnapshotIndex::find_declaration_at_least(const std::string &name, int min_arity) const
{
  const auto it = decl_paths_.find(name);
  if (it == decl_paths_.end()) {
    return std::nullopt;
  }
  const java::MethodDeclaration *best = nullptr;
  const std::string *best_path = nullptr;
  for (const auto &[path, count] : it->second) {
    for (const auto &d : files_.at(path).surface->declarations) {
      if (d.simple_name == name && d.arity >= min_arity && (!best || d.arity < best->arity)) {
        best = &d;
        best_path = &path;
      }
    }
  }
  if (!best) {
    return std::nullopt;
  }
  java::MethodDeclaration out = *best;
  out.file_path = *best_path;
  return out;
}

std::vector<java::MethodDeclaration> SnapshotIndex::declarations() const
{
  std::vector<java::MethodDeclaration> out;
  out.reserve(total_decls_);
  for (const auto &[path, entry] : files_) {
    for (auto d : entry.surface->declarations) {
      d.file_path = path;
      out.push_back(std::move(d));
    }
  }
  return out;
}

std::vector<java::MethodInvocation> SnapshotIndex::invocations() const
{
  std::vector<java::MethodInvocation> out;
  out.reserve(total_calls_);
  for (const auto &[path, entry] : files_) {
    for (auto i : entry.surface->invocations) {
      i.file_path = path;
      out.push_back(std::move(i));
    }
  }
  return out;
}

std::string SnapshotIndex::serialize() const
{
  std::string out = to_json_line({{"sha", sha},
                                  {"files", files_.size()},
                                  {"declarations", total_decls_},
                                  {"invocations", total_calls_}});
  for (const auto &[path, entry] : files_) {
    out += to_json_line({{"path", path}, {"blob", entry.blob}, {"surface", *entry.surface}});
  }
  return out;
}

SnapshotBuilder::SnapshotBuilder(const Git &git, ParseCache &cache, SnapshotOptions options)
    : git_(git), cache_(cache), options_(options)
{
}

void SnapshotBuilder::load(SnapshotIndex &index, const std::string &sha,
                           const std::vector<std::pair<std::string, std::string>> &path_blobs)
{
  std::vector<std::size_t> missing;
  std::vector<SurfacePtr> surfaces(path_blobs.size());
  for (std::size_t k = 0; k < path_blobs.size(); ++k) {
    surfaces[k] = cache_.find(path_blobs[k].second);
    if (!surfaces[k]) {
      missing.push_back(k);
    }
  }
  std::vector<std::string> ids;
  ids.reserve(missing.size());
  for (std::size_t k : missing) {
    ids.push_back(path_blobs[k].second);
  }
  const auto blobs = git_.read_blobs(ids);
  for (std::size_t m = 0; m < missing.size(); ++m) {
    const auto &[path, blob] = path_blobs[missing[m]];
    if (!blobs[m]) {
      throw Error(Errc::MissingCommit, "blob " + blob + " (" + path + ") missing at " + sha);
    }
    if (blobs[m]->size() > options_.max_file_bytes) {
      skipped_.push_back(sha + ' ' + path + ' ' + std::to_string(blobs[m]->size()));
      spdlog::info("skipping oversized {} ({} bytes) at {}", path, blobs[m]->size(), sha);
      continue;
    }
    surfaces[missing[m]] = cache_.get_or_parse(blob, *blobs[m]);
  }
  for (std::size_t k = 0; k < path_blobs.size(); ++k) {
    if (surfaces[k]) {
      index.put(path_blobs[k].first, {path_blobs[k].second, surfaces[k]});
    }
  }
}

SnapshotIndex SnapshotBuilder::build(const std::string &sha)
{
  if (!git_.resolve_commit(sha)) {
    throw Error(Errc::MissingCommit, "commit " + sha + " not found in " + git_.repo().string());
  }
  const std::string listing = git_.run({"ls-tree", "-r", "-z", "-l", "--full-tree", sha});
  std::vector<std::pair<std::string, std::string>> wanted;
  std::size_t pos = 0;
  while (pos < listing.size()) {
    auto end = listing.find('\0', pos);
    if (end == std::string::npos) {
      end = listing.size();
    }
    const std::string_view rec(listing.data() + pos, end - pos);
    pos = end + 1;
    // <mode> SP <type> SP <object> SP+ <size> TAB <path>
    const auto tab = rec.find('\t');
    if (tab == std::string_view::npos) {
      continue;
    }
    const std::string path(rec.substr(tab + 1));
    if (!is_java_path(path)) {
      continue;
    }
    const std::string_view meta = rec.substr(0, tab);
    const auto s1 = meta.find(' ');
    const auto s2 = meta.find(' ', s1 + 1);
    if (meta.substr(s1 + 1, s2 - s1 - 1) != "blob") {
      continue;
    }
    const auto s3 = meta.find(' ', s2 + 1);
    const std::string blob(meta.substr(s2 + 1, s3 - s2 - 1));
    const std::string size_text(meta.substr(meta.find_first_not_of(' ', s3)));
    const std::size_t size = size_text == "-" ? 0 : std::stoull(size_text);
    if (size > options_.max_file_bytes) {
      skipped_.push_back(sha + ' ' + path + ' ' + std::to_string(size));
      spdlog::info("skipping oversized {} ({} bytes) at {}", path, size, sha);
      continue;
    }
    wanted.emplace_back(path, blob);
  }
  SnapshotIndex index;
  index.sha = sha;
  load(index, sha, wanted);
  return index;
}

void SnapshotBuilder::advance(SnapshotIndex &index, const std::string &sha,
                              const std::vector<ChangedFile> &changes)
{
  std::vector<std::pair<std::string, std::string>> wanted;
  for (const auto &c : changes) {
    switch (c.kind) {
    case ChangeKind::Deleted:
      index.erase(c.path);
      break;
    case ChangeKind::Renamed:
      index.erase(c.old_path);
      index.erase(c.path);
      wanted.emplace_back(c.path, c.new_blob);
      break;
    case ChangeKind::Added:
    case ChangeKind::Modified:
      index.erase(c.path);
      wanted.emplace_back(c.path, c.new_blob);
      break;
    }
  }
  index.sha = sha;
  load(index, sha, wanted);
}

} // namespace apiswap
