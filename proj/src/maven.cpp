#include "apiswap/error.hpp"
#include "apiswap/fsutil.hpp"
#include "apiswap/library_miner.hpp"
#include "apiswap/zip_archive.hpp"

#include <httplib.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <unistd.h>

namespace apiswap {
namespace {

constexpr std::string_view kCentral = "https://repo1.maven.org/maven2";

std::vector<std::string_view> version_parts(std::string_view v)
{
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= v.size(); ++i) {
    if (i == v.size() || v[i] == '.' || v[i] == '-') {
      parts.push_back(v.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

bool all_digits(std::string_view s)
{
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

int compare_numeric(std::string_view a, std::string_view b)
{
  a.remove_prefix(std::min(a.find_first_not_of('0'), a.size()));
  b.remove_prefix(std::min(b.find_first_not_of('0'), b.size()));
  if (a.size() != b.size()) {
    return a.size() < b.size() ? -1 : 1;
  }
  const int c = a.compare(b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

} // namespace

RepositoryClient::RepositoryClient(std::string base_url) : base_url_(std::move(base_url))
{
  while (!base_url_.empty() && base_url_.back() == '/') {
    base_url_.pop_back();
  }
}

std::string RepositoryClient::default_base_url()
{
  const char *env = std::getenv("APISWAP_MAVEN_BASE_URL");
  return env && *env ? env : std::string(kCentral);
}

std::string RepositoryClient::get(const std::string &relative_path)
{
  ++requests_;
  const std::string url = base_url_ + "/" + relative_path;
  if (base_url_.rfind("file://", 0) == 0) {
    const std::filesystem::path local = url.substr(7);
    if (!std::filesystem::is_regular_file(local)) {
      throw Error(Errc::NotFound, url);
    }
    return read_file(local);
  }

  // scheme://host[:port][/prefix]
  const auto scheme_end = base_url_.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(Errc::NetworkError, "unsupported repository URL " + base_url_);
  }
  const auto path_start = base_url_.find('/', scheme_end + 3);
  const std::string origin = base_url_.substr(0, path_start);
  const std::string prefix = path_start == std::string::npos ? "" : base_url_.substr(path_start);

  httplib::Client client(origin);
  client.set_follow_location(true);
  client.set_connection_timeout(15);
  client.set_read_timeout(120);
  std::string last_error;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const auto res = client.Get(prefix + "/" + relative_path);
    if (!res) {
      last_error = httplib::to_string(res.error());
      continue;
    }
    if (res->status == 200) {
      return res->body;
    }
    if (res->status == 404 || res->status == 410) {
      throw Error(Errc::NotFound, url + " (HTTP " + std::to_string(res->status) + ")");
    }
    last_error = "HTTP " + std::to_string(res->status);
    if (res->status < 500) {
      break;
    }
  }
  throw Error(Errc::NetworkError, url + ": " + last_error);
}

std::string metadata_path(const std::string &group_id, const std::string &artifact_id)
{
  std::string group = group_id;
  std::replace(group.begin(), group.end(), '.', '/');
  return group + "/" + artifact_id + "/maven-metadata.xml";
}

std::string sources_jar_path(const LibraryCoordinate &coord)
{
  std::string group = coord.group_id;
  std::replace(group.begin(), group.end(), '.', '/');
  return group + "/" + coord.artifact_id + "/" + coord.version + "/" + coord.artifact_id + "-" +
         coord.version + "-sources.jar";
}

int compare_versions(std::string_view a, std::string_view b)
{
  const auto pa = version_parts(a);
  const auto pb = version_parts(b);
  for (std::size_t i = 0; i < std::max(pa.size(), pb.size()); ++i) {
    if (i >= pa.size()) {
      return -1;
    }
    if (i >= pb.size()) {
      return 1;
    }
    int c = 0;
    if (all_digits(pa[i]) && all_digits(pb[i])) {
      c = compare_numeric(pa[i], pb[i]);
    } else {
      const int raw = pa[i].compare(pb[i]);
      c = raw < 0 ? -1 : (raw > 0 ? 1 : 0);
    }
    if (c != 0) {
      return c;
    }
  }
  return 0;
}

std::string latest_version_from_metadata(std::string_view xml)
{
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in{std::string(xml)};
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error &e) {
    throw Error(Errc::MetadataParseError, e.what());
  }
  const auto metadata = tree.get_child_optional("metadata");
  if (!metadata) {
    throw Error(Errc::MetadataParseError, "no <metadata> root element");
  }
  if (const auto release = metadata->get_optional<std::string>("versioning.release")) {
    if (!release->empty()) {
      return *release;
    }
  }
  std::string best;
  if (const auto versions = metadata->get_child_optional("versioning.versions")) {
    for (const auto &[tag, node] : *versions) {
      if (tag != "version") {
        continue;
      }
      const std::string v = node.get_value<std::string>();
      if (!v.empty() && (best.empty() || compare_versions(v, best) > 0)) {
        best = v;
      }
    }
  }
  if (best.empty()) {
    throw Error(Errc::MetadataParseError, "metadata lists no release and no versions");
  }
  return best;
}

LibraryCoordinate resolve_latest_version(RepositoryClient &client, const std::string &group_id,
                                         const std::string &artifact_id)
{
  const std::string xml = client.get(metadata_path(group_id, artifact_id));
  return {group_id, artifact_id, latest_version_from_metadata(xml)};
}

std::filesystem::path fetch_library_sources(RepositoryClient &client,
                                            const LibraryCoordinate &coord,
                                            const std::filesystem::path &cache_dir)
{
  const auto root = cache_dir / coord.group_id / coord.artifact_id / coord.version;
  const auto src = root / "src";
  const auto marker = root / ".complete";
  if (std::filesystem::exists(marker) && std::filesystem::is_directory(src)) {
    return src;
  }
  const std::string jar = client.get(sources_jar_path(coord));
  std::filesystem::create_directories(root);
  auto staging = root / ("src.partial." + std::to_string(::getpid()));
  std::filesystem::remove_all(staging);
  try {
    extract_zip(jar, staging);
  } catch (...) {
    std::filesystem::remove_all(staging);
    throw;
  }
  std::filesystem::remove_all(src);
  std::filesystem::rename(staging, src);
  write_file_atomic(marker, coord.to_string() + "\n");
  return src;
}

} // namespace apiswap
