#include "apiswap/config.hpp"

#include "apiswap/error.hpp"
#include "apiswap/fsutil.hpp"
#include "apiswap/git.hpp"
#include "apiswap/library_miner.hpp"

#include <charconv>
#include <cstdlib>

namespace apiswap {
namespace {

std::string_view trim(std::string_view s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

[[noreturn]] void bad_line(std::size_t line, const std::string &why)
{
  throw Error(Errc::Usage, "config line " + std::to_string(line) + ": " + why);
}

// Parses one value starting at s[pos]; advances pos past it.
nlohmann::json toml_value(std::string_view s, std::size_t &pos, std::size_t line)
{
  const auto skip_ws = [&] {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) {
      ++pos;
    }
  };
  skip_ws();
  if (pos >= s.size()) {
    bad_line(line, "missing value");
  }
  const char c = s[pos];
  if (c == '"' || c == '\'') {
    std::string out;
    ++pos;
    while (pos < s.size() && s[pos] != c) {
      if (c == '"' && s[pos] == '\\' && pos + 1 < s.size()) {
        const char e = s[++pos];
        out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
      } else {
        out += s[pos];
      }
      ++pos;
    }
    if (pos >= s.size()) {
      bad_line(line, "unterminated string");
    }
    ++pos;
    return out;
  }
  if (c == '[') {
    nlohmann::json arr = nlohmann::json::array();
    ++pos;
    for (;;) {
      skip_ws();
      if (pos < s.size() && s[pos] == ']') {
        ++pos;
        return arr;
      }
      arr.push_back(toml_value(s, pos, line));
      skip_ws();
      if (pos < s.size() && s[pos] == ',') {
        ++pos;
      } else if (pos >= s.size() || s[pos] != ']') {
        bad_line(line, "expected ',' or ']' in array");
      }
    }
  }
  std::size_t end = pos;
  while (end < s.size() && s[end] != ',' && s[end] != ']' && s[end] != ' ' && s[end] != '\t') {
    ++end;
  }
  const std::string_view word = s.substr(pos, end - pos);
  pos = end;
  if (word == "true" || word == "false") {
    return word == "true";
  }
  long long n = 0;
  const auto r = std::from_chars(word.data(), word.data() + word.size(), n);
  if (r.ec == std::errc() && r.ptr == word.data() + word.size()) {
    return n;
  }
  bad_line(line, "unsupported value '" + std::string(word) + "'");
}

std::string strip_comment(std::string_view raw)
{
  std::string out;
  char quote = 0;
  for (char c : raw) {
    if (quote) {
      if (c == quote) {
        quote = 0;
      }
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      break;
    }
    out += c;
  }
  return out;
}

template <typename T> T get(const nlohmann::json &v, const std::string &key)
{
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception &) {
    throw Error(Errc::Usage, "config key '" + key + "' has the wrong type");
  }
}

} // namespace

PipelineConfig PipelineConfig::defaults()
{
  PipelineConfig c;
  c.base_url = RepositoryClient::default_base_url();
  c.git_binary = Git::default_binary();
  c.clone_base = "https://github.com";
  c.apply_environment();
  return c;
}

void PipelineConfig::apply_environment()
{
  const auto env = [](const char *name) -> const char * {
    const char *v = std::getenv(name);
    return v && *v ? v : nullptr;
  };
  if (const char *v = env("APISWAP_MAVEN_BASE_URL")) {
    base_url = v;
  }
  if (const char *v = env("APISWAP_GIT")) {
    git_binary = v;
  }
  if (const char *v = env("APISWAP_CLONE_BASE")) {
    clone_base = v;
  }
}

std::filesystem::path PipelineConfig::effective_cache_dir() const
{
  return cache_dir.empty() ? work_dir / "cache" : cache_dir;
}

void PipelineConfig::validate() const
{
  if (jobs < 1) {
    throw Error(Errc::Usage, "jobs must be at least 1");
  }
  selector.validate();
  if (work_dir.empty()) {
    throw Error(Errc::Usage, "work dir must not be empty");
  }
  for (int t : thresholds) {
    if (t < 1) {
      throw Error(Errc::Usage, "thresholds must be positive");
    }
  }
}

nlohmann::json parse_toml_subset(std::string_view text)
{
  nlohmann::json doc = nlohmann::json::object();
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      eol = text.size();
    }
    ++line_no;
    const std::string stripped = strip_comment(text.substr(pos, eol - pos));
    pos = eol + 1;
    const std::string_view line = trim(stripped);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        bad_line(line_no, "malformed section header");
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      bad_line(line_no, "expected key = value");
    }
    std::string key(trim(line.substr(0, eq)));
    if (key.size() >= 2 && key.front() == '"' && key.back() == '"') {
      key = key.substr(1, key.size() - 2);
    }
    if (key.empty()) {
      bad_line(line_no, "empty key");
    }
    const std::string_view rest = line.substr(eq + 1);
    std::size_t vpos = 0;
    nlohmann::json value = toml_value(rest, vpos, line_no);
    if (!trim(rest.substr(vpos)).empty()) {
      bad_line(line_no, "trailing characters after value");
    }
    doc[section.empty() ? key : section + "." + key] = std::move(value);
  }
  return doc;
}

void apply_config(PipelineConfig &c, const nlohmann::json &doc)
{
  if (!doc.is_object()) {
    throw Error(Errc::Usage, "config root must be an object/table");
  }
  // Nested JSON objects are accepted in the same "section.key" form as TOML.
  nlohmann::json flat = nlohmann::json::object();
  for (const auto &[k, v] : doc.items()) {
    if (v.is_object()) {
      for (const auto &[k2, v2] : v.items()) {
        flat[k + "." + k2] = v2;
      }
    } else {
      flat[k] = v;
    }
  }
  for (const auto &[key, v] : flat.items()) {
    if (key == "libraries") {
      c.libraries = get<std::vector<std::string>>(v, key);
    } else if (key == "lib_dir") {
      c.lib_dir = get<std::string>(v, key);
    } else if (key == "repo_list" || key == "repos") {
      c.repo_list = get<std::string>(v, key);
    } else if (key == "work_dir") {
      c.work_dir = get<std::string>(v, key);
    } else if (key == "cache_dir") {
      c.cache_dir = get<std::string>(v, key);
    } else if (key == "jobs") {
      c.jobs = get<int>(v, key);
    } else if (key == "base_url") {
      c.base_url = get<std::string>(v, key);
    } else if (key == "git" || key == "git_binary") {
      c.git_binary = get<std::string>(v, key);
    } else if (key == "clone_base") {
      c.clone_base = get<std::string>(v, key);
    } else if (key == "max_file_bytes") {
      c.max_file_bytes = get<std::size_t>(v, key);
    } else if (key == "prepass") {
      c.prepass = get<bool>(v, key);
    } else if (key == "min_replacements" || key == "selector.min_replacements") {
      c.selector.min_replacements = get<int>(v, key);
    } else if (key == "drop_trivial" || key == "selector.drop_trivial") {
      c.selector.drop_trivial = get<bool>(v, key);
    } else if (key == "keep_trivial" || key == "selector.keep_trivial") {
      c.selector.drop_trivial = !get<bool>(v, key);
    } else if (key == "labels" || key == "report.labels") {
      c.labels = get<std::string>(v, key);
    } else if (key == "thresholds" || key == "report.thresholds") {
      c.thresholds = get<std::vector<int>>(v, key);
    } else {
      throw Error(Errc::Usage, "unknown config key '" + key + "'");
    }
  }
}

void load_config_file(PipelineConfig &config, const std::filesystem::path &path)
{
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error &e) {
    throw Error(Errc::Usage, e.what());
  }
  if (path.extension() == ".toml") {
    apply_config(config, parse_toml_subset(text));
    return;
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    if (path.extension() == ".json") {
      throw Error(Errc::Usage, path.string() + ": " + e.what());
    }
    doc = parse_toml_subset(text);
  }
  apply_config(config, doc);
}

std::vector<int> parse_thresholds(std::string_view text)
{
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) {
      comma = text.size();
    }
    const std::string_view item = trim(text.substr(pos, comma - pos));
    int v = 0;
    const auto r = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || r.ec != std::errc() || r.ptr != item.data() + item.size() || v < 1) {
      throw Error(Errc::Usage, "bad threshold list '" + std::string(text) + "'");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

} // namespace apiswap
