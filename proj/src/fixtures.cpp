#include "apiswap/fixtures.hpp"

#include "apiswap/error.hpp"
#include "apiswap/fsutil.hpp"
#include "apiswap/git.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <random>

namespace apiswap::fixtures {
namespace {

const LibraryCoordinate kLang3{"org.apache.commons", "commons-lang3", "0-fixture"};
const LibraryCoordinate kText{"org.apache.commons", "commons-text", "0-fixture"};
const LibraryCoordinate kIo{"commons-io", "commons-io", "0-fixture"};
const LibraryCoordinate kCollections{"org.apache.commons", "commons-collections4", "0-fixture"};

struct JavaFile {
  std::string package;
  std::set<std::string> imports;
  std::string class_name;
  std::vector<std::string> members; // written with 4-space indentation steps
  int indent = 4;

  std::string render() const
  {
    std::string out = "package " + package + ";\n\n";
    for (const auto &imp : imports) {
      out += "import " + imp + ";\n";
    }
    if (!imports.empty()) {
      out += "\n";
    }
    out += "public class " + class_name + " {\n";
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (k) {
        out += "\n";
      }
      std::size_t pos = 0;
      const std::string &m = members[k];
      while (pos < m.size()) {
        auto eol = m.find('\n', pos);
        if (eol == std::string::npos) {
          eol = m.size();
        }
        const std::string line = m.substr(pos, eol - pos);
        pos = eol + 1;
        const std::size_t lead = line.find_first_not_of(' ');
        if (lead == std::string::npos) {
          out += "\n";
          continue;
        }
        out += std::string(lead / 4 * indent + lead % 4, ' ') + line.substr(lead) + "\n";
      }
    }
    return out + "}\n";
  }
};

std::string replace_all(std::string s, const std::string &from, const std::string &to)
{
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
  return s;
}

std::string params(int arity, const char *prefix, bool typed)
{
  std::string out;
  for (int i = 0; i < arity; ++i) {
    if (i) {
      out += ", ";
    }
    out += (typed ? "Object " : "") + std::string(prefix) + std::to_string(i);
  }
  return out;
}

std::string default_body(int arity, int variant)
{
  std::string b = "{\n";
  b += "        int total = " + std::to_string(variant) + ";\n";
  b += "        for (int i = 0; i < " + std::to_string(4 + variant % 5) + "; i++) {\n";
  for (int p = 0; p < arity; ++p) {
    b += "            total += String.valueOf(p" + std::to_string(p) + ").length() * i;\n";
  }
  b += "        }\n";
  b += "        return total;\n";
  b += "    }";
  return b;
}

std::string slug(const std::string &repo_id)
{
  std::string out;
  for (char c : repo_id.substr(repo_id.find('/') + 1)) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  return out.empty() ? "repo" : out;
}

// Portable (libstdc++/libc++ agnostic) bounded draw.
std::size_t draw(std::mt19937_64 &rng, std::size_t n) { return n ? rng() % n : 0; }

struct Injection {
  InjectionSpec spec;
  const FixtureApi *api = nullptr;
  int index = 0;
  std::string helper_path;
  std::string m_member;
  std::string signature;
  std::vector<std::string> client_paths;
  std::vector<std::size_t> site_file; // call site -> client_paths index
};

class Builder {
public:
  Builder(const FixtureRepoSpec &spec, std::uint64_t seed, const std::filesystem::path &dir,
          const std::string &git_binary)
      : spec_(spec), rng_(seed), dir_(dir), git_(dir, git_binary), slug_(slug(spec.repo_id))
  {
  }

  FixtureManifest run()
  {
    if (std::filesystem::exists(dir_)) {
      throw Error(Errc::Io, "fixture directory " + dir_.string() + " already exists");
    }
    std::filesystem::create_directories(dir_);
    Git::require_available(git_.binary());
    git_.run({"init", "-q"});
    git_.run({"symbolic-ref", "HEAD", "refs/heads/main"});

    plan_injections();
    for (int k = 0; k < 3; ++k) {
      add_filler_file();
    }
    commit("Initial import");

    // Interleave injections and filler commits.
    std::vector<int> order;
    for (std::size_t k = 0; k < injections_.size(); ++k) {
      order.push_back(static_cast<int>(k));
    }
    for (int k = 0; k < spec_.filler_commits; ++k) {
      order.push_back(-1);
    }
    for (std::size_t k = order.size(); k > 1; --k) {
      std::swap(order[k - 1], order[draw(rng_, k)]);
    }
    const std::size_t merge_at = order.size() / 2;
    FixtureManifest manifest;
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (spec_.with_merge && k == merge_at) {
        merge_side_branch();
      }
      if (order[k] < 0) {
        filler_step();
      } else {
        inject(injections_[static_cast<std::size_t>(order[k])], manifest);
      }
    }
    return manifest;
  }

private:
  std::string java_path(const std::string &sub, const std::string &cls) const
  {
    return "src/main/java/com/example/" + slug_ + "/" + sub + "/" + cls + ".java";
  }
  std::string package(const std::string &sub) const { return "com.example." + slug_ + "." + sub; }

  void touch(const std::string &path) { dirty_.insert(path); }

  void plan_injections()
  {
    int n = 0;
    for (const auto &s : spec_.injections) {
      Injection inj;
      inj.spec = s;
      inj.api = &pool_entry(s.api_name);
      inj.index = ++n;
      if (inj.spec.method_name.empty()) {
        inj.spec.method_name = inj.api->custom_name;
      }
      if (inj.spec.call_sites < 1) {
        throw Error(Errc::Usage, "injection needs at least one call site");
      }
      if (inj.spec.noise.count(NoiseKind::PartialReplacement) && inj.spec.call_sites < 2) {
        throw Error(Errc::Usage, "partial replacement needs at least two call sites");
      }
      const int arity = inj.api->arity;
      const std::string helper = "Helper" + std::to_string(n);
      inj.helper_path = java_path("util", helper);

      std::string body;
      if (inj.spec.noise.count(NoiseKind::Wrapper)) {
        body = "{\n        Object delegated = " + inj.api->class_name + "." + inj.api->method_name +
               "(" + params(arity, "p", false) + ");\n        return delegated;\n    }";
      } else if (!inj.spec.body_template.empty()) {
        body = inj.spec.body_template;
      } else {
        body = default_body(arity, n);
      }
      inj.m_member = "    public static Object " + inj.spec.method_name + "(" +
                     params(arity, "p", true) + ") " + body;

      JavaFile hf{package("util"), {}, helper, {}, 4};
      if (inj.spec.noise.count(NoiseKind::Wrapper)) {
        hf.imports.insert(inj.api->package_name + "." + inj.api->class_name);
      }
      hf.members.push_back(inj.m_member);
      hf.members.push_back("    public static int seed" + std::to_string(n) +
                           "() {\n        return " + std::to_string(17 * n) + ";\n    }");
      const auto parsed = java::parse_file(hf.render(), inj.helper_path);
      inj.signature = parsed.declarations.front().signature_text;
      files_[inj.helper_path] = hf;
      touch(inj.helper_path);

      const std::size_t client_count = 1 + draw(rng_, std::min(inj.spec.call_sites, 3));
      for (std::size_t c = 0; c < client_count; ++c) {
        const std::string cls = "Client" + std::to_string(n) + static_cast<char>('A' + c);
        inj.client_paths.push_back(java_path("app", cls));
        JavaFile cf{package("app"), {package("util") + "." + helper}, cls, {}, 4};
        cf.members.push_back("    public String describe() {\n        StringBuilder sb = new "
                             "StringBuilder();\n        sb.append(\"" + cls +
                             "\");\n        return sb.toString();\n    }");
        files_[inj.client_paths.back()] = cf;
        touch(inj.client_paths.back());
      }
      for (int site = 0; site < inj.spec.call_sites; ++site) {
        const std::size_t f = static_cast<std::size_t>(site) % client_count;
        inj.site_file.push_back(f);
        files_[inj.client_paths[f]].members.push_back(
            "    public Object useSite" + std::to_string(site) + "(" + params(arity, "a", true) +
            ") {\n        Object r = " + helper + "." + inj.spec.method_name + "(" +
            params(arity, "a", false) + ");\n        return r;\n    }");
      }
      injections_.push_back(std::move(inj));
    }
  }

  void inject(const Injection &inj, FixtureManifest &manifest)
  {
    const auto &noise = inj.spec.noise;
    const FixtureApi &api = *inj.api;
    const std::string helper_class = "Helper" + std::to_string(inj.index);
    const std::string old_call = helper_class + "." + inj.spec.method_name + "(";
    const std::string new_call = api.class_name + "." + api.method_name + "(";
    const bool partial = noise.count(NoiseKind::PartialReplacement) > 0;
    const bool formatting = noise.count(NoiseKind::FormattingChange) > 0;
    const std::string import = noise.count(NoiseKind::UnindexedImport)
                                   ? "com.acme.shadow." + api.class_name
                                   : api.package_name + "." + api.class_name;

    int replaced = 0;
    for (int site = 0; site < inj.spec.call_sites; ++site) {
      if (partial && site == inj.spec.call_sites - 1) {
        continue;
      }
      JavaFile &cf = files_[inj.client_paths[inj.site_file[static_cast<std::size_t>(site)]]];
      const std::string head = "    public Object useSite" + std::to_string(site) + "(";
      for (auto &m : cf.members) {
        if (m.rfind(head, 0) == 0) {
          std::string call_args = "(" + params(api.arity, "a", false) + ")";
          std::string updated = replace_all(m, old_call, new_call);
          if (formatting) {
            updated = replace_all(updated, call_args, replace_all(call_args, ", ", ","));
          }
          m = updated;
        }
      }
      cf.imports.insert(import);
      ++replaced;
    }
    for (const auto &path : inj.client_paths) {
      if (formatting) {
        files_[path].indent = 2;
      }
      touch(path);
    }

    JavaFile &hf = files_[inj.helper_path];
    if (!partial && !noise.count(NoiseKind::RenameOnly)) {
      hf.members.erase(std::remove(hf.members.begin(), hf.members.end(), inj.m_member),
                       hf.members.end());
    }
    if (noise.count(NoiseKind::ApiDeclaredLocally)) {
      hf.members.push_back("    public static Object " + api.method_name + "(" +
                           params(api.arity, "p", true) + ") {\n        return p0;\n    }");
    }
    touch(inj.helper_path);
    if (noise.count(NoiseKind::RenameOnly)) {
      JavaFile moved = hf;
      moved.class_name = "Relocated" + std::to_string(inj.index);
      files_.erase(inj.helper_path);
      touch(inj.helper_path);
      const std::string path = java_path("util", moved.class_name);
      files_[path] = moved;
      touch(path);
    }

    const std::string sha = commit("Use " + api.class_name + "." + api.method_name +
                                   " instead of home-grown " + inj.spec.method_name);

    ManifestEntry e;
    e.repo_id = spec_.repo_id;
    e.sha = sha;
    e.method_name = inj.spec.method_name;
    e.method_arity = api.arity;
    e.method_signature = inj.signature;
    e.api_name = api.method_name;
    e.expected_count = replaced;
    std::optional<Condition> reason;
    for (NoiseKind n : noise) {
      e.noise.emplace_back(to_string(n));
      const auto c = tripped_condition(n);
      if (c && (!reason || *c < *reason)) {
        reason = c;
      }
    }
    if (reason) {
      e.reason = std::string(to_string(*reason));
      manifest.must_not_detect.push_back(std::move(e));
    } else {
      manifest.must_detect.push_back(std::move(e));
    }
  }

  void add_filler_file()
  {
    const int k = ++filler_serial_;
    const std::string cls = "Filler" + std::to_string(k);
    JavaFile f{package("misc"), {}, cls, {}, 4};
    f.members.push_back(filler_member(k, 0));
    f.members.push_back(filler_member(k, 1));
    const std::string path = java_path("misc", cls);
    files_[path] = f;
    filler_paths_.push_back(path);
    touch(path);
  }

  std::string filler_member(int file, int n)
  {
    return "    public int fillerTask" + std::to_string(file) + "_" + std::to_string(n) +
           "(int a, int b) {\n        int v = Math.max(a, b) + " + std::to_string(draw(rng_, 100)) +
           ";\n        return v;\n    }";
  }

  std::string &random_filler_member(std::string &path)
  {
    path = filler_paths_[draw(rng_, filler_paths_.size())];
    auto &members = files_[path].members;
    return members[draw(rng_, members.size())];
  }

  void filler_step()
  {
    const std::size_t op = draw(rng_, 6);
    std::string path;
    std::string message;
    if (op == 1) {
      add_filler_file();
      message = "Add " + files_[filler_paths_.back()].class_name;
    } else if (op == 2) {
      const std::size_t k = draw(rng_, filler_paths_.size());
      const std::string from = filler_paths_[k];
      std::string to = from;
      to.insert(to.rfind('/'), "/moved");
      if (from.find("/moved/") != std::string::npos) {
        to = replace_all(from, "/moved/", "/");
      }
      files_[to] = files_[from];
      files_.erase(from);
      touch(from);
      touch(to);
      filler_paths_[k] = to;
      message = "Move " + files_[to].class_name;
    } else if (op == 3 && filler_paths_.size() >= 3) {
      const std::size_t k = draw(rng_, filler_paths_.size());
      path = filler_paths_[k];
      message = "Drop " + files_[path].class_name;
      files_.erase(path);
      touch(path);
      filler_paths_.erase(filler_paths_.begin() + static_cast<std::ptrdiff_t>(k));
    } else if (op == 4) {
      std::string &m = random_filler_member(path);
      m = m.find("Math.max(") != std::string::npos ? replace_all(m, "Math.max(", "Math.min(")
                                                    : replace_all(m, "Math.min(", "Math.max(");
      touch(path);
      message = "Flip bound in " + files_[path].class_name;
    } else if (op == 5) {
      random_filler_member(path);
      auto &f = files_[path];
      const int file_no = std::stoi(f.class_name.substr(6));
      f.members.push_back(filler_member(file_no, static_cast<int>(f.members.size()) + 100));
      touch(path);
      message = "Extend " + f.class_name;
    } else {
      std::string &m = random_filler_member(path);
      const auto plus = m.find(") + ");
      const auto semi = m.find(';', plus);
      m = m.substr(0, plus + 4) + std::to_string(draw(rng_, 1000)) + m.substr(semi);
      touch(path);
      message = "Tune " + files_[path].class_name;
    }
    commit(message);
  }

  void merge_side_branch()
  {
    git_.run({"checkout", "-q", "-b", "side"});
    filler_step();
    git_.run({"checkout", "-q", "main"});
    // Only the new file is written here; the side branch's edits arrive with the merge.
    add_filler_file();
    commit("Add " + files_[filler_paths_.back()].class_name + " on main");
    git_.run({"merge", "-q", "--no-ff", "-m", "Merge branch 'side'", "side"}, {}, env());
    ++commits_;
    git_.run({"branch", "-q", "-D", "side"});
  }

  EnvOverrides env() const
  {
    const std::string date = std::to_string(1577836800 + 3600 * commits_) + " +0000";
    return {{"GIT_AUTHOR_NAME", "Fixture Dev"},     {"GIT_AUTHOR_EMAIL", "dev@fixture.invalid"},
            {"GIT_AUTHOR_DATE", date},              {"GIT_COMMITTER_NAME", "Fixture Dev"},
            {"GIT_COMMITTER_EMAIL", "dev@fixture.invalid"}, {"GIT_COMMITTER_DATE", date}};
  }

  std::string commit(const std::string &message)
  {
    for (const auto &path : dirty_) {
      const auto full = dir_ / path;
      const auto it = files_.find(path);
      if (it == files_.end()) {
        std::filesystem::remove(full);
      } else {
        write_file_atomic(full, it->second.render());
      }
    }
    dirty_.clear();
    git_.run({"add", "-A"});
    git_.run({"commit", "-q", "--allow-empty", "--no-verify", "-m", message}, {}, env());
    ++commits_;
    return *git_.resolve_commit("HEAD");
  }

  const FixtureRepoSpec &spec_;
  std::mt19937_64 rng_;
  std::filesystem::path dir_;
  Git git_;
  std::string slug_;
  std::map<std::string, JavaFile> files_;
  std::set<std::string> dirty_;
  std::vector<Injection> injections_;
  std::vector<std::string> filler_paths_;
  int filler_serial_ = 0;
  int commits_ = 0;
};

nlohmann::json entry_json(const ManifestEntry &e)
{
  return {{"repo_id", e.repo_id},
          {"sha", e.sha},
          {"method_name", e.method_name},
          {"method_arity", e.method_arity},
          {"method_signature", e.method_signature},
          {"api_name", e.api_name},
          {"expected_count", e.expected_count},
          {"noise", e.noise},
          {"reason", e.reason}};
}

} // namespace

std::string_view to_string(NoiseKind kind) noexcept
{
  switch (kind) {
  case NoiseKind::Wrapper: return "wrapper";
  case NoiseKind::RenameOnly: return "rename-only";
  case NoiseKind::FormattingChange: return "formatting-change";
  case NoiseKind::PartialReplacement: return "partial-replacement";
  case NoiseKind::ApiDeclaredLocally: return "api-also-declared-locally";
  case NoiseKind::UnindexedImport: return "unindexed-import";
  }
  return "?";
}

NoiseKind parse_noise_kind(std::string_view name)
{
  for (NoiseKind k : {NoiseKind::Wrapper, NoiseKind::RenameOnly, NoiseKind::FormattingChange,
                      NoiseKind::PartialReplacement, NoiseKind::ApiDeclaredLocally,
                      NoiseKind::UnindexedImport}) {
    if (to_string(k) == name) {
      return k;
    }
  }
  throw Error(Errc::Usage, "unknown noise kind '" + std::string(name) + "'");
}

std::optional<Condition> tripped_condition(NoiseKind kind) noexcept
{
  switch (kind) {
  case NoiseKind::Wrapper: return Condition::BodyNotWrapper;
  case NoiseKind::RenameOnly: return Condition::MethodGoneAfter;
  case NoiseKind::FormattingChange: return std::nullopt;
  case NoiseKind::PartialReplacement: return Condition::MethodGoneAfter;
  case NoiseKind::ApiDeclaredLocally: return Condition::ApiNotDeclaredAfter;
  case NoiseKind::UnindexedImport: return Condition::ImportMatched;
  }
  return std::nullopt;
}

const std::vector<FixtureApi> &api_pool()
{
  static const std::vector<FixtureApi> pool = {
      {"org.apache.commons.lang3", "ArrayUtils", "contains", 2, kLang3, "indexOf"},
      {"org.apache.commons.lang3.math", "NumberUtils", "isCreatable", 1, kLang3, "isNumeric"},
      {"org.apache.commons.lang3", "StringUtils", "capitalize", 1, kLang3, "upperFirst"},
      {"org.apache.commons.lang3", "StringUtils", "isBlank", 1, kLang3, "blankCheck"},
      {"org.apache.commons.lang3", "StringUtils", "leftPad", 2, kLang3, "padLeft"},
      {"org.apache.commons.lang3", "StringUtils", "abbreviate", 2, kLang3, "shorten"},
      {"org.apache.commons.lang3", "StringUtils", "reverse", 1, kLang3, "reverseText"},
      {"org.apache.commons.lang3", "ObjectUtils", "defaultIfNull", 2, kLang3, "fallbackValue"},
      {"org.apache.commons.lang3", "RandomStringUtils", "randomAlphabetic", 1, kLang3, "randomLetters"},
      {"org.apache.commons.lang3.math", "NumberUtils", "toInt", 1, kLang3, "parseIntSafe"},
      {"org.apache.commons.io", "FileUtils", "readFileToString", 1, kIo, "readAll"},
      {"org.apache.commons.io", "IOUtils", "closeQuietly", 1, kIo, "safeClose"},
      {"org.apache.commons.io", "FilenameUtils", "getExtension", 1, kIo, "fileSuffix"},
      {"org.apache.commons.text", "WordUtils", "wrap", 2, kText, "wrapText"},
      {"org.apache.commons.text", "StringEscapeUtils", "escapeHtml4", 1, kText, "escapeMarkup"},
      {"org.apache.commons.collections4", "CollectionUtils", "isEmpty", 1, kCollections, "hasNoItems"},
  };
  return pool;
}

const FixtureApi &pool_entry(const std::string &api_name)
{
  for (const auto &a : api_pool()) {
    if (a.method_name == api_name) {
      return a;
    }
  }
  throw Error(Errc::Usage, "API '" + api_name + "' is not in the fixture pool");
}

std::string FixtureManifest::to_json() const
{
  nlohmann::json doc = {{"must_detect", nlohmann::json::array()},
                        {"must_not_detect", nlohmann::json::array()}};
  for (const auto &e : must_detect) {
    doc["must_detect"].push_back(entry_json(e));
  }
  for (const auto &e : must_not_detect) {
    doc["must_not_detect"].push_back(entry_json(e));
  }
  return doc.dump(2) + "\n";
}

FixtureManifest build_fixture(const FixtureRepoSpec &spec, std::uint64_t seed,
                              const std::filesystem::path &repo_dir, const std::string &git_binary)
{
  return Builder(spec, seed, repo_dir, git_binary).run();
}

void write_fixture_libraries(const std::filesystem::path &lib_dir)
{
  // (library, package, class) -> methods
  std::map<std::tuple<LibraryCoordinate, std::string, std::string>, std::vector<const FixtureApi *>>
      classes;
  for (const auto &a : api_pool()) {
    classes[{a.library, a.package_name, a.class_name}].push_back(&a);
  }
  for (const auto &[key, methods] : classes) {
    const auto &[lib, pkg, cls] = key;
    std::string text = "package " + pkg + ";\n\npublic class " + cls + " {\n";
    text += "    private " + cls + "() {\n    }\n";
    for (const FixtureApi *m : methods) {
      text += "\n    public static Object " + m->method_name + "(" + params(m->arity, "v", true) +
              ") {\n        return v0;\n    }\n";
    }
    text += "\n    static int internalHelper() {\n        return 0;\n    }\n}\n";
    std::string dir = pkg;
    std::replace(dir.begin(), dir.end(), '.', '/');
    write_file_atomic(lib_dir / lib.to_string() / dir / (cls + ".java"), text);
  }
}

std::vector<FixtureRepoSpec> default_corpus(std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  const std::vector<std::string> names = {"fixture/alpha", "fixture/bravo", "fixture/charlie",
                                          "fixture/delta", "fixture/echo", "fixture/foxtrot"};
  // Noise plan cycles so every kind appears several times; empty = clean.
  const std::vector<std::set<NoiseKind>> plan = {
      {},
      {NoiseKind::Wrapper},
      {NoiseKind::FormattingChange},
      {NoiseKind::RenameOnly},
      {},
      {NoiseKind::PartialReplacement},
      {NoiseKind::ApiDeclaredLocally},
      {},
      {NoiseKind::UnindexedImport},
      {NoiseKind::FormattingChange, NoiseKind::Wrapper},
      {},
      {NoiseKind::FormattingChange},
      {NoiseKind::PartialReplacement, NoiseKind::FormattingChange},
  };
  std::vector<FixtureRepoSpec> specs;
  std::size_t serial = 0;
  for (std::size_t r = 0; r < names.size(); ++r) {
    FixtureRepoSpec spec;
    spec.repo_id = names[r];
    spec.filler_commits = r == 0 ? 48 : 4 + static_cast<int>(draw(rng, 5));
    spec.with_merge = r == 0;
    std::vector<std::size_t> apis(api_pool().size());
    for (std::size_t k = 0; k < apis.size(); ++k) {
      apis[k] = k;
    }
    for (std::size_t k = apis.size(); k > 1; --k) {
      std::swap(apis[k - 1], apis[draw(rng, k)]);
    }
    const std::size_t count = r < 2 ? 5 : 4;
    for (std::size_t i = 0; i < count; ++i, ++serial) {
      InjectionSpec inj;
      inj.api_name = api_pool()[apis[i]].method_name;
      inj.call_sites = 1 + static_cast<int>(serial % 5);
      inj.noise = plan[serial % plan.size()];
      if (inj.noise.count(NoiseKind::PartialReplacement) && inj.call_sites < 2) {
        inj.call_sites = 2;
      }
      spec.injections.push_back(std::move(inj));
    }
    specs.push_back(std::move(spec));
  }
  return specs;
}

Corpus build_corpus(const std::vector<FixtureRepoSpec> &specs, std::uint64_t seed,
                    const std::filesystem::path &root, const std::string &git_binary)
{
  Corpus corpus;
  corpus.root = root;
  corpus.lib_dir = root / "libs";
  corpus.repo_list = root / "repos.txt";
  write_fixture_libraries(corpus.lib_dir);
  std::string list;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const auto dir = root / specs[k].repo_id;
    const auto m = build_fixture(specs[k], seed + k, dir, git_binary);
    corpus.manifest.must_detect.insert(corpus.manifest.must_detect.end(), m.must_detect.begin(),
                                       m.must_detect.end());
    corpus.manifest.must_not_detect.insert(corpus.manifest.must_not_detect.end(),
                                           m.must_not_detect.begin(), m.must_not_detect.end());
    corpus.repos.push_back(dir);
    list += dir.string() + "\n";
  }
  write_file_atomic(corpus.repo_list, list);
  write_file_atomic(root / "manifest.json", corpus.manifest.to_json());
  return corpus;
}

} // namespace apiswap::fixtures
