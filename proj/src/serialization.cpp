#include "apiswap/serialization.hpp"

#include "apiswap/error.hpp"
#include "apiswap/fsutil.hpp"

#include <sstream>

namespace apiswap {

template <typename T> T required(const nlohmann::json &j, const char *key)
{
  if (!j.is_object()) {
    throw Error(Errc::SchemaError, std::string("expected an object holding '") + key + "'");
  }
  const auto it = j.find(key);
  if (it == j.end()) {
    throw Error(Errc::SchemaError, std::string("missing field '") + key + "'");
  }
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception &e) {
    throw Error(Errc::SchemaError, std::string("field '") + key + "': " + e.what());
  }
}

template std::string required<std::string>(const nlohmann::json &, const char *);
template int required<int>(const nlohmann::json &, const char *);
template bool required<bool>(const nlohmann::json &, const char *);
template std::vector<std::string> required<std::vector<std::string>>(const nlohmann::json &,
                                                                     const char *);
template nlohmann::json required<nlohmann::json>(const nlohmann::json &, const char *);

std::string to_json_line(const nlohmann::json &j)
{
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

void to_json(nlohmann::json &j, const LibraryCoordinate &c)
{
  j = {{"group_id", c.group_id}, {"artifact_id", c.artifact_id}, {"version", c.version}};
}

void from_json(const nlohmann::json &j, LibraryCoordinate &c)
{
  c.group_id = required<std::string>(j, "group_id");
  c.artifact_id = required<std::string>(j, "artifact_id");
  c.version = required<std::string>(j, "version");
}

void to_json(nlohmann::json &j, const ApiRecord &a)
{
  j = {{"library", a.library},
       {"package_name", a.package_name},
       {"file_path", a.file_path},
       {"simple_name", a.simple_name},
       {"arity", a.arity},
       {"signature_text", a.signature_text},
       {"declaring_type", a.declaring_type},
       {"start_line", a.start_line},
       {"deprecated", a.deprecated}};
}

void from_json(const nlohmann::json &j, ApiRecord &a)
{
  a.library = required<nlohmann::json>(j, "library").get<LibraryCoordinate>();
  a.package_name = required<std::string>(j, "package_name");
  a.file_path = required<std::string>(j, "file_path");
  a.simple_name = required<std::string>(j, "simple_name");
  a.arity = required<int>(j, "arity");
  a.signature_text = required<std::string>(j, "signature_text");
  a.declaring_type = j.value("declaring_type", "");
  a.start_line = j.value("start_line", 1);
  a.deprecated = j.value("deprecated", false);
}

void to_json(nlohmann::json &j, const CandidateReplacement &c)
{
  j = {{"schema", kCandidateSchema},
       {"repo_id", c.repo_id},
       {"sha", c.sha},
       {"custom_method", c.custom_method},
       {"api_simple_name", c.api_simple_name},
       {"api_arity", c.api_arity},
       {"api_receiver_text", c.api_receiver_text},
       {"candidate_libraries", c.candidate_libraries},
       {"file_paths", c.file_paths},
       {"replacement_count", c.replacement_count},
       {"commit_message", c.commit_message}};
}

void from_json(const nlohmann::json &j, CandidateReplacement &c)
{
  const int schema = required<int>(j, "schema");
  if (schema != kCandidateSchema) {
    throw Error(Errc::SchemaError, "unsupported candidate schema " + std::to_string(schema));
  }
  c.repo_id = required<std::string>(j, "repo_id");
  c.sha = required<std::string>(j, "sha");
  c.custom_method = required<nlohmann::json>(j, "custom_method").get<java::MethodDeclaration>();
  c.api_simple_name = required<std::string>(j, "api_simple_name");
  c.api_arity = required<int>(j, "api_arity");
  c.api_receiver_text = required<std::string>(j, "api_receiver_text");
  c.candidate_libraries =
      required<nlohmann::json>(j, "candidate_libraries").get<std::set<LibraryCoordinate>>();
  c.file_paths = required<nlohmann::json>(j, "file_paths").get<std::set<std::string>>();
  c.replacement_count = required<int>(j, "replacement_count");
  c.commit_message = required<std::string>(j, "commit_message");
}

void to_json(nlohmann::json &j, const ConditionTrace &t)
{
  nlohmann::json checks = nlohmann::json::object();
  for (std::size_t k = 0; k < kConditionCount; ++k) {
    checks[std::string(to_string(static_cast<Condition>(k)))] = std::string(to_string(t.checks[k]));
  }
  j = {{"m_name", t.m_name},       {"m_arity", t.m_arity},   {"api_name", t.api_name},
       {"checks", checks},         {"pair_count", t.pair_count}, {"emitted", t.emitted},
       {"superseded", t.superseded}};
}

void to_json(nlohmann::json &j, const ReplacementRule &r)
{
  nlohmann::json lhs = nlohmann::json::array();
  for (const auto &m : r.lhs) {
    lhs.push_back({{"repo_id", m.repo_id},
                   {"sha", m.sha},
                   {"signature_text", m.signature_text},
                   {"body_text", m.body_text},
                   {"file_path", m.file_path},
                   {"commit_message", m.commit_message},
                   {"replacement_count", m.replacement_count}});
  }
  j = {{"rhs_key", {{"api_simple_name", r.rhs_key.api_simple_name},
                    {"libraries", r.rhs_key.libraries}}},
       {"support", r.support()},
       {"lhs", lhs}};
}

void from_json(const nlohmann::json &j, ReplacementRule &r)
{
  const auto key = required<nlohmann::json>(j, "rhs_key");
  r.rhs_key.api_simple_name = required<std::string>(key, "api_simple_name");
  r.rhs_key.libraries = key.at("libraries").get<std::set<LibraryCoordinate>>();
  r.lhs.clear();
  for (const auto &m : required<nlohmann::json>(j, "lhs")) {
    r.lhs.push_back({required<std::string>(m, "repo_id"), required<std::string>(m, "sha"),
                     required<std::string>(m, "signature_text"),
                     required<std::string>(m, "body_text"), required<std::string>(m, "file_path"),
                     m.value("commit_message", ""), m.value("replacement_count", 0)});
  }
}

std::vector<CandidateReplacement> parse_candidates(std::string_view text)
{
  std::vector<CandidateReplacement> out;
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) {
      eol = text.size();
    }
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      continue;
    }
    try {
      out.push_back(nlohmann::json::parse(line).get<CandidateReplacement>());
    } catch (const nlohmann::json::exception &e) {
      throw Error(Errc::SchemaError, "candidate line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error &e) {
      throw Error(Errc::SchemaError, "candidate line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<CandidateReplacement> read_candidates(const std::filesystem::path &path)
{
  return parse_candidates(read_file(path));
}

std::string candidates_to_jsonl(const std::vector<CandidateReplacement> &candidates)
{
  std::string out;
  for (const auto &c : candidates) {
    out += to_json_line(c);
  }
  return out;
}

std::string rules_to_jsonl(const std::vector<ReplacementRule> &rules)
{
  std::string out;
  for (const auto &r : rules) {
    out += to_json_line(r);
  }
  return out;
}

} // namespace apiswap

namespace apiswap::java {

void to_json(nlohmann::json &j, const MethodDeclaration &d)
{
  j = {{"simple_name", d.simple_name},
       {"arity", d.arity},
       {"signature_text", d.signature_text},
       {"body_text", d.body_text},
       {"file_path", d.file_path},
       {"start_line", d.start_line},
       {"end_line", d.end_line},
       {"modifiers", d.modifiers},
       {"is_static", d.is_static},
       {"return_type_text", d.return_type_text},
       {"declaring_type", d.declaring_type},
       {"in_interface", d.in_interface},
       {"is_deprecated", d.is_deprecated}};
}

void from_json(const nlohmann::json &j, MethodDeclaration &d)
{
  d.simple_name = required<std::string>(j, "simple_name");
  d.arity = required<int>(j, "arity");
  d.signature_text = required<std::string>(j, "signature_text");
  d.body_text = required<std::string>(j, "body_text");
  d.file_path = required<std::string>(j, "file_path");
  d.start_line = required<int>(j, "start_line");
  d.end_line = required<int>(j, "end_line");
  d.modifiers = required<std::vector<std::string>>(j, "modifiers");
  d.is_static = required<bool>(j, "is_static");
  d.return_type_text = required<std::string>(j, "return_type_text");
  d.declaring_type = j.value("declaring_type", "");
  d.in_interface = j.value("in_interface", false);
  d.is_deprecated = j.value("is_deprecated", false);
}

void to_json(nlohmann::json &j, const MethodInvocation &i)
{
  j = {{"simple_name", i.simple_name}, {"arg_count", i.arg_count},
       {"receiver_text", i.receiver_text}, {"file_path", i.file_path},
       {"line", i.line}, {"nesting_depth", i.nesting_depth},
       {"truncated", i.truncated}};
}

void from_json(const nlohmann::json &j, MethodInvocation &i)
{
  i.simple_name = required<std::string>(j, "simple_name");
  i.arg_count = required<int>(j, "arg_count");
  i.receiver_text = required<std::string>(j, "receiver_text");
  i.file_path = required<std::string>(j, "file_path");
  i.line = required<int>(j, "line");
  i.nesting_depth = j.value("nesting_depth", 0);
  i.truncated = j.value("truncated", false);
}

void to_json(nlohmann::json &j, const ImportStatement &s)
{
  j = {{"imported_path", s.imported_path}, {"is_static", s.is_static},
       {"is_wildcard", s.is_wildcard}, {"file_path", s.file_path}};
}

void from_json(const nlohmann::json &j, ImportStatement &s)
{
  s.imported_path = required<std::string>(j, "imported_path");
  s.is_static = required<bool>(j, "is_static");
  s.is_wildcard = required<bool>(j, "is_wildcard");
  s.file_path = required<std::string>(j, "file_path");
}

void to_json(nlohmann::json &j, const FileSurface &f)
{
  j = {{"file_path", f.file_path},
       {"declarations", f.declarations},
       {"invocations", f.invocations},
       {"imports", f.imports},
       {"package_name", f.package_name ? nlohmann::json(*f.package_name) : nlohmann::json()},
       {"parse_degraded", f.parse_degraded},
       {"errors", f.errors}};
}

void from_json(const nlohmann::json &j, FileSurface &f)
{
  f.file_path = required<std::string>(j, "file_path");
  f.declarations = j.at("declarations").get<std::vector<MethodDeclaration>>();
  f.invocations = j.at("invocations").get<std::vector<MethodInvocation>>();
  f.imports = j.at("imports").get<std::vector<ImportStatement>>();
  const auto &pkg = j.at("package_name");
  f.package_name = pkg.is_null() ? std::nullopt : std::optional<std::string>(pkg.get<std::string>());
  f.parse_degraded = j.value("parse_degraded", false);
  f.errors = j.value("errors", std::vector<std::string>{});
}

} // namespace apiswap::java
