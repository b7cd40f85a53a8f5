#include "apiswap/detector.hpp"

#include "apiswap/error.hpp"
#include "apiswap/java/lexer.hpp"

#include <map>
#include <tuple>

namespace apiswap {
namespace {

struct Group {
  std::string m_name;
  int m_arity = 0;
  std::string api_name;
  int api_arity = 0;
  std::string api_receiver;
  std::vector<std::size_t> pairs; // distinct, ascending
};

using ImportKey = std::tuple<std::string, bool, bool>;

std::set<ImportKey> import_keys(const SnapshotIndex::Entry *entry)
{
  std::set<ImportKey> keys;
  if (entry) {
    for (const auto &imp : entry->surface->imports) {
      keys.emplace(imp.imported_path, imp.is_static, imp.is_wildcard);
    }
  }
  return keys;
}

bool body_has_content(const std::string &body)
{
  if (body.empty()) {
    return false;
  }
  return java::tokenize(body).tokens.size() > 2; // more than the braces
}

} // namespace

std::string_view to_string(Condition c) noexcept
{
  switch (c) {
  case Condition::DeclaredBefore: return "(1)";
  case Condition::BodyNotWrapper: return "(2)";
  case Condition::ApiInvokedAfter: return "(3)";
  case Condition::MethodGoneAfter: return "(4)";
  case Condition::ApiNotDeclaredAfter: return "(5)";
  case Condition::ImportMatched: return "import";
  }
  return "?";
}

std::string_view to_string(CheckState s) noexcept
{
  switch (s) {
  case CheckState::Pass: return "pass";
  case CheckState::Fail: return "fail";
  case CheckState::Skipped: return "skipped";
  }
  return "?";
}

std::optional<Condition> ConditionTrace::first_failure() const
{
  for (std::size_t k = 0; k < kConditionCount; ++k) {
    if (checks[k] == CheckState::Fail) {
      return static_cast<Condition>(k);
    }
  }
  return std::nullopt;
}

DetectionTelemetry &DetectionTelemetry::operator+=(const DetectionTelemetry &o)
{
  pairs += o.pairs;
  events += o.events;
  groups += o.groups;
  emitted += o.emitted;
  superseded += o.superseded;
  for (std::size_t k = 0; k < kConditionCount; ++k) {
    failures[k] += o.failures[k];
  }
  return *this;
}

DetectionResult detect(const CommitStep &step, const SnapshotIndex &before,
                       const SnapshotIndex &after, const std::vector<ReplacedCallPair> &pairs,
                       const ApiIndex &index)
{
  DetectionResult result;
  result.telemetry.pairs = pairs.size();

  // Group raw events by (m, arity, API) in order of first appearance.
  std::vector<Group> groups;
  std::map<std::tuple<std::string, int, std::string>, std::size_t> group_of;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto olds = java::parse_fragment(pairs[p].old_fragment);
    const auto news = java::parse_fragment(pairs[p].new_fragment);
    for (const auto &o : olds) {
      if (o.nesting_depth != 0) {
        continue; // only outermost calls are m-candidates
      }
      int arity = o.arg_count;
      if (o.truncated) {
        // The visible argument count is a lower bound; settle on the
        // narrowest declaration in s_i that can take it.
        if (const auto d = before.find_declaration_at_least(o.simple_name, o.arg_count)) {
          arity = d->arity;
        }
      }
      for (const auto &n : news) {
        if (n.simple_name == o.simple_name) {
          continue;
        }
        ++result.telemetry.events;
        const auto key = std::make_tuple(o.simple_name, arity, n.simple_name);
        auto [it, fresh] = group_of.emplace(key, groups.size());
        if (fresh) {
          groups.push_back({o.simple_name, arity, n.simple_name, n.arg_count, n.receiver_text, {}});
        }
        auto &g = groups[it->second];
        if (g.pairs.empty() || g.pairs.back() != p) {
          g.pairs.push_back(p);
        }
      }
    }
  }
  result.telemetry.groups = groups.size();

  std::map<std::string, std::string> old_path_of;
  for (const auto &f : step.changed_java_files) {
    if (f.kind == ChangeKind::Renamed) {
      old_path_of[f.path] = f.old_path;
    }
  }

  std::vector<bool> credited(pairs.size(), false);
  for (const Group &g : groups) {
    ConditionTrace trace;
    trace.m_name = g.m_name;
    trace.m_arity = g.m_arity;
    trace.api_name = g.api_name;
    trace.pair_count = static_cast<int>(g.pairs.size());
    trace.checks.fill(CheckState::Skipped);

    std::optional<java::MethodDeclaration> decl;
    std::set<LibraryCoordinate> libraries;
    std::set<std::string> files;
    for (std::size_t p : g.pairs) {
      files.insert(pairs[p].file_path);
    }

    const auto check = [&](Condition c, auto &&test) {
      const bool ok = test();
      trace.checks[static_cast<std::size_t>(c)] = ok ? CheckState::Pass : CheckState::Fail;
      if (!ok) {
        ++result.telemetry.failures[static_cast<std::size_t>(c)];
      }
      return ok;
    };

    const bool passed =
        check(Condition::DeclaredBefore, [&] {
          decl = before.find_declaration(g.m_name, g.m_arity);
          return decl.has_value();
        }) &&
        check(Condition::BodyNotWrapper, [&] {
          if (!body_has_content(decl->body_text)) {
            return false;
          }
          for (const auto &call : java::parse_fragment(decl->body_text)) {
            if (call.simple_name == g.api_name) {
              return false;
            }
          }
          return true;
        }) &&
        check(Condition::ApiInvokedAfter, [&] { return after.count_invocations(g.api_name) > 0; }) &&
        check(Condition::MethodGoneAfter, [&] {
          return after.count_declarations(g.m_name, g.m_arity) == 0 &&
                 after.count_invocations(g.m_name) == 0;
        }) &&
        check(Condition::ApiNotDeclaredAfter,
              [&] { return after.count_declarations(g.api_name) == 0; }) &&
        check(Condition::ImportMatched, [&] {
          for (const auto &path : files) {
            const auto old_it = old_path_of.find(path);
            const auto before_keys =
                import_keys(before.file(old_it == old_path_of.end() ? path : old_it->second));
            const SnapshotIndex::Entry *now = after.file(path);
            if (!now) {
              continue;
            }
            for (const auto &imp : now->surface->imports) {
              if (before_keys.count({imp.imported_path, imp.is_static, imp.is_wildcard})) {
                continue;
              }
              const std::string pkg = index.resolve_package(imp.imported_path);
              if (!pkg.empty()) {
                const auto &coords = index.packages().at(pkg);
                libraries.insert(coords.begin(), coords.end());
              }
            }
          }
          return !libraries.empty();
        });

    if (passed) {
      // Prefer the matched libraries that actually export the API name.
      std::set<LibraryCoordinate> exporting;
      for (const auto &lib : libraries) {
        if (!index.find(g.api_name).empty() && index.libraries_exporting(g.api_name).count(lib)) {
          exporting.insert(lib);
        }
      }
      if (!exporting.empty()) {
        libraries = std::move(exporting);
      }

      // A pair is credited to at most one candidate so counts stay sound.
      int count = 0;
      std::set<std::string> credited_files;
      for (std::size_t p : g.pairs) {
        if (!credited[p]) {
          credited[p] = true;
          ++count;
          credited_files.insert(pairs[p].file_path);
        }
      }
      if (count == 0) {
        trace.superseded = true;
        ++result.telemetry.superseded;
      } else {
        trace.emitted = true;
        ++result.telemetry.emitted;
        CandidateReplacement c;
        c.repo_id = step.repo_id;
        c.sha = step.sha;
        c.custom_method = *decl;
        c.api_simple_name = g.api_name;
        c.api_arity = g.api_arity;
        c.api_receiver_text = g.api_receiver;
        c.candidate_libraries = std::move(libraries);
        c.file_paths = std::move(credited_files);
        c.replacement_count = count;
        c.commit_message = step.message;
        result.candidates.push_back(std::move(c));
      }
    }
    result.traces.push_back(std::move(trace));
  }
  return result;
}

const ConditionTrace &resolve_condition_trace(const DetectionResult &result,
                                              const std::string &m_name,
                                              const std::string &api_name,
                                              std::optional<int> m_arity)
{
  for (const auto &t : result.traces) {
    if (t.m_name == m_name && t.api_name == api_name && (!m_arity || *m_arity == t.m_arity)) {
      return t;
    }
  }
  throw Error(Errc::UnknownPair, "no replacement " + m_name + " -> " + api_name +
                                     " was observed in this step");
}

} // namespace apiswap
