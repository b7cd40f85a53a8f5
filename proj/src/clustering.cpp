#include "apiswap/clustering.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace apiswap {

std::vector<ReplacementRule> cluster_by_rhs(const std::vector<CandidateReplacement> &candidates)
{
  std::map<std::string, std::vector<const CandidateReplacement *>> by_api;
  for (const auto &c : candidates) {
    by_api[c.api_simple_name].push_back(&c);
  }

  std::map<RhsKey, std::map<std::tuple<std::string, std::string, std::string>, RuleMember>> rules;
  for (const auto &[api, group] : by_api) {
    std::set<LibraryCoordinate> common = group.front()->candidate_libraries;
    for (const auto *c : group) {
      std::set<LibraryCoordinate> next;
      std::set_intersection(common.begin(), common.end(), c->candidate_libraries.begin(),
                            c->candidate_libraries.end(), std::inserter(next, next.end()));
      common = std::move(next);
    }
    for (const auto *c : group) {
      RhsKey key{api, common.empty() ? c->candidate_libraries : common};
      const auto id = std::make_tuple(c->repo_id, c->sha, c->custom_method.signature_text);
      RuleMember member{c->repo_id,
                        c->sha,
                        c->custom_method.signature_text,
                        c->custom_method.body_text,
                        c->custom_method.file_path,
                        c->commit_message,
                        c->replacement_count};
      auto &members = rules[key];
      const auto it = members.find(id);
      // Duplicates keep the member with the most replacements (then the
      // smallest remaining fields) so the result does not depend on input order.
      const auto rank = [](const RuleMember &m) {
        return std::make_tuple(-m.replacement_count, m.body_text, m.file_path, m.commit_message);
      };
      if (it == members.end()) {
        members.emplace(id, std::move(member));
      } else if (rank(member) < rank(it->second)) {
        it->second = std::move(member);
      }
    }
  }

  std::vector<ReplacementRule> out;
  for (auto &[key, members] : rules) {
    ReplacementRule rule{key, {}};
    for (auto &[id, m] : members) {
      rule.lhs.push_back(std::move(m));
    }
    out.push_back(std::move(rule));
  }
  std::stable_sort(out.begin(), out.end(), [](const ReplacementRule &a, const ReplacementRule &b) {
    return a.support() > b.support();
  });
  return out;
}

} // namespace apiswap
