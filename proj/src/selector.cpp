#include "apiswap/selector.hpp"

#include "apiswap/error.hpp"

namespace apiswap {

void SelectorConfig::validate() const
{
  if (min_replacements < 1) {
    throw Error(Errc::Usage, "min_replacements must be at least 1, got " +
                                 std::to_string(min_replacements));
  }
}

bool is_selected(const CandidateReplacement &c, const SelectorConfig &config)
{
  if (c.replacement_count < config.min_replacements) {
    return false;
  }
  return !config.drop_trivial ||
         java::classify_method(c.custom_method) == java::MethodKind::Ordinary;
}

std::vector<CandidateReplacement> select(const std::vector<CandidateReplacement> &candidates,
                                         const SelectorConfig &config)
{
  config.validate();
  std::vector<CandidateReplacement> kept;
  for (const auto &c : candidates) {
    if (is_selected(c, config)) {
      kept.push_back(c);
    }
  }
  return kept;
}

} // namespace apiswap
