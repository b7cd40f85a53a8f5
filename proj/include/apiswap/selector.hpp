#pragma once

#include "apiswap/detector.hpp"

#include <vector>

namespace apiswap {

struct SelectorConfig {
  /// Threshold t on the number of call replacements.
  int min_replacements = 2;
  /// Drop getters, setters and main methods.
  bool drop_trivial = true;

  /// Throws Usage when min_replacements < 1.
  void validate() const;
};

bool is_selected(const CandidateReplacement &c, const SelectorConfig &config);

/// Keeps candidates that pass the threshold (and, with drop_trivial, whose
/// custom method is Ordinary), in input order.
std::vector<CandidateReplacement> select(const std::vector<CandidateReplacement> &candidates,
                                         const SelectorConfig &config);

} // namespace apiswap
