#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace apiswap {

struct ReplacedCallPair {
  std::string file_path;
  std::string old_fragment;
  std::string new_fragment;
  /// Line of the pair on the new side of the diff.
  int line_hint = 0;

  bool operator==(const ReplacedCallPair &) const = default;
};

struct WordDiffSegment {
  enum class Kind { Context, Deleted, Added };
  Kind kind = Kind::Context;
  std::string text;

  bool operator==(const WordDiffSegment &) const = default;
};

struct WordDiffLine {
  /// 0 when the line has no content on that side.
  int old_line = 0;
  int new_line = 0;
  std::vector<WordDiffSegment> segments;

  std::string old_text() const;
  std::string new_text() const;
};

struct WordDiffHunk {
  int old_start = 0;
  int old_count = 0;
  int new_start = 0;
  int new_count = 0;
  std::vector<WordDiffLine> lines;
};

/// Parses `git diff --word-diff=plain` output. File headers are skipped.
/// Throws GitInvocationError on a malformed hunk header.
std::vector<WordDiffHunk> parse_word_diff(std::string_view output);

/// Every deleted run immediately followed by an added run on the same line,
/// both trimmed; pairs with an empty side are dropped.
std::vector<ReplacedCallPair> extract_pairs(const std::vector<WordDiffHunk> &hunks,
                                            const std::string &file_path);

} // namespace apiswap
