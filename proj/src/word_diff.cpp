#include "apiswap/word_diff.hpp"

#include "apiswap/error.hpp"

#include <charconv>

namespace apiswap {
namespace {

using Kind = WordDiffSegment::Kind;

std::string_view trim(std::string_view s)
{
  const auto ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) {
    return {};
  }
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

bool is_blank(std::string_view s) { return trim(s).empty(); }

// "-12,3" or "+7" -> (start, count)
bool parse_range(std::string_view s, char sign, int &start, int &count)
{
  if (s.empty() || s[0] != sign) {
    return false;
  }
  s.remove_prefix(1);
  const auto comma = s.find(',');
  const std::string_view a = s.substr(0, comma);
  auto r = std::from_chars(a.data(), a.data() + a.size(), start);
  if (r.ec != std::errc() || r.ptr != a.data() + a.size()) {
    return false;
  }
  count = 1;
  if (comma != std::string_view::npos) {
    const std::string_view b = s.substr(comma + 1);
    r = std::from_chars(b.data(), b.data() + b.size(), count);
    if (r.ec != std::errc() || r.ptr != b.data() + b.size()) {
      return false;
    }
  }
  return true;
}

WordDiffHunk parse_header(std::string_view line)
{
  // @@ -a,b +c,d @@ optional context
  WordDiffHunk h;
  const auto fail = [&] {
    return Error(Errc::GitInvocationError, "malformed hunk header: " + std::string(line));
  };
  if (line.substr(0, 3) != "@@ ") {
    throw fail();
  }
  std::string_view rest = line.substr(3);
  const auto sp1 = rest.find(' ');
  if (sp1 == std::string_view::npos) {
    throw fail();
  }
  const auto sp2 = rest.find(' ', sp1 + 1);
  if (sp2 == std::string_view::npos || rest.substr(sp2, 3) != " @@") {
    throw fail();
  }
  if (!parse_range(rest.substr(0, sp1), '-', h.old_start, h.old_count) ||
      !parse_range(rest.substr(sp1 + 1, sp2 - sp1 - 1), '+', h.new_start, h.new_count)) {
    throw fail();
  }
  return h;
}

void push(std::vector<WordDiffSegment> &segs, Kind kind, std::string_view text)
{
  if (text.empty()) {
    return;
  }
  if (!segs.empty() && segs.back().kind == kind) {
    segs.back().text += text;
  } else {
    segs.push_back({kind, std::string(text)});
  }
}

// A marker only counts when its closing counterpart follows on the same line;
// otherwise the bytes are ordinary source text.
std::vector<WordDiffSegment> split_line(std::string_view line)
{
  std::vector<WordDiffSegment> segs;
  std::size_t pos = 0;
  std::size_t context_from = 0;
  while (pos + 1 < line.size()) {
    const bool del = line.compare(pos, 2, "[-") == 0;
    const bool add = !del && line.compare(pos, 2, "{+") == 0;
    if (!del && !add) {
      ++pos;
      continue;
    }
    const std::string_view closer = del ? "-]" : "+}";
    const auto end = line.find(closer, pos + 2);
    if (end == std::string_view::npos) {
      ++pos;
      continue;
    }
    push(segs, Kind::Context, line.substr(context_from, pos - context_from));
    push(segs, del ? Kind::Deleted : Kind::Added, line.substr(pos + 2, end - pos - 2));
    pos = end + 2;
    context_from = pos;
  }
  push(segs, Kind::Context, line.substr(context_from));
  return segs;
}

} // namespace

std::string WordDiffLine::old_text() const
{
  std::string s;
  for (const auto &seg : segments) {
    if (seg.kind != Kind::Added) {
      s += seg.text;
    }
  }
  return s;
}

std::string WordDiffLine::new_text() const
{
  std::string s;
  for (const auto &seg : segments) {
    if (seg.kind != Kind::Deleted) {
      s += seg.text;
    }
  }
  return s;
}

std::vector<WordDiffHunk> parse_word_diff(std::string_view output)
{
  std::vector<WordDiffHunk> hunks;
  WordDiffHunk *current = nullptr;
  int old_line = 0, new_line = 0;

  std::size_t pos = 0;
  while (pos < output.size()) {
    auto eol = output.find('\n', pos);
    if (eol == std::string_view::npos) {
      eol = output.size();
    }
    std::string_view line = output.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }

    if (line.substr(0, 2) == "@@") {
      hunks.push_back(parse_header(line));
      current = &hunks.back();
      old_line = current->old_start;
      new_line = current->new_start;
      continue;
    }
    if (line.substr(0, 11) == "diff --git ") {
      current = nullptr;
      continue;
    }
    if (!current || line.substr(0, 1) == "\\") {
      continue; // file header, or "\ No newline at end of file"
    }

    WordDiffLine wl;
    wl.segments = split_line(line);
    bool on_old = false, on_new = false;
    for (const auto &seg : wl.segments) {
      if (seg.kind != Kind::Added && !is_blank(seg.text)) {
        on_old = true;
      }
      if (seg.kind != Kind::Deleted && !is_blank(seg.text)) {
        on_new = true;
      }
    }
    if (on_old) {
      wl.old_line = old_line++;
    }
    if (on_new) {
      wl.new_line = new_line++;
    }
    current->lines.push_back(std::move(wl));
  }
  return hunks;
}

std::vector<ReplacedCallPair> extract_pairs(const std::vector<WordDiffHunk> &hunks,
                                            const std::string &file_path)
{
  std::vector<ReplacedCallPair> pairs;
  for (const auto &hunk : hunks) {
    for (const auto &line : hunk.lines) {
      const auto &segs = line.segments;
      for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
        if (segs[i].kind != Kind::Deleted) {
          continue;
        }
        std::size_t j = i + 1;
        if (segs[j].kind == Kind::Context && is_blank(segs[j].text) && j + 1 < segs.size()) {
          ++j;
        }
        if (segs[j].kind != Kind::Added) {
          continue;
        }
        const std::string_view o = trim(segs[i].text);
        const std::string_view n = trim(segs[j].text);
        if (o.empty() || n.empty()) {
          continue;
        }
        pairs.push_back({file_path, std::string(o), std::string(n),
                         line.new_line ? line.new_line : hunk.new_start});
        i = j;
      }
    }
  }
  return pairs;
}

} // namespace apiswap
