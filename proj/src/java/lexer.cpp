#include "apiswap/java/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_set>

namespace apiswap::java {

namespace {

bool ident_start(unsigned char c)
{
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool ident_part(unsigned char c)
{
  return ident_start(c) || std::isdigit(c);
}

// Longest first. '>' is always a single token so nested generics close cleanly.
constexpr std::array<std::string_view, 18> kMultiCharPunct = {
    "...", "::", "--", "->", "==", "!=", "<=", "&&", "||",
    "++",  "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
};

bool opens(std::string_view t) { return t == "(" || t == "[" || t == "{"; }

char closer_for(std::string_view t)
{
  return t == "(" ? ')' : t == "[" ? ']' : '}';
}

void match_brackets(TokenStream &ts)
{
  ts.match.assign(ts.tokens.size(), TokenStream::npos);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < ts.tokens.size(); ++i) {
    const Token &t = ts.tokens[i];
    if (t.kind != TokenKind::Punct) {
      continue;
    }
    if (opens(t.text)) {
      stack.push_back(i);
      continue;
    }
    if (t.text != ")" && t.text != "]" && t.text != "}") {
      continue;
    }
    auto it = std::find_if(stack.rbegin(), stack.rend(), [&](std::size_t o) {
      return closer_for(ts.tokens[o].text) == t.text[0];
    });
    if (it == stack.rend()) {
      ts.degraded = true;
      continue;
    }
    // Openers above the matching one stay unmatched.
    const auto above = static_cast<std::size_t>(it - stack.rbegin());
    if (above > 0) {
      ts.degraded = true;
    }
    const std::size_t o = *it;
    stack.resize(stack.size() - above - 1);
    ts.match[o] = i;
    ts.match[i] = o;
  }
  if (!stack.empty()) {
    ts.degraded = true;
  }
}

bool needs_space(const Token &prev, const Token &next)
{
  if (!next.is_word()) {
    return false;
  }
  return prev.is_word() || prev.is("]") || prev.is("...");
}

} // namespace

bool is_keyword(std::string_view word) noexcept
{
  static const std::unordered_set<std::string_view> kKeywords = {
      "abstract", "assert",     "boolean",   "break",     "byte",     "case",
      "catch",    "char",       "class",     "const",     "continue", "default",
      "do",       "double",     "else",      "enum",      "extends",  "final",
      "finally",  "float",      "for",       "goto",      "if",       "implements",
      "import",   "instanceof", "int",       "interface", "long",     "native",
      "new",      "package",    "private",   "protected", "public",   "return",
      "short",    "static",     "strictfp",  "super",     "switch",   "synchronized",
      "this",     "throw",      "throws",    "transient", "try",      "void",
      "volatile", "while",      "true",      "false",     "null",
  };
  return kKeywords.count(word) != 0;
}

TokenStream tokenize(std::string_view src)
{
  TokenStream ts;
  std::uint32_t line = 1;
  std::size_t i = 0;
  const std::size_t n = src.size();

  auto push = [&](TokenKind kind, std::size_t b, std::size_t e, std::uint32_t ln) {
    ts.tokens.push_back(Token{kind, src.substr(b, e - b), ln, b});
  };
  auto count_lines = [&](std::size_t b, std::size_t e) {
    line += static_cast<std::uint32_t>(std::count(src.begin() + b, src.begin() + e, '\n'));
  };

  while (i < n) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '/') {
      while (i < n && src[i] != '\n') {
        ++i;
      }
      continue;
    }
    if (c == '/' && i + 1 < n && src[i + 1] == '*') {
      const std::size_t end = src.find("*/", i + 2);
      if (end == std::string_view::npos) {
        ts.degraded = true;
        count_lines(i, n);
        i = n;
      } else {
        count_lines(i, end + 2);
        i = end + 2;
      }
      continue;
    }

    const std::size_t b = i;
    const std::uint32_t ln = line;

    if (c == '"' && src.substr(i, 3) == "\"\"\"") {
      std::size_t j = i + 3;
      bool closed = false;
      while (j < n) {
        if (src[j] == '\\') {
          j += 2;
        } else if (src.substr(j, 3) == "\"\"\"") {
          j += 3;
          closed = true;
          break;
        } else {
          ++j;
        }
      }
      j = std::min(j, n);
      ts.degraded |= !closed;
      count_lines(i, j);
      push(TokenKind::String, b, j, ln);
      i = j;
      continue;
    }
    if (c == '"' || c == '\'') {
      std::size_t j = i + 1;
      while (j < n && src[j] != c && src[j] != '\n') {
        j += src[j] == '\\' ? 2 : 1;
      }
      if (j < n && src[j] == c) {
        ++j;
      } else {
        ts.degraded = true;
        j = std::min(j, n);
      }
      push(c == '"' ? TokenKind::String : TokenKind::Char, b, j, ln);
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      const bool hex = c == '0' && i + 1 < n && (src[i + 1] == 'x' || src[i + 1] == 'X');
      std::size_t j = i;
      while (j < n) {
        const char d = src[j];
        if (!std::isalnum(static_cast<unsigned char>(d)) && d != '_' && d != '.') {
          break;
        }
        // "1." followed by an identifier is a member access, not a fraction.
        if (d == '.' && j + 1 < n && ident_start(static_cast<unsigned char>(src[j + 1])) &&
            src[j + 1] != 'e' && src[j + 1] != 'E' && src[j + 1] != 'f' && src[j + 1] != 'F' &&
            src[j + 1] != 'd' && src[j + 1] != 'D') {
          break;
        }
        const bool exp = hex ? (d == 'p' || d == 'P') : (d == 'e' || d == 'E');
        ++j;
        if (exp && j < n && (src[j] == '+' || src[j] == '-')) {
          ++j;
        }
      }
      push(TokenKind::Number, b, j, ln);
      i = j;
      continue;
    }
    if (ident_start(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < n && ident_part(static_cast<unsigned char>(src[j]))) {
        ++j;
      }
      const std::string_view word = src.substr(b, j - b);
      push(is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, b, j, ln);
      i = j;
      continue;
    }

    std::size_t len = 1;
    for (std::string_view p : kMultiCharPunct) {
      if (src.substr(i, p.size()) == p) {
        len = p.size();
        break;
      }
    }
    push(TokenKind::Punct, b, b + len, ln);
    i += len;
  }

  match_brackets(ts);
  return ts;
}

std::string sanitize_utf8(std::string_view in, bool *repaired)
{
  static constexpr std::string_view kReplacement = "\xEF\xBF\xBD";
  std::string out;
  out.reserve(in.size());
  bool changed = false;
  std::size_t i = 0;
  while (i < in.size()) {
    const auto c = static_cast<unsigned char>(in[i]);
    std::size_t len = 0;
    if (c < 0x80) {
      len = 1;
    } else if (c >= 0xC2 && c <= 0xDF) {
      len = 2;
    } else if (c >= 0xE0 && c <= 0xEF) {
      len = 3;
    } else if (c >= 0xF0 && c <= 0xF4) {
      len = 4;
    }
    bool ok = len > 0 && i + len <= in.size();
    for (std::size_t k = 1; ok && k < len; ++k) {
      ok = (static_cast<unsigned char>(in[i + k]) & 0xC0) == 0x80;
    }
    if (ok && len == 3) {
      const auto c1 = static_cast<unsigned char>(in[i + 1]);
      ok = !(c == 0xE0 && c1 < 0xA0) && !(c == 0xED && c1 >= 0xA0);
    } else if (ok && len == 4) {
      const auto c1 = static_cast<unsigned char>(in[i + 1]);
      ok = !(c == 0xF0 && c1 < 0x90) && !(c == 0xF4 && c1 >= 0x90);
    }
    if (ok) {
      out.append(in.substr(i, len));
      i += len;
    } else {
      out.append(kReplacement);
      changed = true;
      ++i;
    }
  }
  if (repaired) {
    *repaired = changed;
  }
  return out;
}

std::string join_tokens(const TokenStream &ts, std::size_t begin, std::size_t end)
{
  std::string out;
  for (std::size_t i = begin; i < end && i < ts.size(); ++i) {
    if (i > begin && needs_space(ts[i - 1], ts[i])) {
      out.push_back(' ');
    }
    out.append(ts[i].text);
  }
  return out;
}

std::string join_tokens(const std::vector<Token> &tokens)
{
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && needs_space(tokens[i - 1], tokens[i])) {
      out.push_back(' ');
    }
    out.append(tokens[i].text);
  }
  return out;
}

} // namespace apiswap::java
