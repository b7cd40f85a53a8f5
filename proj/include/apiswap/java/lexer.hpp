#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace apiswap::java {

enum class TokenKind { Identifier, Keyword, Number, String, Char, Punct };

struct Token {
  TokenKind kind = TokenKind::Punct;
  std::string_view text;
  std::uint32_t line = 1;
  std::size_t offset = 0;

  bool is(std::string_view s) const noexcept { return text == s; }
  bool is_word() const noexcept { return kind != TokenKind::Punct; }
};

struct TokenStream {
  std::vector<Token> tokens;
  // match[i] is the index of the bracket paired with tokens[i], or npos.
  std::vector<std::size_t> match;
  bool degraded = false;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t size() const noexcept { return tokens.size(); }
  const Token &operator[](std::size_t i) const noexcept { return tokens[i]; }
};

/// Splits Java source into tokens, dropping whitespace and comments.
/// Never fails: unterminated literals/comments and unbalanced brackets set
/// `degraded` instead. The returned views point into `source`.
TokenStream tokenize(std::string_view source);

bool is_keyword(std::string_view word) noexcept;

/// Replaces invalid UTF-8 sequences with U+FFFD. `repaired` is set when
/// anything was replaced.
std::string sanitize_utf8(std::string_view in, bool *repaired = nullptr);

/// Concatenates token texts, inserting a single space only between
/// adjacent word-like tokens.
std::string join_tokens(const TokenStream &ts, std::size_t begin, std::size_t end);
std::string join_tokens(const std::vector<Token> &tokens);

} // namespace apiswap::java
