#include "apiswap/java/surface.hpp"

#include "apiswap/java/lexer.hpp"

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <unordered_set>

namespace apiswap::java {

namespace {

constexpr std::size_t npos = TokenStream::npos;

enum class TypeKind { Class, Interface, Enum, Record, Annotation };

struct Modifiers {
  std::vector<std::string> words;
  bool deprecated = false;
};

bool is_modifier_word(std::string_view w)
{
  static const std::unordered_set<std::string_view> kWords = {
      "public", "protected", "private", "static",   "abstract",  "final",
      "native", "synchronized", "transient", "volatile", "strictfp", "default",
  };
  return kWords.count(w) != 0;
}

bool is_primitive(std::string_view w)
{
  return w == "int" || w == "long" || w == "short" || w == "byte" || w == "char" ||
         w == "boolean" || w == "float" || w == "double" || w == "void";
}

bool is_primary_keyword(std::string_view w)
{
  return w == "this" || w == "super" || w == "class" || w == "true" || w == "false" ||
         w == "null" || is_primitive(w);
}

class SurfaceParser {
public:
  SurfaceParser(const TokenStream &ts, std::string_view src, std::string path)
      : ts_(ts), src_(src), path_(std::move(path)), n_(ts.size()), anon_(ts.size(), 0)
  {
  }

  void parse_unit(FileSurface &out)
  {
    decls_ = &out.declarations;
    calls_ = &out.invocations;
    std::size_t i = 0;
    while (i < n_) {
      if (at(i, "package") && ts_[i].kind == TokenKind::Keyword) {
        std::size_t j = i + 1;
        std::string name;
        while (j < n_ && !at(j, ";")) {
          if (!at(j, "@")) {
            name.append(ts_[j].text);
            ++j;
          } else {
            j = skip_annotation(j, nullptr);
          }
        }
        out.package_name = name;
        i = j + 1;
        continue;
      }
      if (at(i, "import") && ts_[i].kind == TokenKind::Keyword) {
        i = parse_import(i, out);
        continue;
      }
      if (at(i, ";")) {
        ++i;
        continue;
      }
      Modifiers mods;
      const std::size_t start = i;
      i = parse_modifiers(i, mods);
      if (i < n_ && is_type_decl_start(i)) {
        i = parse_type_decl(i, start, mods, "", true);
        continue;
      }
      degraded_ = true;
      if (i < n_ && at(i, "{")) {
        i = after(i);
      } else if (i == start) {
        ++i;
      }
    }
    out.parse_degraded = degraded_ || ts_.degraded;
  }

  void parse_fragment(std::vector<MethodInvocation> &out)
  {
    calls_ = &out;
    scan_code(0, n_, "", false);
  }

private:
  const TokenStream &ts_;
  std::string_view src_;
  std::string path_;
  std::size_t n_;
  std::vector<char> anon_;
  std::vector<MethodDeclaration> *decls_ = nullptr;
  std::vector<MethodInvocation> *calls_ = nullptr;
  bool degraded_ = false;

  bool at(std::size_t i, std::string_view s) const { return i < n_ && ts_[i].text == s; }
  bool ident(std::size_t i) const { return i < n_ && ts_[i].kind == TokenKind::Identifier; }
  bool keyword(std::size_t i, std::string_view s) const
  {
    return i < n_ && ts_[i].kind == TokenKind::Keyword && ts_[i].text == s;
  }

  // Index just past the bracket group opened at i.
  std::size_t after(std::size_t open)
  {
    const std::size_t m = ts_.match[open];
    if (m == npos) {
      degraded_ = true;
      return n_;
    }
    return m + 1;
  }

  std::size_t parse_import(std::size_t i, FileSurface &out)
  {
    ImportStatement imp;
    imp.file_path = path_;
    std::size_t j = i + 1;
    if (keyword(j, "static")) {
      imp.is_static = true;
      ++j;
    }
    while (j < n_ && !at(j, ";")) {
      if (ts_[j].is_word() || at(j, ".")) {
        imp.imported_path.append(ts_[j].text);
      } else if (at(j, "*")) {
        imp.is_wildcard = true;
      } else {
        break;
      }
      ++j;
    }
    if (imp.is_wildcard && !imp.imported_path.empty() && imp.imported_path.back() == '.') {
      imp.imported_path.pop_back();
    }
    if (!at(j, ";")) {
      degraded_ = true;
    }
    if (!imp.imported_path.empty()) {
      out.imports.push_back(std::move(imp));
    }
    return at(j, ";") ? j + 1 : j;
  }

  std::size_t skip_annotation(std::size_t i, std::string *name)
  {
    std::size_t j = i + 1;
    std::string last;
    while (j < n_ && ts_[j].is_word()) {
      last = std::string(ts_[j].text);
      ++j;
      if (at(j, ".") && j + 1 < n_ && ts_[j + 1].is_word()) {
        ++j;
      } else {
        break;
      }
    }
    if (name) {
      *name = last;
    }
    if (at(j, "(")) {
      j = after(j);
    }
    return j;
  }

  std::size_t parse_modifiers(std::size_t i, Modifiers &mods)
  {
    while (i < n_) {
      if (at(i, "@") && !at(i + 1, "interface")) {
        std::string name;
        i = skip_annotation(i, &name);
        mods.deprecated |= name == "Deprecated";
        continue;
      }
      const Token &t = ts_[i];
      if (t.kind == TokenKind::Keyword && is_modifier_word(t.text)) {
        mods.words.emplace_back(t.text);
        ++i;
        continue;
      }
      if (t.kind == TokenKind::Identifier && t.text == "sealed" && i + 1 < n_ &&
          ts_[i + 1].kind == TokenKind::Keyword) {
        mods.words.emplace_back("sealed");
        ++i;
        continue;
      }
      if (t.kind == TokenKind::Identifier && t.text == "non" && at(i + 1, "-") &&
          at(i + 2, "sealed")) {
        mods.words.emplace_back("non-sealed");
        i += 3;
        continue;
      }
      break;
    }
    return i;
  }

  bool is_type_decl_start(std::size_t i) const
  {
    if (keyword(i, "class") || keyword(i, "interface") || keyword(i, "enum")) {
      return true;
    }
    if (at(i, "@") && keyword(i + 1, "interface")) {
      return true;
    }
    return ident(i) && ts_[i].text == "record" && ident(i + 1) &&
           (at(i + 2, "(") || at(i + 2, "<"));
  }

  // Skips a generic argument/parameter list starting at '<'; returns the
  // index past the closing '>'.
  std::size_t skip_angle(std::size_t i)
  {
    int depth = 0;
    for (std::size_t j = i; j < n_; ++j) {
      if (at(j, "<")) {
        ++depth;
      } else if (at(j, ">")) {
        if (--depth == 0) {
          return j + 1;
        }
      } else if (at(j, "(") || at(j, "[")) {
        j = after(j) - 1;
      } else if (at(j, "{") || at(j, ";") || at(j, "}")) {
        degraded_ = true;
        return j;
      }
    }
    degraded_ = true;
    return n_;
  }

  std::size_t parse_type_decl(std::size_t i, std::size_t start, const Modifiers &mods,
                              const std::string &outer, bool emit)
  {
    (void)start;
    (void)mods;
    TypeKind kind = TypeKind::Class;
    if (at(i, "@")) {
      kind = TypeKind::Annotation;
      i += 2;
    } else {
      const std::string_view kw = ts_[i].text;
      kind = kw == "interface" ? TypeKind::Interface
             : kw == "enum"    ? TypeKind::Enum
             : kw == "record"  ? TypeKind::Record
                               : TypeKind::Class;
      ++i;
    }
    std::string name;
    if (ident(i)) {
      name = std::string(ts_[i].text);
      ++i;
    } else {
      degraded_ = true;
    }
    const std::string full = outer.empty() ? name : outer + "." + name;
    if (at(i, "<")) {
      i = skip_angle(i);
    }
    if (kind == TypeKind::Record && at(i, "(")) {
      i = after(i);
    }
    while (i < n_ && !at(i, "{") && !at(i, ";") && !at(i, "}")) {
      i = at(i, "(") ? after(i) : i + 1;
    }
    if (at(i, "{")) {
      return parse_type_body(i, kind, full, emit);
    }
    degraded_ = true;
    return at(i, ";") ? i + 1 : i;
  }

  std::size_t parse_type_body(std::size_t open, TypeKind kind, const std::string &type_name,
                              bool emit)
  {
    const std::size_t m = ts_.match[open];
    if (m == npos) {
      degraded_ = true;
    }
    const std::size_t close = m == npos ? n_ : m;
    std::size_t i = open + 1;
    if (kind == TypeKind::Enum) {
      i = parse_enum_constants(i, close, type_name);
    }
    while (i < close) {
      if (at(i, ";")) {
        ++i;
        continue;
      }
      if (at(i, "{")) {
        const std::size_t end = after(i);
        scan_code(i + 1, end - 1, type_name, emit);
        i = end;
        continue;
      }
      const std::size_t member_start = i;
      Modifiers mods;
      i = parse_modifiers(i, mods);
      if (i >= close) {
        break;
      }
      if (is_type_decl_start(i)) {
        i = parse_type_decl(i, member_start, mods, type_name, emit);
        continue;
      }
      i = parse_member(member_start, i, close, mods, kind, type_name, emit);
    }
    return std::min(close + 1, n_);
  }

  std::size_t parse_enum_constants(std::size_t i, std::size_t close, const std::string &type_name)
  {
    while (i < close) {
      if (at(i, ";")) {
        return i + 1;
      }
      if (at(i, ",")) {
        ++i;
        continue;
      }
      while (at(i, "@")) {
        i = skip_annotation(i, nullptr);
      }
      if (!ident(i)) {
        return i;
      }
      ++i;
      if (at(i, "(")) {
        const std::size_t end = after(i);
        scan_code(i, end, type_name, false);
        i = end;
      }
      if (at(i, "{")) {
        i = parse_type_body(i, TypeKind::Class, type_name, false);
      }
    }
    return i;
  }

  // Header tokens in [b, e) minus annotations, generic arguments and
  // (optionally) the final keyword.
  std::vector<Token> strip_header(std::size_t b, std::size_t e, bool drop_final)
  {
    std::vector<Token> out;
    std::size_t i = b;
    while (i < e) {
      if (at(i, "@")) {
        i = skip_annotation(i, nullptr);
        continue;
      }
      if (at(i, "<")) {
        i = skip_angle(i);
        continue;
      }
      if (drop_final && keyword(i, "final")) {
        ++i;
        continue;
      }
      out.push_back(ts_[i]);
      ++i;
    }
    return out;
  }

  std::vector<std::pair<std::size_t, std::size_t>> split_params(std::size_t open, std::size_t close)
  {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t b = open + 1;
    std::size_t i = b;
    int angle = 0;
    while (i < close) {
      if (at(i, "(") || at(i, "[") || at(i, "{")) {
        i = std::min(after(i), close);
        continue;
      }
      if (at(i, "<")) {
        ++angle;
      } else if (at(i, ">")) {
        angle = std::max(0, angle - 1);
      } else if (at(i, ",") && angle == 0) {
        out.emplace_back(b, i);
        b = i + 1;
      }
      ++i;
    }
    if (b < close || !out.empty()) {
      out.emplace_back(b, close);
    }
    return out;
  }

  std::size_t parse_member(std::size_t member_start, std::size_t i, std::size_t close,
                           const Modifiers &mods, TypeKind kind, const std::string &type_name,
                           bool emit)
  {
    if (at(i, "<")) {
      i = skip_angle(i);
    }
    const std::size_t ret_begin = i;
    std::size_t j = i;
    while (j < close) {
      if (at(j, "<")) {
        j = skip_angle(j);
        continue;
      }
      if (at(j, "[")) {
        j = after(j);
        continue;
      }
      if (at(j, "@")) {
        j = skip_annotation(j, nullptr);
        continue;
      }
      if (at(j, "(") || at(j, "=") || at(j, ";") || at(j, ",") || at(j, "{") || at(j, "}")) {
        break;
      }
      ++j;
    }
    if (j >= close) {
      degraded_ = true;
      return close;
    }

    if (at(j, "(") && j > ret_begin && ident(j - 1)) {
      const std::size_t name_idx = j - 1;
      const bool is_ctor = name_idx == ret_begin;
      const std::size_t params_end = after(j);
      std::size_t k = params_end;
      while (k < close && !at(k, "{") && !at(k, ";")) {
        if (keyword(k, "default")) {
          // Annotation element default value.
          while (k < close && !at(k, ";")) {
            k = (at(k, "(") || at(k, "{") || at(k, "[")) ? after(k) : k + 1;
          }
          break;
        }
        k = at(k, "(") ? after(k) : k + 1;
      }
      const bool has_body = at(k, "{");
      const std::size_t body_end = has_body ? after(k) : std::min(k + 1, close);
      if (emit && !is_ctor && decls_) {
        emit_declaration(member_start, ret_begin, name_idx, j, params_end - 1, has_body ? k : npos,
                         body_end - 1, mods, kind, type_name);
      }
      if (has_body) {
        scan_code(k + 1, body_end - 1, type_name, emit);
      }
      return body_end;
    }

    if (at(j, "{")) {
      // Compact record constructor or initializer after modifiers.
      const std::size_t end = after(j);
      scan_code(j + 1, end - 1, type_name, emit);
      return end;
    }
    if (at(j, "}")) {
      degraded_ = true;
      return j + 1;
    }

    // Field declaration: scan initializers up to the terminating ';'.
    std::size_t end = j;
    while (end < close && !at(end, ";")) {
      end = (at(end, "(") || at(end, "[") || at(end, "{")) ? std::min(after(end), close) : end + 1;
    }
    scan_code(j, end, type_name, emit);
    return std::min(end + 1, close);
  }

  void emit_declaration(std::size_t member_start, std::size_t ret_begin, std::size_t name_idx,
                        std::size_t params_open, std::size_t params_close, std::size_t body_open,
                        std::size_t end_tok, const Modifiers &mods, TypeKind kind,
                        const std::string &type_name)
  {
    MethodDeclaration d;
    d.simple_name = std::string(ts_[name_idx].text);
    d.file_path = path_;
    d.modifiers = mods.words;
    d.is_static = std::find(d.modifiers.begin(), d.modifiers.end(), "static") != d.modifiers.end();
    d.is_deprecated = mods.deprecated;
    d.declaring_type = type_name;
    d.in_interface = kind == TypeKind::Interface || kind == TypeKind::Annotation;
    d.return_type_text = join_tokens(strip_header(ret_begin, name_idx, false));
    d.start_line = static_cast<int>(ts_[member_start].line);
    d.end_line = static_cast<int>(ts_[std::min(end_tok, n_ - 1)].line);

    std::vector<std::string> params;
    for (auto [b, e] : split_params(params_open, params_close)) {
      params.push_back(join_tokens(strip_header(b, e, true)));
    }
    d.arity = static_cast<int>(params.size());

    std::string sig;
    for (const auto &m : d.modifiers) {
      sig += m;
      sig += ' ';
    }
    sig += d.return_type_text;
    sig += ' ';
    sig += d.simple_name;
    sig += '(';
    for (std::size_t p = 0; p < params.size(); ++p) {
      if (p > 0) {
        sig += ", ";
      }
      sig += params[p];
    }
    sig += ')';
    d.signature_text = std::move(sig);

    if (body_open != npos && end_tok < n_) {
      const std::size_t b = ts_[body_open].offset;
      const std::size_t e = ts_[end_tok].offset + ts_[end_tok].text.size();
      d.body_text = std::string(src_.substr(b, e - b));
    }
    decls_->push_back(std::move(d));
  }

  // Index of the '>' closing a generic argument list opened at lt, or npos
  // when the '<' reads as a relational operator.
  std::size_t generic_close(std::size_t lt, std::size_t limit) const
  {
    bool context = false;
    if (lt > 0 && at(lt - 1, ".")) {
      context = true;
    } else if (lt > 0 && (ident(lt - 1) || (ts_[lt - 1].kind == TokenKind::Keyword &&
                                           is_primitive(ts_[lt - 1].text)))) {
      std::size_t s = lt - 1;
      while (s >= 2 && at(s - 1, ".") && ident(s - 2)) {
        s -= 2;
      }
      context = s > 0 && (keyword(s - 1, "new") || keyword(s - 1, "instanceof"));
    } else {
      return npos;
    }
    int depth = 0;
    std::size_t close = npos;
    for (std::size_t j = lt; j < limit && j < lt + 96; ++j) {
      const Token &t = ts_[j];
      if (t.is("<")) {
        ++depth;
      } else if (t.is(">")) {
        if (--depth == 0) {
          close = j;
          break;
        }
      } else if (t.kind == TokenKind::Identifier || t.is(".") || t.is(",") || t.is("?") ||
                 t.is("&") || t.is("[") || t.is("]") || t.is("@") ||
                 (t.kind == TokenKind::Keyword &&
                  (t.is("extends") || t.is("super") || is_primitive(t.text)))) {
        continue;
      } else {
        return npos;
      }
    }
    if (close == npos) {
      return npos;
    }
    if (context) {
      return close;
    }
    if (at(close + 1, "::") || ident(close + 1)) {
      return close;
    }
    return npos;
  }

  int count_args(std::size_t open, std::size_t close) const
  {
    int commas = 0;
    bool content = false;
    std::size_t j = open + 1;
    while (j < close) {
      const Token &t = ts_[j];
      if (t.is("(") || t.is("[") || t.is("{")) {
        const std::size_t m = ts_.match[j];
        content = true;
        j = (m == npos || m >= close) ? close : m + 1;
        continue;
      }
      if (t.is("<")) {
        const std::size_t g = generic_close(j, close);
        if (g != npos) {
          content = true;
          j = g + 1;
          continue;
        }
      }
      if (t.is(",")) {
        ++commas;
      } else {
        content = true;
      }
      ++j;
    }
    return (content || commas > 0) ? commas + 1 : 0;
  }

  std::size_t find_open_angle(std::size_t gt) const
  {
    int depth = 0;
    for (std::size_t j = gt + 1; j-- > 0 && gt - j < 96;) {
      const Token &t = ts_[j];
      if (t.is(">")) {
        ++depth;
      } else if (t.is("<")) {
        if (--depth == 0) {
          return j;
        }
      } else if (t.is(";") || t.is("{") || t.is("}") || t.is("(") || t.is(")") || t.is("=")) {
        return npos;
      }
    }
    return npos;
  }

  std::string receiver_text(std::size_t i) const
  {
    if (i == 0) {
      return {};
    }
    std::size_t j = i - 1;
    if (at(j, ">")) {
      const std::size_t lt = find_open_angle(j);
      if (lt == npos || lt == 0) {
        return {};
      }
      j = lt - 1;
    }
    if (!at(j, ".")) {
      return {};
    }
    const std::size_t end = j;
    std::size_t start = end;
    auto p = static_cast<std::ptrdiff_t>(j) - 1;
    bool need_primary = true;
    while (p >= 0) {
      const auto up = static_cast<std::size_t>(p);
      const Token &t = ts_[up];
      if (need_primary) {
        if (t.is(")") || t.is("]") || t.is("}")) {
          const std::size_t o = ts_.match[up];
          if (o == npos) {
            break;
          }
          start = o;
          p = static_cast<std::ptrdiff_t>(o) - 1;
          if (t.is(")")) {
            if (p >= 0 && at(static_cast<std::size_t>(p), ">")) {
              const std::size_t lt = find_open_angle(static_cast<std::size_t>(p));
              if (lt != npos && lt > 0 && ident(lt - 1)) {
                p = static_cast<std::ptrdiff_t>(lt) - 1;
              }
            }
            if (p >= 0 && ident(static_cast<std::size_t>(p))) {
              start = static_cast<std::size_t>(p);
              --p;
            }
            need_primary = false;
          }
          continue;
        }
        if (t.kind == TokenKind::Keyword ? is_primary_keyword(t.text) : t.is_word()) {
          start = up;
          --p;
          need_primary = false;
          continue;
        }
        break;
      }
      if (t.is(".")) {
        --p;
        need_primary = true;
        continue;
      }
      if (t.is(">")) {
        const std::size_t lt = find_open_angle(up);
        if (lt != npos && lt > 1 && at(lt - 1, ".")) {
          p = static_cast<std::ptrdiff_t>(lt) - 2;
          need_primary = true;
          continue;
        }
        break;
      }
      if (t.kind == TokenKind::Keyword && t.is("new")) {
        start = up;
      }
      break;
    }
    return join_tokens(ts_, start, end);
  }

  std::size_t scan_creation(std::size_t i, std::size_t e,
                            std::vector<std::pair<std::size_t, bool>> &parens)
  {
    std::size_t j = i + 1;
    while (j < e && at(j, "@")) {
      j = skip_annotation(j, nullptr);
    }
    while (j < e) {
      if (ident(j) || (ts_[j].kind == TokenKind::Keyword && is_primitive(ts_[j].text)) ||
          at(j, ".")) {
        ++j;
      } else if (at(j, "<")) {
        j = skip_angle(j);
      } else {
        break;
      }
    }
    if (j < e && at(j, "(")) {
      const std::size_t m = ts_.match[j];
      if (m != npos && m + 1 < n_ && at(m + 1, "{")) {
        anon_[m + 1] = 1;
      }
      parens.emplace_back(m, false);
      return j + 1;
    }
    return j;
  }

  // Records every call expression in [b, e). Anonymous class bodies and local
  // type declarations are parsed as type bodies.
  void scan_code(std::size_t b, std::size_t e, const std::string &ctx, bool emit)
  {
    std::vector<std::pair<std::size_t, bool>> parens;
    int depth = 0;
    std::size_t i = b;
    while (i < e) {
      const Token &t = ts_[i];
      if (t.kind == TokenKind::Punct) {
        if (t.is(")")) {
          if (!parens.empty() && parens.back().first == i) {
            depth -= parens.back().second ? 1 : 0;
            parens.pop_back();
          }
        } else if (t.is("(")) {
          parens.emplace_back(ts_.match[i], false);
        } else if (t.is("@") && !keyword(i + 1, "interface")) {
          i = skip_annotation(i, nullptr);
          continue;
        } else if (t.is("{") && anon_[i]) {
          i = parse_type_body(i, TypeKind::Class, ctx, false);
          continue;
        }
        ++i;
        continue;
      }
      const bool after_dot = i > b && at(i - 1, ".");
      if (t.kind == TokenKind::Keyword) {
        if (t.is("new")) {
          i = scan_creation(i, e, parens);
          continue;
        }
        if ((t.is("class") || t.is("interface") || t.is("enum")) && !after_dot && ident(i + 1)) {
          i = parse_type_decl(i, i, Modifiers{}, ctx, emit);
          continue;
        }
        ++i;
        continue;
      }
      if (t.kind == TokenKind::Identifier) {
        if (t.is("record") && !after_dot && ident(i + 1) && (at(i + 2, "(") || at(i + 2, "<")) &&
            decls_ != nullptr) {
          i = parse_type_decl(i, i, Modifiers{}, ctx, emit);
          continue;
        }
        if (i + 1 < e && at(i + 1, "(") && !is_declarator(i, b)) {
          record_invocation(i, e, depth);
          parens.emplace_back(ts_.match[i + 1], true);
          ++depth;
          i += 2;
          continue;
        }
      }
      ++i;
    }
  }

  // "Type name(" is a method header (seen in diff fragments), not a call.
  bool is_declarator(std::size_t i, std::size_t b) const
  {
    if (i <= b) {
      return false;
    }
    const Token &prev = ts_[i - 1];
    if (prev.kind == TokenKind::Identifier) {
      return prev.text != "yield";
    }
    if (prev.kind == TokenKind::Keyword) {
      return is_primitive(prev.text);
    }
    if (prev.is("]")) {
      return ts_.match[i - 1] != npos && ts_.match[i - 1] + 1 == i - 1;
    }
    if (prev.is(">")) {
      const std::size_t lt = find_open_angle(i - 1);
      return lt != npos && !(lt > 0 && at(lt - 1, "."));
    }
    return false;
  }

  void record_invocation(std::size_t i, std::size_t e, int depth)
  {
    const std::size_t open = i + 1;
    const std::size_t m = ts_.match[open];
    const bool truncated = m == npos || m >= e;
    if (truncated && decls_ != nullptr) {
      degraded_ = true;
    }
    MethodInvocation inv;
    inv.simple_name = std::string(ts_[i].text);
    inv.arg_count = count_args(open, truncated ? e : m);
    inv.receiver_text = receiver_text(i);
    inv.file_path = path_;
    inv.line = static_cast<int>(ts_[i].line);
    inv.nesting_depth = depth;
    inv.truncated = truncated;
    calls_->push_back(std::move(inv));
  }
};

bool has_upper_after(std::string_view name, std::string_view prefix)
{
  return name.size() > prefix.size() && name.substr(0, prefix.size()) == prefix &&
         std::isupper(static_cast<unsigned char>(name[prefix.size()]));
}

} // namespace

bool MethodDeclaration::has_modifier(std::string_view m) const
{
  return std::find(modifiers.begin(), modifiers.end(), m) != modifiers.end();
}

bool MethodDeclaration::is_public() const
{
  return has_modifier("public") || (in_interface && !has_modifier("private"));
}

FileSurface parse_file(std::string_view source, std::string_view file_path)
{
  FileSurface out;
  out.file_path = std::string(file_path);
  bool repaired = false;
  const std::string text = sanitize_utf8(source, &repaired);
  if (repaired) {
    out.errors.push_back("invalid UTF-8 sequences replaced");
  }
  const TokenStream ts = tokenize(text);
  SurfaceParser parser(ts, text, out.file_path);
  parser.parse_unit(out);
  return out;
}

std::vector<MethodInvocation> parse_fragment(std::string_view fragment)
{
  const std::string text = sanitize_utf8(fragment);
  const TokenStream ts = tokenize(text);
  std::vector<MethodInvocation> out;
  SurfaceParser parser(ts, text, "");
  parser.parse_fragment(out);
  return out;
}

std::string_view to_string(MethodKind kind) noexcept
{
  switch (kind) {
  case MethodKind::Getter: return "Getter";
  case MethodKind::Setter: return "Setter";
  case MethodKind::MainMethod: return "MainMethod";
  case MethodKind::Ordinary: return "Ordinary";
  }
  return "Ordinary";
}

int count_body_statements(std::string_view body_text)
{
  const TokenStream ts = tokenize(body_text);
  if (ts.size() == 0 || !ts[0].is("{")) {
    return 0;
  }
  const std::size_t close = ts.match[0] == npos ? ts.size() : ts.match[0];
  auto continues = [&](std::size_t k) {
    if (k >= close) {
      return true;
    }
    const Token &t = ts[k];
    return t.is("else") || t.is("catch") || t.is("finally") || t.is("while") || t.is(")") ||
           t.is(",") || t.is(";") || t.is(".");
  };
  int count = 0;
  std::size_t i = 1;
  while (i < close) {
    const Token &t = ts[i];
    if (t.is("(") || t.is("[") || t.is("{")) {
      const std::size_t m = ts.match[i];
      const std::size_t next = (m == npos || m >= close) ? close : m + 1;
      if (t.is("{") && !continues(next)) {
        ++count;
      }
      i = next;
      continue;
    }
    if (t.is(";") && !(i + 1 < close && ts[i + 1].is("else"))) {
      ++count;
    }
    ++i;
  }
  return count;
}

MethodKind classify_method(const MethodDeclaration &decl)
{
  const std::string_view name = decl.simple_name;
  if (name == "main" && decl.is_static && decl.arity == 1) {
    return MethodKind::MainMethod;
  }
  const bool small = count_body_statements(decl.body_text) <= 1;
  if ((has_upper_after(name, "get") || has_upper_after(name, "is")) && decl.arity == 0 && small) {
    return MethodKind::Getter;
  }
  if (has_upper_after(name, "set") && decl.arity == 1 && small) {
    return MethodKind::Setter;
  }
  return MethodKind::Ordinary;
}

} // namespace apiswap::java
