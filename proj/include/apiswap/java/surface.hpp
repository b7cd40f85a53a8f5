#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace apiswap::java {

struct MethodDeclaration {
  std::string simple_name;
  int arity = 0;
  /// Modifiers, return type, name and parameters with annotations and
  /// generic arguments removed, e.g. "public static int indexOf(String[] array, String name)".
  std::string signature_text;
  /// Source text of the body including braces; empty for abstract methods.
  std::string body_text;
  std::string file_path;
  int start_line = 1;
  int end_line = 1;
  std::vector<std::string> modifiers;
  bool is_static = false;
  std::string return_type_text;
  /// Dotted chain of enclosing type names, e.g. "Outer.Inner".
  std::string declaring_type;
  bool in_interface = false;
  bool is_deprecated = false;

  bool has_body() const noexcept { return !body_text.empty(); }
  bool has_modifier(std::string_view m) const;
  /// Declared public, or an interface member not declared private.
  bool is_public() const;

  bool operator==(const MethodDeclaration &) const = default;
};

struct MethodInvocation {
  std::string simple_name;
  int arg_count = 0;
  /// Qualifying expression before the final '.', empty when unqualified.
  std::string receiver_text;
  std::string file_path;
  int line = 1;
  /// Number of enclosing method-call argument lists.
  int nesting_depth = 0;
  /// The argument list was cut off before its closing parenthesis; arg_count
  /// is then a lower bound.
  bool truncated = false;

  bool operator==(const MethodInvocation &) const = default;
};

struct ImportStatement {
  /// Without the trailing ".*" for wildcard imports.
  std::string imported_path;
  bool is_static = false;
  bool is_wildcard = false;
  std::string file_path;

  bool operator==(const ImportStatement &) const = default;
};

struct FileSurface {
  std::string file_path;
  std::vector<MethodDeclaration> declarations;
  std::vector<MethodInvocation> invocations;
  std::vector<ImportStatement> imports;
  std::optional<std::string> package_name;
  bool parse_degraded = false;
  /// Per-file error records (e.g. repaired text encoding).
  std::vector<std::string> errors;

  bool operator==(const FileSurface &) const = default;
};

/// Extracts declarations, invocations, imports and the package declaration.
/// Tolerant: malformed input yields a best-effort result with parse_degraded set.
FileSurface parse_file(std::string_view source, std::string_view file_path);

/// Extracts the call expressions in a code fragment taken from a diff.
/// Unclosed argument lists are still reported (truncated = true).
std::vector<MethodInvocation> parse_fragment(std::string_view fragment);

enum class MethodKind { Getter, Setter, MainMethod, Ordinary };

std::string_view to_string(MethodKind kind) noexcept;

MethodKind classify_method(const MethodDeclaration &decl);

/// Number of top-level statements in a "{ ... }" body.
int count_body_statements(std::string_view body_text);

} // namespace apiswap::java
