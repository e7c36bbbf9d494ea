#pragma once
// Plain-text s-expression serialization of form expressions, for golden
// files and CLI output. Grammar documented in docs/expression-grammar.md.

#include <string>

#include "gforms/form_expr.hpp"

namespace gforms {

/// Canonical s-expression (same string as FormExpr::key()).
std::string to_sexpr(const FormExpr& e);

/// Parse an s-expression. The expression's arity must be supplied (the
/// textual form does not carry it); factor indices are checked against
/// it. Throws std::invalid_argument on malformed input.
FormExpr parse_sexpr(const std::string& text, int arity);

/// Arity inferred as 1 + the largest factor index mentioned (at least 1).
FormExpr parse_sexpr(const std::string& text);

}  // namespace gforms
