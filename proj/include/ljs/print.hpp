#pragma once

#include <string>

#include "ljs/syntax.hpp"

namespace ljs {

class Store;

// Canonical single-line rendering; print -> read -> print is byte-identical.
// Grammar in docs/core-syntax.md.
std::string print_expr(const Expr& e);
inline std::string print_expr(const ExprPtr& e) { return print_expr(*e); }

// One store line per cell ("#N = value"), then the expression.
std::string print_configuration(const Store& store, const Expr& e);

// Display string the print intrinsic emits for a value (engine-style).
std::string display_value(const Expr& v);

}  // namespace ljs
