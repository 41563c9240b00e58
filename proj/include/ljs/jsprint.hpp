#pragma once

#include <string>

#include "ljs/jsast.hpp"

namespace ljs::js {

// Canonical surface rendering; parse(print_program(p)) equals p.
std::string print_program(const Program& program);
std::string print_stmt(const StmtPtr& s, int indent = 0);
std::string print_js_expr(const ExprPtr& e);

// Structural equality, spans ignored.
bool ast_equal(const Program& a, const Program& b);
bool ast_equal(const Expr& a, const Expr& b);
bool ast_equal(const Stmt& a, const Stmt& b);

}  // namespace ljs::js
