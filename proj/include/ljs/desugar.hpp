#pragma once

#include <set>
#include <vector>

#include "ljs/jsast.hpp"
#include "ljs/syntax.hpp"

namespace ljs {

struct DesugarOptions {
    bool include_preamble = true;
};

// Translates a validated program into the core. Total over valid ASTs: any
// failure here is a bug, surfaced as an assertion.
ExprPtr desugar_program(const js::Program& program, const DesugarOptions& opts = {});

// Wraps a core expression in the fixed prelude: allocates the global object
// at location 0, installs window/Object/Number/print/XMLHttpRequest/NaN/
// undefined on it, and binds the helper functions emitted code relies on.
ExprPtr core_preamble(ExprPtr body);

// Lexical names the preamble provides to emitted code.
const std::set<std::string>& preamble_binding_names();

// var-declared and function-declared names lifted to the top of a function
// body (nested function bodies excluded).
std::set<std::string> lifted_var_names(const std::vector<js::StmtPtr>& body);

// Identifiers assigned anywhere under these statements (nested functions
// included); parameters with assigned names get ref-cell wrappers.
std::set<std::string> assigned_names(const std::vector<js::StmtPtr>& body);

}  // namespace ljs
