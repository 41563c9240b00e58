#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ljs/jsast.hpp"

namespace ljs::js {

struct ParseError : std::runtime_error {
    SourceSpan span;
    ParseError(std::string msg, SourceSpan s)
        : std::runtime_error(std::move(msg)), span(s) {}
};

// Parses the JavaScript subset (grammar in docs/js-subset.md). Throws
// ParseError with a span and an expected-token message on failure; forms
// outside the subset (regex literals, getters/setters, eval, arguments, void,
// bit operators, …) are rejected with a "not in subset" message.
Program parse(const std::string& source);

struct Diagnostic {
    std::string message;
    SourceSpan span;
};

// Post-parse checks: break/continue label visibility and loop placement,
// return inside a function, distinct parameter names, distinct object keys,
// switch default last. Empty result means valid.
std::vector<Diagnostic> validate(const Program& program);

// Stable structured-text dump of the AST (one node per line, indented).
std::string dump_ast(const Program& program);
std::string dump_expr(const ExprPtr& e);

}  // namespace ljs::js
