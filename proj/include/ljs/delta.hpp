#pragma once

#include <variant>

#include "ljs/syntax.hpp"

namespace ljs {

// δn : opn × v1⋯vn → c + err. Pure: no store access by construction (the
// signature admits none), same inputs same output.
struct DeltaResult {
    // Exactly one is set. `error` carries the err payload value
    // ({"type","message"} object) to be raised by E-Prim.
    std::optional<Constant> constant;
    ExprPtr error;
};

DeltaResult delta(PrimOp op, const std::vector<ExprPtr>& args);

// Shared helpers, also used by the evaluator and the desugarer's tests.
ExprPtr make_error_value(const std::string& type, const std::string& message);
bool js_to_boolean(const Expr& v);
std::string js_typeof(const Expr& v);
// === on values: IEEE number equality (NaN≠NaN, -0===0), exact strings,
// location ids; two compound non-location values compare false.
bool js_strict_eq(const Expr& a, const Expr& b);

}  // namespace ljs
