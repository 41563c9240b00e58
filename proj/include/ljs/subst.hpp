#pragma once

#include <map>
#include <set>
#include <string>

#include "ljs/syntax.hpp"

namespace ljs {

class Store;

// e[x/v]. Capture-avoiding: binders colliding with free variables of the
// replacement are freshened. Evaluation only ever substitutes closed values,
// in which case no renaming happens and untouched subtrees are shared.
ExprPtr substitute(const ExprPtr& body, const std::string& name, const ExprPtr& replacement);

// Simultaneous substitution, used by E-App. Keys must be pairwise distinct.
ExprPtr substitute_many(const ExprPtr& body, const std::map<std::string, ExprPtr>& subst);

std::set<std::string> free_variables(const Expr& e);
inline std::set<std::string> free_variables(const ExprPtr& e) { return free_variables(*e); }

struct WellFormedness {
    bool ok = true;
    std::string reason;
};

// A configuration is well-formed when the expression is closed, every
// location reachable from it or the store is allocated, object literals have
// pairwise-distinct keys, err payloads are values, and err never sits inside
// a value position (function body or object field).
WellFormedness check_well_formed(const Store& store, const Expr& e);
bool well_formed(const Store& store, const Expr& e);

// Source-level expressions additionally contain no err and no locations.
bool source_well_formed(const Expr& e, std::string* reason = nullptr);

}  // namespace ljs
