#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ljs/jsparse.hpp"
#include "ljs/syntax.hpp"

namespace ljs {

// The two-point lattice: NotXHR <: JS. NotXHR marks expressions that provably
// never evaluate to the string "XMLHttpRequest".
enum class SandboxType { JS, NotXHR };

inline SandboxType join(SandboxType a, SandboxType b) {
    return a == b ? a : SandboxType::JS;
}

struct TypeEnv {
    std::map<std::string, SandboxType> vars;
    // Occurrence-typing facts: variables known to hold primitive strings
    // (established by a typeof guard).
    std::set<std::string> prim_string_facts;
};

struct TypecheckResult {
    bool ok = false;
    SandboxType type = SandboxType::JS;
    // On rejection: the first (leftmost-innermost) untypable node and the
    // requirement that failed.
    ExprPtr offending;
    std::string rule;
};

TypecheckResult typecheck(const TypeEnv& env, const ExprPtr& e);

// Convenience for whole desugared programs and runtime states: every free
// variable is assumed JS.
TypecheckResult typecheck_closed(const ExprPtr& e);

// The trusted JavaScript wrapper inserted ahead of instrumented programs.
const char* safe_lookup_source();

struct InstrumentResult {
    js::Program program;  // rewritten, safeLookup definition prepended
    std::vector<js::Diagnostic> rejections;
};

// Rewrites every bracket member read to safeLookup(e1, e2) and every dotted
// read of the literal name XMLHttpRequest to safeLookup(e, "XMLHttpRequest").
// `with`, increment/decrement on members, and compound assignment to members
// are rejected.
InstrumentResult instrument(const js::Program& program);

struct SafetyReport {
    bool certified = false;
    std::string reason;      // first failure, human readable
    SourceSpan span;         // offending source span when known
    std::string core_text;   // offending core node, printed
    std::string failed_rule;
};

// instrument → desugar (no preamble) → typecheck with all free identifiers
// (and this) at JS.
SafetyReport check_subset(const js::Program& program);
SafetyReport check_subset_source(const std::string& source);

struct FormCheck {
    std::string form;
    bool passes;
};

// Desugars a placeholder instance of every surface form (with excluded) and
// type-checks it with placeholders at JS.
std::vector<FormCheck> per_form_context_check();

}  // namespace ljs
