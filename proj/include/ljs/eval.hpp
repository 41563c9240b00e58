#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ljs/syntax.hpp"

namespace ljs {

struct Configuration {
    Store store;
    ExprPtr expr;
};

// One evaluation-context frame: the enclosing node and which child slot the
// hole sits in. Slot numbering matches get_child/replace_child.
struct ContextFrame {
    ExprPtr node;
    int slot = 0;
};

// Frame classification per the context grammars: F-contexts (exception
// contexts) admit every frame except try bodies; G-contexts (local jump
// contexts) admit E′ frames plus try/catch bodies.
bool is_f_frame(const ContextFrame& f);
bool is_g_frame(const ContextFrame& f);

struct Decomposition {
    enum class Kind {
        AlreadyValue,
        Redex,     // redex contractible by a reduction rule
        ErrJump,   // redex is `err v`, handled by the nearest try frame
        BreakJump, // redex is `break l v` with v a value
        NoRedex,   // malformed term: nothing applies (never for well-formed input)
    };
    Kind kind = Kind::NoRedex;
    std::vector<ContextFrame> frames;  // outermost first
    ExprPtr redex;
    bool f_context = false;  // whole stack is an F-context
    bool g_context = false;  // whole stack is a G-context
};

Decomposition decompose(const ExprPtr& e);

// Reassembles frames[0..n) around an expression.
ExprPtr plug(const std::vector<ContextFrame>& frames, size_t n, ExprPtr inner);

struct Outcome {
    enum class Kind {
        Value,
        UncaughtError,
        TopLevelBreak,
        Stuck,
        FuelExhausted,
    };
    Kind kind = Kind::Stuck;
    ExprPtr value;           // Value / UncaughtError payload / TopLevelBreak value
    std::string label;       // TopLevelBreak
    std::string reason;      // Stuck
    Configuration remainder; // Stuck / FuelExhausted carry the final state
};

struct StepOptions {
    std::string* output = nullptr;  // print intrinsic sink
    bool check_well_formed = false; // assert wf on the result configuration
};

struct StepResult {
    bool done = false;
    Configuration next;  // when !done
    Outcome outcome;     // when done
    std::string rule;    // name of the rule that fired (diagnostics/tests)
};

// Takes the configuration by value: pass an rvalue to step in place without
// copying the store.
StepResult step(Configuration config, const StepOptions& opts = {});

struct EvalResult {
    Outcome outcome;
    uint64_t steps = 0;
};

inline constexpr uint64_t kDefaultFuel = 10'000'000;

EvalResult eval(Configuration config, uint64_t fuel = kDefaultFuel,
                const StepOptions& opts = {});

// As eval, but records every configuration (including the initial one).
struct TraceResult {
    std::vector<Configuration> states;
    Outcome outcome;
};
TraceResult trace(Configuration config, uint64_t fuel = kDefaultFuel,
                  const StepOptions& opts = {});

// The distinguished print code value the preamble installs; applications of
// a structurally equal function are the print intrinsic.
ExprPtr print_code_value();
bool is_print_code(const Expr& fn);

}  // namespace ljs
