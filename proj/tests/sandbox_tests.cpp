#include <doctest.h>

#include <set>

#include "ljs/desugar.hpp"
#include "ljs/eval.hpp"
#include "ljs/jsparse.hpp"
#include "ljs/print.hpp"
#include "ljs/reader.hpp"
#include "ljs/sandbox.hpp"

using namespace ljs;

namespace {

bool trace_reads_xhr(const ExprPtr& core, uint64_t fuel = 200000) {
    TraceResult tr = trace(Configuration{Store{}, core}, fuel);
    for (const auto& st : tr.states) {
        Decomposition d = decompose(st.expr);
        if (d.kind != Decomposition::Kind::Redex) continue;
        const auto* g = d.redex->as<GetFieldExpr>();
        if (!g) continue;
        const auto* c = g->field->as<ConstExpr>();
        if (c && c->value.is(Constant::Kind::String) &&
            c->value.as_string() == "XMLHttpRequest") {
            return true;
        }
    }
    return false;
}

const char* kLookupJs =
    "var lookupJS = function(obj, field) {\n"
    "  if (field === \"XMLHttpRequest\") { return undefined }\n"
    "  else { return obj[field] } };\n";

const char* kExploitCall =
    "(window, { \"toString\": function() { return \"XMLHttpRequest\" } }));\n";

}  // namespace

TEST_CASE("the core lookup wrapper is typable") {
    ExprPtr lookup = read_core(
        "func(obj, field) { return if (@stxeq(field, \"XMLHttpRequest\")) { undefined }"
        " else { (deref obj)[field] } }");
    CHECK(typecheck_closed(lookup).ok);
}

TEST_CASE("bare field access is not typable") {
    TypeEnv env;
    env.vars["x"] = SandboxType::JS;
    env.vars["y"] = SandboxType::JS;
    TypecheckResult tc = typecheck(env, read_core("x[y]"));
    CHECK_FALSE(tc.ok);
    CHECK(tc.rule.find("T-GetField") != std::string::npos);
    CHECK(print_expr(tc.offending) == "x[y]");
}

TEST_CASE("the safety pattern on the global object is rejected") {
    CHECK_FALSE(typecheck_closed(read_core("(deref (ref 0))[\"XMLHttpRequest\"]")).ok);
}

TEST_CASE("the auxiliary intermediate states stay typable") {
    TypeEnv env;
    env.vars["window"] = SandboxType::JS;
    CHECK(typecheck(
              env,
              read_core("if (@stxeq(\"XMLHttpRequest\", \"XMLHttpRequest\")) { undefined }"
                        " else { (deref window)[\"XMLHttpRequest\"] }"))
              .ok);
    CHECK(typecheck(env, read_core("if (true) { undefined }"
                                   " else { (deref window)[\"XMLHttpRequest\"] }"))
              .ok);
}

TEST_CASE("narrowing is monotone: only JS refines to NotXHR") {
    // The then branch keeps the unnarrowed environment: x stays JS there.
    TypeEnv env;
    env.vars["x"] = SandboxType::JS;
    env.vars["o"] = SandboxType::JS;
    // In the else branch x : NotXHR admits the lookup.
    CHECK(typecheck(env, read_core("if (@stxeq(x, \"XMLHttpRequest\")) { undefined }"
                                   " else { (deref o)[x] } "))
              .ok);
    // In the then branch it does not.
    CHECK_FALSE(typecheck(env, read_core("if (@stxeq(x, \"XMLHttpRequest\"))"
                                         " { (deref o)[x] } else { undefined }"))
                    .ok);
}

TEST_CASE("string literals other than the blocked name are NotXHR") {
    TypeEnv env;
    env.vars["o"] = SandboxType::JS;
    CHECK(typecheck(env, read_core("(deref o)[\"foo\"]")).ok);
    CHECK_FALSE(typecheck(env, read_core("(deref o)[\"XMLHttpRequest\"]")).ok);
    // Concatenation can assemble the name, so it stays JS.
    CHECK_FALSE(typecheck(env, read_core("(deref o)[@strcat(\"XMLHttp\", \"Request\")]")).ok);
    // Stringified numbers cannot.
    CHECK(typecheck(env, read_core("(deref o)[@numstr(3)]")).ok);
}

TEST_CASE("desugared lookupJS is rejected; safeLookup is certified") {
    js::Program bad = js::parse(kLookupJs);
    CHECK_FALSE(typecheck_closed(desugar_program(bad, DesugarOptions{false})).ok);

    js::Program good = js::parse(safe_lookup_source());
    TypecheckResult tc = typecheck_closed(desugar_program(good, DesugarOptions{false}));
    CHECK(tc.ok);
}

TEST_CASE("the toString exploit reaches the field under lookupJS only") {
    js::Program exploit =
        js::parse(std::string(kLookupJs) + "print(lookupJS" + kExploitCall);
    CHECK(trace_reads_xhr(desugar_program(exploit)));

    js::Program guarded = js::parse(std::string(safe_lookup_source()) +
                                    "print(safeLookup" + kExploitCall);
    ExprPtr core = desugar_program(guarded);
    CHECK_FALSE(trace_reads_xhr(core));
    std::string out;
    StepOptions opts;
    opts.output = &out;
    EvalResult r = eval(Configuration{Store{}, core}, 200000, opts);
    CHECK(r.outcome.kind == Outcome::Kind::Value);
    CHECK(out == "undefined\n");
}

TEST_CASE("subject reduction along the safeLookup traces") {
    const char* inputs[] = {
        "print(safeLookup(window, \"print\"));",
        "print(safeLookup({ \"a\": 1 }, \"a\"));",
        "print(safeLookup({ \"a\": 1 }, \"XMLHttpRequest\"));",
        "print(safeLookup(window, { \"toString\": function() { return \"XMLHttpRequest\" } }));",
    };
    for (const char* input : inputs) {
        js::Program prog = js::parse(std::string(safe_lookup_source()) + input);
        ExprPtr core = desugar_program(prog);
        TraceResult tr = trace(Configuration{Store{}, core}, 200000);
        REQUIRE(tr.outcome.kind == Outcome::Kind::Value);
        size_t i = 0;
        for (const auto& st : tr.states) {
            TypecheckResult tc = typecheck_closed(st.expr);
            INFO("input: " << input << ", state " << i);
            if (!tc.ok) {
                INFO("offending: " << print_expr(tc.offending));
            }
            REQUIRE(tc.ok);
            ++i;
        }
    }
}

TEST_CASE("instrument rewrites reads and rejects the excluded forms") {
    js::Program prog = js::parse("a[b]; c.XMLHttpRequest; d.ok; e[f] = 1;");
    InstrumentResult ins = instrument(prog);
    CHECK(ins.rejections.empty());
    std::string dump = js::dump_ast(ins.program);
    // Both reads routed through the wrapper; the write target left alone.
    CHECK(dump.find("safeLookup") != std::string::npos);
    size_t first = dump.find("(call");
    CHECK(first != std::string::npos);

    InstrumentResult bad1 = instrument(js::parse("with (o) { x; }"));
    REQUIRE(bad1.rejections.size() == 1);
    CHECK(bad1.rejections[0].message.find("with") != std::string::npos);

    InstrumentResult bad2 = instrument(js::parse("a[b]++;"));
    REQUIRE(bad2.rejections.size() == 1);
    InstrumentResult bad3 = instrument(js::parse("a[b] += 1;"));
    REQUIRE(bad3.rejections.size() == 1);
}

TEST_CASE("check_subset certifies wrapped member access and rejects the excluded") {
    CHECK(check_subset_source("x + y;").certified);
    CHECK(check_subset_source("a[b] = c; d = a[b]; o.m(1);").certified);
    CHECK(check_subset_source("var t = 0; for (var i = 0; i < 3; i++) { t += i; }").certified);
    CHECK_FALSE(check_subset_source("with (o) { x; }").certified);
    CHECK_FALSE(check_subset_source("a[b]--;").certified);
    SafetyReport r = check_subset_source("XMLHttpRequest;");
    CHECK_FALSE(r.certified);
    CHECK(r.failed_rule.find("T-GetField") != std::string::npos);
}

TEST_CASE("rejection reports carry a source span mapped through desugaring") {
    SafetyReport r = check_subset_source("var a = 1;\nXMLHttpRequest;\n");
    REQUIRE_FALSE(r.certified);
    CHECK(r.span.line == 2);
}

TEST_CASE("the per-form sweep reproduces the expected pass/fail table") {
    std::set<std::string> expected_failures = {
        "member-bracket", "member-dot-xhr", "preinc-member",
        "postinc-member", "predec-member",  "postdec-member",
    };
    for (const auto& row : per_form_context_check()) {
        INFO("form: " << row.form);
        CHECK(row.passes == (expected_failures.count(row.form) == 0));
    }
}

TEST_CASE("replacement coherence: certified pieces compose through +") {
    const char* pieces[] = {"1", "\"s\"", "a", "a.foo", "f(2)", "(x ? 1 : 2)"};
    for (const char* lhs : pieces) {
        for (const char* rhs : pieces) {
            std::string src = std::string(lhs) + " + " + rhs + ";";
            INFO("composite: " << src);
            CHECK(check_subset_source(src).certified);
        }
    }
}
