#include <doctest.h>

#include <map>
#include <random>
#include <sstream>

#include "generators.hpp"
#include "ljs/desugar.hpp"
#include "ljs/eval.hpp"
#include "ljs/jsparse.hpp"
#include "ljs/numfmt.hpp"
#include "ljs/reader.hpp"
#include "ljs/print.hpp"
#include "ljs/subst.hpp"

using namespace ljs;

namespace {

std::string run_js(const std::string& src, uint64_t fuel = 200000) {
    js::Program prog = js::parse(src);
    REQUIRE(js::validate(prog).empty());
    ExprPtr core = desugar_program(prog);
    std::string out;
    StepOptions opts;
    opts.output = &out;
    EvalResult r = eval(Configuration{Store{}, core}, fuel, opts);
    REQUIRE(r.outcome.kind == Outcome::Kind::Value);
    return out;
}

std::string desugar_text(const std::string& src, bool preamble = false) {
    js::Program prog = js::parse(src);
    REQUIRE(js::validate(prog).empty());
    return print_expr(desugar_program(prog, DesugarOptions{preamble}));
}

size_t count_subtree(const ExprPtr& haystack, const ExprPtr& needle) {
    size_t n = expr_equal(haystack, needle) ? 1 : 0;
    int c = child_count(*haystack);
    for (int i = 0; i < c; ++i) n += count_subtree(get_child(*haystack, i), needle);
    return n;
}

ExprPtr placeholder_translation(int i) {
    return make_get(make_deref(make_id("%window")),
                    make_string("__h" + std::to_string(i)));
}

}  // namespace

TEST_CASE("spec'd desugarings are recognizable in the output") {
    CHECK(desugar_text("var f = function() { return this; };")
              .find("break %ret this") != std::string::npos);
    CHECK(desugar_text("a.b;").find("[\"b\"]") != std::string::npos);
    CHECK(desugar_text("lbl: { break lbl; }").find("break lbl undefined") !=
          std::string::npos);
    std::string obj = desugar_text("var o = { \"a\": 1 };");
    CHECK(obj.find("ref { \"a\": 1, \"__proto__\": (deref %Object)[\"prototype\"] }") !=
          std::string::npos);
    std::string fn = desugar_text("var f = function(x) { return x; };");
    CHECK(fn.find("\"code\": func(this, x)") != std::string::npos);
    CHECK(fn.find("\"prototype\": ref { \"__proto__\": (deref %Object)[\"prototype\"] }") !=
          std::string::npos);
    // Plain calls pass the global object as this.
    CHECK(desugar_text("f();").find("[\"code\"](%window)") != std::string::npos);
    // The + desugaring opens with the two operand lets.
    std::string plus = desugar_text("a + b;");
    CHECK(plus.find("let (%x0 = (deref %window)[\"a\"]) let (%y1 = (deref %window)[\"b\"])") !=
          std::string::npos);
}

TEST_CASE("desugared whole programs are closed after the preamble") {
    const char* sources[] = {
        "x = 1; print(x);",
        "function f(a) { return a; } f(1);",
        "for (var i = 0; i < 3; i++) { print(i); }",
        "with ({}) { x = 2; }",
    };
    for (const char* src : sources) {
        js::Program prog = js::parse(src);
        ExprPtr core = desugar_program(prog);
        CHECK(free_variables(*core).empty());
        CHECK(source_well_formed(*core));
    }
}

TEST_CASE("lexical-scope recovery: pre-preamble free names come from the prelude") {
    js::Program prog = js::parse(
        "var g = 1;\n"
        "function f(a) { var b = a + g; return b * this.c; }\n"
        "f(2);\n");
    ExprPtr core = desugar_program(prog, DesugarOptions{false});
    for (const auto& name : free_variables(*core)) {
        CHECK(preamble_binding_names().count(name) == 1);
    }
}

TEST_CASE("lift_vars collects vars, for-vars, and function declarations") {
    js::Program prog = js::parse(
        "function outer() {\n"
        "  var a = 1;\n"
        "  if (true) { var b; }\n"
        "  for (var c = 0; c < 1; c++) { }\n"
        "  for (var d in {}) { }\n"
        "  try { var e1; } catch (ex) { var e2; } finally { var e3; }\n"
        "  function g() { var inner; }\n"
        "  while (false) { var h; }\n"
        "}\n");
    const auto* fd = prog.body[0]->as<js::FuncDecl>();
    REQUIRE(fd);
    auto lifted = lifted_var_names(fd->body);
    CHECK(lifted == std::set<std::string>{"a", "b", "c", "d", "e1", "e2", "e3", "g", "h"});
    // Nothing from nested bodies.
    CHECK(lifted.count("inner") == 0);
}

TEST_CASE("lifting semantics: hoisted vars read undefined until assigned") {
    CHECK(run_js("function foo() { if (true) { var x = 10 } return x }\n"
                 "print(foo());") == "10\n");
    CHECK(run_js("function bar(x) { return function() { var x = x; return x } }\n"
                 "print(bar(200)());") == "undefined\n");
    CHECK(run_js("var x; print(x);") == "undefined\n");
}

TEST_CASE("global variables live on the window object") {
    CHECK(run_js("var x = 0; window.x = 50; print(x); x = 100; print(window.x);") ==
          "50\n100\n");
    CHECK(run_js("x = 100; print(window.x);") == "100\n");
    CHECK(run_js("window.x = 50; print(x);") == "50\n");
    CHECK(run_js("print(window.window === window);") == "true\n");
    // Locally bound names are untouched by the global rewrite.
    CHECK(run_js("var f = function(x) { x = 5; return x; }; y = 1; print(f(y)); print(y);") ==
          "5\n1\n");
}

TEST_CASE("parameters become cells only when assigned") {
    std::string unassigned = desugar_text("var f = function(a) { return a; };");
    CHECK(unassigned.find("let (a = ref a)") == std::string::npos);
    std::string assigned = desugar_text("var f = function(a) { a = 1; return a; };");
    CHECK(assigned.find("let (a = ref a)") != std::string::npos);
    // A nested function assigning the outer parameter forces the cell too.
    std::string captured =
        desugar_text("var f = function(a) { return function() { a = 2; }; };");
    CHECK(captured.find("let (a = ref a)") != std::string::npos);
}

TEST_CASE("the plus desugaring follows the coercion protocol") {
    CHECK(run_js("x = 10; y = new Number(7); print(x + y);") == "17\n");
    CHECK(run_js("x = 10; y = new Number(7);\n"
                 "Number.prototype.valueOf = function() { return 0 };\n"
                 "print(x + y); print(y.toString());") == "10\n7\n");
    CHECK(run_js("x = 10; y = new Number(7); print(x + y.toString());") == "107\n");
    CHECK(run_js("x = 10; y = new Number(7); print(x * y.toString());") == "70\n");
    CHECK(run_js("print(1 + \"2\");") == "12\n");
    CHECK(run_js("print(\"\" + undefined);") == "undefined\n");
    CHECK(run_js("print(1 + undefined);") == "NaN\n");
    CHECK(run_js("print(1 + null);") == "1\n");
    CHECK(run_js("print(true + true);") == "2\n");
    // A valueOf override observable through the operand protocol.
    CHECK(run_js("var o = { \"valueOf\": function() { return 6 } }; print(o * 7);") ==
          "42\n");
}

TEST_CASE("loose equality expansion") {
    CHECK(run_js("print(null == undefined);") == "true\n");
    CHECK(run_js("print(null == 0);") == "false\n");
    CHECK(run_js("print(\"5\" == 5);") == "true\n");
    CHECK(run_js("print(true == 1);") == "true\n");
    CHECK(run_js("print(false == \"\");") == "true\n");
    CHECK(run_js("print(NaN == NaN);") == "false\n");
    CHECK(run_js("var o = {}; print(o == o); print(o == {});") == "true\nfalse\n");
    CHECK(run_js("var o = { \"toString\": function() { return \"x\" } };\n"
                 "print(o == \"x\");") == "true\n");
    CHECK(run_js("print(1 != 2);") == "true\n");
}

TEST_CASE("increment and decrement return the right values") {
    CHECK(run_js("var i = 5; print(i++); print(i); print(++i); print(i--); print(--i);") ==
          "5\n6\n7\n7\n5\n");
    CHECK(run_js("var o = { \"n\": 1 }; print(o.n++); print(o.n); print(--o[\"n\"]);") ==
          "1\n2\n1\n");
    CHECK(run_js("var s = \"4\"; print(s++); print(s);") == "4\n5\n");
}

TEST_CASE("method calls bind this to the receiver, plain calls to window") {
    CHECK(run_js("var obj = { \"x\": 0, \"setX\": function(v) { this.x = v } };\n"
                 "obj.setX(10); print(obj.x);\n"
                 "var f = obj.setX; f(90); print(obj.x); print(window.x);") ==
          "10\n10\n90\n");
    CHECK(run_js("var o = { \"m\": function() { return this === o } }; print(o.m());") ==
          "true\n");
}

TEST_CASE("new: allocation, prototype wiring, constructor application") {
    CHECK(run_js("function Point(x, y) { this.x = x; this.y = y }\n"
                 "var pt = new Point(50, 100);\n"
                 "print(pt.x); print(pt.y);\n"
                 "Point.prototype.getX = function() { return this.x };\n"
                 "print(pt.getX());") == "50\n100\n50\n");
    CHECK(run_js("function D() { this.barks = \"woof\" } var d = new D();\n"
                 "print(d instanceof D); print(4234 instanceof D);") == "true\nfalse\n");
}

TEST_CASE("typeof distinguishes functions from objects through the store") {
    CHECK(run_js("print(typeof 10); print(typeof \"s\"); print(typeof true);\n"
                 "print(typeof undefined); print(typeof null); print(typeof {});\n"
                 "print(typeof function() { return 1 }); print(typeof notDeclared);") ==
          "number\nstring\nboolean\nundefined\nobject\nobject\nfunction\nundefined\n");
}

TEST_CASE("named function expressions can recur") {
    CHECK(run_js("var fac = function fact(n) { return n < 2 ? 1 : n * fact(n - 1) };\n"
                 "print(fac(5));") == "120\n");
    CHECK(run_js("function fact(n) { return n < 2 ? 1 : n * fact(n - 1) } print(fact(5));") ==
          "120\n");
}

TEST_CASE("deletion forms") {
    CHECK(run_js("var o = { \"a\": 1 }; print(delete o.a); print(o.a);") ==
          "true\nundefined\n");
    CHECK(run_js("g = 3; print(delete g); print(g);") == "true\nundefined\n");
    CHECK(run_js("var f = function(p) { return delete p; }; print(f(1));") == "false\n");
}

TEST_CASE("the in operator walks the prototype chain") {
    CHECK(run_js("function C() { this.own = 1 } var c = new C();\n"
                 "C.prototype.inherited = 2;\n"
                 "print(\"own\" in c); print(\"inherited\" in c); print(\"nope\" in c);") ==
          "true\ntrue\nfalse\n");
}

// -- the scope-chain reference oracle for with ------------------------------

namespace {

struct OracleValue {
    double num = 0;
    bool defined = false;
};

// Explicit scope-chain interpreter for the generated with-programs: a chain
// of frames where with-frames claim reads when the name is present and
// writes when the name is an own property; the param frame and globals sit
// beneath. Mirrors the scope-object model directly rather than any
// desugaring.
struct ScopeChainOracle {
    std::map<std::string, double> globals;
    std::map<std::string, double> params;
    std::vector<std::map<std::string, double>> withs;  // outermost first

    double read(const std::string& name) {
        for (auto it = withs.rbegin(); it != withs.rend(); ++it) {
            auto hit = it->find(name);
            if (hit != it->end()) return hit->second;
        }
        auto p = params.find(name);
        if (p != params.end()) return p->second;
        auto g = globals.find(name);
        if (g != globals.end()) return g->second;
        return std::nan("");  // an undefined read would print undefined; avoided by gen
    }

    void write(const std::string& name, double v) {
        for (auto it = withs.rbegin(); it != withs.rend(); ++it) {
            if (it->count(name)) {
                (*it)[name] = v;
                return;
            }
        }
        if (params.count(name)) {
            params[name] = v;
            return;
        }
        globals[name] = v;
    }
};

}  // namespace

TEST_CASE("with: the two-comment function behaves like its guarded expansion") {
    const char* with_version =
        "var f = function(x, obj) { with(obj) { x = 50; return y } };\n";
    const char* guarded_version =
        "var f = function(x, obj) {\n"
        "  if (obj.hasOwnProperty(\"x\")) { obj.x = 50 } else { x = 50 }\n"
        "  if (\"y\" in obj) { return obj.y } else { return window.y } };\n";
    const char* probes =
        "window.y = \"gy\";\n"
        "print(f(1, {}));\n"
        "print(f(1, { \"y\": \"oy\" }));\n"
        "var o = { \"x\": 5 }; f(1, o); print(o.x);\n"
        "var o2 = {}; f(1, o2); print(o2.hasOwnProperty(\"x\"));\n";
    CHECK(run_js(std::string(with_version) + probes) ==
          run_js(std::string(guarded_version) + probes));
    CHECK(run_js(std::string(with_version) + probes) == "gy\noy\n50\nfalse\n");
}

TEST_CASE("with: randomized nestings match the scope-chain oracle") {
    std::mt19937_64 rng(77);
    const std::vector<std::string> pool = {"u", "v", "w"};
    for (int iter = 0; iter < 20; ++iter) {
        int depth = 1 + static_cast<int>(rng() % 3);
        ScopeChainOracle oracle;
        std::ostringstream src;

        // Globals.
        for (const auto& n : pool) {
            double val = static_cast<double>(rng() % 100);
            oracle.globals[n] = val;
            src << "var " << n << " = " << js_number_to_string(val) << ";\n";
        }
        // One parameter from the pool.
        std::string param = pool[rng() % pool.size()];
        double param_val = static_cast<double>(rng() % 100) + 1000;
        oracle.params[param] = param_val;

        src << "var t = function(" << param << ") {\n";
        for (int d = 0; d < depth; ++d) {
            std::map<std::string, double> frame;
            src << "with ({";
            bool first = true;
            for (const auto& n : pool) {
                if (rng() % 2 == 0) {
                    double val = static_cast<double>(rng() % 100) + 100.0 * (d + 2);
                    frame[n] = val;
                    src << (first ? "" : ", ") << "\"" << n << "\": "
                        << js_number_to_string(val);
                    first = false;
                }
            }
            src << "}) {\n";
            oracle.withs.push_back(frame);
        }
        // A few writes, then a read.
        for (int w = 0; w < 3; ++w) {
            std::string n = pool[rng() % pool.size()];
            double val = static_cast<double>(rng() % 100) + 5000;
            src << n << " = " << js_number_to_string(val) << ";\n";
            oracle.write(n, val);
        }
        std::string read_name = pool[rng() % pool.size()];
        src << "return " << read_name << ";\n";
        for (int d = 0; d < depth; ++d) src << "}\n";
        src << "};\n";
        src << "print(t(" << js_number_to_string(param_val) << "));\n";
        for (const auto& n : pool) src << "print(" << n << ");\n";

        std::string expected = js_number_to_string(oracle.read(read_name)) + "\n";
        for (const auto& n : pool) {
            expected += js_number_to_string(oracle.globals[n]) + "\n";
        }
        INFO("program:\n" << src.str());
        CHECK(run_js(src.str()) == expected);
    }
}

// -- switch against an independent oracle -----------------------------------

TEST_CASE("switch: randomized programs match direct switch semantics") {
    std::mt19937_64 rng(78);
    for (int iter = 0; iter < 40; ++iter) {
        int cases = 1 + static_cast<int>(rng() % 4);
        int disc = static_cast<int>(rng() % (cases + 2));
        bool with_default = rng() % 2 == 0;
        std::vector<int> tests;
        std::vector<bool> breaks;
        std::ostringstream src;
        src << "switch (" << disc << ") {\n";
        for (int i = 0; i < cases; ++i) {
            int t = static_cast<int>(rng() % (cases + 2));
            bool brk = rng() % 2 == 0;
            tests.push_back(t);
            breaks.push_back(brk);
            src << "case " << t << ": print(" << i * 10 << ");";
            if (brk) src << " break;";
            src << "\n";
        }
        if (with_default) src << "default: print(999);\n";
        src << "}\n";

        // Oracle: first === match, else default; run bodies with fall-through
        // until a break.
        std::string expected;
        int start = -1;
        for (int i = 0; i < cases; ++i) {
            if (tests[static_cast<size_t>(i)] == disc) {
                start = i;
                break;
            }
        }
        if (start >= 0) {
            for (int i = start; i < cases; ++i) {
                expected += std::to_string(i * 10) + "\n";
                if (breaks[static_cast<size_t>(i)]) break;
                if (i == cases - 1 && with_default) expected += "999\n";
            }
        } else if (with_default) {
            expected += "999\n";
        }
        INFO("program:\n" << src.str());
        CHECK(run_js(src.str()) == expected);
    }
}

TEST_CASE("switch evaluates case tests lazily and uses strict equality") {
    // Case tests evaluate lazily: after a match, later tests are skipped and
    // only the bodies fall through.
    CHECK(run_js("function t(v) { print(\"t\" + v); return v }\n"
                 "switch (2) { case t(1): print(\"a\"); case t(2): print(\"b\"); "
                 "case t(3): print(\"c\"); break; default: print(\"d\"); }") ==
          "t1\nt2\nb\nc\n");
    CHECK(run_js("switch (\"2\") { case 2: print(\"num\"); break; default: print(\"str\"); }") ==
          "str\n");
}

// -- compositionality --------------------------------------------------------

namespace {

struct FormCase {
    const char* name;
    const char* source;  // placeholders __h0.. appear once each
    int children;
    bool needs_function_wrap = false;
};

const FormCase kFormCases[] = {
    {"object-literal", "var r = { \"a\": __h0, \"b\": __h1 };", 2, false},
    {"array-literal", "var r = [__h0, __h1];", 2, false},
    {"function-expr", "var r = function(p) { __h0; };", 1, false},
    {"member-dot", "var r = __h0.foo;", 1, false},
    {"member-bracket", "var r = __h0[__h1];", 2, false},
    {"call", "var r = __h0(__h1);", 2, false},
    {"method-call", "var r = __h0.m(__h1);", 2, false},
    {"new", "var r = new __h0(__h1);", 2, false},
    {"assign-ident", "q = __h0;", 1, false},
    {"assign-member", "__h0[__h1] = __h2;", 3, false},
    {"compound-assign-ident", "q += __h0;", 1, false},
    {"compound-assign-member", "__h0[__h1] += __h2;", 3, false},
    {"postinc-member", "__h0[__h1]++;", 2, false},
    {"preinc-member", "++__h0[__h1];", 2, false},
    {"typeof", "var r = typeof __h0;", 1, false},
    {"not", "var r = !__h0;", 1, false},
    {"negate", "var r = -__h0;", 1, false},
    {"delete-member", "var r = delete __h0[__h1];", 2, false},
    {"add", "var r = __h0 + __h1;", 2, false},
    {"sub", "var r = __h0 - __h1;", 2, false},
    {"mul", "var r = __h0 * __h1;", 2, false},
    {"div", "var r = __h0 / __h1;", 2, false},
    {"mod", "var r = __h0 % __h1;", 2, false},
    {"lt", "var r = __h0 < __h1;", 2, false},
    {"le", "var r = __h0 <= __h1;", 2, false},
    {"gt", "var r = __h0 > __h1;", 2, false},
    {"ge", "var r = __h0 >= __h1;", 2, false},
    {"loose-eq", "var r = __h0 == __h1;", 2, false},
    {"loose-ne", "var r = __h0 != __h1;", 2, false},
    {"strict-eq", "var r = __h0 === __h1;", 2, false},
    {"strict-ne", "var r = __h0 !== __h1;", 2, false},
    {"logical-and", "var r = __h0 && __h1;", 2, false},
    {"logical-or", "var r = __h0 || __h1;", 2, false},
    {"in", "var r = __h0 in __h1;", 2, false},
    {"instanceof", "var r = __h0 instanceof __h1;", 2, false},
    {"conditional", "var r = __h0 ? __h1 : __h2;", 3, false},
    {"comma", "var r = (__h0, __h1);", 2, false},
    {"var-stmt", "var q = __h0;", 1, false},
    {"if-stmt", "if (__h0) { __h1; } else { __h2; }", 3, false},
    {"while-stmt", "while (__h0) { __h1; }", 2, false},
    {"dowhile-stmt", "do { __h0; } while (__h1)", 2, false},
    {"for-stmt", "for (q = __h0; __h1; __h2) { __h3; }", 4, false},
    {"forin-stmt", "for (q in __h0) { __h1; }", 2, false},
    {"return-stmt", "return __h0;", 1, true},
    {"labeled-stmt", "lbl: { __h0; }", 1, false},
    {"try-catch-stmt", "try { __h0; } catch (e) { __h1; }", 2, false},
    {"try-finally-stmt", "try { __h0; } finally { __h1; }", 2, false},
    {"throw-stmt", "throw __h0;", 1, false},
    {"switch-stmt", "switch (__h0) { case __h1: __h2; break; default: __h3; }", 4, false},
    {"block-stmt", "{ __h0; __h1; }", 2, false},
    {"funcdecl-stmt", "function g(p) { __h0; }", 1, false},
};

std::string check_form_compositionality(const FormCase& f) {
    std::string src = f.needs_function_wrap
                          ? std::string("var fw = function() { ") + f.source + " };"
                          : std::string(f.source);
    js::Program prog = js::parse(src);
    if (!js::validate(prog).empty()) return "does not validate";
    ExprPtr core = desugar_program(prog, DesugarOptions{false});
    for (int i = 0; i < f.children; ++i) {
        size_t n = count_subtree(core, placeholder_translation(i));
        if (n != 1) {
            return "child " + std::to_string(i) + " appears " + std::to_string(n) +
                   " times in " + print_expr(core);
        }
    }
    return "";
}

}  // namespace

TEST_CASE("compositionality: child translations appear verbatim exactly once") {
    for (const auto& f : kFormCases) {
        INFO("form: " << f.name);
        CHECK(check_form_compositionality(f) == "");
    }
}

TEST_CASE("desugar totality over generated programs") {
    std::mt19937_64 rng(79);
    for (int i = 0; i < 300; ++i) {
        js::Program prog = testgen::gen_program(rng, 5);
        REQUIRE(js::validate(prog).empty());
        ExprPtr core = desugar_program(prog);
        CHECK(free_variables(*core).empty());
    }
}

TEST_CASE("desugar output parses back through the core reader") {
    const char* sources[] = {
        "print(1 + 2);",
        "var o = { \"a\": [1, 2] }; for (var k in o) { print(k); }",
        "function f(x) { try { throw x } catch (e) { return e } } print(f(3));",
    };
    for (const char* src : sources) {
        std::string printed = desugar_text(src, true);
        ExprPtr back = read_core(printed);
        CHECK(print_expr(back) == printed);
    }
}
