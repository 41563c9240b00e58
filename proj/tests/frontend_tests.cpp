#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "ljs/jsparse.hpp"
#include "ljs/jsprint.hpp"

using namespace ljs;

namespace {
js::Program p(const std::string& src) { return js::parse(src); }
}

TEST_CASE("parses the array-processing program shape") {
    js::Program prog = p(
        "function sum(arr) {\n"
        "  var r = 0;\n"
        "  for (var i = 0; i < arr[\"length\"]; i = i + 1) {\n"
        "    r = r + arr[i] };\n"
        "  return r };\n"
        "sum([1,2,3]);\n"
        "var a = [1,2,3,4];\n");
    // The stray `;` after the declaration parses as an empty statement.
    REQUIRE(prog.body.size() == 4);
    const auto* fd = prog.body[0]->as<js::FuncDecl>();
    REQUIRE(fd);
    CHECK(fd->name == "sum");
    REQUIRE(fd->body.size() == 4);  // `};` adds an empty statement
    CHECK(fd->body[1]->is<js::ForStmt>());
    const auto* vd = prog.body[3]->as<js::VarDecl>();
    REQUIRE(vd);
    const auto* arr = vd->decls[0].second->as<js::ArrayLit>();
    REQUIRE(arr);
    CHECK(arr->elements.size() == 4);
}

TEST_CASE("parse errors carry spans and expectations") {
    CHECK_THROWS_AS(p("x + ;"), js::ParseError);
    try {
        p("x + ;");
    } catch (const js::ParseError& e) {
        CHECK(e.span.line == 1);
        CHECK(e.span.column == 5);
    }
}

TEST_CASE("nested function var shadows the parameter in the source shape") {
    js::Program prog = p(
        "function bar(x) {\n"
        "  return function() {\n"
        "    var x = x;\n"
        "    return x }}\n");
    const auto* fd = prog.body[0]->as<js::FuncDecl>();
    REQUIRE(fd);
    const auto* ret = fd->body[0]->as<js::ReturnStmt>();
    REQUIRE(ret);
    const auto* fn = ret->value->as<js::FuncLit>();
    REQUIRE(fn);
    CHECK(fn->body[0]->is<js::VarDecl>());
}

TEST_CASE("subset exclusions are parse errors") {
    CHECK_THROWS_WITH_AS(p("eval(\"1\");"), doctest::Contains("eval"), js::ParseError);
    CHECK_THROWS_AS(p("var x = eval;"), js::ParseError);
    CHECK_THROWS_AS(p("arguments;"), js::ParseError);
    CHECK_THROWS_AS(p("void 0;"), js::ParseError);
    CHECK_THROWS_AS(p("let x = 1;"), js::ParseError);
    CHECK_THROWS_AS(p("var o = { get x() { return 1 } };"), js::ParseError);
    CHECK_THROWS_AS(p("[1,,2];"), js::ParseError);
    CHECK_THROWS_AS(p("var class = 1;"), js::ParseError);
    // Dotted access to keyword-ish names stays legal.
    CHECK_NOTHROW(p("a.delete;"));
}

TEST_CASE("automatic semicolon insertion at newlines and restricted productions") {
    CHECK_NOTHROW(p("x = 1\ny = 2\n"));
    CHECK_THROWS_AS(p("x = 1 y = 2"), js::ParseError);
    js::Program prog = p("function f() { return\n1 }");
    const auto* fd = prog.body[0]->as<js::FuncDecl>();
    const auto* ret = fd->body[0]->as<js::ReturnStmt>();
    REQUIRE(ret);
    CHECK(ret->value == nullptr);  // return binds same-line operands only
    // Postfix ++ does not attach across a newline.
    js::Program prog2 = p("x\n++y\n");
    CHECK(prog2.body.size() == 2);
}

TEST_CASE("validate: label and placement diagnostics") {
    CHECK(js::validate(p("done: { break done; }")).empty());
    auto d1 = js::validate(p("break done;"));
    REQUIRE(d1.size() >= 1);
    CHECK(d1[0].message.find("done") != std::string::npos);
    CHECK_FALSE(js::validate(p("break;")).empty());
    CHECK_FALSE(js::validate(p("continue;")).empty());
    CHECK_FALSE(js::validate(p("return 1;")).empty());
    CHECK(js::validate(p("function f() { return 1; }")).empty());
    CHECK_FALSE(js::validate(p("lbl: { continue lbl; }")).empty());
    CHECK(js::validate(p("lbl: while (true) { continue lbl; }")).empty());
    CHECK_FALSE(js::validate(p("function f(a, a) { }")).empty());
    CHECK_FALSE(js::validate(p("var o = { \"a\": 1, \"a\": 2 };")).empty());
    CHECK_FALSE(
        js::validate(p("switch (x) { default: 1; case 2: 2; }")).empty());
    CHECK(js::validate(p("switch (x) { case 2: 2; default: 1; }")).empty());
}

TEST_CASE("the instanceof desugaring template shape validates") {
    // The done-labeled block with break-done-true mirrors the expansion.
    js::Program prog = p(
        "done: { while (x !== null) { if (y === z) { break done } };\n"
        "        w = false; }");
    CHECK(js::validate(prog).empty());
}

TEST_CASE("spans nest within their parents") {
    js::Program prog = p("f(1 + 2, \"x\");");
    const auto* es = prog.body[0]->as<js::ExprStmt>();
    REQUIRE(es);
    const auto* call = es->expr->as<js::Call>();
    REQUIRE(call);
    for (const auto& a : call->args) {
        CHECK(a->span.begin >= call->callee->span.begin);
        CHECK(a->span.end <= es->expr->span.end);
    }
}

TEST_CASE("ast dump is stable and structured") {
    std::string d1 = js::dump_ast(p("x.y = f(1);"));
    std::string d2 = js::dump_ast(p("x.y = f(1);"));
    CHECK(d1 == d2);
    CHECK(d1.find("(assign =") != std::string::npos);
    CHECK(d1.find("(member-dot y") != std::string::npos);
    CHECK(d1.find("(call") != std::string::npos);
}

TEST_CASE("operator precedence and new-expression binding") {
    js::Program prog = p("var r = 1 + 2 * 3 < 4 === true && new F.a(1)(2).b;");
    const auto* vd = prog.body[0]->as<js::VarDecl>();
    REQUIRE(vd);
    const auto* land = vd->decls[0].second->as<js::Binary>();
    REQUIRE(land);
    CHECK(land->op == js::BinOp::And);
    const auto* eq = land->lhs->as<js::Binary>();
    REQUIRE(eq);
    CHECK(eq->op == js::BinOp::StrictEq);
    // new F.a(1) then the (2) call, then .b member.
    const auto* member = land->rhs->as<js::Member>();
    REQUIRE(member);
    const auto* call = member->object->as<js::Call>();
    REQUIRE(call);
    CHECK(call->callee->is<js::New>());
}

TEST_CASE("for-in versus in-operator disambiguation") {
    js::Program prog = p("for (x in o) { }\nvar b = (\"k\" in o);\nfor (var i = 0; \"k\" in o; i = i + 1) { break; }");
    CHECK(prog.body[0]->is<js::ForInStmt>());
    const auto* vd = prog.body[1]->as<js::VarDecl>();
    REQUIRE(vd);
    const auto* in = vd->decls[0].second->as<js::Binary>();
    REQUIRE(in);
    CHECK(in->op == js::BinOp::In);
    const auto* f = prog.body[2]->as<js::ForStmt>();
    REQUIRE(f);
    REQUIRE(f->cond);
    CHECK(f->cond->is<js::Binary>());
}

TEST_CASE("string escapes and number literals") {
    js::Program prog = p("var s = 'a\\n\\u0041\\x42';\nvar n = 0x10 + 1.5e2 + .5;");
    const auto* vd = prog.body[0]->as<js::VarDecl>();
    const auto* lit = vd->decls[0].second->as<js::StringLit>();
    REQUIRE(lit);
    CHECK(lit->value == "a\nAB");
}

TEST_CASE("surface round trip: print(parse(s)) reparses identically") {
    const char* sources[] = {
        "var obj = { \"x\": 500 }; print(obj[\"x\"]);",
        "function f(a, b) { if (a < b) { return a } else { return b } }",
        "for (var i = 0; i < 3; i++) { print(i); } do { i--; } while (i > 0);",
        "try { throw 1 } catch (e) { print(e) } finally { print(2) }",
        "lbl: while (true) { break lbl; }",
        "switch (x) { case 1: print(1); break; default: print(2); }",
        "with (o) { y = 1; }",
        "a.b.c = new D(e[f], -g, typeof h, !i, j ? k : l, (m, n));",
        "x += delete o.p; q = u instanceof V && \"w\" in z || !0;",
    };
    for (const char* src : sources) {
        js::Program p1 = js::parse(src);
        std::string printed = js::print_program(p1);
        INFO("printed:\n" << printed);
        js::Program p2 = js::parse(printed);
        CHECK(js::ast_equal(p1, p2));
        // And printing is idempotent.
        CHECK(js::print_program(p2) == printed);
    }
}

TEST_CASE("surface round trip holds on generated programs") {
    std::mt19937_64 rng(91);
    for (int i = 0; i < 300; ++i) {
        js::Program p1 = ljs::testgen::gen_program(rng, 4);
        std::string printed = js::print_program(p1);
        INFO("printed:\n" << printed);
        js::Program p2;
        REQUIRE_NOTHROW(p2 = js::parse(printed));
        CHECK(js::ast_equal(p1, p2));
    }
}
