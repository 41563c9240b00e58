#include "ljs/harness.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ljs/desugar.hpp"
#include "ljs/eval.hpp"
#include "ljs/jsparse.hpp"
#include "ljs/print.hpp"
#include "ljs/sandbox.hpp"

namespace ljs {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string outcome_tag_of(const std::string& source) {
    const std::string directive = "// outcome:";
    if (source.rfind(directive, 0) == 0) {
        size_t eol = source.find('\n');
        std::string tag = source.substr(directive.size(),
                                        eol == std::string::npos ? std::string::npos
                                                                 : eol - directive.size());
        size_t b = tag.find_first_not_of(" \t\r");
        size_t e = tag.find_last_not_of(" \t\r");
        if (b != std::string::npos) return tag.substr(b, e - b + 1);
    }
    return "value";
}

std::string simple_diff(const std::string& expected, const std::string& actual) {
    std::istringstream ei(expected), ai(actual);
    std::string el, al, out;
    int line = 1;
    for (;;) {
        bool he = static_cast<bool>(std::getline(ei, el));
        bool ha = static_cast<bool>(std::getline(ai, al));
        if (!he && !ha) break;
        if (he != ha || el != al) {
            out += "  line " + std::to_string(line) + ":\n";
            out += "  - " + (he ? el : std::string("<eof>")) + "\n";
            out += "  + " + (ha ? al : std::string("<eof>")) + "\n";
        }
        ++line;
    }
    return out.empty() ? "  (outputs differ in trailing bytes)\n" : out;
}

void count_forms_stmt(const js::Stmt& s, FormCounts& c);

void count_forms_expr(const js::Expr& e, FormCounts& c) {
    if (const auto* x = e.as<js::FuncLit>()) {
        ++c.functions;
        for (const auto& st : x->body) count_forms_stmt(*st, c);
        return;
    }
    if (const auto* x = e.as<js::Unary>()) {
        if (x->op == js::UnOp::TypeOf) ++c.typeof_and_instanceof;
        count_forms_expr(*x->operand, c);
        return;
    }
    if (const auto* x = e.as<js::Binary>()) {
        if (x->op == js::BinOp::Instanceof) ++c.typeof_and_instanceof;
        count_forms_expr(*x->lhs, c);
        count_forms_expr(*x->rhs, c);
        return;
    }
    if (const auto* x = e.as<js::New>()) {
        ++c.new_exprs;
        count_forms_expr(*x->callee, c);
        for (const auto& a : x->args) count_forms_expr(*a, c);
        return;
    }
    if (const auto* x = e.as<js::ObjectLit>()) {
        for (const auto& [k, v] : x->fields) {
            (void)k;
            count_forms_expr(*v, c);
        }
        return;
    }
    if (const auto* x = e.as<js::ArrayLit>()) {
        for (const auto& el : x->elements) count_forms_expr(*el, c);
        return;
    }
    if (const auto* x = e.as<js::Member>()) {
        count_forms_expr(*x->object, c);
        if (x->field) count_forms_expr(*x->field, c);
        return;
    }
    if (const auto* x = e.as<js::Call>()) {
        count_forms_expr(*x->callee, c);
        for (const auto& a : x->args) count_forms_expr(*a, c);
        return;
    }
    if (const auto* x = e.as<js::Assign>()) {
        count_forms_expr(*x->target, c);
        count_forms_expr(*x->value, c);
        return;
    }
    if (const auto* x = e.as<js::Unary>()) {
        count_forms_expr(*x->operand, c);
        return;
    }
    if (const auto* x = e.as<js::DeleteExpr>()) return count_forms_expr(*x->target, c);
    if (const auto* x = e.as<js::IncDec>()) return count_forms_expr(*x->target, c);
    if (const auto* x = e.as<js::Cond>()) {
        count_forms_expr(*x->cond, c);
        count_forms_expr(*x->then_expr, c);
        count_forms_expr(*x->else_expr, c);
        return;
    }
    if (const auto* x = e.as<js::Comma>()) {
        count_forms_expr(*x->first, c);
        count_forms_expr(*x->rest, c);
        return;
    }
}

void count_forms_stmt(const js::Stmt& s, FormCounts& c) {
    if (const auto* x = s.as<js::VarDecl>()) {
        ++c.var_stmts;
        for (const auto& [n, init] : x->decls) {
            (void)n;
            if (init) count_forms_expr(*init, c);
        }
        return;
    }
    if (const auto* x = s.as<js::ExprStmt>()) return count_forms_expr(*x->expr, c);
    if (const auto* x = s.as<js::IfStmt>()) {
        ++c.if_and_switch;
        count_forms_expr(*x->cond, c);
        count_forms_stmt(*x->then_stmt, c);
        if (x->else_stmt) count_forms_stmt(*x->else_stmt, c);
        return;
    }
    if (const auto* x = s.as<js::WhileStmt>()) {
        count_forms_expr(*x->cond, c);
        count_forms_stmt(*x->body, c);
        return;
    }
    if (const auto* x = s.as<js::DoWhileStmt>()) {
        count_forms_stmt(*x->body, c);
        count_forms_expr(*x->cond, c);
        return;
    }
    if (const auto* x = s.as<js::ForStmt>()) {
        if (x->init) count_forms_stmt(*x->init, c);
        if (x->cond) count_forms_expr(*x->cond, c);
        if (x->update) count_forms_expr(*x->update, c);
        count_forms_stmt(*x->body, c);
        return;
    }
    if (const auto* x = s.as<js::ForInStmt>()) {
        count_forms_expr(*x->object, c);
        count_forms_stmt(*x->body, c);
        return;
    }
    if (const auto* x = s.as<js::ReturnStmt>()) {
        if (x->value) count_forms_expr(*x->value, c);
        return;
    }
    if (const auto* x = s.as<js::LabeledStmt>()) return count_forms_stmt(*x->body, c);
    if (const auto* x = s.as<js::TryStmt>()) {
        ++c.try_blocks;
        for (const auto& st : x->block) count_forms_stmt(*st, c);
        for (const auto& st : x->catch_block) count_forms_stmt(*st, c);
        for (const auto& st : x->finally_block) count_forms_stmt(*st, c);
        return;
    }
    if (const auto* x = s.as<js::ThrowStmt>()) return count_forms_expr(*x->value, c);
    if (const auto* x = s.as<js::SwitchStmt>()) {
        ++c.if_and_switch;
        count_forms_expr(*x->disc, c);
        for (const auto& sc : x->cases) {
            if (sc.test) count_forms_expr(*sc.test, c);
            for (const auto& st : sc.body) count_forms_stmt(*st, c);
        }
        return;
    }
    if (const auto* x = s.as<js::WithStmt>()) {
        ++c.with_blocks;
        count_forms_expr(*x->object, c);
        count_forms_stmt(*x->body, c);
        return;
    }
    if (const auto* x = s.as<js::BlockStmt>()) {
        for (const auto& st : x->body) count_forms_stmt(*st, c);
        return;
    }
    if (const auto* x = s.as<js::FuncDecl>()) {
        ++c.functions;
        for (const auto& st : x->body) count_forms_stmt(*st, c);
        return;
    }
}

}  // namespace

std::vector<Fixture> discover_fixtures(const std::string& dir) {
    std::vector<Fixture> out;
    if (!fs::exists(dir)) return out;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".js") continue;
        Fixture f;
        f.source_path = entry.path().string();
        f.name = entry.path().stem().string();
        fs::path expected = entry.path();
        expected.replace_extension(".expected");
        f.expected_path = expected.string();
        f.outcome_tag = outcome_tag_of(read_file(f.source_path));
        out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(),
              [](const Fixture& a, const Fixture& b) { return a.source_path < b.source_path; });
    return out;
}

FixtureResult run_fixture(const Fixture& f, const RunConfig& config) {
    FixtureResult res;
    res.fixture = f;
    std::string source = read_file(f.source_path);
    if (!fs::exists(f.expected_path)) {
        res.passed = false;
        res.detail = "missing expected file: " + f.expected_path;
        return res;
    }
    std::string expected = read_file(f.expected_path);

    try {
        js::Program prog = js::parse(source);
        auto diags = js::validate(prog);
        if (!diags.empty()) {
            res.passed = false;
            res.detail = "validate: " + diags[0].message;
            return res;
        }

        if (f.outcome_tag == "certified" || f.outcome_tag == "rejected") {
            SafetyReport report = check_subset(prog);
            if (f.outcome_tag == "certified") {
                if (!report.certified) {
                    res.passed = false;
                    res.detail = "expected certification, got: " + report.reason;
                    return res;
                }
            } else {
                if (report.certified) {
                    res.passed = false;
                    res.detail = "expected rejection, but the program was certified";
                    return res;
                }
                std::string line = "rejected: " + report.reason + "\n";
                res.passed = line == expected;
                if (!res.passed) res.detail = simple_diff(expected, line);
                return res;
            }
        }

        ExprPtr core = desugar_program(prog, DesugarOptions{config.include_preamble});
        std::string output;
        StepOptions opts;
        opts.output = &output;
        opts.check_well_formed = config.check_well_formed;
        EvalResult r = eval(Configuration{Store{}, core}, config.fuel, opts);

        bool outcome_ok = false;
        switch (r.outcome.kind) {
            case Outcome::Kind::Value:
                outcome_ok = f.outcome_tag == "value" || f.outcome_tag == "certified";
                break;
            case Outcome::Kind::UncaughtError:
                outcome_ok = f.outcome_tag == "uncaught_error";
                break;
            default:
                outcome_ok = false;
        }
        if (!outcome_ok) {
            res.passed = false;
            res.detail = "unexpected outcome kind (tag: " + f.outcome_tag + ")";
            if (r.outcome.kind == Outcome::Kind::UncaughtError) {
                res.detail += "; uncaught " + print_expr(r.outcome.value);
            }
            if (r.outcome.kind == Outcome::Kind::Stuck) {
                res.detail += "; stuck: " + r.outcome.reason;
            }
            return res;
        }
        res.passed = output == expected;
        if (!res.passed) res.detail = simple_diff(expected, output);
        return res;
    } catch (const js::ParseError& pe) {
        res.passed = false;
        res.detail = "parse error at line " + std::to_string(pe.span.line) + ": " + pe.what();
        return res;
    }
}

HarnessReport run_fixture_dir(const std::string& dir, const RunConfig& config) {
    HarnessReport report;
    for (const Fixture& f : discover_fixtures(dir)) {
        FixtureResult r = run_fixture(f, config);
        if (!r.passed) ++report.failures;
        try {
            js::Program prog = js::parse(read_file(f.source_path));
            for (const auto& s : prog.body) count_forms_stmt(*s, report.counts);
        } catch (const js::ParseError&) {
        }
        report.results.push_back(std::move(r));
    }
    return report;
}

std::string format_report(const HarnessReport& report) {
    std::ostringstream out;
    for (const auto& r : report.results) {
        out << (r.passed ? "PASS" : "FAIL") << "  " << r.fixture.name << "\n";
        if (!r.passed && !r.detail.empty()) out << r.detail;
    }
    out << "\n" << report.results.size() - report.failures << "/" << report.results.size()
        << " fixtures passed\n\n";
    out << "syntactic form coverage:\n";
    out << "  with blocks          " << report.counts.with_blocks << "\n";
    out << "  var statements       " << report.counts.var_stmts << "\n";
    out << "  try blocks           " << report.counts.try_blocks << "\n";
    out << "  functions            " << report.counts.functions << "\n";
    out << "  if and switch        " << report.counts.if_and_switch << "\n";
    out << "  typeof / instanceof  " << report.counts.typeof_and_instanceof << "\n";
    out << "  new expressions      " << report.counts.new_exprs << "\n";
    return out.str();
}

}  // namespace ljs
