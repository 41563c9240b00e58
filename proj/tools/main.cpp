#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ljs/desugar.hpp"
#include "ljs/eval.hpp"
#include "ljs/harness.hpp"
#include "ljs/jsparse.hpp"
#include "ljs/jsprint.hpp"
#include "ljs/print.hpp"
#include "ljs/sandbox.hpp"
#include "ljs/subst.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSemantic = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "cannot open " << path << "\n";
        std::exit(kExitUsage);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct ParsedFile {
    ljs::js::Program program;
};

ParsedFile parse_or_exit(const std::string& path) {
    std::string source = read_file(path);
    try {
        ljs::js::Program prog = ljs::js::parse(source);
        auto diags = ljs::js::validate(prog);
        if (!diags.empty()) {
            for (const auto& d : diags) {
                std::cerr << path << ":" << d.span.line << ":" << d.span.column << ": "
                          << d.message << "\n";
            }
            std::exit(kExitUsage);
        }
        return {std::move(prog)};
    } catch (const ljs::js::ParseError& e) {
        std::cerr << path << ":" << e.span.line << ":" << e.span.column << ": " << e.what()
                  << "\n";
        std::exit(kExitUsage);
    }
}

int outcome_exit(const ljs::Outcome& outcome) {
    using K = ljs::Outcome::Kind;
    switch (outcome.kind) {
        case K::Value:
            return kExitOk;
        case K::UncaughtError: {
            std::cerr << "uncaught error: " << ljs::print_expr(outcome.value);
            if (const auto* loc = outcome.value->as<ljs::LocExpr>()) {
                if (const auto* v = outcome.remainder.store.lookup(loc->loc)) {
                    std::cerr << " = " << ljs::print_expr(**v);
                }
            }
            std::cerr << "\n";
            return kExitSemantic;
        }
        case K::TopLevelBreak:
            std::cerr << "top-level break " << outcome.label << " "
                      << ljs::print_expr(outcome.value) << "\n";
            return kExitSemantic;
        case K::Stuck:
            std::cerr << "stuck: " << outcome.reason << "\n";
            return kExitSemantic;
        case K::FuelExhausted:
            std::cerr << "fuel exhausted\n";
            return kExitSemantic;
    }
    return kExitSemantic;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lambda-JS: a core-calculus interpreter, desugarer, and sandbox checker "
                 "for a JavaScript subset"};
    app.require_subcommand(1);

    std::string file;
    uint64_t fuel = ljs::kDefaultFuel;
    bool no_preamble = false;
    bool typed = false;
    bool all_failures = false;
    bool emit_instrumented = false;
    bool dump_ast = false;

    auto* run = app.add_subcommand("run", "evaluate a program and print its output");
    run->add_option("file", file)->required();
    run->add_option("--fuel", fuel, "step budget");
    run->add_flag("--no-preamble", no_preamble, "omit the global prelude");

    auto* desugar = app.add_subcommand("desugar", "print the core translation");
    desugar->add_option("file", file)->required();
    desugar->add_flag("--no-preamble", no_preamble, "omit the global prelude");

    auto* step = app.add_subcommand("step", "print the reduction trace");
    step->add_option("file", file)->required();
    step->add_option("--fuel", fuel, "step budget");
    step->add_flag("--no-preamble", no_preamble, "omit the global prelude");
    step->add_flag("--typed", typed, "print the sandbox type of every state");

    auto* parse_cmd = app.add_subcommand("parse", "parse and report diagnostics");
    parse_cmd->add_option("file", file)->required();
    parse_cmd->add_flag("--dump-ast", dump_ast, "print the AST");

    auto* check = app.add_subcommand("check", "certify or reject a program for the sandbox");
    check->add_option("file", file);
    check->add_flag("--all", all_failures, "report every failure, not just the first");
    check->add_flag("--emit-instrumented", emit_instrumented,
                    "print the rewritten JavaScript");
    bool sweep = false;
    check->add_flag("--sweep", sweep, "run the per-form type sweep and print the table");

    std::string fixture_dir;
    if (const char* env = std::getenv("LJS_FIXTURE_ROOT")) fixture_dir = env;
    auto* test = app.add_subcommand("test", "run a fixture directory");
    test->add_option("dir", fixture_dir, "fixture root (or $LJS_FIXTURE_ROOT)");
    test->add_option("--fuel", fuel, "step budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (run->parsed()) {
        ParsedFile p = parse_or_exit(file);
        ljs::ExprPtr core = ljs::desugar_program(p.program, ljs::DesugarOptions{!no_preamble});
        std::string output;
        ljs::StepOptions opts;
        opts.output = &output;
        ljs::EvalResult r = ljs::eval(ljs::Configuration{ljs::Store{}, core}, fuel, opts);
        std::cout << output;
        return outcome_exit(r.outcome);
    }

    if (desugar->parsed()) {
        ParsedFile p = parse_or_exit(file);
        ljs::ExprPtr core = ljs::desugar_program(p.program, ljs::DesugarOptions{!no_preamble});
        std::cout << ljs::print_expr(core) << "\n";
        return kExitOk;
    }

    if (step->parsed()) {
        ParsedFile p = parse_or_exit(file);
        ljs::ExprPtr core = ljs::desugar_program(p.program, ljs::DesugarOptions{!no_preamble});
        std::string output;
        ljs::StepOptions opts;
        opts.output = &output;
        ljs::TraceResult tr = ljs::trace(ljs::Configuration{ljs::Store{}, core}, fuel, opts);
        for (size_t i = 0; i < tr.states.size(); ++i) {
            if (i) std::cout << "-->\n";
            std::cout << ljs::print_configuration(tr.states[i].store, *tr.states[i].expr);
            if (typed) {
                ljs::TypecheckResult tc = ljs::typecheck_closed(tr.states[i].expr);
                std::cout << ": " << (tc.ok ? (tc.type == ljs::SandboxType::JS ? "JS" : "NotXHR")
                                            : "untypable")
                          << "\n";
            }
        }
        return outcome_exit(tr.outcome);
    }

    if (parse_cmd->parsed()) {
        ParsedFile p = parse_or_exit(file);
        if (dump_ast) std::cout << ljs::js::dump_ast(p.program);
        return kExitOk;
    }

    if (check->parsed()) {
        if (sweep) {
            for (const auto& row : ljs::per_form_context_check()) {
                std::cout << (row.passes ? "pass  " : "FAIL  ") << row.form << "\n";
            }
            return kExitOk;
        }
        if (file.empty()) {
            std::cerr << "check: a file is required\n";
            return kExitUsage;
        }
        ParsedFile p = parse_or_exit(file);
        if (emit_instrumented) {
            ljs::InstrumentResult ins = ljs::instrument(p.program);
            for (const auto& d : ins.rejections) {
                std::cerr << file << ":" << d.span.line << ": " << d.message << "\n";
            }
            if (!ins.rejections.empty()) return kExitSemantic;
            std::cout << ljs::js::print_program(ins.program);
            return kExitOk;
        }
        ljs::SafetyReport report = ljs::check_subset(p.program);
        if (report.certified) {
            std::cout << "certified\n";
            return kExitOk;
        }
        std::cout << "rejected: " << report.reason;
        if (report.span.valid()) {
            std::cout << " at " << report.span.line << ":" << report.span.column;
        }
        std::cout << "\n";
        if (!report.core_text.empty()) std::cout << "  in: " << report.core_text << "\n";
        if (all_failures) {
            // Re-run instrumentation to list every excluded form.
            ljs::InstrumentResult ins = ljs::instrument(p.program);
            for (const auto& d : ins.rejections) {
                std::cout << "  " << d.span.line << ":" << d.span.column << ": " << d.message
                          << "\n";
            }
        }
        return kExitSemantic;
    }

    if (test->parsed()) {
        if (fixture_dir.empty()) {
            std::cerr << "test: a fixture directory is required (or set LJS_FIXTURE_ROOT)\n";
            return kExitUsage;
        }
        ljs::RunConfig config;
        config.fuel = fuel;
        ljs::HarnessReport report = ljs::run_fixture_dir(fixture_dir, config);
        std::cout << ljs::format_report(report);
        return report.failures == 0 ? kExitOk : kExitSemantic;
    }

    return kExitUsage;
}
