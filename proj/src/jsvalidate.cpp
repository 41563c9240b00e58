#include <set>

#include "ljs/jsparse.hpp"
#include "ljs/numfmt.hpp"

namespace ljs::js {

namespace {

struct Checker {
    std::vector<Diagnostic> diags;
    struct LabelInfo {
        std::string name;
        bool is_loop;
    };
    std::vector<LabelInfo> labels;  // lexically visible labels
    int loop_depth = 0;
    int breakable_depth = 0;              // loops + switches
    int function_depth = 0;

    void report(const std::string& msg, SourceSpan span) { diags.push_back({msg, span}); }

    bool label_visible(const std::string& l) const {
        for (const auto& x : labels) {
            if (x.name == l) return true;
        }
        return false;
    }

    bool label_is_loop(const std::string& l) const {
        for (const auto& x : labels) {
            if (x.name == l) return x.is_loop;
        }
        return false;
    }

    static bool body_is_loop(const Stmt& s) {
        if (s.is<WhileStmt>() || s.is<DoWhileStmt>() || s.is<ForStmt>() || s.is<ForInStmt>()) {
            return true;
        }
        if (const auto* l = s.as<LabeledStmt>()) return body_is_loop(*l->body);
        return false;
    }

    void check_params(const std::vector<std::string>& params, SourceSpan span) {
        std::set<std::string> seen;
        for (const auto& p : params) {
            if (!seen.insert(p).second) report("duplicate parameter '" + p + "'", span);
        }
    }

    void check_function_body(const std::vector<StmtPtr>& body) {
        // Each function gets a fresh label/loop context.
        auto saved_labels = std::move(labels);
        labels.clear();
        int sl = loop_depth, sb = breakable_depth;
        loop_depth = breakable_depth = 0;
        ++function_depth;
        for (const auto& s : body) check_stmt(*s);
        --function_depth;
        loop_depth = sl;
        breakable_depth = sb;
        labels = std::move(saved_labels);
    }

    void check_expr(const Expr& e) {
        if (const auto* obj = e.as<ObjectLit>()) {
            std::set<std::string> seen;
            for (const auto& [k, v] : obj->fields) {
                if (!seen.insert(k).second) {
                    report("duplicate object key '" + k + "'", e.span);
                }
                check_expr(*v);
            }
            return;
        }
        if (const auto* fn = e.as<FuncLit>()) {
            check_params(fn->params, e.span);
            check_function_body(fn->body);
            return;
        }
        if (const auto* a = e.as<ArrayLit>()) {
            for (const auto& el : a->elements) check_expr(*el);
            return;
        }
        if (const auto* m = e.as<Member>()) {
            check_expr(*m->object);
            if (m->field) check_expr(*m->field);
            return;
        }
        if (const auto* c = e.as<Call>()) {
            check_expr(*c->callee);
            for (const auto& x : c->args) check_expr(*x);
            return;
        }
        if (const auto* n = e.as<New>()) {
            check_expr(*n->callee);
            for (const auto& x : n->args) check_expr(*x);
            return;
        }
        if (const auto* a = e.as<Assign>()) {
            check_expr(*a->target);
            check_expr(*a->value);
            return;
        }
        if (const auto* b = e.as<Binary>()) {
            check_expr(*b->lhs);
            check_expr(*b->rhs);
            return;
        }
        if (const auto* u = e.as<Unary>()) return check_expr(*u->operand);
        if (const auto* d = e.as<DeleteExpr>()) return check_expr(*d->target);
        if (const auto* x = e.as<IncDec>()) return check_expr(*x->target);
        if (const auto* c = e.as<Cond>()) {
            check_expr(*c->cond);
            check_expr(*c->then_expr);
            check_expr(*c->else_expr);
            return;
        }
        if (const auto* c = e.as<Comma>()) {
            check_expr(*c->first);
            check_expr(*c->rest);
            return;
        }
        // literals, idents, this
    }

    void check_stmt(const Stmt& s) {
        if (const auto* v = s.as<VarDecl>()) {
            for (const auto& [name, init] : v->decls) {
                (void)name;
                if (init) check_expr(*init);
            }
            return;
        }
        if (const auto* e = s.as<ExprStmt>()) return check_expr(*e->expr);
        if (const auto* i = s.as<IfStmt>()) {
            check_expr(*i->cond);
            check_stmt(*i->then_stmt);
            if (i->else_stmt) check_stmt(*i->else_stmt);
            return;
        }
        if (const auto* w = s.as<WhileStmt>()) {
            check_expr(*w->cond);
            ++loop_depth;
            ++breakable_depth;
            check_stmt(*w->body);
            --loop_depth;
            --breakable_depth;
            return;
        }
        if (const auto* w = s.as<DoWhileStmt>()) {
            ++loop_depth;
            ++breakable_depth;
            check_stmt(*w->body);
            --loop_depth;
            --breakable_depth;
            check_expr(*w->cond);
            return;
        }
        if (const auto* f = s.as<ForStmt>()) {
            if (f->init) check_stmt(*f->init);
            if (f->cond) check_expr(*f->cond);
            if (f->update) check_expr(*f->update);
            ++loop_depth;
            ++breakable_depth;
            check_stmt(*f->body);
            --loop_depth;
            --breakable_depth;
            return;
        }
        if (const auto* f = s.as<ForInStmt>()) {
            check_expr(*f->object);
            ++loop_depth;
            ++breakable_depth;
            check_stmt(*f->body);
            --loop_depth;
            --breakable_depth;
            return;
        }
        if (const auto* r = s.as<ReturnStmt>()) {
            if (function_depth == 0) report("return outside a function", s.span);
            if (r->value) check_expr(*r->value);
            return;
        }
        if (const auto* b = s.as<BreakStmt>()) {
            if (b->label.empty()) {
                if (breakable_depth == 0) report("break outside a loop or switch", s.span);
            } else if (!label_visible(b->label)) {
                report("break to unknown label '" + b->label + "'", s.span);
            }
            return;
        }
        if (const auto* c = s.as<ContinueStmt>()) {
            if (c->label.empty()) {
                if (loop_depth == 0) report("continue outside a loop", s.span);
            } else if (!label_visible(c->label)) {
                report("continue to unknown label '" + c->label + "'", s.span);
            } else if (!label_is_loop(c->label)) {
                report("continue target '" + c->label + "' does not label a loop", s.span);
            }
            return;
        }
        if (const auto* l = s.as<LabeledStmt>()) {
            labels.push_back({l->label, body_is_loop(*l->body)});
            check_stmt(*l->body);
            labels.pop_back();
            return;
        }
        if (const auto* t = s.as<TryStmt>()) {
            for (const auto& x : t->block) check_stmt(*x);
            for (const auto& x : t->catch_block) check_stmt(*x);
            for (const auto& x : t->finally_block) check_stmt(*x);
            return;
        }
        if (const auto* t = s.as<ThrowStmt>()) return check_expr(*t->value);
        if (const auto* sw = s.as<SwitchStmt>()) {
            check_expr(*sw->disc);
            for (size_t i = 0; i < sw->cases.size(); ++i) {
                if (!sw->cases[i].test && i + 1 != sw->cases.size()) {
                    report("default clause must be the last switch clause", s.span);
                }
                if (sw->cases[i].test) check_expr(*sw->cases[i].test);
            }
            ++breakable_depth;
            for (const auto& c : sw->cases) {
                for (const auto& x : c.body) check_stmt(*x);
            }
            --breakable_depth;
            return;
        }
        if (const auto* w = s.as<WithStmt>()) {
            check_expr(*w->object);
            check_stmt(*w->body);
            return;
        }
        if (const auto* b = s.as<BlockStmt>()) {
            for (const auto& x : b->body) check_stmt(*x);
            return;
        }
        if (const auto* f = s.as<FuncDecl>()) {
            check_params(f->params, s.span);
            check_function_body(f->body);
            return;
        }
        // EmptyStmt
    }
};

void dump_stmt(const Stmt& s, int depth, std::string& out);

void indent(int depth, std::string& out) { out.append(static_cast<size_t>(depth) * 2, ' '); }

void dump_expr_node(const Expr& e, int depth, std::string& out) {
    indent(depth, out);
    if (const auto* x = e.as<NumberLit>()) {
        out += "(number " + js_number_to_string(x->value) + ")\n";
    } else if (const auto* x = e.as<StringLit>()) {
        out += "(string \"" + x->value + "\")\n";
    } else if (const auto* x = e.as<BoolLit>()) {
        out += x->value ? "(true)\n" : "(false)\n";
    } else if (e.is<NullLit>()) {
        out += "(null)\n";
    } else if (const auto* x = e.as<Ident>()) {
        out += "(id " + x->name + ")\n";
    } else if (e.is<This>()) {
        out += "(this)\n";
    } else if (const auto* x = e.as<ObjectLit>()) {
        out += "(object\n";
        for (const auto& [k, v] : x->fields) {
            indent(depth + 1, out);
            out += "(prop \"" + k + "\"\n";
            dump_expr_node(*v, depth + 2, out);
            indent(depth + 1, out);
            out += ")\n";
        }
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = e.as<ArrayLit>()) {
        out += "(array\n";
        for (const auto& el : x->elements) dump_expr_node(*el, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = e.as<FuncLit>()) {
        out += "(function";
        if (!x->name.empty()) out += " " + x->name;
        out += " (params";
        for (const auto& p : x->params) out += " " + p;
        out += ")\n";
        for (const auto& st : x->body) dump_stmt(*st, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = e.as<Member>()) {
        if (x->name) {
            out += "(member-dot " + *x->name + "\n";
            dump_expr_node(*x->object, depth + 1, out);
        } else {
            out += "(member-bracket\n";
            dump_expr_node(*x->object, depth + 1, out);
            dump_expr_node(*x->field, depth + 1, out);
        }
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = e.as<Call>()) {
        out += "(call\n";
        dump_expr_node(*x->callee, depth + 1, out);
        for (const auto& a : x->args) dump_expr_node(*a, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = e.as<New>()) {
        out += "(new\n";
        dump_expr_node(*x->callee, depth + 1, out);
        for (const auto& a : x->args) dump_expr_node(*a, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = e.as<Assign>()) {
        static const char* names[] = {"=", "+=", "-=", "*=", "/=", "%="};
        out += std::string("(assign ") + names[static_cast<int>(x->op)] + "\n";
        dump_expr_node(*x->target, depth + 1, out);
        dump_expr_node(*x->value, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = e.as<Binary>()) {
        static const char* names[] = {"+", "-", "*", "/", "%", "<", "<=", ">", ">=",
                                      "==", "!=", "===", "!==", "&&", "||", "in", "instanceof"};
        out += std::string("(binary ") + names[static_cast<int>(x->op)] + "\n";
        dump_expr_node(*x->lhs, depth + 1, out);
        dump_expr_node(*x->rhs, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = e.as<Unary>()) {
        static const char* names[] = {"typeof", "!", "-"};
        out += std::string("(unary ") + names[static_cast<int>(x->op)] + "\n";
        dump_expr_node(*x->operand, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = e.as<DeleteExpr>()) {
        out += "(delete\n";
        dump_expr_node(*x->target, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = e.as<IncDec>()) {
        out += std::string("(") + (x->prefix ? "pre" : "post") + (x->increment ? "inc" : "dec") +
               "\n";
        dump_expr_node(*x->target, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = e.as<Cond>()) {
        out += "(cond\n";
        dump_expr_node(*x->cond, depth + 1, out);
        dump_expr_node(*x->then_expr, depth + 1, out);
        dump_expr_node(*x->else_expr, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = e.as<Comma>()) {
        out += "(comma\n";
        dump_expr_node(*x->first, depth + 1, out);
        dump_expr_node(*x->rest, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    }
}

void dump_stmts(const std::vector<StmtPtr>& body, int depth, std::string& out) {
    for (const auto& s : body) dump_stmt(*s, depth, out);
}

void dump_stmt(const Stmt& s, int depth, std::string& out) {
    indent(depth, out);
    if (const auto* x = s.as<VarDecl>()) {
        out += "(var\n";
        for (const auto& [name, init] : x->decls) {
            indent(depth + 1, out);
            out += "(decl " + name + (init ? "\n" : ")\n");
            if (init) {
                dump_expr_node(*init, depth + 2, out);
                indent(depth + 1, out);
                out += ")\n";
            }
        }
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = s.as<ExprStmt>()) {
        out += "(expr-stmt\n";
        dump_expr_node(*x->expr, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = s.as<IfStmt>()) {
        out += "(if\n";
        dump_expr_node(*x->cond, depth + 1, out);
        dump_stmt(*x->then_stmt, depth + 1, out);
        if (x->else_stmt) dump_stmt(*x->else_stmt, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = s.as<WhileStmt>()) {
        out += "(while\n";
        dump_expr_node(*x->cond, depth + 1, out);
        dump_stmt(*x->body, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = s.as<DoWhileStmt>()) {
        out += "(do-while\n";
        dump_stmt(*x->body, depth + 1, out);
        dump_expr_node(*x->cond, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = s.as<ForStmt>()) {
        out += "(for\n";
        if (x->init) dump_stmt(*x->init, depth + 1, out);
        if (x->cond) dump_expr_node(*x->cond, depth + 1, out);
        if (x->update) dump_expr_node(*x->update, depth + 1, out);
        dump_stmt(*x->body, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = s.as<ForInStmt>()) {
        out += std::string("(for-in ") + (x->declares ? "var " : "") + x->name + "\n";
        dump_expr_node(*x->object, depth + 1, out);
        dump_stmt(*x->body, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = s.as<ReturnStmt>()) {
        out += x->value ? "(return\n" : "(return)\n";
        if (x->value) {
            dump_expr_node(*x->value, depth + 1, out);
            indent(depth, out);
            out += ")\n";
        }
    } else if (const auto* x = s.as<BreakStmt>()) {
        out += "(break" + (x->label.empty() ? "" : " " + x->label) + ")\n";
    } else if (const auto* x = s.as<ContinueStmt>()) {
        out += "(continue" + (x->label.empty() ? "" : " " + x->label) + ")\n";
    } else if (const auto* x = s.as<LabeledStmt>()) {
        out += "(label " + x->label + "\n";
        dump_stmt(*x->body, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = s.as<TryStmt>()) {
        out += "(try\n";
        dump_stmts(x->block, depth + 1, out);
        if (x->has_catch) {
            indent(depth, out);
            out += " (catch " + x->catch_binder + "\n";
            dump_stmts(x->catch_block, depth + 1, out);
            indent(depth, out);
            out += " )\n";
        }
        if (x->has_finally) {
            indent(depth, out);
            out += " (finally\n";
            dump_stmts(x->finally_block, depth + 1, out);
            indent(depth, out);
            out += " )\n";
        }
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = s.as<ThrowStmt>()) {
        out += "(throw\n";
        dump_expr_node(*x->value, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = s.as<SwitchStmt>()) {
        out += "(switch\n";
        dump_expr_node(*x->disc, depth + 1, out);
        for (const auto& c : x->cases) {
            indent(depth + 1, out);
            out += c.test ? "(case\n" : "(default\n";
            if (c.test) dump_expr_node(*c.test, depth + 2, out);
            dump_stmts(c.body, depth + 2, out);
            indent(depth + 1, out);
            out += ")\n";
        }
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = s.as<WithStmt>()) {
        out += "(with\n";
        dump_expr_node(*x->object, depth + 1, out);
        dump_stmt(*x->body, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = s.as<BlockStmt>()) {
        out += "(block\n";
        dump_stmts(x->body, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    } else if (const auto* x = s.as<FuncDecl>()) {
        out += "(function-decl " + x->name + " (params";
        for (const auto& p : x->params) out += " " + p;
        out += ")\n";
        dump_stmts(x->body, depth + 1, out);
        indent(depth, out);
        out += ")\n";
    } else {
        out += "(empty)\n";
    }
}

}  // namespace

std::vector<Diagnostic> validate(const Program& program) {
    Checker c;
    for (const auto& s : program.body) c.check_stmt(*s);
    return c.diags;
}

std::string dump_ast(const Program& program) {
    std::string out = "(program\n";
    dump_stmts(program.body, 1, out);
    out += ")\n";
    return out;
}

std::string dump_expr(const ExprPtr& e) {
    std::string out;
    dump_expr_node(*e, 0, out);
    return out;
}

}  // namespace ljs::js
