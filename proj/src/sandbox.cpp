#include "ljs/sandbox.hpp"

#include <cassert>

#include "ljs/delta.hpp"
#include "ljs/desugar.hpp"
#include "ljs/print.hpp"
#include "ljs/subst.hpp"

namespace ljs {

namespace {

// ---- possible-values analysis of pure, store-free expression fragments ----
//
// An over-approximation of the values an expression can complete with: either
// Top (unknown) or a small candidate set. A condition whose candidates are
// all false can only take its else branch, so the checker types just that
// branch. This generalizes the auxiliary rules that keep intermediate states
// typable — `if (true)`, `if ("XMLHttpRequest" === "XMLHttpRequest")` — and
// also covers runtime states where a typeof guard hangs on an unevaluated
// store access: `<"function"|"object"> === "string"` is definitely false no
// matter which way the lookup goes. An erring condition starts no branch, so
// pruning on completed values alone is sound.
struct PossibleValues {
    bool top = true;
    std::vector<ExprPtr> values;  // candidates when !top

    static PossibleValues unknown() { return {}; }
    static PossibleValues single(ExprPtr v) { return {false, {std::move(v)}}; }
};

constexpr size_t kMaxCandidates = 4;

PossibleValues merge(PossibleValues a, PossibleValues b) {
    if (a.top || b.top) return PossibleValues::unknown();
    for (auto& v : b.values) {
        bool seen = false;
        for (const auto& w : a.values) {
            if (expr_equal(*v, *w)) {
                seen = true;
                break;
            }
        }
        if (!seen) a.values.push_back(std::move(v));
    }
    if (a.values.size() > kMaxCandidates) return PossibleValues::unknown();
    return a;
}

PossibleValues possible_values(const ExprPtr& e, int depth = 0) {
    if (depth > 64) return PossibleValues::unknown();
    if (is_value(*e)) return PossibleValues::single(e);
    if (const auto* p = e->as<PrimExpr>()) {
        std::vector<std::vector<ExprPtr>> arg_sets;
        for (const auto& a : p->args) {
            PossibleValues pv = possible_values(a, depth + 1);
            if (pv.top) return PossibleValues::unknown();
            arg_sets.push_back(std::move(pv.values));
        }
        // Product of candidate tuples through delta.
        PossibleValues out{false, {}};
        std::vector<size_t> idx(arg_sets.size(), 0);
        for (;;) {
            std::vector<ExprPtr> args;
            for (size_t i = 0; i < arg_sets.size(); ++i) args.push_back(arg_sets[i][idx[i]]);
            DeltaResult r = delta(p->op, args);
            if (!r.constant) return PossibleValues::unknown();
            out = merge(std::move(out), PossibleValues::single(make_const(*r.constant)));
            if (out.top) return out;
            size_t k = 0;
            for (; k < idx.size(); ++k) {
                if (++idx[k] < arg_sets[k].size()) break;
                idx[k] = 0;
            }
            if (k == idx.size()) break;
            if (idx.empty()) break;
        }
        return out;
    }
    if (const auto* i = e->as<IfExpr>()) {
        PossibleValues c = possible_values(i->cond, depth + 1);
        bool may_true = c.top, may_false = c.top;
        if (!c.top) {
            for (const auto& v : c.values) {
                const auto* cc = v->as<ConstExpr>();
                if (cc && cc->value.is(Constant::Kind::Boolean)) {
                    (cc->value.as_boolean() ? may_true : may_false) = true;
                } else {
                    return PossibleValues::unknown();  // non-boolean condition sticks
                }
            }
        }
        PossibleValues out{false, {}};
        if (may_true) out = merge(std::move(out), possible_values(i->then_branch, depth + 1));
        if (may_false) out = merge(std::move(out), possible_values(i->else_branch, depth + 1));
        return out;
    }
    if (const auto* l = e->as<LetExpr>()) {
        PossibleValues b = possible_values(l->bound, depth + 1);
        if (b.top || b.values.size() != 1) return PossibleValues::unknown();
        return possible_values(substitute(l->body, l->name, b.values[0]), depth + 1);
    }
    if (const auto* s = e->as<SeqExpr>()) {
        return possible_values(s->rest, depth + 1);
    }
    return PossibleValues::unknown();
}

std::optional<bool> fold_condition(const ExprPtr& cond) {
    PossibleValues pv = possible_values(cond);
    if (pv.top || pv.values.empty()) return std::nullopt;
    bool saw_true = false, saw_false = false;
    for (const auto& v : pv.values) {
        const auto* c = v->as<ConstExpr>();
        if (!c || !c->value.is(Constant::Kind::Boolean)) return std::nullopt;
        (c->value.as_boolean() ? saw_true : saw_false) = true;
    }
    if (saw_true && !saw_false) return true;
    if (saw_false && !saw_true) return false;
    return std::nullopt;
}

bool is_string_const(const Expr& e, const char* text) {
    const auto* c = e.as<ConstExpr>();
    return c && c->value.is(Constant::Kind::String) && c->value.as_string() == text;
}

// if (x === "XMLHttpRequest") … — the occurrence-typing guard.
const std::string* ifsafe_subject(const Expr& cond) {
    const auto* p = cond.as<PrimExpr>();
    if (!p || p->op != PrimOp::StxEq) return nullptr;
    const auto* x = p->args[0]->as<IdExpr>();
    if (!x) return nullptr;
    if (!is_string_const(*p->args[1], "XMLHttpRequest")) return nullptr;
    return &x->name;
}

// Recognizes the canonical typeof expansion applied to a variable:
//   if (@isloc(x)) { if (@hasown(deref x, "code")) "function" else "object" }
//   else { @typeof(x) }
const std::string* typeof_expansion_subject(const Expr& e) {
    const Expr* body = &e;
    const std::string* let_bound_id = nullptr;
    if (const auto* l = e.as<LetExpr>()) {
        if (const auto* b = l->bound->as<IdExpr>()) let_bound_id = &b->name;
        body = l->body.get();
    }
    const auto* i = body->as<IfExpr>();
    if (!i) return nullptr;
    const auto* isloc = i->cond->as<PrimExpr>();
    if (!isloc || isloc->op != PrimOp::IsLoc) return nullptr;
    const auto* subject = isloc->args[0]->as<IdExpr>();
    if (!subject) return nullptr;
    const auto* inner = i->then_branch->as<IfExpr>();
    if (!inner) return nullptr;
    const auto* hasown = inner->cond->as<PrimExpr>();
    if (!hasown || hasown->op != PrimOp::HasOwnField) return nullptr;
    if (!is_string_const(*hasown->args[1], "code")) return nullptr;
    if (!is_string_const(*inner->then_branch, "function")) return nullptr;
    if (!is_string_const(*inner->else_branch, "object")) return nullptr;
    const auto* tof = i->else_branch->as<PrimExpr>();
    if (!tof || tof->op != PrimOp::TypeOf) return nullptr;
    const auto* tid = tof->args[0]->as<IdExpr>();
    if (!tid || tid->name != subject->name) return nullptr;
    // The let-temp form narrows the alias target when there is one.
    if (let_bound_id) return let_bound_id;
    return &subject->name;
}

// if (<typeof expansion of x> === "string") … — the second if-splitting.
const std::string* typeof_string_split_subject(const Expr& cond) {
    const auto* p = cond.as<PrimExpr>();
    if (!p || p->op != PrimOp::StxEq) return nullptr;
    if (!is_string_const(*p->args[1], "string")) return nullptr;
    return typeof_expansion_subject(*p->args[0]);
}

struct Reject {
    ExprPtr node;
    std::string rule;
};

class Checker {
public:
    SandboxType check(TypeEnv env, const ExprPtr& e) { return type_of(env, e); }

    std::optional<Reject> rejection;

private:
    SandboxType fail(const ExprPtr& node, const char* rule) {
        if (!rejection) rejection = Reject{node, rule};
        throw *rejection;
    }

    SandboxType type_of(TypeEnv& env, const ExprPtr& e) {
        if (const auto* c = e->as<ConstExpr>()) {
            // T-SafeValue, restricted to constants: anything that is not the
            // string "XMLHttpRequest" cannot name the blocked field.
            if (c->value.is(Constant::Kind::String) &&
                c->value.as_string() == "XMLHttpRequest") {
                return SandboxType::JS;
            }
            return SandboxType::NotXHR;
        }
        if (e->is<LocExpr>()) return SandboxType::JS;
        if (const auto* x = e->as<IdExpr>()) {
            auto it = env.vars.find(x->name);
            if (it == env.vars.end()) return fail(e, "unbound identifier");
            return it->second;
        }
        if (const auto* f = e->as<FuncExpr>()) {
            TypeEnv inner = env;
            for (const auto& p : f->params) {
                inner.vars[p] = SandboxType::JS;
                inner.prim_string_facts.erase(p);
            }
            type_of(inner, f->body);
            return SandboxType::JS;
        }
        if (const auto* o = e->as<ObjectExpr>()) {
            for (const auto& [k, v] : o->fields) {
                (void)k;
                type_of(env, v);
            }
            return SandboxType::JS;
        }
        if (const auto* l = e->as<LetExpr>()) {
            SandboxType bound = type_of(env, l->bound);
            TypeEnv inner = env;
            inner.vars[l->name] = bound;
            inner.prim_string_facts.erase(l->name);
            if (const auto* alias = l->bound->as<IdExpr>()) {
                if (env.prim_string_facts.count(alias->name)) {
                    inner.prim_string_facts.insert(l->name);
                }
            } else if (const auto* c = l->bound->as<ConstExpr>()) {
                // A string-literal binding is a primitive string outright.
                if (c->value.is(Constant::Kind::String)) {
                    inner.prim_string_facts.insert(l->name);
                }
            }
            return type_of(inner, l->body);
        }
        if (const auto* a = e->as<AppExpr>()) {
            type_of(env, a->fn);
            for (const auto& arg : a->args) type_of(env, arg);
            return SandboxType::JS;
        }
        if (const auto* g = e->as<GetFieldExpr>()) {
            type_of(env, g->object);
            SandboxType f = type_of(env, g->field);
            if (f != SandboxType::NotXHR) return fail(e, "T-GetField: field is not NotXHR");
            return SandboxType::JS;
        }
        if (const auto* i = e->as<IfExpr>()) return type_of_if(env, *i);
        if (const auto* s = e->as<SeqExpr>()) {
            type_of(env, s->first);
            return type_of(env, s->rest);
        }
        if (const auto* t = e->as<TryCatchExpr>()) {
            type_of(env, t->body);
            TypeEnv inner = env;
            inner.vars[t->binder] = SandboxType::JS;
            inner.prim_string_facts.erase(t->binder);
            type_of(inner, t->handler);
            return SandboxType::JS;
        }
        if (const auto* p = e->as<PrimExpr>()) {
            for (const auto& arg : p->args) type_of(env, arg);
            // A trusted primitive: stringified numbers are never the blocked
            // name, unlike concatenation which can assemble it.
            if (p->op == PrimOp::NumToStr) return SandboxType::NotXHR;
            return SandboxType::JS;
        }
        // Update, Delete, Ref, Deref, SetRef, While, Label, Break, Throw,
        // Err, TryFinally: every subexpression must type; the result is JS.
        int n = child_count(*e);
        for (int i = 0; i < n; ++i) type_of(env, get_child(*e, i));
        return SandboxType::JS;
    }

    SandboxType type_of_if(TypeEnv& env, const IfExpr& i) {
        // Constant-foldable condition: only the taken branch is checked.
        if (auto taken = fold_condition(i.cond)) {
            return type_of(env, *taken ? i.then_branch : i.else_branch);
        }
        // T-IfSafe: the else branch learns the subject is not the string.
        if (const std::string* x = ifsafe_subject(*i.cond)) {
            if (env.vars.count(*x)) {
                SandboxType tt = type_of(env, i.then_branch);
                TypeEnv narrowed = env;
                narrowed.vars[*x] = SandboxType::NotXHR;
                SandboxType te = type_of(narrowed, i.else_branch);
                return join(tt, te);
            }
        }
        // typeof split: inside the then branch the subject is a primitive
        // string, which unreaches the coercion's toString arm.
        if (const std::string* x = typeof_string_split_subject(*i.cond)) {
            if (env.vars.count(*x)) {
                TypeEnv with_fact = env;
                with_fact.prim_string_facts.insert(*x);
                SandboxType tt = type_of(with_fact, i.then_branch);
                SandboxType te = type_of(env, i.else_branch);
                return join(tt, te);
            }
        }
        // A location test on a known primitive string: the then branch is
        // unreachable and skipped.
        if (const auto* p = i.cond->as<PrimExpr>(); p && p->op == PrimOp::IsLoc) {
            if (const auto* x = p->args[0]->as<IdExpr>()) {
                if (env.prim_string_facts.count(x->name)) {
                    return type_of(env, i.else_branch);
                }
            }
        }
        type_of(env, i.cond);
        SandboxType tt = type_of(env, i.then_branch);
        SandboxType te = type_of(env, i.else_branch);
        return join(tt, te);
    }
};

}  // namespace

TypecheckResult typecheck(const TypeEnv& env, const ExprPtr& e) {
    Checker c;
    TypecheckResult out;
    try {
        out.type = c.check(env, e);
        out.ok = true;
    } catch (const Reject& r) {
        out.ok = false;
        out.offending = r.node;
        out.rule = r.rule;
    }
    return out;
}

TypecheckResult typecheck_closed(const ExprPtr& e) {
    TypeEnv env;
    for (const auto& name : free_variables(*e)) env.vars[name] = SandboxType::JS;
    return typecheck(env, e);
}

const char* safe_lookup_source() {
    return "var safeLookup = function(obj, field) {\n"
           "  if (field === \"XMLHttpRequest\") { return undefined }\n"
           "  else { if (typeof field === \"string\") { return obj[field] }\n"
           "         else { return undefined } }\n"
           "};\n";
}

// ---- instrumentation ----

namespace {

namespace jsx = ljs::js;

class Instrumenter {
public:
    std::vector<jsx::Diagnostic> rejections;

    jsx::ExprPtr expr(const jsx::ExprPtr& e) {
        if (const auto* m = e->as<jsx::Member>()) {
            // A member read. Bracket lookups and dotted XMLHttpRequest reads
            // go through the wrapper; other dotted reads are safe as-is.
            jsx::ExprPtr obj = expr(m->object);
            if (m->name) {
                if (*m->name == "XMLHttpRequest") {
                    return jsx::make_expr(
                        jsx::Call{ident("safeLookup"),
                                  {obj, jsx::make_expr(jsx::StringLit{"XMLHttpRequest"},
                                                       e->span)}},
                        e->span);
                }
                return jsx::make_expr(jsx::Member{obj, m->name, nullptr}, e->span);
            }
            return jsx::make_expr(jsx::Call{ident("safeLookup"), {obj, expr(m->field)}},
                                  e->span);
        }
        if (const auto* a = e->as<jsx::Assign>()) {
            if (a->target->is<jsx::Member>() && a->op != jsx::AssignOp::Assign) {
                reject("compound assignment to a member is outside the safe sub-language",
                       e->span);
                return e;
            }
            jsx::ExprPtr target = a->target;
            if (const auto* m = a->target->as<jsx::Member>()) {
                // The write target itself is not a read; only its parts are
                // rewritten.
                target = jsx::make_expr(
                    jsx::Member{expr(m->object), m->name, m->field ? expr(m->field) : nullptr},
                    a->target->span);
            }
            return jsx::make_expr(jsx::Assign{target, a->op, expr(a->value)}, e->span);
        }
        if (const auto* x = e->as<jsx::IncDec>()) {
            if (x->target->is<jsx::Member>()) {
                reject("increment/decrement of a member is outside the safe sub-language",
                       e->span);
                return e;
            }
            return e;
        }
        if (const auto* d = e->as<jsx::DeleteExpr>()) {
            if (const auto* m = d->target->as<jsx::Member>()) {
                jsx::ExprPtr target = jsx::make_expr(
                    jsx::Member{expr(m->object), m->name, m->field ? expr(m->field) : nullptr},
                    d->target->span);
                return jsx::make_expr(jsx::DeleteExpr{target}, e->span);
            }
            return e;
        }
        if (const auto* o = e->as<jsx::ObjectLit>()) {
            std::vector<std::pair<std::string, jsx::ExprPtr>> fields;
            for (const auto& [k, v] : o->fields) fields.emplace_back(k, expr(v));
            return jsx::make_expr(jsx::ObjectLit{std::move(fields)}, e->span);
        }
        if (const auto* a = e->as<jsx::ArrayLit>()) {
            std::vector<jsx::ExprPtr> elems;
            for (const auto& el : a->elements) elems.push_back(expr(el));
            return jsx::make_expr(jsx::ArrayLit{std::move(elems)}, e->span);
        }
        if (const auto* f = e->as<jsx::FuncLit>()) {
            return jsx::make_expr(jsx::FuncLit{f->name, f->params, stmts(f->body)}, e->span);
        }
        if (const auto* c = e->as<jsx::Call>()) {
            // A method call keeps its shape for dotted non-XHR names; the
            // callee member otherwise goes through the generic path.
            std::vector<jsx::ExprPtr> args;
            for (const auto& a2 : c->args) args.push_back(expr(a2));
            return jsx::make_expr(jsx::Call{expr(c->callee), std::move(args)}, e->span);
        }
        if (const auto* n = e->as<jsx::New>()) {
            std::vector<jsx::ExprPtr> args;
            for (const auto& a2 : n->args) args.push_back(expr(a2));
            return jsx::make_expr(jsx::New{expr(n->callee), std::move(args)}, e->span);
        }
        if (const auto* b = e->as<jsx::Binary>()) {
            return jsx::make_expr(jsx::Binary{b->op, expr(b->lhs), expr(b->rhs)}, e->span);
        }
        if (const auto* u = e->as<jsx::Unary>()) {
            return jsx::make_expr(jsx::Unary{u->op, expr(u->operand)}, e->span);
        }
        if (const auto* c = e->as<jsx::Cond>()) {
            return jsx::make_expr(
                jsx::Cond{expr(c->cond), expr(c->then_expr), expr(c->else_expr)}, e->span);
        }
        if (const auto* c = e->as<jsx::Comma>()) {
            return jsx::make_expr(jsx::Comma{expr(c->first), expr(c->rest)}, e->span);
        }
        return e;  // literals, idents, this
    }

    jsx::StmtPtr stmt(const jsx::StmtPtr& s) {
        if (const auto* v = s->as<jsx::VarDecl>()) {
            jsx::VarDecl out;
            for (const auto& [name, init] : v->decls) {
                out.decls.emplace_back(name, init ? expr(init) : nullptr);
            }
            return jsx::make_stmt(std::move(out), s->span);
        }
        if (const auto* x = s->as<jsx::ExprStmt>()) {
            return jsx::make_stmt(jsx::ExprStmt{expr(x->expr)}, s->span);
        }
        if (const auto* x = s->as<jsx::IfStmt>()) {
            return jsx::make_stmt(
                jsx::IfStmt{expr(x->cond), stmt(x->then_stmt),
                            x->else_stmt ? stmt(x->else_stmt) : nullptr},
                s->span);
        }
        if (const auto* x = s->as<jsx::WhileStmt>()) {
            return jsx::make_stmt(jsx::WhileStmt{expr(x->cond), stmt(x->body)}, s->span);
        }
        if (const auto* x = s->as<jsx::DoWhileStmt>()) {
            return jsx::make_stmt(jsx::DoWhileStmt{stmt(x->body), expr(x->cond)}, s->span);
        }
        if (const auto* x = s->as<jsx::ForStmt>()) {
            return jsx::make_stmt(
                jsx::ForStmt{x->init ? stmt(x->init) : nullptr,
                             x->cond ? expr(x->cond) : nullptr,
                             x->update ? expr(x->update) : nullptr, stmt(x->body)},
                s->span);
        }
        if (const auto* x = s->as<jsx::ForInStmt>()) {
            return jsx::make_stmt(
                jsx::ForInStmt{x->declares, x->name, expr(x->object), stmt(x->body)}, s->span);
        }
        if (const auto* x = s->as<jsx::ReturnStmt>()) {
            return jsx::make_stmt(jsx::ReturnStmt{x->value ? expr(x->value) : nullptr},
                                  s->span);
        }
        if (const auto* x = s->as<jsx::LabeledStmt>()) {
            return jsx::make_stmt(jsx::LabeledStmt{x->label, stmt(x->body)}, s->span);
        }
        if (const auto* x = s->as<jsx::TryStmt>()) {
            jsx::TryStmt out = *x;
            out.block = stmts(x->block);
            out.catch_block = stmts(x->catch_block);
            out.finally_block = stmts(x->finally_block);
            return jsx::make_stmt(std::move(out), s->span);
        }
        if (const auto* x = s->as<jsx::ThrowStmt>()) {
            return jsx::make_stmt(jsx::ThrowStmt{expr(x->value)}, s->span);
        }
        if (const auto* x = s->as<jsx::SwitchStmt>()) {
            jsx::SwitchStmt out;
            out.disc = expr(x->disc);
            for (const auto& c : x->cases) {
                out.cases.push_back(
                    jsx::SwitchCase{c.test ? expr(c.test) : nullptr, stmts(c.body)});
            }
            return jsx::make_stmt(std::move(out), s->span);
        }
        if (s->is<jsx::WithStmt>()) {
            reject("with is outside the safe sub-language", s->span);
            return s;
        }
        if (const auto* x = s->as<jsx::BlockStmt>()) {
            return jsx::make_stmt(jsx::BlockStmt{stmts(x->body)}, s->span);
        }
        if (const auto* x = s->as<jsx::FuncDecl>()) {
            return jsx::make_stmt(jsx::FuncDecl{x->name, x->params, stmts(x->body)}, s->span);
        }
        return s;  // break/continue/empty
    }

    std::vector<jsx::StmtPtr> stmts(const std::vector<jsx::StmtPtr>& body) {
        std::vector<jsx::StmtPtr> out;
        out.reserve(body.size());
        for (const auto& s : body) out.push_back(stmt(s));
        return out;
    }

private:
    static jsx::ExprPtr ident(const char* name) {
        return jsx::make_expr(jsx::Ident{name});
    }
    void reject(const std::string& msg, SourceSpan span) { rejections.push_back({msg, span}); }
};

}  // namespace

InstrumentResult instrument(const js::Program& program) {
    Instrumenter ins;
    InstrumentResult out;
    std::vector<js::StmtPtr> rewritten = ins.stmts(program.body);
    out.rejections = std::move(ins.rejections);
    js::Program wrapper = js::parse(safe_lookup_source());
    out.program.body = std::move(wrapper.body);
    for (auto& s : rewritten) out.program.body.push_back(std::move(s));
    return out;
}

SafetyReport check_subset(const js::Program& program) {
    SafetyReport report;
    auto diags = js::validate(program);
    if (!diags.empty()) {
        report.certified = false;
        report.reason = diags[0].message;
        report.span = diags[0].span;
        report.failed_rule = "validate";
        return report;
    }
    InstrumentResult ins = instrument(program);
    if (!ins.rejections.empty()) {
        report.certified = false;
        report.reason = ins.rejections[0].message;
        report.span = ins.rejections[0].span;
        report.failed_rule = "instrument";
        return report;
    }
    ExprPtr core = desugar_program(ins.program, DesugarOptions{/*include_preamble=*/false});
    TypecheckResult tc = typecheck_closed(core);
    if (!tc.ok) {
        report.certified = false;
        report.reason = tc.rule;
        report.failed_rule = tc.rule;
        if (tc.offending) {
            report.core_text = print_expr(*tc.offending);
            report.span = tc.offending->span;
        }
        return report;
    }
    report.certified = true;
    return report;
}

SafetyReport check_subset_source(const std::string& source) {
    return check_subset(js::parse(source));
}

std::vector<FormCheck> per_form_context_check() {
    // One placeholder instance per surface production, wrapped in a function
    // binding the placeholders; `with` is excluded from the sub-language
    // rather than swept.
    static const std::pair<const char*, const char*> kForms[] = {
        {"number-literal", "1"},
        {"string-literal", "\"s\""},
        {"boolean-literal", "true"},
        {"null-literal", "null"},
        {"identifier", "x"},
        {"this", "this"},
        {"object-literal", "{ \"a\": x, \"b\": y }"},
        {"array-literal", "[x, y]"},
        {"function-expr", "function (w) { return x }"},
        {"member-dot", "x.foo"},
        {"member-dot-xhr", "x.XMLHttpRequest"},
        {"member-bracket", "x[y]"},
        {"call", "x(y)"},
        {"method-call", "x.m(y)"},
        {"new", "new x(y)"},
        {"assign-ident", "x = y"},
        {"assign-member", "x[y] = z"},
        {"compound-assign-ident", "x += y"},
        {"preinc-ident", "++x"},
        {"postinc-ident", "x++"},
        {"predec-ident", "--x"},
        {"postdec-ident", "x--"},
        {"preinc-member", "++x[y]"},
        {"postinc-member", "x[y]++"},
        {"predec-member", "--x[y]"},
        {"postdec-member", "x[y]--"},
        {"typeof", "typeof x"},
        {"not", "!x"},
        {"negate", "-x"},
        {"delete-member", "delete x[y]"},
        {"delete-ident", "delete x"},
        {"add", "x + y"},
        {"sub", "x - y"},
        {"mul", "x * y"},
        {"div", "x / y"},
        {"mod", "x % y"},
        {"lt", "x < y"},
        {"le", "x <= y"},
        {"gt", "x > y"},
        {"ge", "x >= y"},
        {"loose-eq", "x == y"},
        {"loose-ne", "x != y"},
        {"strict-eq", "x === y"},
        {"strict-ne", "x !== y"},
        {"logical-and", "x && y"},
        {"logical-or", "x || y"},
        {"in", "x in y"},
        {"instanceof", "x instanceof y"},
        {"conditional", "x ? y : z"},
        {"comma", "(x, y)"},
        {"var-stmt", "var v = x;"},
        {"if-stmt", "if (x) { y; } else { z; }"},
        {"while-stmt", "while (x) { y; }"},
        {"dowhile-stmt", "do { x; } while (y)"},
        {"for-stmt", "for (v = x; y; v = z) { w; }"},
        {"forin-stmt", "for (v in x) { y; }"},
        {"return-stmt", "return x;"},
        {"break-stmt", "while (x) { break; }"},
        {"continue-stmt", "while (x) { continue; }"},
        {"labeled-stmt", "lbl: { x; }"},
        {"try-catch-stmt", "try { x; } catch (err) { y; }"},
        {"try-finally-stmt", "try { x; } finally { y; }"},
        {"throw-stmt", "throw x;"},
        {"switch-stmt", "switch (x) { case y: z; break; default: w; }"},
        {"block-stmt", "{ x; y; }"},
        {"funcdecl-stmt", "function g(w) { return x }"},
    };

    std::vector<FormCheck> out;
    for (const auto& [name, body] : kForms) {
        // Statement forms carry their own structure; expression forms are
        // parenthesized so `function`/`{` starts stay expressions.
        js::Program prog;
        try {
            prog = js::parse(std::string("var f = function(x, y, z) { ") + body + " };");
        } catch (const js::ParseError&) {
            prog = js::parse(std::string("var f = function(x, y, z) { (") + body + "); };");
        }
        assert(js::validate(prog).empty());
        ExprPtr core = desugar_program(prog, DesugarOptions{false});
        TypecheckResult tc = typecheck_closed(core);
        out.push_back({name, tc.ok});
    }
    return out;
}

}  // namespace ljs
