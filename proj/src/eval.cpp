#include "ljs/eval.hpp"

#include <cassert>

#include "ljs/delta.hpp"
#include "ljs/print.hpp"
#include "ljs/subst.hpp"

namespace ljs {

bool is_f_frame(const ContextFrame& f) {
    // F = E′ | label:{F} | break label F — everything but try bodies.
    if (f.node->is<TryCatchExpr>() && f.slot == 0) return false;
    if (f.node->is<TryFinallyExpr>() && f.slot == 0) return false;
    return true;
}

bool is_g_frame(const ContextFrame& f) {
    // G = E′ | try { G } catch — no label, break, or finally frames.
    if (f.node->is<LabelExpr>()) return false;
    if (f.node->is<BreakExpr>()) return false;
    if (f.node->is<TryFinallyExpr>() && f.slot == 0) return false;
    return true;
}

namespace {

// Returns the slot of the leftmost non-value child that is an evaluation
// hole of this node, or -1 when the node is itself the next redex.
int hole_slot(const Expr& e) {
    if (const auto* let = e.as<LetExpr>()) return is_value(*let->bound) ? -1 : 0;
    if (const auto* app = e.as<AppExpr>()) {
        if (!is_value(*app->fn)) return 0;
        for (size_t i = 0; i < app->args.size(); ++i) {
            if (!is_value(*app->args[i])) return static_cast<int>(i) + 1;
        }
        return -1;
    }
    if (const auto* obj = e.as<ObjectExpr>()) {
        for (size_t i = 0; i < obj->fields.size(); ++i) {
            if (!is_value(*obj->fields[i].second)) return static_cast<int>(i);
        }
        return -1;  // object of values is a value; callers exclude that case
    }
    if (const auto* g = e.as<GetFieldExpr>()) {
        if (!is_value(*g->object)) return 0;
        if (!is_value(*g->field)) return 1;
        return -1;
    }
    if (const auto* u = e.as<UpdateFieldExpr>()) {
        if (!is_value(*u->object)) return 0;
        if (!is_value(*u->field)) return 1;
        if (!is_value(*u->value)) return 2;
        return -1;
    }
    if (const auto* d = e.as<DeleteFieldExpr>()) {
        if (!is_value(*d->object)) return 0;
        if (!is_value(*d->field)) return 1;
        return -1;
    }
    if (const auto* r = e.as<RefExpr>()) return is_value(*r->init) ? -1 : 0;
    if (const auto* d = e.as<DerefExpr>()) return is_value(*d->target) ? -1 : 0;
    if (const auto* s = e.as<SetRefExpr>()) {
        if (!is_value(*s->target)) return 0;
        if (!is_value(*s->value)) return 1;
        return -1;
    }
    if (const auto* i = e.as<IfExpr>()) return is_value(*i->cond) ? -1 : 0;
    if (const auto* s = e.as<SeqExpr>()) return is_value(*s->first) ? -1 : 0;
    if (e.is<WhileExpr>()) return -1;  // E-While fires without evaluating anything
    if (const auto* l = e.as<LabelExpr>()) return is_value(*l->body) ? -1 : 0;
    if (const auto* b = e.as<BreakExpr>()) return is_value(*b->value) ? -1 : 0;
    if (const auto* t = e.as<TryCatchExpr>()) return is_value(*t->body) ? -1 : 0;
    if (const auto* t = e.as<TryFinallyExpr>()) return is_value(*t->body) ? -1 : 0;
    if (const auto* t = e.as<ThrowExpr>()) return is_value(*t->value) ? -1 : 0;
    if (const auto* p = e.as<PrimExpr>()) {
        for (size_t i = 0; i < p->args.size(); ++i) {
            if (!is_value(*p->args[i])) return static_cast<int>(i);
        }
        return -1;
    }
    // Id, Const, Func, Loc, Err: nothing to descend into.
    return -1;
}

}  // namespace

Decomposition decompose(const ExprPtr& e) {
    Decomposition d;
    if (is_value(*e)) {
        d.kind = Decomposition::Kind::AlreadyValue;
        return d;
    }
    ExprPtr cur = e;
    for (;;) {
        if (const auto* err = cur->as<ErrExpr>()) {
            if (is_value(*err->value)) {
                d.kind = Decomposition::Kind::ErrJump;
                break;
            }
            d.kind = Decomposition::Kind::NoRedex;  // malformed err payload
            break;
        }
        if (const auto* brk = cur->as<BreakExpr>()) {
            if (is_value(*brk->value)) {
                d.kind = Decomposition::Kind::BreakJump;
                break;
            }
            // fall through: descend into the break's value hole
        }
        int slot = hole_slot(*cur);
        if (slot < 0) {
            d.kind = Decomposition::Kind::Redex;
            break;
        }
        d.frames.push_back(ContextFrame{cur, slot});
        cur = get_child(*cur, slot);
    }
    d.redex = cur;
    d.f_context = true;
    d.g_context = true;
    for (const auto& f : d.frames) {
        if (!is_f_frame(f)) d.f_context = false;
        if (!is_g_frame(f)) d.g_context = false;
    }
    return d;
}

ExprPtr plug(const std::vector<ContextFrame>& frames, size_t n, ExprPtr inner) {
    assert(n <= frames.size());
    ExprPtr out = std::move(inner);
    for (size_t i = n; i-- > 0;) {
        out = replace_child(*frames[i].node, frames[i].slot, std::move(out));
    }
    return out;
}

ExprPtr print_code_value() {
    static const ExprPtr code = make_func({"%this", "%printarg"}, make_undefined());
    return code;
}

bool is_print_code(const Expr& fn) {
    return expr_equal(fn, *print_code_value());
}

namespace {

// Error objects live in the store so desugared handlers can read their
// fields like any other object.
ExprPtr runtime_error(Store& store, const std::string& message) {
    Location l = store.alloc(make_error_value("TypeError", message));
    return make_err(make_loc(l));
}

struct Contraction {
    ExprPtr result;
    const char* rule;
};

// The ↪ rules plus the store rules, on an already-decomposed redex.
// Store effects are applied in place.
Contraction contract(const ExprPtr& redex, Store& store, const StepOptions& opts) {
    const Expr& e = *redex;

    if (const auto* let = e.as<LetExpr>()) {
        return {substitute(let->body, let->name, let->bound), "E-Let"};
    }
    if (const auto* app = e.as<AppExpr>()) {
        const auto* fn = app->fn->as<FuncExpr>();
        if (!fn) return {runtime_error(store, "applied a non-function"), "E-App-NotFunction"};
        if (is_print_code(*app->fn)) {
            if (app->args.size() == 2) {
                if (opts.output) {
                    *opts.output += display_value(*app->args[1]);
                    *opts.output += '\n';
                }
                return {make_undefined(), "E-Print"};
            }
            return {runtime_error(store, "print expects one argument"), "E-App-Arity"};
        }
        if (fn->params.size() != app->args.size()) {
            return {runtime_error(store, "arity mismatch: expected " +
                                   std::to_string(fn->params.size()) + " arguments, got " +
                                   std::to_string(app->args.size())),
                    "E-App-Arity"};
        }
        std::map<std::string, ExprPtr> subst;
        for (size_t i = 0; i < fn->params.size(); ++i) subst.emplace(fn->params[i], app->args[i]);
        return {substitute_many(fn->body, subst), "E-App"};
    }
    if (const auto* get = e.as<GetFieldExpr>()) {
        const auto* obj = get->object->as<ObjectExpr>();
        if (!obj) return {runtime_error(store, "field lookup on a non-object"), "E-GetField-NotObject"};
        const auto* f = get->field->as<ConstExpr>();
        if (!f || !f->value.is(Constant::Kind::String)) {
            return {runtime_error(store, "field name is not a string"), "E-GetField-NotString"};
        }
        const std::string& name = f->value.as_string();
        const ExprPtr* proto = nullptr;
        for (const auto& [k, v] : obj->fields) {
            if (k == name) return {v, "E-GetField"};
            if (k == "__proto__") proto = &v;
        }
        if (!proto) return {make_undefined(), "E-GetField-NotFound"};
        if ((*proto)->is<ConstExpr>() &&
            (*proto)->as<ConstExpr>()->value.is(Constant::Kind::Null)) {
            return {make_undefined(), "E-GetField-Proto-Null"};
        }
        if ((*proto)->is<LocExpr>()) {
            return {make_get(make_deref(*proto), get->field), "E-GetField-Proto"};
        }
        return {runtime_error(store, "__proto__ is neither null nor a location"),
                "E-GetField-BadProto"};
    }
    if (const auto* upd = e.as<UpdateFieldExpr>()) {
        const auto* obj = upd->object->as<ObjectExpr>();
        if (!obj) return {runtime_error(store, "field update on a non-object"), "E-UpdateField-NotObject"};
        const auto* f = upd->field->as<ConstExpr>();
        if (!f || !f->value.is(Constant::Kind::String)) {
            return {runtime_error(store, "field name is not a string"), "E-UpdateField-NotString"};
        }
        const std::string& name = f->value.as_string();
        for (size_t i = 0; i < obj->fields.size(); ++i) {
            if (obj->fields[i].first == name) {
                auto fields = obj->fields;
                fields[i].second = upd->value;
                return {make_object(std::move(fields)), "E-UpdateField"};
            }
        }
        // E-CreateField prepends the new field.
        std::vector<std::pair<std::string, ExprPtr>> fields;
        fields.reserve(obj->fields.size() + 1);
        fields.emplace_back(name, upd->value);
        fields.insert(fields.end(), obj->fields.begin(), obj->fields.end());
        return {make_object(std::move(fields)), "E-CreateField"};
    }
    if (const auto* del = e.as<DeleteFieldExpr>()) {
        const auto* obj = del->object->as<ObjectExpr>();
        if (!obj) return {runtime_error(store, "field delete on a non-object"), "E-DeleteField-NotObject"};
        const auto* f = del->field->as<ConstExpr>();
        if (!f || !f->value.is(Constant::Kind::String)) {
            return {runtime_error(store, "field name is not a string"), "E-DeleteField-NotString"};
        }
        const std::string& name = f->value.as_string();
        for (size_t i = 0; i < obj->fields.size(); ++i) {
            if (obj->fields[i].first == name) {
                auto fields = obj->fields;
                fields.erase(fields.begin() + static_cast<long>(i));
                return {make_object(std::move(fields)), "E-DeleteField"};
            }
        }
        return {del->object, "E-DeleteField-NotFound"};
    }
    if (const auto* ref = e.as<RefExpr>()) {
        Location l = store.alloc(ref->init);
        return {make_loc(l), "E-Ref"};
    }
    if (const auto* deref = e.as<DerefExpr>()) {
        const auto* loc = deref->target->as<LocExpr>();
        if (!loc) return {runtime_error(store, "deref of a non-location"), "E-Deref-NotLocation"};
        const ExprPtr* v = store.lookup(loc->loc);
        if (!v) return {runtime_error(store, "deref of an unallocated location"), "E-Deref-Dangling"};
        return {*v, "E-Deref"};
    }
    if (const auto* set = e.as<SetRefExpr>()) {
        const auto* loc = set->target->as<LocExpr>();
        if (!loc) return {runtime_error(store, "assignment to a non-location"), "E-SetRef-NotLocation"};
        if (!store.contains(loc->loc)) {
            return {runtime_error(store, "assignment to an unallocated location"), "E-SetRef-Dangling"};
        }
        store.set(loc->loc, set->value);
        return {set->value, "E-SetRef"};
    }
    if (const auto* ife = e.as<IfExpr>()) {
        const auto* c = ife->cond->as<ConstExpr>();
        if (c && c->value.is(Constant::Kind::Boolean)) {
            return c->value.as_boolean() ? Contraction{ife->then_branch, "E-IfTrue"}
                                         : Contraction{ife->else_branch, "E-IfFalse"};
        }
        return {runtime_error(store, "if condition is not a boolean"), "E-If-NotBoolean"};
    }
    if (const auto* seq = e.as<SeqExpr>()) {
        return {seq->rest, "E-Begin-Discard"};
    }
    if (const auto* wh = e.as<WhileExpr>()) {
        return {make_if(wh->cond, make_seq(wh->body, redex), make_undefined()), "E-While"};
    }
    if (const auto* lab = e.as<LabelExpr>()) {
        return {lab->body, "E-Label-Pop"};  // body is a value here
    }
    if (const auto* tc = e.as<TryCatchExpr>()) {
        return {tc->body, "E-Catch-Pop"};  // body is a value here
    }
    if (const auto* tf = e.as<TryFinallyExpr>()) {
        return {make_seq(tf->finalizer, tf->body), "E-Finally-Pop"};
    }
    if (const auto* th = e.as<ThrowExpr>()) {
        return {make_err(th->value), "E-Throw"};
    }
    if (const auto* prim = e.as<PrimExpr>()) {
        DeltaResult r = delta(prim->op, prim->args);
        if (r.constant) return {make_const(*r.constant), "E-Prim"};
        // delta stays heap-free; the evaluator boxes the error payload.
        Location l = store.alloc(r.error);
        return {make_err(make_loc(l)), "E-Prim-Err"};
    }
    if (e.is<IdExpr>()) {
        return {runtime_error(store, "unbound identifier: " + e.as<IdExpr>()->name), "E-UnboundId"};
    }
    return {nullptr, "no-rule"};
}

}  // namespace

StepResult step(Configuration config, const StepOptions& opts) {
    StepResult res;

    if (is_value(*config.expr)) {
        res.done = true;
        res.outcome.kind = Outcome::Kind::Value;
        res.outcome.value = config.expr;
        res.rule = "value";
        return res;
    }
    // Terminal err / break configurations.
    if (const auto* err = config.expr->as<ErrExpr>()) {
        if (is_value(*err->value)) {
            res.done = true;
            res.outcome.kind = Outcome::Kind::UncaughtError;
            res.outcome.value = err->value;
            res.outcome.remainder = config;
            res.rule = "uncaught";
            return res;
        }
    }
    if (const auto* brk = config.expr->as<BreakExpr>()) {
        if (is_value(*brk->value)) {
            res.done = true;
            res.outcome.kind = Outcome::Kind::TopLevelBreak;
            res.outcome.value = brk->value;
            res.outcome.label = brk->label;
            res.outcome.remainder = config;
            res.rule = "top-level-break";
            return res;
        }
    }

    Decomposition d = decompose(config.expr);
    Store store = std::move(config.store);
    ExprPtr next;
    std::string rule;

    switch (d.kind) {
        case Decomposition::Kind::AlreadyValue:
            assert(false && "handled above");
            break;
        case Decomposition::Kind::NoRedex: {
            res.done = true;
            res.outcome.kind = Outcome::Kind::Stuck;
            res.outcome.reason = "no rule applies";
            res.outcome.remainder = Configuration{std::move(store), config.expr};
            res.rule = "stuck";
            return res;
        }
        case Decomposition::Kind::Redex: {
            Contraction c = contract(d.redex, store, opts);
            if (!c.result) {
                res.done = true;
                res.outcome.kind = Outcome::Kind::Stuck;
                res.outcome.reason = "no rule applies";
                res.outcome.remainder = Configuration{std::move(store), config.expr};
                res.rule = "stuck";
                return res;
            }
            next = plug(d.frames, d.frames.size(), c.result);
            rule = c.rule;
            break;
        }
        case Decomposition::Kind::ErrJump: {
            // Nearest non-F frame decides; everything below it is an F-context.
            size_t i = d.frames.size();
            while (i > 0 && is_f_frame(d.frames[i - 1])) --i;
            if (i == 0) {
                next = d.redex;  // E-Uncaught-Exception: σ F⟨err v⟩ → σ err v
                rule = "E-Uncaught-Exception";
            } else {
                const ContextFrame& fr = d.frames[i - 1];
                const ExprPtr payload = d.redex->as<ErrExpr>()->value;
                if (const auto* tc = fr.node->as<TryCatchExpr>()) {
                    next = plug(d.frames, i - 1, substitute(tc->handler, tc->binder, payload));
                    rule = "E-Catch";
                } else {
                    const auto* tf = fr.node->as<TryFinallyExpr>();
                    assert(tf);
                    next = plug(d.frames, i - 1, make_seq(tf->finalizer, d.redex));
                    rule = "E-Finally-Error";
                }
            }
            break;
        }
        case Decomposition::Kind::BreakJump: {
            size_t i = d.frames.size();
            while (i > 0 && is_g_frame(d.frames[i - 1])) --i;
            const auto* brk = d.redex->as<BreakExpr>();
            if (i == 0) {
                next = d.redex;  // Err-Break-Reduction: σ G⟨break l v⟩ → σ break l v
                rule = "Err-Break-Reduction";
            } else {
                const ContextFrame& fr = d.frames[i - 1];
                if (const auto* lab = fr.node->as<LabelExpr>()) {
                    if (lab->label == brk->label) {
                        next = plug(d.frames, i - 1, brk->value);
                        rule = "E-Break";
                    } else {
                        next = plug(d.frames, i - 1, d.redex);
                        rule = "E-Break-Pop";
                    }
                } else if (fr.node->is<BreakExpr>()) {
                    next = plug(d.frames, i - 1, d.redex);
                    rule = "E-Break-Break";
                } else {
                    const auto* tf = fr.node->as<TryFinallyExpr>();
                    assert(tf);
                    next = plug(d.frames, i - 1, make_seq(tf->finalizer, d.redex));
                    rule = "E-Finally-Break";
                }
            }
            break;
        }
    }

    res.done = false;
    res.next = Configuration{std::move(store), std::move(next)};
    res.rule = rule;
    if (opts.check_well_formed) {
        auto wf = check_well_formed(res.next.store, *res.next.expr);
        if (!wf.ok) {
            res.done = true;
            res.outcome.kind = Outcome::Kind::Stuck;
            res.outcome.reason = "well-formedness lost after " + rule + ": " + wf.reason;
            res.outcome.remainder = res.next;
            res.rule = "stuck";
        }
    }
    return res;
}

EvalResult eval(Configuration config, uint64_t fuel, const StepOptions& opts) {
    EvalResult out;
    for (uint64_t i = 0; i < fuel; ++i) {
        StepResult r = step(std::move(config), opts);
        if (r.done) {
            out.outcome = std::move(r.outcome);
            out.steps = i;
            return out;
        }
        config = std::move(r.next);
    }
    out.outcome.kind = Outcome::Kind::FuelExhausted;
    out.outcome.remainder = std::move(config);
    out.steps = fuel;
    return out;
}

TraceResult trace(Configuration config, uint64_t fuel, const StepOptions& opts) {
    TraceResult out;
    out.states.push_back(config);
    for (uint64_t i = 0; i < fuel; ++i) {
        StepResult r = step(std::move(config), opts);
        if (r.done) {
            out.outcome = std::move(r.outcome);
            return out;
        }
        config = std::move(r.next);
        out.states.push_back(config);
    }
    out.outcome.kind = Outcome::Kind::FuelExhausted;
    out.outcome.remainder = std::move(config);
    return out;
}

}  // namespace ljs
