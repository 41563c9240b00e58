#include "generators.hpp"

#include <cassert>
#include <cmath>

namespace ljs::testgen {

namespace {

int pick(Rng& rng, int n) { return static_cast<int>(rng() % static_cast<uint64_t>(n)); }

std::string pick_name(Rng& rng, const std::vector<std::string>& pool) {
    return pool[static_cast<size_t>(pick(rng, static_cast<int>(pool.size())))];
}

const std::vector<std::string> kNames = {"a", "b", "c", "x", "y", "z"};
const std::vector<std::string> kLabels = {"l0", "l1", "l2"};
const std::vector<std::string> kKeys = {"k", "m", "n", "p"};

Constant gen_constant(Rng& rng) {
    switch (pick(rng, 8)) {
        case 0: return Constant::number(static_cast<double>(pick(rng, 21) - 10));
        case 1: return Constant::number(0.5 * pick(rng, 7));
        case 2: return Constant::number(std::nan(""));
        case 3: return Constant::string("s" + std::to_string(pick(rng, 4)));
        case 4: return Constant::string("");
        case 5: return Constant::boolean(pick(rng, 2) == 0);
        case 6: return Constant::undefined();
        default: return Constant::null();
    }
}

struct ExprGenCtx {
    Store* store;
    std::vector<std::string> bound;
    std::vector<std::string> labels;
};

ExprPtr gen_expr(Rng& rng, ExprGenCtx& ctx, int depth);

ExprPtr gen_value_inner(Rng& rng, Store& store, int depth) {
    int roll = pick(rng, depth <= 0 ? 4 : 10);
    switch (roll) {
        case 0:
        case 1:
        case 2:
            return make_const(gen_constant(rng));
        case 3: {
            // A location, when the store has one.
            if (store.size() > 0) {
                uint64_t idx = rng() % store.next_id();
                if (store.contains(Location{idx})) return make_loc(Location{idx});
            }
            return make_const(gen_constant(rng));
        }
        case 4:
        case 5: {
            // Object of values, distinct keys.
            std::vector<std::pair<std::string, ExprPtr>> fields;
            int n = pick(rng, 3);
            for (int i = 0; i < n; ++i) {
                fields.emplace_back(kKeys[static_cast<size_t>(i)],
                                    gen_value_inner(rng, store, depth - 1));
            }
            return make_object(std::move(fields));
        }
        default: {
            // Closed function.
            std::vector<std::string> params;
            int n = 1 + pick(rng, 2);
            for (int i = 0; i < n; ++i) params.push_back(kNames[static_cast<size_t>(i)]);
            ExprGenCtx inner{&store, params, {}};
            return make_func(params, gen_expr(rng, inner, depth - 1));
        }
    }
}

ExprPtr gen_expr(Rng& rng, ExprGenCtx& ctx, int depth) {
    if (depth <= 0) {
        if (!ctx.bound.empty() && pick(rng, 3) == 0) {
            return make_id(pick_name(rng, ctx.bound));
        }
        return make_const(gen_constant(rng));
    }
    switch (pick(rng, 24)) {
        case 0:
            return make_const(gen_constant(rng));
        case 1:
            if (!ctx.bound.empty()) return make_id(pick_name(rng, ctx.bound));
            return make_const(gen_constant(rng));
        case 2: {
            std::string name = pick_name(rng, kNames);
            ExprPtr bound = gen_expr(rng, ctx, depth - 1);
            ctx.bound.push_back(name);
            ExprPtr body = gen_expr(rng, ctx, depth - 1);
            ctx.bound.pop_back();
            return make_let(name, std::move(bound), std::move(body));
        }
        case 3: {
            // Application; the callee is often a literal function so E-App
            // actually fires.
            int argc = pick(rng, 3);
            std::vector<ExprPtr> args;
            for (int i = 0; i < argc; ++i) args.push_back(gen_expr(rng, ctx, depth - 1));
            ExprPtr fn;
            if (pick(rng, 2) == 0) {
                std::vector<std::string> params;
                for (int i = 0; i < argc; ++i) params.push_back(kNames[static_cast<size_t>(i)]);
                ExprGenCtx inner{ctx.store, params, {}};
                fn = make_func(params, gen_expr(rng, inner, depth - 1));
            } else {
                fn = gen_expr(rng, ctx, depth - 1);
            }
            return make_app(std::move(fn), std::move(args));
        }
        case 4: {
            std::vector<std::pair<std::string, ExprPtr>> fields;
            int n = pick(rng, 3);
            for (int i = 0; i < n; ++i) {
                fields.emplace_back(kKeys[static_cast<size_t>(i)],
                                    gen_expr(rng, ctx, depth - 1));
            }
            return make_object(std::move(fields));
        }
        case 5: {
            ExprPtr obj = gen_expr(rng, ctx, depth - 1);
            ExprPtr field = pick(rng, 2) == 0
                                ? make_string(pick_name(rng, kKeys))
                                : gen_expr(rng, ctx, depth - 1);
            return make_get(std::move(obj), std::move(field));
        }
        case 6:
            return make_update(gen_expr(rng, ctx, depth - 1),
                               make_string(pick_name(rng, kKeys)),
                               gen_expr(rng, ctx, depth - 1));
        case 7:
            return make_delete(gen_expr(rng, ctx, depth - 1),
                               make_string(pick_name(rng, kKeys)));
        case 8:
            return make_ref(gen_expr(rng, ctx, depth - 1));
        case 9:
            return make_deref(gen_expr(rng, ctx, depth - 1));
        case 10:
            return make_setref(gen_expr(rng, ctx, depth - 1), gen_expr(rng, ctx, depth - 1));
        case 11: {
            // Boolean-ish condition most of the time so both branches get
            // exercised rather than erring immediately.
            ExprPtr cond = pick(rng, 3) == 0
                               ? gen_expr(rng, ctx, depth - 1)
                               : make_prim(PrimOp::ToBool, {gen_expr(rng, ctx, depth - 1)});
            return make_if(std::move(cond), gen_expr(rng, ctx, depth - 1),
                           gen_expr(rng, ctx, depth - 1));
        }
        case 12:
            return make_seq(gen_expr(rng, ctx, depth - 1), gen_expr(rng, ctx, depth - 1));
        case 13: {
            // Loops: mostly false conditions; the fuel cap catches the rest.
            ExprPtr cond = pick(rng, 4) == 0
                               ? make_prim(PrimOp::ToBool, {gen_expr(rng, ctx, depth - 1)})
                               : make_boolean(false);
            return make_while(std::move(cond), gen_expr(rng, ctx, depth - 1));
        }
        case 14: {
            std::string label = pick_name(rng, kLabels);
            ctx.labels.push_back(label);
            ExprPtr body = gen_expr(rng, ctx, depth - 1);
            ctx.labels.pop_back();
            return make_label(label, std::move(body));
        }
        case 15: {
            // Break, usually to a label in scope; a stray label is a valid
            // top-level break outcome.
            std::string label = !ctx.labels.empty() && pick(rng, 4) != 0
                                    ? pick_name(rng, ctx.labels)
                                    : pick_name(rng, kLabels);
            return make_break(label, gen_expr(rng, ctx, depth - 1));
        }
        case 16: {
            std::string binder = pick_name(rng, kNames);
            ExprPtr body = gen_expr(rng, ctx, depth - 1);
            ctx.bound.push_back(binder);
            ExprPtr handler = gen_expr(rng, ctx, depth - 1);
            ctx.bound.pop_back();
            return make_trycatch(std::move(body), binder, std::move(handler));
        }
        case 17:
            return make_tryfinally(gen_expr(rng, ctx, depth - 1),
                                   gen_expr(rng, ctx, depth - 1));
        case 18:
            return make_throw(gen_expr(rng, ctx, depth - 1));
        case 19:
        case 20: {
            static const PrimOp unary[] = {PrimOp::ToBool, PrimOp::TypeOf, PrimOp::IsLoc,
                                           PrimOp::NumToStr, PrimOp::StrToNum, PrimOp::Floor,
                                           PrimOp::IsNaN, PrimOp::FieldNames,
                                           PrimOp::FirstField};
            PrimOp op = unary[static_cast<size_t>(pick(rng, 9))];
            return make_prim(op, {gen_expr(rng, ctx, depth - 1)});
        }
        case 21:
        case 22: {
            static const PrimOp binary[] = {PrimOp::Add, PrimOp::Sub, PrimOp::Mul,
                                            PrimOp::Div, PrimOp::Mod, PrimOp::StrCat,
                                            PrimOp::Lt, PrimOp::Le, PrimOp::Gt, PrimOp::Ge,
                                            PrimOp::StxEq, PrimOp::HasOwnField};
            PrimOp op = binary[static_cast<size_t>(pick(rng, 12))];
            return make_prim(op,
                             {gen_expr(rng, ctx, depth - 1), gen_expr(rng, ctx, depth - 1)});
        }
        default: {
            ExprGenCtx value_ctx{ctx.store, {}, {}};
            (void)value_ctx;
            return gen_value_inner(rng, *ctx.store, depth - 1);
        }
    }
}

}  // namespace

ExprPtr gen_value(Rng& rng, Store& store, int depth) {
    return gen_value_inner(rng, store, depth);
}

Configuration gen_configuration(Rng& rng, int max_depth) {
    Configuration config;
    int cells = pick(rng, 4);
    for (int i = 0; i < cells; ++i) {
        config.store.alloc(gen_value_inner(rng, config.store, 2));
    }
    ExprGenCtx ctx{&config.store, {}, {}};
    config.expr = gen_expr(rng, ctx, max_depth);
    return config;
}

// ---- independent split enumeration ----

namespace {

bool oracle_is_value(const Expr& e) { return is_value(e); }

// Whether `slot` is an evaluation hole of `e` given the values to its left,
// read off the context grammars.
bool slot_is_hole(const Expr& e, int slot) {
    if (const auto* let = e.as<LetExpr>()) {
        (void)let;
        return slot == 0;
    }
    if (const auto* app = e.as<AppExpr>()) {
        if (slot == 0) return true;
        if (!oracle_is_value(*app->fn)) return false;
        for (int i = 0; i < slot - 1; ++i) {
            if (!oracle_is_value(*app->args[static_cast<size_t>(i)])) return false;
        }
        return true;
    }
    if (const auto* obj = e.as<ObjectExpr>()) {
        for (int i = 0; i < slot; ++i) {
            if (!oracle_is_value(*obj->fields[static_cast<size_t>(i)].second)) return false;
        }
        return true;
    }
    if (const auto* g = e.as<GetFieldExpr>()) {
        return slot == 0 || oracle_is_value(*g->object);
    }
    if (const auto* u = e.as<UpdateFieldExpr>()) {
        if (slot == 0) return true;
        if (!oracle_is_value(*u->object)) return false;
        if (slot == 1) return true;
        return oracle_is_value(*u->field);
    }
    if (const auto* d = e.as<DeleteFieldExpr>()) {
        return slot == 0 || oracle_is_value(*d->object);
    }
    if (e.is<RefExpr>() || e.is<DerefExpr>() || e.is<ThrowExpr>()) return slot == 0;
    if (const auto* s = e.as<SetRefExpr>()) {
        return slot == 0 || oracle_is_value(*s->target);
    }
    if (e.is<IfExpr>() || e.is<SeqExpr>()) return slot == 0;
    if (e.is<LabelExpr>() || e.is<BreakExpr>()) return slot == 0;
    if (e.is<TryCatchExpr>() || e.is<TryFinallyExpr>()) return slot == 0;
    if (const auto* p = e.as<PrimExpr>()) {
        for (int i = 0; i < slot; ++i) {
            if (!oracle_is_value(*p->args[static_cast<size_t>(i)])) return false;
        }
        return true;
    }
    return false;  // While, Err, and leaves have no holes
}

// Contraction-redex shapes, re-derived from the rule list.
bool oracle_is_redex(const Expr& e) {
    if (oracle_is_value(e)) return false;
    if (const auto* let = e.as<LetExpr>()) return oracle_is_value(*let->bound);
    if (const auto* app = e.as<AppExpr>()) {
        if (!oracle_is_value(*app->fn)) return false;
        for (const auto& a : app->args) {
            if (!oracle_is_value(*a)) return false;
        }
        return true;
    }
    if (const auto* g = e.as<GetFieldExpr>()) {
        return oracle_is_value(*g->object) && oracle_is_value(*g->field);
    }
    if (const auto* u = e.as<UpdateFieldExpr>()) {
        return oracle_is_value(*u->object) && oracle_is_value(*u->field) &&
               oracle_is_value(*u->value);
    }
    if (const auto* d = e.as<DeleteFieldExpr>()) {
        return oracle_is_value(*d->object) && oracle_is_value(*d->field);
    }
    if (const auto* r = e.as<RefExpr>()) return oracle_is_value(*r->init);
    if (const auto* d = e.as<DerefExpr>()) return oracle_is_value(*d->target);
    if (const auto* s = e.as<SetRefExpr>()) {
        return oracle_is_value(*s->target) && oracle_is_value(*s->value);
    }
    if (const auto* i = e.as<IfExpr>()) return oracle_is_value(*i->cond);
    if (const auto* s = e.as<SeqExpr>()) return oracle_is_value(*s->first);
    if (e.is<WhileExpr>()) return true;
    if (const auto* l = e.as<LabelExpr>()) return oracle_is_value(*l->body);
    if (const auto* t = e.as<TryCatchExpr>()) return oracle_is_value(*t->body);
    if (const auto* t = e.as<TryFinallyExpr>()) return oracle_is_value(*t->body);
    if (const auto* t = e.as<ThrowExpr>()) return oracle_is_value(*t->value);
    if (const auto* p = e.as<PrimExpr>()) {
        for (const auto& a : p->args) {
            if (!oracle_is_value(*a)) return false;
        }
        return true;
    }
    if (e.is<IdExpr>()) return true;  // unbound-identifier error rule
    return false;                     // Break/Err handled as jumps
}

struct Frame {
    const Expr* node;
    int slot;
};

void enumerate(const Expr& e, std::vector<Frame>& spine, std::vector<int>& path,
               std::vector<OracleSplit>& out) {
    if (oracle_is_redex(e)) out.push_back({path, "contract"});

    if (const auto* err = e.as<ErrExpr>(); err && oracle_is_value(*err->value)) {
        // Anchor at the nearest try frame; every frame on the way must admit
        // an exception context (all frames do except try bodies, which are
        // the anchors themselves).
        bool anchored = false;
        for (size_t i = spine.size(); i-- > 0;) {
            bool is_try_body =
                (spine[i].node->is<TryCatchExpr>() || spine[i].node->is<TryFinallyExpr>()) &&
                spine[i].slot == 0;
            if (is_try_body) {
                out.push_back({std::vector<int>(path.begin(), path.begin() + i), "err-at-try"});
                anchored = true;
                break;
            }
        }
        if (!anchored && !spine.empty()) out.push_back({{}, "err-to-top"});
        // An err that IS the whole term is terminal, not a redex.
    }
    if (const auto* brk = e.as<BreakExpr>(); brk && oracle_is_value(*brk->value)) {
        bool anchored = false;
        for (size_t i = spine.size(); i-- > 0;) {
            bool non_g = spine[i].node->is<LabelExpr>() || spine[i].node->is<BreakExpr>() ||
                         (spine[i].node->is<TryFinallyExpr>() && spine[i].slot == 0);
            if (non_g) {
                out.push_back(
                    {std::vector<int>(path.begin(), path.begin() + i), "break-at-anchor"});
                anchored = true;
                break;
            }
        }
        if (!anchored && !spine.empty()) out.push_back({{}, "break-to-top"});
    }

    int n = child_count(e);
    for (int slot = 0; slot < n; ++slot) {
        if (!slot_is_hole(e, slot)) continue;
        ExprPtr child = get_child(e, slot);
        if (oracle_is_value(*child)) continue;  // holes hold non-values
        spine.push_back({&e, slot});
        path.push_back(slot);
        enumerate(*child, spine, path, out);
        path.pop_back();
        spine.pop_back();
    }
}

}  // namespace

std::vector<OracleSplit> oracle_splits(const ExprPtr& e) {
    std::vector<OracleSplit> out;
    std::vector<Frame> spine;
    std::vector<int> path;
    enumerate(*e, spine, path, out);
    return out;
}

// ---- surface program generator ----

namespace {

using js::ExprPtr;
using js::StmtPtr;

struct JsGenCtx {
    int fuel = 40;  // node budget
    int fn_depth = 0;
    int loop_depth = 0;
    std::vector<std::string> labels;
};

js::ExprPtr gen_js_expr(Rng& rng, JsGenCtx& ctx, int depth);
StmtPtr gen_js_stmt(Rng& rng, JsGenCtx& ctx, int depth);

js::ExprPtr gen_js_leaf(Rng& rng) {
    switch (pick(rng, 7)) {
        case 0: return js::make_expr(js::NumberLit{static_cast<double>(pick(rng, 10))});
        case 1: return js::make_expr(js::StringLit{"s" + std::to_string(pick(rng, 3))});
        case 2: return js::make_expr(js::BoolLit{pick(rng, 2) == 0});
        case 3: return js::make_expr(js::NullLit{});
        case 4: return js::make_expr(js::This{});
        default: return js::make_expr(js::Ident{pick_name(rng, kNames)});
    }
}

js::ExprPtr gen_js_expr(Rng& rng, JsGenCtx& ctx, int depth) {
    if (depth <= 0 || ctx.fuel-- <= 0) return gen_js_leaf(rng);
    switch (pick(rng, 16)) {
        case 0: {
            std::vector<std::pair<std::string, js::ExprPtr>> fields;
            int n = pick(rng, 3);
            for (int i = 0; i < n; ++i) {
                fields.emplace_back(kKeys[static_cast<size_t>(i)],
                                    gen_js_expr(rng, ctx, depth - 1));
            }
            return js::make_expr(js::ObjectLit{std::move(fields)});
        }
        case 1: {
            std::vector<js::ExprPtr> elems;
            int n = pick(rng, 3);
            for (int i = 0; i < n; ++i) elems.push_back(gen_js_expr(rng, ctx, depth - 1));
            return js::make_expr(js::ArrayLit{std::move(elems)});
        }
        case 2: {
            JsGenCtx inner = ctx;
            inner.fn_depth++;
            inner.loop_depth = 0;
            inner.labels.clear();
            std::vector<StmtPtr> body;
            int n = pick(rng, 3);
            for (int i = 0; i < n; ++i) body.push_back(gen_js_stmt(rng, inner, depth - 1));
            ctx.fuel = inner.fuel;
            return js::make_expr(js::FuncLit{"", {"a", "b"}, std::move(body)});
        }
        case 3:
            return js::make_expr(js::Member{gen_js_expr(rng, ctx, depth - 1),
                                            pick_name(rng, kKeys), nullptr});
        case 4:
            return js::make_expr(js::Member{gen_js_expr(rng, ctx, depth - 1), std::nullopt,
                                            gen_js_expr(rng, ctx, depth - 1)});
        case 5: {
            std::vector<js::ExprPtr> args;
            int n = pick(rng, 2);
            for (int i = 0; i < n; ++i) args.push_back(gen_js_expr(rng, ctx, depth - 1));
            return js::make_expr(js::Call{gen_js_expr(rng, ctx, depth - 1), std::move(args)});
        }
        case 6: {
            std::vector<js::ExprPtr> args;
            int n = pick(rng, 2);
            for (int i = 0; i < n; ++i) args.push_back(gen_js_expr(rng, ctx, depth - 1));
            return js::make_expr(js::New{gen_js_expr(rng, ctx, depth - 1), std::move(args)});
        }
        case 7: {
            js::ExprPtr target =
                pick(rng, 2) == 0
                    ? js::make_expr(js::Ident{pick_name(rng, kNames)})
                    : js::make_expr(js::Member{gen_js_leaf(rng), pick_name(rng, kKeys),
                                               nullptr});
            static const js::AssignOp ops[] = {js::AssignOp::Assign, js::AssignOp::AddAssign,
                                               js::AssignOp::SubAssign, js::AssignOp::MulAssign};
            js::AssignOp op = ops[static_cast<size_t>(pick(rng, 4))];
            if (target->is<js::Member>() && op != js::AssignOp::Assign) op = js::AssignOp::Assign;
            return js::make_expr(js::Assign{target, op, gen_js_expr(rng, ctx, depth - 1)});
        }
        case 8:
        case 9: {
            static const js::BinOp ops[] = {
                js::BinOp::Add, js::BinOp::Sub, js::BinOp::Mul, js::BinOp::Div,
                js::BinOp::Mod, js::BinOp::Lt, js::BinOp::Le, js::BinOp::Gt,
                js::BinOp::Ge, js::BinOp::Eq, js::BinOp::Ne, js::BinOp::StrictEq,
                js::BinOp::StrictNe, js::BinOp::And, js::BinOp::Or, js::BinOp::In,
                js::BinOp::Instanceof};
            js::BinOp op = ops[static_cast<size_t>(pick(rng, 17))];
            return js::make_expr(js::Binary{op, gen_js_expr(rng, ctx, depth - 1),
                                            gen_js_expr(rng, ctx, depth - 1)});
        }
        case 10: {
            static const js::UnOp ops[] = {js::UnOp::TypeOf, js::UnOp::Not, js::UnOp::Neg};
            return js::make_expr(
                js::Unary{ops[static_cast<size_t>(pick(rng, 3))],
                          gen_js_expr(rng, ctx, depth - 1)});
        }
        case 11: {
            js::ExprPtr target =
                pick(rng, 2) == 0
                    ? js::make_expr(js::Ident{pick_name(rng, kNames)})
                    : js::make_expr(js::Member{gen_js_leaf(rng), pick_name(rng, kKeys),
                                               nullptr});
            return js::make_expr(js::IncDec{pick(rng, 2) == 0, pick(rng, 2) == 0, target});
        }
        case 12:
            return js::make_expr(js::Cond{gen_js_expr(rng, ctx, depth - 1),
                                          gen_js_expr(rng, ctx, depth - 1),
                                          gen_js_expr(rng, ctx, depth - 1)});
        case 13:
            return js::make_expr(js::Comma{gen_js_expr(rng, ctx, depth - 1),
                                           gen_js_expr(rng, ctx, depth - 1)});
        case 14: {
            js::ExprPtr target = js::make_expr(
                js::Member{gen_js_leaf(rng), pick_name(rng, kKeys), nullptr});
            return js::make_expr(js::DeleteExpr{target});
        }
        default:
            return gen_js_leaf(rng);
    }
}

StmtPtr gen_js_stmt(Rng& rng, JsGenCtx& ctx, int depth) {
    if (depth <= 0 || ctx.fuel-- <= 0) {
        return js::make_stmt(js::ExprStmt{gen_js_leaf(rng)});
    }
    switch (pick(rng, 14)) {
        case 0: {
            js::VarDecl vd;
            vd.decls.emplace_back(pick_name(rng, kNames),
                                  pick(rng, 2) == 0 ? gen_js_expr(rng, ctx, depth - 1)
                                                    : nullptr);
            return js::make_stmt(std::move(vd));
        }
        case 1:
            return js::make_stmt(js::ExprStmt{gen_js_expr(rng, ctx, depth - 1)});
        case 2: {
            // Branches are wrapped in blocks: a bare elseless if in the then
            // position is not expressible in the concrete grammar (the else
            // would attach to it), and parse images never contain it.
            auto block_of = [](StmtPtr s) {
                js::BlockStmt b;
                b.body.push_back(std::move(s));
                return js::make_stmt(std::move(b));
            };
            StmtPtr then_branch = block_of(gen_js_stmt(rng, ctx, depth - 1));
            StmtPtr else_branch;
            if (pick(rng, 2) == 0) else_branch = block_of(gen_js_stmt(rng, ctx, depth - 1));
            return js::make_stmt(js::IfStmt{gen_js_expr(rng, ctx, depth - 1),
                                            std::move(then_branch),
                                            std::move(else_branch)});
        }
        case 3: {
            ctx.loop_depth++;
            StmtPtr body = gen_js_stmt(rng, ctx, depth - 1);
            ctx.loop_depth--;
            return js::make_stmt(js::WhileStmt{js::make_expr(js::BoolLit{false}), body});
        }
        case 4: {
            ctx.loop_depth++;
            StmtPtr body = gen_js_stmt(rng, ctx, depth - 1);
            ctx.loop_depth--;
            return js::make_stmt(
                js::DoWhileStmt{body, js::make_expr(js::BoolLit{false})});
        }
        case 5: {
            ctx.loop_depth++;
            StmtPtr body = gen_js_stmt(rng, ctx, depth - 1);
            ctx.loop_depth--;
            js::VarDecl vd;
            vd.decls.emplace_back(pick_name(rng, kNames),
                                  js::make_expr(js::NumberLit{0}));
            return js::make_stmt(js::ForStmt{js::make_stmt(std::move(vd)),
                                             js::make_expr(js::BoolLit{false}),
                                             gen_js_expr(rng, ctx, depth - 1), body});
        }
        case 6: {
            ctx.loop_depth++;
            StmtPtr body = gen_js_stmt(rng, ctx, depth - 1);
            ctx.loop_depth--;
            return js::make_stmt(js::ForInStmt{pick(rng, 2) == 0, pick_name(rng, kNames),
                                               gen_js_expr(rng, ctx, depth - 1), body});
        }
        case 7:
            if (ctx.fn_depth > 0) {
                return js::make_stmt(js::ReturnStmt{
                    pick(rng, 2) == 0 ? gen_js_expr(rng, ctx, depth - 1) : nullptr});
            }
            return js::make_stmt(js::ExprStmt{gen_js_leaf(rng)});
        case 8:
            if (ctx.loop_depth > 0) {
                if (pick(rng, 2) == 0) return js::make_stmt(js::BreakStmt{""});
                return js::make_stmt(js::ContinueStmt{""});
            }
            return js::make_stmt(js::ExprStmt{gen_js_leaf(rng)});
        case 9: {
            js::TryStmt t;
            t.block.push_back(gen_js_stmt(rng, ctx, depth - 1));
            t.has_catch = true;
            t.catch_binder = "err";
            t.catch_block.push_back(gen_js_stmt(rng, ctx, depth - 1));
            if (pick(rng, 2) == 0) {
                t.has_finally = true;
                t.finally_block.push_back(gen_js_stmt(rng, ctx, depth - 1));
            }
            return js::make_stmt(std::move(t));
        }
        case 10:
            return js::make_stmt(js::ThrowStmt{gen_js_expr(rng, ctx, depth - 1)});
        case 11: {
            js::SwitchStmt sw;
            sw.disc = gen_js_expr(rng, ctx, depth - 1);
            int n = 1 + pick(rng, 2);
            for (int i = 0; i < n; ++i) {
                js::SwitchCase c;
                c.test = js::make_expr(js::NumberLit{static_cast<double>(i)});
                c.body.push_back(gen_js_stmt(rng, ctx, depth - 1));
                sw.cases.push_back(std::move(c));
            }
            if (pick(rng, 2) == 0) {
                js::SwitchCase dflt;
                dflt.body.push_back(gen_js_stmt(rng, ctx, depth - 1));
                sw.cases.push_back(std::move(dflt));
            }
            return js::make_stmt(std::move(sw));
        }
        case 12: {
            js::BlockStmt b;
            int n = pick(rng, 3);
            for (int i = 0; i < n; ++i) b.body.push_back(gen_js_stmt(rng, ctx, depth - 1));
            return js::make_stmt(std::move(b));
        }
        default: {
            JsGenCtx inner = ctx;
            inner.fn_depth++;
            inner.loop_depth = 0;
            std::vector<StmtPtr> body;
            body.push_back(gen_js_stmt(rng, inner, depth - 1));
            ctx.fuel = inner.fuel;
            return js::make_stmt(
                js::FuncDecl{pick_name(rng, kNames), {"a", "b"}, std::move(body)});
        }
    }
}

}  // namespace

js::Program gen_program(Rng& rng, int max_statements) {
    JsGenCtx ctx;
    js::Program prog;
    int n = 1 + pick(rng, max_statements);
    for (int i = 0; i < n; ++i) prog.body.push_back(gen_js_stmt(rng, ctx, 4));
    return prog;
}

}  // namespace ljs::testgen
