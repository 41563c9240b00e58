#include "ljs/syntax.hpp"

#include <cmath>

namespace ljs {

bool Constant::operator==(const Constant& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
        case Kind::Number: {
            if (std::isnan(num_) && std::isnan(o.num_)) return true;
            return num_ == o.num_ && std::signbit(num_) == std::signbit(o.num_);
        }
        case Kind::String: return str_ == o.str_;
        case Kind::Boolean: return bool_ == o.bool_;
        case Kind::Undefined:
        case Kind::Null: return true;
    }
    return false;
}

namespace {

struct PrimInfo {
    PrimOp op;
    const char* name;
    int arity;
};

constexpr PrimInfo kPrims[] = {
    {PrimOp::Add, "add", 2},
    {PrimOp::Sub, "sub", 2},
    {PrimOp::Mul, "mul", 2},
    {PrimOp::Div, "div", 2},
    {PrimOp::Mod, "mod", 2},
    {PrimOp::StrCat, "strcat", 2},
    {PrimOp::NumToStr, "numstr", 1},
    {PrimOp::StrToNum, "strnum", 1},
    {PrimOp::ToBool, "tobool", 1},
    {PrimOp::Lt, "lt", 2},
    {PrimOp::Le, "le", 2},
    {PrimOp::Gt, "gt", 2},
    {PrimOp::Ge, "ge", 2},
    {PrimOp::StxEq, "stxeq", 2},
    {PrimOp::TypeOf, "typeof", 1},
    {PrimOp::HasOwnField, "hasown", 2},
    {PrimOp::FieldNames, "fields", 1},
    {PrimOp::FirstField, "firstfield", 1},
    {PrimOp::Floor, "floor", 1},
    {PrimOp::IsNaN, "isnan", 1},
    {PrimOp::IsLoc, "isloc", 1},
};

const PrimInfo& info(PrimOp op) {
    for (const auto& p : kPrims) {
        if (p.op == op) return p;
    }
    assert(false && "unknown prim op");
    return kPrims[0];
}

}  // namespace

int prim_arity(PrimOp op) { return info(op).arity; }
const char* prim_name(PrimOp op) { return info(op).name; }

std::optional<PrimOp> prim_by_name(const std::string& name) {
    for (const auto& p : kPrims) {
        if (name == p.name) return p.op;
    }
    return std::nullopt;
}

namespace {
ExprPtr mk(ExprNode node) {
    auto e = std::make_shared<Expr>();
    e->node = std::move(node);
    return e;
}
}  // namespace

ExprPtr make_id(std::string name) { return mk(IdExpr{std::move(name)}); }
ExprPtr make_const(Constant c) { return mk(ConstExpr{std::move(c)}); }
ExprPtr make_number(double v) { return make_const(Constant::number(v)); }
ExprPtr make_string(std::string v) { return make_const(Constant::string(std::move(v))); }
ExprPtr make_boolean(bool v) { return make_const(Constant::boolean(v)); }
ExprPtr make_undefined() { return make_const(Constant::undefined()); }
ExprPtr make_null() { return make_const(Constant::null()); }

ExprPtr make_func(std::vector<std::string> params, ExprPtr body) {
    return mk(FuncExpr{std::move(params), std::move(body)});
}
ExprPtr make_object(std::vector<std::pair<std::string, ExprPtr>> fields) {
    return mk(ObjectExpr{std::move(fields)});
}
ExprPtr make_let(std::string name, ExprPtr bound, ExprPtr body) {
    return mk(LetExpr{std::move(name), std::move(bound), std::move(body)});
}
ExprPtr make_app(ExprPtr fn, std::vector<ExprPtr> args) {
    return mk(AppExpr{std::move(fn), std::move(args)});
}
ExprPtr make_get(ExprPtr object, ExprPtr field) {
    return mk(GetFieldExpr{std::move(object), std::move(field)});
}
ExprPtr make_update(ExprPtr object, ExprPtr field, ExprPtr value) {
    return mk(UpdateFieldExpr{std::move(object), std::move(field), std::move(value)});
}
ExprPtr make_delete(ExprPtr object, ExprPtr field) {
    return mk(DeleteFieldExpr{std::move(object), std::move(field)});
}
ExprPtr make_ref(ExprPtr init) { return mk(RefExpr{std::move(init)}); }
ExprPtr make_deref(ExprPtr target) { return mk(DerefExpr{std::move(target)}); }
ExprPtr make_setref(ExprPtr target, ExprPtr value) {
    return mk(SetRefExpr{std::move(target), std::move(value)});
}
ExprPtr make_if(ExprPtr cond, ExprPtr then_branch, ExprPtr else_branch) {
    return mk(IfExpr{std::move(cond), std::move(then_branch), std::move(else_branch)});
}
ExprPtr make_seq(ExprPtr first, ExprPtr rest) {
    return mk(SeqExpr{std::move(first), std::move(rest)});
}
ExprPtr make_while(ExprPtr cond, ExprPtr body) {
    return mk(WhileExpr{std::move(cond), std::move(body)});
}
ExprPtr make_label(std::string label, ExprPtr body) {
    return mk(LabelExpr{std::move(label), std::move(body)});
}
ExprPtr make_break(std::string label, ExprPtr value) {
    return mk(BreakExpr{std::move(label), std::move(value)});
}
ExprPtr make_trycatch(ExprPtr body, std::string binder, ExprPtr handler) {
    return mk(TryCatchExpr{std::move(body), std::move(binder), std::move(handler)});
}
ExprPtr make_tryfinally(ExprPtr body, ExprPtr finalizer) {
    return mk(TryFinallyExpr{std::move(body), std::move(finalizer)});
}
ExprPtr make_throw(ExprPtr value) { return mk(ThrowExpr{std::move(value)}); }
ExprPtr make_err(ExprPtr value) { return mk(ErrExpr{std::move(value)}); }
ExprPtr make_prim(PrimOp op, std::vector<ExprPtr> args) {
    assert(static_cast<int>(args.size()) == prim_arity(op));
    return mk(PrimExpr{op, std::move(args)});
}
ExprPtr make_loc(Location loc) { return mk(LocExpr{loc}); }

ExprPtr with_span(ExprPtr e, SourceSpan span) {
    auto copy = std::make_shared<Expr>(*e);
    copy->span = span;
    return copy;
}

bool is_value(const Expr& e) {
    if (e.is<ConstExpr>() || e.is<FuncExpr>() || e.is<LocExpr>()) return true;
    if (const auto* obj = e.as<ObjectExpr>()) {
        for (const auto& [key, val] : obj->fields) {
            (void)key;
            if (!is_value(*val)) return false;
        }
        return true;
    }
    return false;
}

bool expr_equal(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    int n = child_count(a);
    if (n != child_count(b)) return false;

    // Compare the node-local payload first, then children.
    if (const auto* ia = a.as<IdExpr>()) return ia->name == b.as<IdExpr>()->name;
    if (const auto* ca = a.as<ConstExpr>()) return ca->value == b.as<ConstExpr>()->value;
    if (const auto* fa = a.as<FuncExpr>()) {
        if (fa->params != b.as<FuncExpr>()->params) return false;
    } else if (const auto* oa = a.as<ObjectExpr>()) {
        const auto* ob = b.as<ObjectExpr>();
        for (size_t i = 0; i < oa->fields.size(); ++i) {
            if (oa->fields[i].first != ob->fields[i].first) return false;
        }
    } else if (const auto* la = a.as<LetExpr>()) {
        if (la->name != b.as<LetExpr>()->name) return false;
    } else if (const auto* lba = a.as<LabelExpr>()) {
        if (lba->label != b.as<LabelExpr>()->label) return false;
    } else if (const auto* bra = a.as<BreakExpr>()) {
        if (bra->label != b.as<BreakExpr>()->label) return false;
    } else if (const auto* tca = a.as<TryCatchExpr>()) {
        if (tca->binder != b.as<TryCatchExpr>()->binder) return false;
    } else if (const auto* pa = a.as<PrimExpr>()) {
        if (pa->op != b.as<PrimExpr>()->op) return false;
    } else if (const auto* loca = a.as<LocExpr>()) {
        return loca->loc == b.as<LocExpr>()->loc;
    }

    for (int i = 0; i < n; ++i) {
        if (!expr_equal(*get_child(a, i), *get_child(b, i))) return false;
    }
    return true;
}

size_t expr_size(const Expr& e) {
    size_t n = 1;
    for_each_child(e, [&](int, const ExprPtr& c) { n += expr_size(*c); });
    return n;
}

void for_each_child(const Expr& e, const std::function<void(int, const ExprPtr&)>& fn) {
    int n = child_count(e);
    for (int i = 0; i < n; ++i) fn(i, get_child(e, i));
}

int child_count(const Expr& e) {
    return std::visit(
        [](const auto& node) -> int {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, IdExpr> || std::is_same_v<T, ConstExpr> ||
                          std::is_same_v<T, LocExpr>) {
                return 0;
            } else if constexpr (std::is_same_v<T, FuncExpr> || std::is_same_v<T, RefExpr> ||
                                 std::is_same_v<T, DerefExpr> || std::is_same_v<T, LabelExpr> ||
                                 std::is_same_v<T, BreakExpr> || std::is_same_v<T, ThrowExpr> ||
                                 std::is_same_v<T, ErrExpr>) {
                return 1;
            } else if constexpr (std::is_same_v<T, LetExpr> || std::is_same_v<T, GetFieldExpr> ||
                                 std::is_same_v<T, DeleteFieldExpr> || std::is_same_v<T, SetRefExpr> ||
                                 std::is_same_v<T, SeqExpr> || std::is_same_v<T, WhileExpr> ||
                                 std::is_same_v<T, TryCatchExpr> || std::is_same_v<T, TryFinallyExpr>) {
                return 2;
            } else if constexpr (std::is_same_v<T, UpdateFieldExpr> || std::is_same_v<T, IfExpr>) {
                return 3;
            } else if constexpr (std::is_same_v<T, ObjectExpr>) {
                return static_cast<int>(node.fields.size());
            } else if constexpr (std::is_same_v<T, AppExpr>) {
                return 1 + static_cast<int>(node.args.size());
            } else if constexpr (std::is_same_v<T, PrimExpr>) {
                return static_cast<int>(node.args.size());
            }
        },
        e.node);
}

ExprPtr get_child(const Expr& e, int slot) {
    assert(slot >= 0 && slot < child_count(e));
    if (const auto* x = e.as<FuncExpr>()) return x->body;
    if (const auto* x = e.as<ObjectExpr>()) return x->fields[slot].second;
    if (const auto* x = e.as<LetExpr>()) return slot == 0 ? x->bound : x->body;
    if (const auto* x = e.as<AppExpr>()) return slot == 0 ? x->fn : x->args[slot - 1];
    if (const auto* x = e.as<GetFieldExpr>()) return slot == 0 ? x->object : x->field;
    if (const auto* x = e.as<UpdateFieldExpr>())
        return slot == 0 ? x->object : (slot == 1 ? x->field : x->value);
    if (const auto* x = e.as<DeleteFieldExpr>()) return slot == 0 ? x->object : x->field;
    if (const auto* x = e.as<RefExpr>()) return x->init;
    if (const auto* x = e.as<DerefExpr>()) return x->target;
    if (const auto* x = e.as<SetRefExpr>()) return slot == 0 ? x->target : x->value;
    if (const auto* x = e.as<IfExpr>())
        return slot == 0 ? x->cond : (slot == 1 ? x->then_branch : x->else_branch);
    if (const auto* x = e.as<SeqExpr>()) return slot == 0 ? x->first : x->rest;
    if (const auto* x = e.as<WhileExpr>()) return slot == 0 ? x->cond : x->body;
    if (const auto* x = e.as<LabelExpr>()) return x->body;
    if (const auto* x = e.as<BreakExpr>()) return x->value;
    if (const auto* x = e.as<TryCatchExpr>()) return slot == 0 ? x->body : x->handler;
    if (const auto* x = e.as<TryFinallyExpr>()) return slot == 0 ? x->body : x->finalizer;
    if (const auto* x = e.as<ThrowExpr>()) return x->value;
    if (const auto* x = e.as<ErrExpr>()) return x->value;
    if (const auto* x = e.as<PrimExpr>()) return x->args[slot];
    assert(false && "node has no children");
    return nullptr;
}

ExprPtr replace_child(const Expr& e, int slot, ExprPtr child) {
    Expr copy = e;
    assert(slot >= 0 && slot < child_count(e));
    if (auto* x = std::get_if<FuncExpr>(&copy.node)) x->body = std::move(child);
    else if (auto* x = std::get_if<ObjectExpr>(&copy.node)) x->fields[slot].second = std::move(child);
    else if (auto* x = std::get_if<LetExpr>(&copy.node)) (slot == 0 ? x->bound : x->body) = std::move(child);
    else if (auto* x = std::get_if<AppExpr>(&copy.node)) (slot == 0 ? x->fn : x->args[slot - 1]) = std::move(child);
    else if (auto* x = std::get_if<GetFieldExpr>(&copy.node)) (slot == 0 ? x->object : x->field) = std::move(child);
    else if (auto* x = std::get_if<UpdateFieldExpr>(&copy.node))
        (slot == 0 ? x->object : (slot == 1 ? x->field : x->value)) = std::move(child);
    else if (auto* x = std::get_if<DeleteFieldExpr>(&copy.node)) (slot == 0 ? x->object : x->field) = std::move(child);
    else if (auto* x = std::get_if<RefExpr>(&copy.node)) x->init = std::move(child);
    else if (auto* x = std::get_if<DerefExpr>(&copy.node)) x->target = std::move(child);
    else if (auto* x = std::get_if<SetRefExpr>(&copy.node)) (slot == 0 ? x->target : x->value) = std::move(child);
    else if (auto* x = std::get_if<IfExpr>(&copy.node))
        (slot == 0 ? x->cond : (slot == 1 ? x->then_branch : x->else_branch)) = std::move(child);
    else if (auto* x = std::get_if<SeqExpr>(&copy.node)) (slot == 0 ? x->first : x->rest) = std::move(child);
    else if (auto* x = std::get_if<WhileExpr>(&copy.node)) (slot == 0 ? x->cond : x->body) = std::move(child);
    else if (auto* x = std::get_if<LabelExpr>(&copy.node)) x->body = std::move(child);
    else if (auto* x = std::get_if<BreakExpr>(&copy.node)) x->value = std::move(child);
    else if (auto* x = std::get_if<TryCatchExpr>(&copy.node)) (slot == 0 ? x->body : x->handler) = std::move(child);
    else if (auto* x = std::get_if<TryFinallyExpr>(&copy.node)) (slot == 0 ? x->body : x->finalizer) = std::move(child);
    else if (auto* x = std::get_if<ThrowExpr>(&copy.node)) x->value = std::move(child);
    else if (auto* x = std::get_if<ErrExpr>(&copy.node)) x->value = std::move(child);
    else if (auto* x = std::get_if<PrimExpr>(&copy.node)) x->args[slot] = std::move(child);
    else assert(false && "node has no children");
    return std::make_shared<Expr>(std::move(copy));
}

Location Store::alloc(ExprPtr v) {
    assert(is_value(*v));
    Location l{next_};
    cells_.emplace(next_, std::move(v));
    ++next_;
    return l;
}

const ExprPtr* Store::lookup(Location l) const {
    auto it = cells_.find(l.id);
    return it == cells_.end() ? nullptr : &it->second;
}

void Store::set(Location l, ExprPtr v) {
    assert(is_value(*v));
    auto it = cells_.find(l.id);
    assert(it != cells_.end());
    it->second = std::move(v);
}

}  // namespace ljs
