#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ljs {

// Byte span into an original source buffer, with the 1-based line/column of
// its start. Core expressions produced by the desugarer carry the span of the
// surface construct they came from; hand-built expressions leave it empty.
struct SourceSpan {
    uint32_t begin = 0;
    uint32_t end = 0;
    uint32_t line = 0;
    uint32_t column = 0;

    bool valid() const { return line != 0; }
};

// c = num | str | bool | undefined | null
class Constant {
public:
    enum class Kind { Number, String, Boolean, Undefined, Null };

    static Constant number(double v) { return Constant(Kind::Number, v, {}, false); }
    static Constant string(std::string v) { return Constant(Kind::String, 0, std::move(v), false); }
    static Constant boolean(bool v) { return Constant(Kind::Boolean, 0, {}, v); }
    static Constant undefined() { return Constant(Kind::Undefined, 0, {}, false); }
    static Constant null() { return Constant(Kind::Null, 0, {}, false); }

    Kind kind() const { return kind_; }
    bool is(Kind k) const { return kind_ == k; }
    double as_number() const { assert(kind_ == Kind::Number); return num_; }
    const std::string& as_string() const { assert(kind_ == Kind::String); return str_; }
    bool as_boolean() const { assert(kind_ == Kind::Boolean); return bool_; }

    // Structural equality for trees and tests: NaN equals NaN, -0 differs
    // from +0. Runtime === lives in delta (js_strict_eq) with IEEE rules.
    bool operator==(const Constant& o) const;
    bool operator!=(const Constant& o) const { return !(*this == o); }

private:
    Constant(Kind k, double n, std::string s, bool b)
        : kind_(k), num_(n), str_(std::move(s)), bool_(b) {}

    Kind kind_;
    double num_;
    std::string str_;
    bool bool_;
};

// The delta function's operator alphabet. Arities are fixed; see delta.hpp.
enum class PrimOp {
    Add, Sub, Mul, Div, Mod,
    StrCat, NumToStr, StrToNum,
    ToBool,
    Lt, Le, Gt, Ge,
    StxEq,
    TypeOf,
    HasOwnField, FieldNames, FirstField,
    Floor, IsNaN, IsLoc,
};

int prim_arity(PrimOp op);
const char* prim_name(PrimOp op);
std::optional<PrimOp> prim_by_name(const std::string& name);

struct Location {
    uint64_t id = 0;
    bool operator==(const Location& o) const { return id == o.id; }
    bool operator<(const Location& o) const { return id < o.id; }
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct IdExpr { std::string name; };
struct ConstExpr { Constant value; };
struct FuncExpr {
    std::vector<std::string> params;  // pairwise distinct
    ExprPtr body;
};
struct ObjectExpr {
    // Insertion-ordered; keys pairwise distinct. E-CreateField prepends.
    std::vector<std::pair<std::string, ExprPtr>> fields;
};
struct LetExpr { std::string name; ExprPtr bound; ExprPtr body; };
struct AppExpr { ExprPtr fn; std::vector<ExprPtr> args; };
struct GetFieldExpr { ExprPtr object; ExprPtr field; };
struct UpdateFieldExpr { ExprPtr object; ExprPtr field; ExprPtr value; };
struct DeleteFieldExpr { ExprPtr object; ExprPtr field; };
struct RefExpr { ExprPtr init; };
struct DerefExpr { ExprPtr target; };
struct SetRefExpr { ExprPtr target; ExprPtr value; };
struct IfExpr { ExprPtr cond; ExprPtr then_branch; ExprPtr else_branch; };
struct SeqExpr { ExprPtr first; ExprPtr rest; };
struct WhileExpr { ExprPtr cond; ExprPtr body; };
struct LabelExpr { std::string label; ExprPtr body; };
struct BreakExpr { std::string label; ExprPtr value; };
struct TryCatchExpr { ExprPtr body; std::string binder; ExprPtr handler; };
struct TryFinallyExpr { ExprPtr body; ExprPtr finalizer; };
struct ThrowExpr { ExprPtr value; };
struct ErrExpr { ExprPtr value; };  // payload is always a value
struct PrimExpr { PrimOp op; std::vector<ExprPtr> args; };
struct LocExpr { Location loc; };   // runtime only

using ExprNode = std::variant<
    IdExpr, ConstExpr, FuncExpr, ObjectExpr, LetExpr, AppExpr,
    GetFieldExpr, UpdateFieldExpr, DeleteFieldExpr,
    RefExpr, DerefExpr, SetRefExpr,
    IfExpr, SeqExpr, WhileExpr, LabelExpr, BreakExpr,
    TryCatchExpr, TryFinallyExpr, ThrowExpr, ErrExpr,
    PrimExpr, LocExpr>;

struct Expr {
    ExprNode node;
    SourceSpan span{};

    template <typename T> const T* as() const { return std::get_if<T>(&node); }
    template <typename T> bool is() const { return std::holds_alternative<T>(node); }
};

// Builders. Trees are immutable and freely shared.
ExprPtr make_id(std::string name);
ExprPtr make_const(Constant c);
ExprPtr make_number(double v);
ExprPtr make_string(std::string v);
ExprPtr make_boolean(bool v);
ExprPtr make_undefined();
ExprPtr make_null();
ExprPtr make_func(std::vector<std::string> params, ExprPtr body);
ExprPtr make_object(std::vector<std::pair<std::string, ExprPtr>> fields);
ExprPtr make_let(std::string name, ExprPtr bound, ExprPtr body);
ExprPtr make_app(ExprPtr fn, std::vector<ExprPtr> args);
ExprPtr make_get(ExprPtr object, ExprPtr field);
ExprPtr make_update(ExprPtr object, ExprPtr field, ExprPtr value);
ExprPtr make_delete(ExprPtr object, ExprPtr field);
ExprPtr make_ref(ExprPtr init);
ExprPtr make_deref(ExprPtr target);
ExprPtr make_setref(ExprPtr target, ExprPtr value);
ExprPtr make_if(ExprPtr cond, ExprPtr then_branch, ExprPtr else_branch);
ExprPtr make_seq(ExprPtr first, ExprPtr rest);
ExprPtr make_while(ExprPtr cond, ExprPtr body);
ExprPtr make_label(std::string label, ExprPtr body);
ExprPtr make_break(std::string label, ExprPtr value);
ExprPtr make_trycatch(ExprPtr body, std::string binder, ExprPtr handler);
ExprPtr make_tryfinally(ExprPtr body, ExprPtr finalizer);
ExprPtr make_throw(ExprPtr value);
ExprPtr make_err(ExprPtr value);
ExprPtr make_prim(PrimOp op, std::vector<ExprPtr> args);
ExprPtr make_loc(Location loc);
ExprPtr with_span(ExprPtr e, SourceSpan span);

// v = c | func … | { str:v … } | l
bool is_value(const Expr& e);
inline bool is_value(const ExprPtr& e) { return is_value(*e); }

bool expr_equal(const Expr& a, const Expr& b);
inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) { return expr_equal(*a, *b); }

// Number of nodes; handy for size caps in generators and tests.
size_t expr_size(const Expr& e);

// Visit every child slot of a node, in evaluation order. Callback receives
// (slot index, child). Slot numbering is shared with the evaluator's frames.
void for_each_child(const Expr& e, const std::function<void(int, const ExprPtr&)>& fn);
int child_count(const Expr& e);
ExprPtr get_child(const Expr& e, int slot);
// Functional replacement of one child; shares all the other subtrees.
ExprPtr replace_child(const Expr& e, int slot, ExprPtr child);

// σ = (l,v)⋯ plus a fresh-id counter exceeding every allocated id.
class Store {
public:
    Location alloc(ExprPtr v);
    bool contains(Location l) const { return cells_.count(l.id) != 0; }
    const ExprPtr* lookup(Location l) const;
    void set(Location l, ExprPtr v);  // l must already be allocated
    uint64_t next_id() const { return next_; }
    size_t size() const { return cells_.size(); }
    const std::map<uint64_t, ExprPtr>& cells() const { return cells_; }

private:
    std::map<uint64_t, ExprPtr> cells_;
    uint64_t next_ = 0;
};

}  // namespace ljs
