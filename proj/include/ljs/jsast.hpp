#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ljs/syntax.hpp"  // SourceSpan

namespace ljs::js {

using ljs::SourceSpan;

struct Expr;
struct Stmt;
using ExprPtr = std::shared_ptr<const Expr>;
using StmtPtr = std::shared_ptr<const Stmt>;

enum class BinOp {
    Add, Sub, Mul, Div, Mod,
    Lt, Le, Gt, Ge,
    Eq, Ne, StrictEq, StrictNe,
    And, Or,
    In, Instanceof,
};

enum class UnOp { TypeOf, Not, Neg };

enum class AssignOp { Assign, AddAssign, SubAssign, MulAssign, DivAssign, ModAssign };

struct NumberLit { double value; };
struct StringLit { std::string value; };
struct BoolLit { bool value; };
struct NullLit {};
struct Ident { std::string name; };
struct This {};
struct ObjectLit { std::vector<std::pair<std::string, ExprPtr>> fields; };
struct ArrayLit { std::vector<ExprPtr> elements; };
struct FuncLit {
    std::string name;  // empty for anonymous
    std::vector<std::string> params;
    std::vector<StmtPtr> body;
};
// Dot access carries the literal name; bracket access the computed field.
struct Member {
    ExprPtr object;
    std::optional<std::string> name;  // set for dotted access
    ExprPtr field;                    // set for bracket access
};
struct Call { ExprPtr callee; std::vector<ExprPtr> args; };
struct New { ExprPtr callee; std::vector<ExprPtr> args; };
struct Assign { ExprPtr target; AssignOp op; ExprPtr value; };  // target: Ident or Member
struct Binary { BinOp op; ExprPtr lhs; ExprPtr rhs; };
struct Unary { UnOp op; ExprPtr operand; };
struct DeleteExpr { ExprPtr target; };  // Ident or Member
struct IncDec { bool increment; bool prefix; ExprPtr target; };
struct Cond { ExprPtr cond; ExprPtr then_expr; ExprPtr else_expr; };
struct Comma { ExprPtr first; ExprPtr rest; };

using ExprNode = std::variant<NumberLit, StringLit, BoolLit, NullLit, Ident, This, ObjectLit,
                              ArrayLit, FuncLit, Member, Call, New, Assign, Binary, Unary,
                              DeleteExpr, IncDec, Cond, Comma>;

struct Expr {
    ExprNode node;
    SourceSpan span{};
    template <typename T> const T* as() const { return std::get_if<T>(&node); }
    template <typename T> bool is() const { return std::holds_alternative<T>(node); }
};

struct VarDecl { std::vector<std::pair<std::string, ExprPtr>> decls; };  // init may be null
struct ExprStmt { ExprPtr expr; };
struct IfStmt { ExprPtr cond; StmtPtr then_stmt; StmtPtr else_stmt; };  // else may be null
struct WhileStmt { ExprPtr cond; StmtPtr body; };
struct DoWhileStmt { StmtPtr body; ExprPtr cond; };
struct ForStmt {
    StmtPtr init;      // VarDecl or ExprStmt or null
    ExprPtr cond;      // may be null
    ExprPtr update;    // may be null
    StmtPtr body;
};
struct ForInStmt {
    bool declares;     // for (var x in e)
    std::string name;
    ExprPtr object;
    StmtPtr body;
};
struct ReturnStmt { ExprPtr value; };  // may be null
struct BreakStmt { std::string label; };     // may be empty
struct ContinueStmt { std::string label; };  // may be empty
struct LabeledStmt { std::string label; StmtPtr body; };
struct TryStmt {
    std::vector<StmtPtr> block;
    std::string catch_binder;          // empty when no catch clause
    std::vector<StmtPtr> catch_block;
    bool has_catch = false;
    bool has_finally = false;
    std::vector<StmtPtr> finally_block;
};
struct ThrowStmt { ExprPtr value; };
struct SwitchCase { ExprPtr test; std::vector<StmtPtr> body; };  // null test = default
struct SwitchStmt { ExprPtr disc; std::vector<SwitchCase> cases; };
struct WithStmt { ExprPtr object; StmtPtr body; };
struct BlockStmt { std::vector<StmtPtr> body; };
struct FuncDecl { std::string name; std::vector<std::string> params; std::vector<StmtPtr> body; };
struct EmptyStmt {};

using StmtNode = std::variant<VarDecl, ExprStmt, IfStmt, WhileStmt, DoWhileStmt, ForStmt,
                              ForInStmt, ReturnStmt, BreakStmt, ContinueStmt, LabeledStmt,
                              TryStmt, ThrowStmt, SwitchStmt, WithStmt, BlockStmt, FuncDecl,
                              EmptyStmt>;

struct Stmt {
    StmtNode node;
    SourceSpan span{};
    template <typename T> const T* as() const { return std::get_if<T>(&node); }
    template <typename T> bool is() const { return std::holds_alternative<T>(node); }
};

struct Program {
    std::vector<StmtPtr> body;
};

template <typename T>
ExprPtr make_expr(T node, SourceSpan span = {}) {
    auto e = std::make_shared<Expr>();
    e->node = std::move(node);
    e->span = span;
    return e;
}

template <typename T>
StmtPtr make_stmt(T node, SourceSpan span = {}) {
    auto s = std::make_shared<Stmt>();
    s->node = std::move(node);
    s->span = span;
    return s;
}

}  // namespace ljs::js
