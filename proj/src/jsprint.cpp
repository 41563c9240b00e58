#include "ljs/jsprint.hpp"

#include <cassert>
#include <cmath>
#include <functional>

#include "ljs/numfmt.hpp"

namespace ljs::js {

namespace {

// Precedence ladder, loosest first; mirrors the parser.
enum Prec {
    kComma = 0,
    kAssign,
    kCond,
    kOr,
    kAnd,
    kEquality,
    kRelational,
    kAdditive,
    kMultiplicative,
    kUnary,
    kPostfix,
    kCallMember,
    kPrimary,
};

int binop_prec(BinOp op) {
    switch (op) {
        case BinOp::Or: return kOr;
        case BinOp::And: return kAnd;
        case BinOp::Eq:
        case BinOp::Ne:
        case BinOp::StrictEq:
        case BinOp::StrictNe: return kEquality;
        case BinOp::Lt:
        case BinOp::Le:
        case BinOp::Gt:
        case BinOp::Ge:
        case BinOp::In:
        case BinOp::Instanceof: return kRelational;
        case BinOp::Add:
        case BinOp::Sub: return kAdditive;
        default: return kMultiplicative;
    }
}

const char* binop_text(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::Div: return "/";
        case BinOp::Mod: return "%";
        case BinOp::Lt: return "<";
        case BinOp::Le: return "<=";
        case BinOp::Gt: return ">";
        case BinOp::Ge: return ">=";
        case BinOp::Eq: return "==";
        case BinOp::Ne: return "!=";
        case BinOp::StrictEq: return "===";
        case BinOp::StrictNe: return "!==";
        case BinOp::And: return "&&";
        case BinOp::Or: return "||";
        case BinOp::In: return "in";
        case BinOp::Instanceof: return "instanceof";
    }
    return "?";
}

int natural_prec(const Expr& e) {
    if (e.is<Comma>()) return kComma;
    if (e.is<Assign>()) return kAssign;
    if (e.is<Cond>()) return kCond;
    if (const auto* b = e.as<Binary>()) return binop_prec(b->op);
    if (e.is<Unary>() || e.is<DeleteExpr>()) return kUnary;
    if (const auto* x = e.as<IncDec>()) return x->prefix ? kUnary : kPostfix;
    if (e.is<Member>() || e.is<Call>() || e.is<New>()) return kCallMember;
    return kPrimary;
}

void quote_js_string(const std::string& s, std::string& out) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void emit_expr(const Expr& e, int min_prec, std::string& out);
void emit_stmt(const Stmt& s, int indent, std::string& out);

void emit_at(const ExprPtr& e, int min_prec, std::string& out) {
    if (natural_prec(*e) < min_prec) {
        out += '(';
        emit_expr(*e, kComma, out);
        out += ')';
    } else {
        emit_expr(*e, min_prec, out);
    }
}

void emit_block(const std::vector<StmtPtr>& body, int indent, std::string& out) {
    out += "{\n";
    for (const auto& s : body) emit_stmt(*s, indent + 1, out);
    out.append(static_cast<size_t>(indent) * 2, ' ');
    out += "}";
}

// Trailing if-without-else that would capture an outer else clause.
bool swallows_else(const Stmt& s) {
    if (const auto* i = s.as<IfStmt>()) {
        return !i->else_stmt || swallows_else(*i->else_stmt);
    }
    if (const auto* w = s.as<WhileStmt>()) return swallows_else(*w->body);
    if (const auto* f = s.as<ForStmt>()) return swallows_else(*f->body);
    if (const auto* f = s.as<ForInStmt>()) return swallows_else(*f->body);
    if (const auto* w = s.as<WithStmt>()) return swallows_else(*w->body);
    if (const auto* l = s.as<LabeledStmt>()) return swallows_else(*l->body);
    return false;
}

// Verbatim body: a block keeps its braces, anything else prints bare so the
// reparse yields the identical tree. force_braces normalizes the rare
// dangling-else shapes (those do not round-trip exactly, by construction).
void emit_body(const StmtPtr& body, int indent, std::string& out, bool force_braces = false) {
    if (const auto* b = body->as<BlockStmt>()) {
        emit_block(b->body, indent, out);
        out += "\n";
        return;
    }
    if (force_braces) {
        emit_block({body}, indent, out);
        out += "\n";
        return;
    }
    out += "\n";
    emit_stmt(*body, indent + 1, out);
}

void emit_function(const std::string& keyword_and_name,
                   const std::vector<std::string>& params,
                   const std::vector<StmtPtr>& body, int indent, std::string& out) {
    out += keyword_and_name + "(";
    for (size_t i = 0; i < params.size(); ++i) {
        if (i) out += ", ";
        out += params[i];
    }
    out += ") ";
    emit_block(body, indent, out);
}

void emit_expr(const Expr& e, int /*min_prec*/, std::string& out) {
    if (const auto* x = e.as<NumberLit>()) {
        double v = x->value;
        if (v < 0 || (v == 0 && std::signbit(v))) {
            // The lexer has no negative literals; reconstruct via unary minus.
            out += "-";
            out += js_number_to_string(-v);
        } else {
            out += js_number_to_string(v);
        }
        return;
    }
    if (const auto* x = e.as<StringLit>()) { quote_js_string(x->value, out); return; }
    if (const auto* x = e.as<BoolLit>()) { out += x->value ? "true" : "false"; return; }
    if (e.is<NullLit>()) { out += "null"; return; }
    if (const auto* x = e.as<Ident>()) { out += x->name; return; }
    if (e.is<This>()) { out += "this"; return; }
    if (const auto* x = e.as<ObjectLit>()) {
        if (x->fields.empty()) { out += "{}"; return; }
        out += "{ ";
        for (size_t i = 0; i < x->fields.size(); ++i) {
            if (i) out += ", ";
            quote_js_string(x->fields[i].first, out);
            out += ": ";
            emit_at(x->fields[i].second, kAssign, out);
        }
        out += " }";
        return;
    }
    if (const auto* x = e.as<ArrayLit>()) {
        out += '[';
        for (size_t i = 0; i < x->elements.size(); ++i) {
            if (i) out += ", ";
            emit_at(x->elements[i], kAssign, out);
        }
        out += ']';
        return;
    }
    if (const auto* x = e.as<FuncLit>()) {
        emit_function(x->name.empty() ? "function" : "function " + x->name, x->params,
                      x->body, 0, out);
        return;
    }
    if (const auto* x = e.as<Member>()) {
        // 8.p does not lex; a number receiver needs parentheses.
        if (x->object->is<NumberLit>() && x->name) {
            out += '(';
            emit_expr(*x->object, kComma, out);
            out += ')';
        } else {
            emit_at(x->object, kCallMember, out);
        }
        if (x->name) {
            out += '.' + *x->name;
        } else {
            out += '[';
            emit_expr(*x->field, kComma, out);
            out += ']';
        }
        return;
    }
    if (const auto* x = e.as<Call>()) {
        emit_at(x->callee, kCallMember, out);
        out += '(';
        for (size_t i = 0; i < x->args.size(); ++i) {
            if (i) out += ", ";
            emit_at(x->args[i], kAssign, out);
        }
        out += ')';
        return;
    }
    if (const auto* x = e.as<New>()) {
        // A call anywhere on the callee's member spine would bind to the
        // `new` arguments instead; parenthesize it.
        std::function<bool(const Expr&)> spine_has_call = [&](const Expr& c) -> bool {
            if (c.is<Call>()) return true;
            if (const auto* m = c.as<Member>()) return spine_has_call(*m->object);
            return false;
        };
        out += "new ";
        if (spine_has_call(*x->callee)) {
            out += '(';
            emit_expr(*x->callee, kComma, out);
            out += ')';
        } else {
            emit_at(x->callee, kCallMember, out);
        }
        out += '(';
        for (size_t i = 0; i < x->args.size(); ++i) {
            if (i) out += ", ";
            emit_at(x->args[i], kAssign, out);
        }
        out += ')';
        return;
    }
    if (const auto* x = e.as<Assign>()) {
        static const char* ops[] = {"=", "+=", "-=", "*=", "/=", "%="};
        emit_at(x->target, kUnary, out);
        out += std::string(" ") + ops[static_cast<int>(x->op)] + " ";
        emit_at(x->value, kAssign, out);
        return;
    }
    if (const auto* x = e.as<Binary>()) {
        int prec = binop_prec(x->op);
        emit_at(x->lhs, prec, out);
        out += std::string(" ") + binop_text(x->op) + " ";
        emit_at(x->rhs, prec + 1, out);  // left-assoc
        return;
    }
    if (const auto* x = e.as<Unary>()) {
        static const char* ops[] = {"typeof ", "!", "-"};
        out += ops[static_cast<int>(x->op)];
        // A negated negation needs a space to dodge `--`.
        if (x->op == UnOp::Neg) {
            const auto* inner = x->operand->as<Unary>();
            const auto* num = x->operand->as<NumberLit>();
            if ((inner && inner->op == UnOp::Neg) ||
                (num && (num->value < 0 || (num->value == 0 && std::signbit(num->value))))) {
                out += ' ';
            }
        }
        emit_at(x->operand, kUnary, out);
        return;
    }
    if (const auto* x = e.as<DeleteExpr>()) {
        out += "delete ";
        emit_at(x->target, kUnary, out);
        return;
    }
    if (const auto* x = e.as<IncDec>()) {
        const char* op = x->increment ? "++" : "--";
        if (x->prefix) {
            out += op;
            emit_at(x->target, kUnary, out);
        } else {
            emit_at(x->target, kPostfix, out);
            out += op;
        }
        return;
    }
    if (const auto* x = e.as<Cond>()) {
        emit_at(x->cond, kOr, out);
        out += " ? ";
        emit_at(x->then_expr, kAssign, out);
        out += " : ";
        emit_at(x->else_expr, kAssign, out);
        return;
    }
    if (const auto* x = e.as<Comma>()) {
        emit_at(x->first, kAssign, out);
        out += ", ";
        emit_at(x->rest, kAssign, out);
        return;
    }
    assert(false && "unhandled surface expression");
}

void emit_var_decls(const VarDecl& v, std::string& out) {
    out += "var ";
    for (size_t i = 0; i < v.decls.size(); ++i) {
        if (i) out += ", ";
        out += v.decls[i].first;
        if (v.decls[i].second) {
            out += " = ";
            emit_at(v.decls[i].second, kAssign, out);
        }
    }
}

void emit_stmt(const Stmt& s, int indent, std::string& out) {
    out.append(static_cast<size_t>(indent) * 2, ' ');
    if (const auto* x = s.as<VarDecl>()) {
        emit_var_decls(*x, out);
        out += ";\n";
        return;
    }
    if (const auto* x = s.as<ExprStmt>()) {
        // Statements cannot open with `function` or `{`; check the whole
        // left spine of the printed expression.
        std::function<bool(const Expr&)> starts_braceish = [&](const Expr& e2) -> bool {
            if (e2.is<FuncLit>() || e2.is<ObjectLit>()) return true;
            if (const auto* m = e2.as<Member>()) return starts_braceish(*m->object);
            if (const auto* c = e2.as<Call>()) return starts_braceish(*c->callee);
            if (const auto* a = e2.as<Assign>()) return starts_braceish(*a->target);
            if (const auto* b = e2.as<Binary>()) return starts_braceish(*b->lhs);
            if (const auto* c = e2.as<Cond>()) return starts_braceish(*c->cond);
            if (const auto* c = e2.as<Comma>()) return starts_braceish(*c->first);
            if (const auto* i = e2.as<IncDec>()) {
                return !i->prefix && starts_braceish(*i->target);
            }
            return false;
        };
        std::string body;
        emit_expr(*x->expr, kComma, body);
        if (starts_braceish(*x->expr)) {
            out += "(" + body + ")";
        } else {
            out += body;
        }
        out += ";\n";
        return;
    }
    if (const auto* x = s.as<IfStmt>()) {
        out += "if (";
        emit_expr(*x->cond, kComma, out);
        out += ")";
        bool guard = x->else_stmt && swallows_else(*x->then_stmt);
        if (x->then_stmt->is<BlockStmt>() || guard) out += " ";
        emit_body(x->then_stmt, indent, out, guard);
        if (x->else_stmt) {
            out.append(static_cast<size_t>(indent) * 2, ' ');
            out += "else";
            if (x->else_stmt->is<BlockStmt>()) out += " ";
            emit_body(x->else_stmt, indent, out);
        }
        return;
    }
    if (const auto* x = s.as<WhileStmt>()) {
        out += "while (";
        emit_expr(*x->cond, kComma, out);
        out += ")";
        if (x->body->is<BlockStmt>()) out += " ";
        emit_body(x->body, indent, out);
        return;
    }
    if (const auto* x = s.as<DoWhileStmt>()) {
        out += "do";
        if (x->body->is<BlockStmt>()) out += " ";
        if (const auto* b = x->body->as<BlockStmt>()) {
            emit_block(b->body, indent, out);
        } else {
            out += "\n";
            emit_stmt(*x->body, indent + 1, out);
            out.append(static_cast<size_t>(indent) * 2, ' ');
        }
        out += " while (";
        emit_expr(*x->cond, kComma, out);
        out += ");\n";
        return;
    }
    if (const auto* x = s.as<ForStmt>()) {
        out += "for (";
        if (x->init) {
            if (const auto* vd = x->init->as<VarDecl>()) {
                emit_var_decls(*vd, out);
            } else if (const auto* es = x->init->as<ExprStmt>()) {
                emit_expr(*es->expr, kComma, out);
            }
        }
        out += "; ";
        if (x->cond) emit_expr(*x->cond, kComma, out);
        out += "; ";
        if (x->update) emit_expr(*x->update, kComma, out);
        out += ")";
        if (x->body->is<BlockStmt>()) out += " ";
        emit_body(x->body, indent, out);
        return;
    }
    if (const auto* x = s.as<ForInStmt>()) {
        out += "for (";
        if (x->declares) out += "var ";
        out += x->name + " in ";
        emit_expr(*x->object, kComma, out);
        out += ")";
        if (x->body->is<BlockStmt>()) out += " ";
        emit_body(x->body, indent, out);
        return;
    }
    if (const auto* x = s.as<ReturnStmt>()) {
        out += "return";
        if (x->value) {
            out += ' ';
            emit_expr(*x->value, kComma, out);
        }
        out += ";\n";
        return;
    }
    if (const auto* x = s.as<BreakStmt>()) {
        out += "break" + (x->label.empty() ? "" : " " + x->label) + ";\n";
        return;
    }
    if (const auto* x = s.as<ContinueStmt>()) {
        out += "continue" + (x->label.empty() ? "" : " " + x->label) + ";\n";
        return;
    }
    if (const auto* x = s.as<LabeledStmt>()) {
        out += x->label + ":";
        if (x->body->is<BlockStmt>()) out += " ";
        emit_body(x->body, indent, out);
        return;
    }
    if (const auto* x = s.as<TryStmt>()) {
        out += "try ";
        emit_block(x->block, indent, out);
        if (x->has_catch) {
            out += " catch (" + x->catch_binder + ") ";
            emit_block(x->catch_block, indent, out);
        }
        if (x->has_finally) {
            out += " finally ";
            emit_block(x->finally_block, indent, out);
        }
        out += "\n";
        return;
    }
    if (const auto* x = s.as<ThrowStmt>()) {
        out += "throw ";
        emit_expr(*x->value, kComma, out);
        out += ";\n";
        return;
    }
    if (const auto* x = s.as<SwitchStmt>()) {
        out += "switch (";
        emit_expr(*x->disc, kComma, out);
        out += ") {\n";
        for (const auto& c : x->cases) {
            out.append(static_cast<size_t>(indent + 1) * 2, ' ');
            if (c.test) {
                out += "case ";
                emit_expr(*c.test, kComma, out);
                out += ":\n";
            } else {
                out += "default:\n";
            }
            for (const auto& cs : c.body) emit_stmt(*cs, indent + 2, out);
        }
        out.append(static_cast<size_t>(indent) * 2, ' ');
        out += "}\n";
        return;
    }
    if (const auto* x = s.as<WithStmt>()) {
        out += "with (";
        emit_expr(*x->object, kComma, out);
        out += ")";
        if (x->body->is<BlockStmt>()) out += " ";
        emit_body(x->body, indent, out);
        return;
    }
    if (const auto* x = s.as<BlockStmt>()) {
        emit_block(x->body, indent, out);
        out += "\n";
        return;
    }
    if (const auto* x = s.as<FuncDecl>()) {
        emit_function("function " + x->name, x->params, x->body, indent, out);
        out += "\n";
        return;
    }
    out += ";\n";  // empty statement
}

}  // namespace

std::string print_program(const Program& program) {
    std::string out;
    for (const auto& s : program.body) emit_stmt(*s, 0, out);
    return out;
}

std::string print_stmt(const StmtPtr& s, int indent) {
    std::string out;
    emit_stmt(*s, indent, out);
    return out;
}

std::string print_js_expr(const ExprPtr& e) {
    std::string out;
    emit_expr(*e, kComma, out);
    return out;
}

// ---- structural equality ----

namespace {
bool stmts_equal(const std::vector<StmtPtr>& a, const std::vector<StmtPtr>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (!ast_equal(*a[i], *b[i])) return false;
    }
    return true;
}
bool exprs_equal(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (!ast_equal(*a[i], *b[i])) return false;
    }
    return true;
}
bool opt_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    return ast_equal(*a, *b);
}
bool opt_equal(const StmtPtr& a, const StmtPtr& b) {
    if (!a || !b) return !a && !b;
    return ast_equal(*a, *b);
}
}  // namespace

bool ast_equal(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* x = a.as<NumberLit>()) {
        double av = x->value, bv = b.as<NumberLit>()->value;
        if (std::isnan(av) && std::isnan(bv)) return true;
        return av == bv && std::signbit(av) == std::signbit(bv);
    }
    if (const auto* x = a.as<StringLit>()) return x->value == b.as<StringLit>()->value;
    if (const auto* x = a.as<BoolLit>()) return x->value == b.as<BoolLit>()->value;
    if (a.is<NullLit>() || a.is<This>()) return true;
    if (const auto* x = a.as<Ident>()) return x->name == b.as<Ident>()->name;
    if (const auto* x = a.as<ObjectLit>()) {
        const auto* y = b.as<ObjectLit>();
        if (x->fields.size() != y->fields.size()) return false;
        for (size_t i = 0; i < x->fields.size(); ++i) {
            if (x->fields[i].first != y->fields[i].first) return false;
            if (!ast_equal(*x->fields[i].second, *y->fields[i].second)) return false;
        }
        return true;
    }
    if (const auto* x = a.as<ArrayLit>()) {
        return exprs_equal(x->elements, b.as<ArrayLit>()->elements);
    }
    if (const auto* x = a.as<FuncLit>()) {
        const auto* y = b.as<FuncLit>();
        return x->name == y->name && x->params == y->params && stmts_equal(x->body, y->body);
    }
    if (const auto* x = a.as<Member>()) {
        const auto* y = b.as<Member>();
        if (x->name != y->name) return false;
        if (!ast_equal(*x->object, *y->object)) return false;
        return opt_equal(x->field, y->field);
    }
    if (const auto* x = a.as<Call>()) {
        const auto* y = b.as<Call>();
        return ast_equal(*x->callee, *y->callee) && exprs_equal(x->args, y->args);
    }
    if (const auto* x = a.as<New>()) {
        const auto* y = b.as<New>();
        return ast_equal(*x->callee, *y->callee) && exprs_equal(x->args, y->args);
    }
    if (const auto* x = a.as<Assign>()) {
        const auto* y = b.as<Assign>();
        return x->op == y->op && ast_equal(*x->target, *y->target) &&
               ast_equal(*x->value, *y->value);
    }
    if (const auto* x = a.as<Binary>()) {
        const auto* y = b.as<Binary>();
        return x->op == y->op && ast_equal(*x->lhs, *y->lhs) && ast_equal(*x->rhs, *y->rhs);
    }
    if (const auto* x = a.as<Unary>()) {
        const auto* y = b.as<Unary>();
        return x->op == y->op && ast_equal(*x->operand, *y->operand);
    }
    if (const auto* x = a.as<DeleteExpr>()) {
        return ast_equal(*x->target, *b.as<DeleteExpr>()->target);
    }
    if (const auto* x = a.as<IncDec>()) {
        const auto* y = b.as<IncDec>();
        return x->increment == y->increment && x->prefix == y->prefix &&
               ast_equal(*x->target, *y->target);
    }
    if (const auto* x = a.as<Cond>()) {
        const auto* y = b.as<Cond>();
        return ast_equal(*x->cond, *y->cond) && ast_equal(*x->then_expr, *y->then_expr) &&
               ast_equal(*x->else_expr, *y->else_expr);
    }
    if (const auto* x = a.as<Comma>()) {
        const auto* y = b.as<Comma>();
        return ast_equal(*x->first, *y->first) && ast_equal(*x->rest, *y->rest);
    }
    return false;
}

bool ast_equal(const Stmt& a, const Stmt& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* x = a.as<VarDecl>()) {
        const auto* y = b.as<VarDecl>();
        if (x->decls.size() != y->decls.size()) return false;
        for (size_t i = 0; i < x->decls.size(); ++i) {
            if (x->decls[i].first != y->decls[i].first) return false;
            if (!opt_equal(x->decls[i].second, y->decls[i].second)) return false;
        }
        return true;
    }
    if (const auto* x = a.as<ExprStmt>()) return ast_equal(*x->expr, *b.as<ExprStmt>()->expr);
    if (const auto* x = a.as<IfStmt>()) {
        const auto* y = b.as<IfStmt>();
        return ast_equal(*x->cond, *y->cond) && ast_equal(*x->then_stmt, *y->then_stmt) &&
               opt_equal(x->else_stmt, y->else_stmt);
    }
    if (const auto* x = a.as<WhileStmt>()) {
        const auto* y = b.as<WhileStmt>();
        return ast_equal(*x->cond, *y->cond) && ast_equal(*x->body, *y->body);
    }
    if (const auto* x = a.as<DoWhileStmt>()) {
        const auto* y = b.as<DoWhileStmt>();
        return ast_equal(*x->body, *y->body) && ast_equal(*x->cond, *y->cond);
    }
    if (const auto* x = a.as<ForStmt>()) {
        const auto* y = b.as<ForStmt>();
        return opt_equal(x->init, y->init) && opt_equal(x->cond, y->cond) &&
               opt_equal(x->update, y->update) && ast_equal(*x->body, *y->body);
    }
    if (const auto* x = a.as<ForInStmt>()) {
        const auto* y = b.as<ForInStmt>();
        return x->declares == y->declares && x->name == y->name &&
               ast_equal(*x->object, *y->object) && ast_equal(*x->body, *y->body);
    }
    if (const auto* x = a.as<ReturnStmt>()) return opt_equal(x->value, b.as<ReturnStmt>()->value);
    if (const auto* x = a.as<BreakStmt>()) return x->label == b.as<BreakStmt>()->label;
    if (const auto* x = a.as<ContinueStmt>()) return x->label == b.as<ContinueStmt>()->label;
    if (const auto* x = a.as<LabeledStmt>()) {
        const auto* y = b.as<LabeledStmt>();
        return x->label == y->label && ast_equal(*x->body, *y->body);
    }
    if (const auto* x = a.as<TryStmt>()) {
        const auto* y = b.as<TryStmt>();
        return x->has_catch == y->has_catch && x->has_finally == y->has_finally &&
               x->catch_binder == y->catch_binder && stmts_equal(x->block, y->block) &&
               stmts_equal(x->catch_block, y->catch_block) &&
               stmts_equal(x->finally_block, y->finally_block);
    }
    if (const auto* x = a.as<ThrowStmt>()) return ast_equal(*x->value, *b.as<ThrowStmt>()->value);
    if (const auto* x = a.as<SwitchStmt>()) {
        const auto* y = b.as<SwitchStmt>();
        if (!ast_equal(*x->disc, *y->disc)) return false;
        if (x->cases.size() != y->cases.size()) return false;
        for (size_t i = 0; i < x->cases.size(); ++i) {
            if (!opt_equal(x->cases[i].test, y->cases[i].test)) return false;
            if (!stmts_equal(x->cases[i].body, y->cases[i].body)) return false;
        }
        return true;
    }
    if (const auto* x = a.as<WithStmt>()) {
        const auto* y = b.as<WithStmt>();
        return ast_equal(*x->object, *y->object) && ast_equal(*x->body, *y->body);
    }
    if (const auto* x = a.as<BlockStmt>()) return stmts_equal(x->body, b.as<BlockStmt>()->body);
    if (const auto* x = a.as<FuncDecl>()) {
        const auto* y = b.as<FuncDecl>();
        return x->name == y->name && x->params == y->params && stmts_equal(x->body, y->body);
    }
    return a.is<EmptyStmt>();
}

bool ast_equal(const Program& a, const Program& b) { return stmts_equal(a.body, b.body); }

}  // namespace ljs::js
