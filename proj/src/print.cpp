#include "ljs/print.hpp"

#include <cmath>

#include "ljs/numfmt.hpp"

namespace ljs {

namespace {

// Binding tightness. A child whose natural level is below the level its
// position requires gets parenthesized.
enum Level {
    kSeq = 0,
    kAssign = 1,
    kPrefix = 2,
    kPostfix = 3,
    kAtom = 4,
};

int natural_level(const Expr& e) {
    // let's body is maximal, so a let binds as loosely as a seq.
    if (e.is<SeqExpr>() || e.is<LetExpr>()) return kSeq;
    if (e.is<SetRefExpr>() || e.is<UpdateFieldExpr>()) return kAssign;
    if (e.is<RefExpr>() || e.is<DerefExpr>() || e.is<ThrowExpr>() ||
        e.is<ErrExpr>() || e.is<BreakExpr>() || e.is<DeleteFieldExpr>()) {
        return kPrefix;
    }
    if (e.is<AppExpr>() || e.is<GetFieldExpr>()) return kPostfix;
    return kAtom;
}

void emit(const Expr& e, std::string& out);

void emit_at(const ExprPtr& e, int min_level, std::string& out) {
    if (natural_level(*e) < min_level) {
        out += '(';
        emit(*e, out);
        out += ')';
    } else {
        emit(*e, out);
    }
}

void quote_string(const std::string& s, std::string& out) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            case '\b': out += "\\b"; break;
            case '\f': out += "\\f"; break;
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

void emit_const(const Constant& c, std::string& out) {
    switch (c.kind()) {
        case Constant::Kind::Number: {
            double v = c.as_number();
            if (v == 0 && std::signbit(v)) {
                out += "-0";  // core text keeps -0 distinct; display does not
            } else {
                out += js_number_to_string(v);
            }
            return;
        }
        case Constant::Kind::String: quote_string(c.as_string(), out); return;
        case Constant::Kind::Boolean: out += c.as_boolean() ? "true" : "false"; return;
        case Constant::Kind::Undefined: out += "undefined"; return;
        case Constant::Kind::Null: out += "null"; return;
    }
}

void emit(const Expr& e, std::string& out) {
    if (const auto* x = e.as<IdExpr>()) { out += x->name; return; }
    if (const auto* x = e.as<ConstExpr>()) { emit_const(x->value, out); return; }
    if (const auto* x = e.as<LocExpr>()) {
        out += '#';
        out += std::to_string(x->loc.id);
        return;
    }
    if (const auto* x = e.as<FuncExpr>()) {
        out += "func(";
        for (size_t i = 0; i < x->params.size(); ++i) {
            if (i) out += ", ";
            out += x->params[i];
        }
        out += ") { return ";
        emit(*x->body, out);
        out += " }";
        return;
    }
    if (const auto* x = e.as<ObjectExpr>()) {
        if (x->fields.empty()) { out += "{}"; return; }
        out += "{ ";
        for (size_t i = 0; i < x->fields.size(); ++i) {
            if (i) out += ", ";
            quote_string(x->fields[i].first, out);
            out += ": ";
            emit_at(x->fields[i].second, kAssign, out);
        }
        out += " }";
        return;
    }
    if (const auto* x = e.as<LetExpr>()) {
        out += "let (" + x->name + " = ";
        emit(*x->bound, out);
        out += ") ";
        emit(*x->body, out);
        return;
    }
    if (const auto* x = e.as<AppExpr>()) {
        emit_at(x->fn, kPostfix, out);
        out += '(';
        for (size_t i = 0; i < x->args.size(); ++i) {
            if (i) out += ", ";
            emit_at(x->args[i], kAssign, out);
        }
        out += ')';
        return;
    }
    if (const auto* x = e.as<GetFieldExpr>()) {
        emit_at(x->object, kPostfix, out);
        out += '[';
        emit(*x->field, out);
        out += ']';
        return;
    }
    if (const auto* x = e.as<UpdateFieldExpr>()) {
        emit_at(x->object, kPostfix, out);
        out += '[';
        emit(*x->field, out);
        out += "] = ";
        emit_at(x->value, kAssign, out);
        return;
    }
    if (const auto* x = e.as<DeleteFieldExpr>()) {
        out += "delete ";
        emit_at(x->object, kPostfix, out);
        out += '[';
        emit(*x->field, out);
        out += ']';
        return;
    }
    if (const auto* x = e.as<RefExpr>()) {
        out += "ref ";
        emit_at(x->init, kAtom, out);
        return;
    }
    if (const auto* x = e.as<DerefExpr>()) {
        out += "deref ";
        emit_at(x->target, kAtom, out);
        return;
    }
    if (const auto* x = e.as<SetRefExpr>()) {
        // A get-expression target is kept parenthesized so the reader does
        // not take it for a field update.
        if (x->target->is<GetFieldExpr>()) {
            out += '(';
            emit(*x->target, out);
            out += ')';
        } else {
            emit_at(x->target, kPrefix, out);
        }
        out += " = ";
        emit_at(x->value, kAssign, out);
        return;
    }
    if (const auto* x = e.as<IfExpr>()) {
        out += "if (";
        emit(*x->cond, out);
        out += ") { ";
        emit(*x->then_branch, out);
        out += " } else { ";
        emit(*x->else_branch, out);
        out += " }";
        return;
    }
    if (const auto* x = e.as<SeqExpr>()) {
        emit_at(x->first, kAssign, out);
        out += "; ";
        emit_at(x->rest, kSeq, out);
        return;
    }
    if (const auto* x = e.as<WhileExpr>()) {
        out += "while (";
        emit(*x->cond, out);
        out += ") { ";
        emit(*x->body, out);
        out += " }";
        return;
    }
    if (const auto* x = e.as<LabelExpr>()) {
        out += x->label + ": { ";
        emit(*x->body, out);
        out += " }";
        return;
    }
    if (const auto* x = e.as<BreakExpr>()) {
        out += "break " + x->label + " ";
        emit_at(x->value, kAtom, out);
        return;
    }
    if (const auto* x = e.as<TryCatchExpr>()) {
        out += "try { ";
        emit(*x->body, out);
        out += " } catch (" + x->binder + ") { ";
        emit(*x->handler, out);
        out += " }";
        return;
    }
    if (const auto* x = e.as<TryFinallyExpr>()) {
        out += "try { ";
        emit(*x->body, out);
        out += " } finally { ";
        emit(*x->finalizer, out);
        out += " }";
        return;
    }
    if (const auto* x = e.as<ThrowExpr>()) {
        out += "throw ";
        emit_at(x->value, kAtom, out);
        return;
    }
    if (const auto* x = e.as<ErrExpr>()) {
        out += "err ";
        emit_at(x->value, kAtom, out);
        return;
    }
    if (const auto* x = e.as<PrimExpr>()) {
        out += '@';
        out += prim_name(x->op);
        out += '(';
        for (size_t i = 0; i < x->args.size(); ++i) {
            if (i) out += ", ";
            emit_at(x->args[i], kAssign, out);
        }
        out += ')';
        return;
    }
    assert(false && "unhandled expr kind in printer");
}

}  // namespace

std::string print_expr(const Expr& e) {
    std::string out;
    emit(e, out);
    return out;
}

std::string print_configuration(const Store& store, const Expr& e) {
    std::string out;
    for (const auto& [id, v] : store.cells()) {
        out += "#" + std::to_string(id) + " = " + print_expr(*v) + "\n";
    }
    out += print_expr(e) + "\n";
    return out;
}

std::string display_value(const Expr& v) {
    if (const auto* c = v.as<ConstExpr>()) {
        switch (c->value.kind()) {
            case Constant::Kind::Number: return js_number_to_string(c->value.as_number());
            case Constant::Kind::String: return c->value.as_string();
            case Constant::Kind::Boolean: return c->value.as_boolean() ? "true" : "false";
            case Constant::Kind::Undefined: return "undefined";
            case Constant::Kind::Null: return "null";
        }
    }
    if (v.is<FuncExpr>()) return "function";
    return "[object]";
}

}  // namespace ljs
