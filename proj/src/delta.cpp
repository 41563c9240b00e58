#include "ljs/delta.hpp"

#include <cmath>

#include "ljs/numfmt.hpp"

namespace ljs {

ExprPtr make_error_value(const std::string& type, const std::string& message) {
    return make_object({{"type", make_string(type)}, {"message", make_string(message)}});
}

bool js_to_boolean(const Expr& v) {
    if (const auto* c = v.as<ConstExpr>()) {
        switch (c->value.kind()) {
            case Constant::Kind::Number: {
                double d = c->value.as_number();
                return d != 0 && !std::isnan(d);
            }
            case Constant::Kind::String: return !c->value.as_string().empty();
            case Constant::Kind::Boolean: return c->value.as_boolean();
            case Constant::Kind::Undefined:
            case Constant::Kind::Null: return false;
        }
    }
    return true;  // locations, objects, functions
}

std::string js_typeof(const Expr& v) {
    if (const auto* c = v.as<ConstExpr>()) {
        switch (c->value.kind()) {
            case Constant::Kind::Number: return "number";
            case Constant::Kind::String: return "string";
            case Constant::Kind::Boolean: return "boolean";
            case Constant::Kind::Undefined: return "undefined";
            case Constant::Kind::Null: return "object";
        }
    }
    if (v.is<FuncExpr>()) return "function";
    return "object";  // object literals and locations
}

bool js_strict_eq(const Expr& a, const Expr& b) {
    const auto* ca = a.as<ConstExpr>();
    const auto* cb = b.as<ConstExpr>();
    if (ca && cb) {
        if (ca->value.kind() != cb->value.kind()) return false;
        switch (ca->value.kind()) {
            case Constant::Kind::Number:
                return ca->value.as_number() == cb->value.as_number();  // IEEE: NaN ≠ NaN
            case Constant::Kind::String: return ca->value.as_string() == cb->value.as_string();
            case Constant::Kind::Boolean: return ca->value.as_boolean() == cb->value.as_boolean();
            case Constant::Kind::Undefined:
            case Constant::Kind::Null: return true;
        }
    }
    const auto* la = a.as<LocExpr>();
    const auto* lb = b.as<LocExpr>();
    if (la && lb) return la->loc == lb->loc;
    // Desugared comparisons only ever see constants and locations here; raw
    // compound values compare unequal.
    return false;
}

namespace {

DeltaResult ok(Constant c) { return DeltaResult{std::move(c), nullptr}; }
DeltaResult err(const std::string& msg) {
    return DeltaResult{std::nullopt, make_error_value("TypeError", msg)};
}

std::optional<double> num_of(const Expr& v) {
    const auto* c = v.as<ConstExpr>();
    if (c && c->value.is(Constant::Kind::Number)) return c->value.as_number();
    return std::nullopt;
}
const std::string* str_of(const Expr& v) {
    const auto* c = v.as<ConstExpr>();
    if (c && c->value.is(Constant::Kind::String)) return &c->value.as_string();
    return nullptr;
}

DeltaResult arith(PrimOp op, const Expr& a, const Expr& b) {
    auto x = num_of(a), y = num_of(b);
    if (!x || !y) return err(std::string(prim_name(op)) + " expects numbers");
    double r = 0;
    switch (op) {
        case PrimOp::Add: r = *x + *y; break;
        case PrimOp::Sub: r = *x - *y; break;
        case PrimOp::Mul: r = *x * *y; break;
        case PrimOp::Div: r = *x / *y; break;
        case PrimOp::Mod: r = std::fmod(*x, *y); break;
        default: return err("not an arithmetic op");
    }
    return ok(Constant::number(r));
}

DeltaResult relational(PrimOp op, const Expr& a, const Expr& b) {
    auto x = num_of(a), y = num_of(b);
    if (x && y) {
        bool r = false;
        switch (op) {
            case PrimOp::Lt: r = *x < *y; break;
            case PrimOp::Le: r = *x <= *y; break;
            case PrimOp::Gt: r = *x > *y; break;
            case PrimOp::Ge: r = *x >= *y; break;
            default: break;
        }
        return ok(Constant::boolean(r));
    }
    const auto* sa = str_of(a);
    const auto* sb = str_of(b);
    if (sa && sb) {
        bool r = false;
        switch (op) {
            case PrimOp::Lt: r = *sa < *sb; break;
            case PrimOp::Le: r = *sa <= *sb; break;
            case PrimOp::Gt: r = *sa > *sb; break;
            case PrimOp::Ge: r = *sa >= *sb; break;
            default: break;
        }
        return ok(Constant::boolean(r));
    }
    return err(std::string(prim_name(op)) + " expects two numbers or two strings");
}

const ObjectExpr* obj_of(const Expr& v) { return v.as<ObjectExpr>(); }

}  // namespace

DeltaResult delta(PrimOp op, const std::vector<ExprPtr>& args) {
    assert(static_cast<int>(args.size()) == prim_arity(op));
    for ([[maybe_unused]] const auto& a : args) assert(is_value(*a));

    switch (op) {
        case PrimOp::Add:
        case PrimOp::Sub:
        case PrimOp::Mul:
        case PrimOp::Div:
        case PrimOp::Mod:
            return arith(op, *args[0], *args[1]);

        case PrimOp::Lt:
        case PrimOp::Le:
        case PrimOp::Gt:
        case PrimOp::Ge:
            return relational(op, *args[0], *args[1]);

        case PrimOp::StrCat: {
            const auto* a = str_of(*args[0]);
            const auto* b = str_of(*args[1]);
            if (!a || !b) return err("strcat expects strings");
            return ok(Constant::string(*a + *b));
        }
        case PrimOp::NumToStr: {
            auto n = num_of(*args[0]);
            if (!n) return err("numstr expects a number");
            return ok(Constant::string(js_number_to_string(*n)));
        }
        case PrimOp::StrToNum: {
            const auto* s = str_of(*args[0]);
            if (!s) return err("strnum expects a string");
            return ok(Constant::number(js_string_to_number(*s)));
        }
        case PrimOp::ToBool:
            return ok(Constant::boolean(js_to_boolean(*args[0])));
        case PrimOp::StxEq:
            return ok(Constant::boolean(js_strict_eq(*args[0], *args[1])));
        case PrimOp::TypeOf:
            return ok(Constant::string(js_typeof(*args[0])));
        case PrimOp::HasOwnField: {
            const auto* o = obj_of(*args[0]);
            const auto* f = str_of(*args[1]);
            if (!o || !f) return err("hasown expects an object and a string");
            for (const auto& [k, v] : o->fields) {
                (void)v;
                if (k == *f) return ok(Constant::boolean(true));
            }
            return ok(Constant::boolean(false));
        }
        case PrimOp::FieldNames: {
            const auto* o = obj_of(*args[0]);
            if (!o) return err("fields expects an object");
            std::string joined;
            for (size_t i = 0; i < o->fields.size(); ++i) {
                if (i) joined += ',';
                joined += o->fields[i].first;
            }
            return ok(Constant::string(joined));
        }
        case PrimOp::FirstField: {
            const auto* o = obj_of(*args[0]);
            if (!o) return err("firstfield expects an object");
            if (o->fields.empty()) return ok(Constant::undefined());
            return ok(Constant::string(o->fields.front().first));
        }
        case PrimOp::Floor: {
            auto n = num_of(*args[0]);
            if (!n) return err("floor expects a number");
            return ok(Constant::number(std::floor(*n)));
        }
        case PrimOp::IsNaN: {
            auto n = num_of(*args[0]);
            if (!n) return err("isnan expects a number");
            return ok(Constant::boolean(std::isnan(*n)));
        }
        case PrimOp::IsLoc:
            return ok(Constant::boolean(args[0]->is<LocExpr>()));
    }
    return err("unknown primitive");
}

}  // namespace ljs
