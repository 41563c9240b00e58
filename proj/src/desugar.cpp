#include "ljs/desugar.hpp"

#include <cassert>
#include <cmath>

#include "ljs/eval.hpp"

namespace ljs {

namespace js_ast = ljs::js;

namespace {

ExprPtr str(const std::string& s) { return make_string(s); }
ExprPtr id(const std::string& s) { return make_id(s); }
ExprPtr num(double v) { return make_number(v); }
ExprPtr undef() { return make_undefined(); }

ExprPtr prim1(PrimOp op, ExprPtr a) { return make_prim(op, {std::move(a)}); }
ExprPtr prim2(PrimOp op, ExprPtr a, ExprPtr b) {
    return make_prim(op, {std::move(a), std::move(b)});
}

ExprPtr type_is(ExprPtr v, const std::string& t) {
    return prim2(PrimOp::StxEq, prim1(PrimOp::TypeOf, std::move(v)), str(t));
}

// A function-valued object: a ref'd record carrying only "code".
ExprPtr method_object(ExprPtr code) {
    return make_ref(make_object({{"code", std::move(code)}}));
}

// Stringification of an already-primitive value; the dispatch every field
// coercion and the %toStrPrim helper share. All arms yield strings that
// cannot be "XMLHttpRequest" except the identity arm, which the sandbox
// narrows through occurrence typing.
ExprPtr primitive_stringify(const ExprPtr& v) {
    return make_if(
        type_is(v, "string"), v,
        make_if(type_is(v, "number"), prim1(PrimOp::NumToStr, v),
                make_if(type_is(v, "boolean"),
                        make_if(v, str("true"), str("false")),
                        make_if(type_is(v, "undefined"), str("undefined"), str("null")))));
}

ExprPtr throw_type_error(const std::string& message) {
    return make_throw(
        make_object({{"type", str("TypeError")}, {"message", str(message)}}));
}

class Desugarer {
public:
    ExprPtr run(const js_ast::Program& program) {
        // Top level: vars and function declarations become global-object
        // fields; declarations hoist ahead of the statements.
        std::vector<ExprPtr> parts;
        std::set<std::string> hoisted = lifted_var_names(program.body);
        for (const auto& name : hoisted) {
            parts.push_back(make_if(
                prim2(PrimOp::HasOwnField, make_deref(id("%window")), str(name)), undef(),
                global_write(name, undef())));
        }
        for (const auto& s : program.body) {
            if (const auto* fd = s->as<js_ast::FuncDecl>()) {
                parts.push_back(global_write(
                    fd->name, function_value(fd->params, fd->body, /*self_name=*/"")));
            }
        }
        for (const auto& s : program.body) {
            ExprPtr e = stmt(*s);
            if (e) parts.push_back(std::move(e));
        }
        return seq_fold(std::move(parts));
    }

private:
    // ---- naming and scopes ----

    int fresh_ = 0;
    std::string fresh(const char* role) {
        return std::string("%") + role + std::to_string(fresh_++);
    }

    enum class BindKind { Cell, Direct };
    struct Scope {
        bool is_with = false;
        std::string with_temp;                  // when is_with
        std::map<std::string, BindKind> names;  // otherwise
    };
    std::vector<Scope> scopes_;

    struct LabelTargets {
        std::string brk;
        std::string cont;  // empty when not a loop
    };
    std::vector<LabelTargets> breakables_;                      // innermost last
    std::vector<std::pair<std::string, LabelTargets>> labels_;  // user labels
    bool in_function_ = false;

    struct ScopeGuard {
        Desugarer& d;
        explicit ScopeGuard(Desugarer& dd, Scope s) : d(dd) {
            d.scopes_.push_back(std::move(s));
        }
        ~ScopeGuard() { d.scopes_.pop_back(); }
    };

    // ---- identifier resolution ----

    struct Resolution {
        bool found = false;
        BindKind kind = BindKind::Direct;
        std::vector<std::string> withs;  // with temps crossed, innermost first
    };

    Resolution resolve(const std::string& name) const {
        Resolution r;
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            if (it->is_with) {
                r.withs.push_back(it->with_temp);
                continue;
            }
            auto hit = it->names.find(name);
            if (hit != it->names.end()) {
                r.found = true;
                r.kind = hit->second;
                return r;
            }
        }
        return r;
    }

    ExprPtr global_read(const std::string& name) {
        return make_get(make_deref(id("%window")), str(name));
    }

    // Value of the whole expression is the assigned value (bound once).
    ExprPtr global_write(const std::string& name, ExprPtr value) {
        std::string v = fresh("v");
        return make_let(
            v, std::move(value),
            make_seq(make_setref(id("%window"),
                                 make_update(make_deref(id("%window")), str(name), id(v))),
                     id(v)));
    }

    ExprPtr member_read_core(ExprPtr obj_loc, ExprPtr field_string) {
        return make_get(make_deref(std::move(obj_loc)), std::move(field_string));
    }

    // obj := (deref obj)[field] = v, yielding v.
    ExprPtr member_write_core(const std::string& obj_var, ExprPtr field_string,
                              const std::string& value_var) {
        return make_seq(
            make_setref(id(obj_var), make_update(make_deref(id(obj_var)),
                                                 std::move(field_string), id(value_var))),
            id(value_var));
    }

    ExprPtr ident_read(const std::string& name) {
        Resolution r = resolve(name);
        ExprPtr base;
        if (!r.found) {
            base = global_read(name);
        } else if (r.kind == BindKind::Cell) {
            base = make_deref(id(name));
        } else {
            base = id(name);
        }
        // Innermost with is tested first, so it ends up outermost.
        for (auto it = r.withs.rbegin(); it != r.withs.rend(); ++it) {
            base = make_if(make_app(id("%inChain"), {id(*it), str(name)}),
                           member_read_core(id(*it), str(name)), std::move(base));
        }
        return base;
    }

    // Writes `name := (value of value_var)`; every branch yields value_var.
    ExprPtr ident_write(const std::string& name, const std::string& value_var) {
        Resolution r = resolve(name);
        ExprPtr base;
        if (!r.found) {
            base = make_seq(
                make_setref(id("%window"), make_update(make_deref(id("%window")), str(name),
                                                       id(value_var))),
                id(value_var));
        } else {
            assert(r.kind == BindKind::Cell && "write to an unwrapped binding");
            base = make_setref(id(name), id(value_var));
        }
        for (auto it = r.withs.rbegin(); it != r.withs.rend(); ++it) {
            // Scope-object writes are guarded by an own-property test.
            base = make_if(prim2(PrimOp::HasOwnField, make_deref(id(*it)), str(name)),
                           member_write_core(*it, str(name), value_var), std::move(base));
        }
        return base;
    }

    ExprPtr ident_assign(const std::string& name, ExprPtr value) {
        Resolution r = resolve(name);
        if (r.found && r.withs.empty() && r.kind == BindKind::Cell) {
            return make_setref(id(name), std::move(value));  // setref yields the value
        }
        if (!r.found && r.withs.empty()) {
            return global_write(name, std::move(value));
        }
        std::string v = fresh("v");
        return make_let(v, std::move(value), ident_write(name, v));
    }

    // ---- field-name coercion (string-hint ToString, inline by design) ----

    ExprPtr tostring_method_call(const std::string& x) {
        std::string m = fresh("m");
        std::string mr = fresh("mr");
        std::string r = fresh("r");
        return make_let(
            m, make_get(make_deref(id(x)), str("toString")),
            make_if(
                prim1(PrimOp::IsLoc, id(m)),
                make_let(
                    mr, make_deref(id(m)),
                    make_if(prim2(PrimOp::HasOwnField, id(mr), str("code")),
                            make_let(r, make_app(make_get(id(mr), str("code")), {id(x)}),
                                     make_if(prim1(PrimOp::IsLoc, id(r)),
                                             throw_type_error("toString returned an object"),
                                             primitive_stringify(id(r)))),
                            throw_type_error("toString is not callable"))),
                throw_type_error("object has no toString method")));
    }

    // The coercion conditional filling every computed field position:
    // a location takes the toString route, a primitive is stringified.
    ExprPtr coerce_field(const std::string& x) {
        return make_if(prim1(PrimOp::IsLoc, id(x)), tostring_method_call(x),
                       primitive_stringify(id(x)));
    }

    // ---- ToPrimitive / ToNumber chains (number hint, via helpers) ----

    ExprPtr to_primitive(ExprPtr v) { return make_app(id("%toPrim"), {std::move(v)}); }
    ExprPtr to_number(ExprPtr v) {
        return make_app(id("%toNumPrim"), {to_primitive(std::move(v))});
    }
    ExprPtr to_number_prim(ExprPtr v) { return make_app(id("%toNumPrim"), {std::move(v)}); }
    ExprPtr to_string_prim(ExprPtr v) { return make_app(id("%toStrPrim"), {std::move(v)}); }

    // ---- conditions ----

    static bool known_boolean(const Expr& e) {
        if (const auto* c = e.as<ConstExpr>()) return c->value.is(Constant::Kind::Boolean);
        if (const auto* p = e.as<PrimExpr>()) {
            switch (p->op) {
                case PrimOp::StxEq:
                case PrimOp::Lt:
                case PrimOp::Le:
                case PrimOp::Gt:
                case PrimOp::Ge:
                case PrimOp::ToBool:
                case PrimOp::HasOwnField:
                case PrimOp::IsNaN:
                case PrimOp::IsLoc:
                    return true;
                default:
                    return false;
            }
        }
        if (const auto* i = e.as<IfExpr>()) {
            return known_boolean(*i->then_branch) && known_boolean(*i->else_branch);
        }
        if (const auto* l = e.as<LetExpr>()) return known_boolean(*l->body);
        if (const auto* a = e.as<AppExpr>()) {
            const auto* callee = a->fn->as<IdExpr>();
            return callee && (callee->name == "%inChain" || callee->name == "%instanceOf");
        }
        return false;
    }

    ExprPtr condition(const js_ast::Expr& e) {
        ExprPtr c = expr(e);
        if (known_boolean(*c)) return c;
        return prim1(PrimOp::ToBool, std::move(c));
    }

    // ---- functions ----

    ExprPtr function_value(const std::vector<std::string>& params,
                           const std::vector<js_ast::StmtPtr>& body,
                           const std::string& self_name) {
        std::set<std::string> assigned = assigned_names(body);
        std::set<std::string> lifted = lifted_var_names(body);
        for (const auto& p : params) lifted.erase(p);  // var x with x a parameter

        Scope fn_scope;
        // The self-name of a named function expression has the lowest
        // precedence: parameters and lifted vars shadow it.
        if (!self_name.empty()) fn_scope.names[self_name] = BindKind::Cell;
        fn_scope.names["this"] = BindKind::Direct;
        for (const auto& p : params) {
            fn_scope.names[p] = assigned.count(p) ? BindKind::Cell : BindKind::Direct;
        }
        for (const auto& v : lifted) fn_scope.names[v] = BindKind::Cell;

        ExprPtr core_body;
        {
            ScopeGuard guard(*this, fn_scope);
            bool saved_in_fn = in_function_;
            auto saved_breakables = std::move(breakables_);
            auto saved_labels = std::move(labels_);
            in_function_ = true;
            breakables_.clear();
            labels_.clear();

            std::vector<ExprPtr> parts;
            for (const auto& s : body) {
                if (const auto* fd = s->as<js_ast::FuncDecl>()) {
                    parts.push_back(
                        ident_assign(fd->name, function_value(fd->params, fd->body, "")));
                }
            }
            for (const auto& s : body) {
                ExprPtr e = stmt(*s);
                if (e) parts.push_back(std::move(e));
            }
            core_body = make_label("%ret", seq_fold(std::move(parts)));

            in_function_ = saved_in_fn;
            breakables_ = std::move(saved_breakables);
            labels_ = std::move(saved_labels);
        }

        for (auto it = lifted.rbegin(); it != lifted.rend(); ++it) {
            core_body = make_let(*it, make_ref(undef()), std::move(core_body));
        }
        for (auto it = params.rbegin(); it != params.rend(); ++it) {
            if (assigned.count(*it)) {
                core_body = make_let(*it, make_ref(id(*it)), std::move(core_body));
            }
        }

        std::vector<std::string> core_params;
        core_params.reserve(params.size() + 1);
        core_params.push_back("this");
        core_params.insert(core_params.end(), params.begin(), params.end());

        ExprPtr fn_obj = make_ref(make_object(
            {{"code", make_func(std::move(core_params), std::move(core_body))},
             {"prototype",
              make_ref(make_object(
                  {{"__proto__", make_get(make_deref(id("%Object")), str("prototype"))}}))}}));

        if (self_name.empty()) return fn_obj;

        // Named function expression: the name is visible inside its own body,
        // tied through the store.
        std::string fo = fresh("fo");
        return make_let(self_name, make_ref(undef()),
                        make_let(fo, std::move(fn_obj),
                                 make_seq(make_setref(id(self_name), id(fo)), id(fo))));
    }

    // ---- calls ----

    ExprPtr method_call_core(ExprPtr obj_var, ExprPtr field_string,
                             std::vector<ExprPtr> args) {
        std::string m = fresh("m");
        std::string mr = fresh("mr");
        std::vector<ExprPtr> call_args;
        call_args.push_back(obj_var);
        for (auto& a : args) call_args.push_back(std::move(a));
        return make_let(
            m, member_read_core(obj_var, std::move(field_string)),
            make_let(mr, make_deref(id(m)),
                     make_app(make_get(id(mr), str("code")), std::move(call_args))));
    }

    ExprPtr plain_call_core(ExprPtr callee, std::vector<ExprPtr> args) {
        std::string fo = fresh("fo");
        std::string fr = fresh("fr");
        std::vector<ExprPtr> call_args;
        call_args.push_back(id("%window"));
        for (auto& a : args) call_args.push_back(std::move(a));
        return make_let(
            fo, std::move(callee),
            make_let(fr, make_deref(id(fo)),
                     make_app(make_get(id(fr), str("code")), std::move(call_args))));
    }

    ExprPtr call(const js_ast::Call& c) {
        std::vector<ExprPtr> args;
        args.reserve(c.args.size());
        for (const auto& a : c.args) args.push_back(expr(*a));

        if (const auto* m = c.callee->as<js_ast::Member>()) {
            std::string obj = fresh("o");
            ExprPtr inner;
            if (m->name) {
                inner = method_call_core(id(obj), str(*m->name), std::move(args));
            } else {
                std::string f = fresh("f");
                inner = make_let(f, expr(*m->field),
                                 method_call_core(id(obj), coerce_field(f), std::move(args)));
            }
            return make_let(obj, expr(*m->object), std::move(inner));
        }

        if (const auto* ident = c.callee->as<js_ast::Ident>()) {
            Resolution r = resolve(ident->name);
            if (!r.withs.empty()) {
                // A with-object holding the name turns the call into a method
                // call on it (the scope object becomes `this`). Arguments are
                // bound first so the branches can share them.
                std::vector<std::string> arg_vars;
                std::vector<ExprPtr> arg_ids;
                for (size_t i = 0; i < args.size(); ++i) {
                    arg_vars.push_back(fresh("a"));
                    arg_ids.push_back(id(arg_vars[i]));
                }
                ExprPtr base_callee;
                if (!r.found) base_callee = global_read(ident->name);
                else if (r.kind == BindKind::Cell) base_callee = make_deref(id(ident->name));
                else base_callee = id(ident->name);
                ExprPtr result = plain_call_core(std::move(base_callee), arg_ids);
                for (auto it = r.withs.rbegin(); it != r.withs.rend(); ++it) {
                    result = make_if(make_app(id("%inChain"), {id(*it), str(ident->name)}),
                                     method_call_core(id(*it), str(ident->name), arg_ids),
                                     std::move(result));
                }
                for (size_t i = args.size(); i-- > 0;) {
                    result = make_let(arg_vars[i], std::move(args[i]), std::move(result));
                }
                return result;
            }
        }

        return plain_call_core(expr(*c.callee), std::move(args));
    }

    ExprPtr new_expr(const js_ast::New& n) {
        std::string c = fresh("c");
        std::string cr = fresh("cr");
        std::string obj = fresh("o");
        std::vector<ExprPtr> call_args;
        call_args.push_back(id(obj));
        for (const auto& a : n.args) call_args.push_back(expr(*a));
        return make_let(
            c, expr(*n.callee),
            make_let(
                cr, make_deref(id(c)),
                make_let(
                    obj,
                    make_ref(make_object({{"__proto__", make_get(id(cr), str("prototype"))}})),
                    make_seq(make_app(make_get(id(cr), str("code")), std::move(call_args)),
                             id(obj)))));
    }

    // ---- operators ----

    ExprPtr emit_add(ExprPtr a, ExprPtr b) {
        std::string x = fresh("x");
        std::string y = fresh("y");
        std::string px = fresh("px");
        std::string py = fresh("py");
        return make_let(
            x, std::move(a),
            make_let(
                y, std::move(b),
                make_let(
                    px, to_primitive(id(x)),
                    make_let(
                        py, to_primitive(id(y)),
                        make_if(make_if(type_is(id(px), "string"), make_boolean(true),
                                        type_is(id(py), "string")),
                                prim2(PrimOp::StrCat, to_string_prim(id(px)),
                                      to_string_prim(id(py))),
                                prim2(PrimOp::Add, to_number_prim(id(px)),
                                      to_number_prim(id(py))))))));
    }

    ExprPtr emit_arith(PrimOp op, ExprPtr a, ExprPtr b) {
        return prim2(op, to_number(std::move(a)), to_number(std::move(b)));
    }

    ExprPtr emit_relational(PrimOp op, ExprPtr a, ExprPtr b) {
        std::string x = fresh("x");
        std::string y = fresh("y");
        return make_let(
            x, to_primitive(std::move(a)),
            make_let(y, to_primitive(std::move(b)),
                     make_if(make_if(type_is(id(x), "string"), type_is(id(y), "string"),
                                     make_boolean(false)),
                             prim2(op, id(x), id(y)),
                             prim2(op, to_number_prim(id(x)), to_number_prim(id(y))))));
    }

    ExprPtr is_nullish(ExprPtr v) {
        return make_if(type_is(v, "undefined"), make_boolean(true),
                       prim2(PrimOp::StxEq, v, make_null()));
    }

    ExprPtr emit_loose_eq(ExprPtr a, ExprPtr b) {
        std::string x = fresh("x");
        std::string y = fresh("y");
        std::string px = fresh("px");
        std::string py = fresh("py");
        // Same class: physical equality. Nullish pairs are equal, nullish vs
        // anything else is not. Otherwise compare via ToPrimitive, retesting
        // same-class once (object == string needs it), then numerically.
        return make_let(
            x, std::move(a),
            make_let(
                y, std::move(b),
                make_if(
                    prim2(PrimOp::StxEq, prim1(PrimOp::TypeOf, id(x)),
                          prim1(PrimOp::TypeOf, id(y))),
                    prim2(PrimOp::StxEq, id(x), id(y)),
                    make_if(
                        is_nullish(id(x)), is_nullish(id(y)),
                        make_if(
                            is_nullish(id(y)), make_boolean(false),
                            make_let(
                                px, to_primitive(id(x)),
                                make_let(
                                    py, to_primitive(id(y)),
                                    make_if(
                                        prim2(PrimOp::StxEq, prim1(PrimOp::TypeOf, id(px)),
                                              prim1(PrimOp::TypeOf, id(py))),
                                        prim2(PrimOp::StxEq, id(px), id(py)),
                                        prim2(PrimOp::StxEq, to_number_prim(id(px)),
                                              to_number_prim(id(py)))))))))));
    }

    ExprPtr emit_not(ExprPtr b) {
        return make_if(std::move(b), make_boolean(false), make_boolean(true));
    }

    ExprPtr emit_in(ExprPtr field, ExprPtr object) {
        std::string f = fresh("f");
        std::string o = fresh("o");
        return make_let(
            f, std::move(field),
            make_let(o, std::move(object),
                     make_if(prim1(PrimOp::IsLoc, id(o)),
                             make_app(id("%inChain"), {id(o), coerce_field(f)}),
                             throw_type_error("'in' expects an object"))));
    }

    ExprPtr emit_instanceof(ExprPtr value, ExprPtr constructor) {
        std::string v = fresh("v");
        std::string c = fresh("c");
        return make_let(
            v, std::move(value),
            make_let(c, std::move(constructor),
                     make_if(prim1(PrimOp::IsLoc, id(v)),
                             make_app(id("%instanceOf"),
                                      {id(v), make_get(make_deref(id(c)), str("prototype"))}),
                             make_boolean(false))));
    }

    ExprPtr emit_binary(js_ast::BinOp op, ExprPtr a, ExprPtr b) {
        using B = js_ast::BinOp;
        switch (op) {
            case B::Add: return emit_add(std::move(a), std::move(b));
            case B::Sub: return emit_arith(PrimOp::Sub, std::move(a), std::move(b));
            case B::Mul: return emit_arith(PrimOp::Mul, std::move(a), std::move(b));
            case B::Div: return emit_arith(PrimOp::Div, std::move(a), std::move(b));
            case B::Mod: return emit_arith(PrimOp::Mod, std::move(a), std::move(b));
            case B::Lt: return emit_relational(PrimOp::Lt, std::move(a), std::move(b));
            case B::Le: return emit_relational(PrimOp::Le, std::move(a), std::move(b));
            case B::Gt: return emit_relational(PrimOp::Gt, std::move(a), std::move(b));
            case B::Ge: return emit_relational(PrimOp::Ge, std::move(a), std::move(b));
            case B::Eq: return emit_loose_eq(std::move(a), std::move(b));
            case B::Ne: return emit_not(emit_loose_eq(std::move(a), std::move(b)));
            case B::StrictEq: return prim2(PrimOp::StxEq, std::move(a), std::move(b));
            case B::StrictNe:
                return emit_not(prim2(PrimOp::StxEq, std::move(a), std::move(b)));
            case B::And: {
                std::string x = fresh("x");
                return make_let(x, std::move(a),
                                make_if(prim1(PrimOp::ToBool, id(x)), std::move(b), id(x)));
            }
            case B::Or: {
                std::string x = fresh("x");
                return make_let(x, std::move(a),
                                make_if(prim1(PrimOp::ToBool, id(x)), id(x), std::move(b)));
            }
            case B::In: return emit_in(std::move(a), std::move(b));
            case B::Instanceof: return emit_instanceof(std::move(a), std::move(b));
        }
        assert(false);
        return nullptr;
    }

    // ---- assignment / increment ----

    ExprPtr assign(const js_ast::Assign& a) {
        using A = js_ast::AssignOp;
        auto binop_of = [](A op) {
            switch (op) {
                case A::AddAssign: return js_ast::BinOp::Add;
                case A::SubAssign: return js_ast::BinOp::Sub;
                case A::MulAssign: return js_ast::BinOp::Mul;
                case A::DivAssign: return js_ast::BinOp::Div;
                default: return js_ast::BinOp::Mod;
            }
        };

        if (const auto* ident = a.target->as<js_ast::Ident>()) {
            if (a.op == A::Assign) return ident_assign(ident->name, expr(*a.value));
            ExprPtr combined =
                emit_binary(binop_of(a.op), ident_read(ident->name), expr(*a.value));
            return ident_assign(ident->name, std::move(combined));
        }

        const auto* m = a.target->as<js_ast::Member>();
        assert(m && "assignment target is ident or member");
        std::string o = fresh("o");
        std::string v = fresh("v");

        if (a.op == A::Assign) {
            ExprPtr inner;
            if (m->name) {
                inner = make_let(v, expr(*a.value), member_write_core(o, str(*m->name), v));
            } else {
                std::string f = fresh("f");
                inner = make_let(
                    f, expr(*m->field),
                    make_let(v, expr(*a.value), member_write_core(o, coerce_field(f), v)));
            }
            return make_let(o, expr(*m->object), std::move(inner));
        }

        // Compound: read, combine, write; the coerced field name is computed
        // once and shared by the read and the write.
        std::string fs = fresh("fs");
        ExprPtr read = member_read_core(id(o), id(fs));
        ExprPtr combined = emit_binary(binop_of(a.op), std::move(read), expr(*a.value));
        ExprPtr inner = make_let(v, std::move(combined), member_write_core(o, id(fs), v));
        if (m->name) {
            inner = make_let(fs, str(*m->name), std::move(inner));
        } else {
            std::string f = fresh("f");
            inner = make_let(f, expr(*m->field),
                             make_let(fs, coerce_field(f), std::move(inner)));
        }
        return make_let(o, expr(*m->object), std::move(inner));
    }

    ExprPtr incdec(const js_ast::IncDec& x) {
        PrimOp op = x.increment ? PrimOp::Add : PrimOp::Sub;

        if (const auto* ident = x.target->as<js_ast::Ident>()) {
            if (x.prefix) {
                return ident_assign(ident->name,
                                    prim2(op, to_number(ident_read(ident->name)), num(1)));
            }
            std::string old = fresh("old");
            return make_let(old, to_number(ident_read(ident->name)),
                            make_seq(ident_assign(ident->name, prim2(op, id(old), num(1))),
                                     id(old)));
        }

        const auto* m = x.target->as<js_ast::Member>();
        assert(m);
        std::string o = fresh("o");
        std::string fs = fresh("fs");
        ExprPtr read = to_number(member_read_core(id(o), id(fs)));
        ExprPtr inner;
        if (x.prefix) {
            std::string n = fresh("n");
            inner = make_let(n, prim2(op, std::move(read), num(1)),
                             member_write_core(o, id(fs), n));
        } else {
            std::string old = fresh("old");
            std::string n = fresh("n");
            inner = make_let(old, std::move(read),
                             make_let(n, prim2(op, id(old), num(1)),
                                      make_seq(member_write_core(o, id(fs), n), id(old))));
        }
        if (m->name) {
            inner = make_let(fs, str(*m->name), std::move(inner));
        } else {
            std::string f = fresh("f");
            inner = make_let(f, expr(*m->field),
                             make_let(fs, coerce_field(f), std::move(inner)));
        }
        return make_let(o, expr(*m->object), std::move(inner));
    }

    // ---- expressions ----

    // Stamps the surface span onto the top node of each translation so
    // sandbox rejections can point back at the source.
    ExprPtr expr(const js_ast::Expr& e) {
        ExprPtr out = expr_node(e);
        if (!out->span.valid() && e.span.valid()) out = with_span(out, e.span);
        return out;
    }

    ExprPtr expr_node(const js_ast::Expr& e) {
        if (const auto* x = e.as<js_ast::NumberLit>()) return num(x->value);
        if (const auto* x = e.as<js_ast::StringLit>()) return str(x->value);
        if (const auto* x = e.as<js_ast::BoolLit>()) return make_boolean(x->value);
        if (e.is<js_ast::NullLit>()) return make_null();
        if (e.is<js_ast::This>()) return in_function_ ? id("this") : id("%window");
        if (const auto* x = e.as<js_ast::Ident>()) return ident_read(x->name);
        if (const auto* x = e.as<js_ast::ObjectLit>()) {
            std::vector<std::pair<std::string, ExprPtr>> fields;
            bool has_proto = false;
            for (const auto& [k, v] : x->fields) {
                if (k == "__proto__") has_proto = true;
                fields.emplace_back(k, expr(*v));
            }
            if (!has_proto) {
                fields.emplace_back("__proto__",
                                    make_get(make_deref(id("%Object")), str("prototype")));
            }
            return make_ref(make_object(std::move(fields)));
        }
        if (const auto* x = e.as<js_ast::ArrayLit>()) {
            std::vector<std::pair<std::string, ExprPtr>> fields;
            for (size_t i = 0; i < x->elements.size(); ++i) {
                fields.emplace_back(std::to_string(i), expr(*x->elements[i]));
            }
            fields.emplace_back("length", num(static_cast<double>(x->elements.size())));
            fields.emplace_back("__proto__",
                                make_get(make_deref(id("%Object")), str("prototype")));
            return make_ref(make_object(std::move(fields)));
        }
        if (const auto* x = e.as<js_ast::FuncLit>()) {
            return function_value(x->params, x->body, x->name);
        }
        if (const auto* x = e.as<js_ast::Member>()) {
            if (x->name) {
                return member_read_core(expr(*x->object), str(*x->name));
            }
            std::string o = fresh("o");
            std::string f = fresh("f");
            return make_let(
                o, expr(*x->object),
                make_let(f, expr(*x->field), member_read_core(id(o), coerce_field(f))));
        }
        if (const auto* x = e.as<js_ast::Call>()) return call(*x);
        if (const auto* x = e.as<js_ast::New>()) return new_expr(*x);
        if (const auto* x = e.as<js_ast::Assign>()) return assign(*x);
        if (const auto* x = e.as<js_ast::Binary>()) {
            return emit_binary(x->op, expr(*x->lhs), expr(*x->rhs));
        }
        if (const auto* x = e.as<js_ast::Unary>()) {
            switch (x->op) {
                case js_ast::UnOp::TypeOf: return typeof_expansion(*x->operand);
                case js_ast::UnOp::Not: return emit_not(condition(*x->operand));
                case js_ast::UnOp::Neg:
                    return prim2(PrimOp::Mul, to_number(expr(*x->operand)), num(-1));
            }
        }
        if (const auto* x = e.as<js_ast::DeleteExpr>()) return delete_expr(*x);
        if (const auto* x = e.as<js_ast::IncDec>()) return incdec(*x);
        if (const auto* x = e.as<js_ast::Cond>()) {
            return make_if(condition(*x->cond), expr(*x->then_expr), expr(*x->else_expr));
        }
        if (const auto* x = e.as<js_ast::Comma>()) {
            return make_seq(expr(*x->first), expr(*x->rest));
        }
        assert(false && "unhandled expression form");
        return nullptr;
    }

    // typeof: δ typeof on primitives; locations are inspected for a code
    // field to answer "function" vs "object".
    ExprPtr typeof_core(const ExprPtr& v) {
        return make_if(prim1(PrimOp::IsLoc, v),
                       make_if(prim2(PrimOp::HasOwnField, make_deref(v), str("code")),
                               str("function"), str("object")),
                       prim1(PrimOp::TypeOf, v));
    }

    ExprPtr typeof_expansion(const js_ast::Expr& operand) {
        ExprPtr v = expr(operand);
        if (v->is<IdExpr>()) return typeof_core(v);
        std::string t = fresh("t");
        return make_let(t, std::move(v), typeof_core(id(t)));
    }

    ExprPtr delete_expr(const js_ast::DeleteExpr& d) {
        if (const auto* m = d.target->as<js_ast::Member>()) {
            std::string o = fresh("o");
            if (m->name) {
                ExprPtr del = make_delete(make_deref(id(o)), str(*m->name));
                return make_let(o, expr(*m->object),
                                make_seq(make_setref(id(o), std::move(del)),
                                         make_boolean(true)));
            }
            std::string f = fresh("f");
            ExprPtr del = make_delete(make_deref(id(o)), coerce_field(f));
            return make_let(
                o, expr(*m->object),
                make_let(f, expr(*m->field),
                         make_seq(make_setref(id(o), std::move(del)), make_boolean(true))));
        }
        const auto* ident = d.target->as<js_ast::Ident>();
        assert(ident);
        Resolution r = resolve(ident->name);
        if (!r.found) {
            // delete of a global removes the window field.
            return make_seq(
                make_setref(id("%window"),
                            make_delete(make_deref(id("%window")), str(ident->name))),
                make_boolean(true));
        }
        return make_boolean(false);  // deleting a lexical binding fails
    }

    // ---- statements ----

    ExprPtr seq_fold(std::vector<ExprPtr> parts) {
        if (parts.empty()) return undef();
        ExprPtr out = parts.back();
        for (size_t i = parts.size() - 1; i-- > 0;) {
            out = make_seq(std::move(parts[i]), std::move(out));
        }
        return out;
    }

    ExprPtr stmt_list(const std::vector<js_ast::StmtPtr>& body) {
        std::vector<ExprPtr> parts;
        for (const auto& s : body) {
            ExprPtr e = stmt(*s);
            if (e) parts.push_back(std::move(e));
        }
        return seq_fold(std::move(parts));
    }

    LabelTargets* find_label(const std::string& name) {
        for (auto it = labels_.rbegin(); it != labels_.rend(); ++it) {
            if (it->first == name) return &it->second;
        }
        return nullptr;
    }

    ExprPtr loop_while(const js_ast::WhileStmt& w, const std::string& user_label) {
        std::string brk = fresh("brk");
        std::string cont = fresh("cont");
        breakables_.push_back({brk, cont});
        if (!user_label.empty()) labels_.push_back({user_label, {brk, cont}});
        ExprPtr body = make_label(cont, stmt_or_undef(*w.body));
        ExprPtr cond = condition(*w.cond);
        if (!user_label.empty()) labels_.pop_back();
        breakables_.pop_back();
        return make_label(brk, make_while(std::move(cond), std::move(body)));
    }

    ExprPtr loop_dowhile(const js_ast::DoWhileStmt& w, const std::string& user_label) {
        std::string brk = fresh("brk");
        std::string cont = fresh("cont");
        std::string go = fresh("go");
        breakables_.push_back({brk, cont});
        if (!user_label.empty()) labels_.push_back({user_label, {brk, cont}});
        ExprPtr body = make_label(cont, stmt_or_undef(*w.body));
        ExprPtr cond = condition(*w.cond);
        if (!user_label.empty()) labels_.pop_back();
        breakables_.pop_back();
        return make_label(
            brk,
            make_let(go, make_ref(make_boolean(true)),
                     make_while(make_deref(id(go)),
                                make_seq(std::move(body),
                                         make_setref(id(go), std::move(cond))))));
    }

    ExprPtr loop_for(const js_ast::ForStmt& f, const std::string& user_label) {
        std::string brk = fresh("brk");
        std::string cont = fresh("cont");
        breakables_.push_back({brk, cont});
        if (!user_label.empty()) labels_.push_back({user_label, {brk, cont}});
        ExprPtr body = make_label(cont, stmt_or_undef(*f.body));
        if (f.update) body = make_seq(std::move(body), expr(*f.update));
        ExprPtr cond = f.cond ? condition(*f.cond) : make_boolean(true);
        if (!user_label.empty()) labels_.pop_back();
        breakables_.pop_back();
        ExprPtr loop = make_label(brk, make_while(std::move(cond), std::move(body)));
        if (f.init) {
            ExprPtr init = stmt(*f.init);
            if (init) loop = make_seq(std::move(init), std::move(loop));
        }
        return loop;
    }

    ExprPtr loop_forin(const js_ast::ForInStmt& f, const std::string& user_label) {
        std::string brk = fresh("brk");
        std::string cont = fresh("cont");
        std::string ov = fresh("ov");
        std::string work = fresh("work");
        std::string k = fresh("k");
        breakables_.push_back({brk, cont});
        if (!user_label.empty()) labels_.push_back({user_label, {brk, cont}});
        ExprPtr body =
            make_label(cont, make_seq(ident_assign(f.name, id(k)), stmt_or_undef(*f.body)));
        if (!user_label.empty()) labels_.pop_back();
        breakables_.pop_back();

        // Iterates a snapshot of the record, draining it with delete; the
        // artifact __proto__ field is skipped.
        ExprPtr loop_body = make_let(
            k, prim1(PrimOp::FirstField, make_deref(id(work))),
            make_seq(make_setref(id(work), make_delete(make_deref(id(work)), id(k))),
                     make_if(prim2(PrimOp::StxEq, id(k), str("__proto__")), undef(),
                             std::move(body))));
        ExprPtr not_empty = make_if(
            prim2(PrimOp::StxEq, prim1(PrimOp::FieldNames, make_deref(id(work))), str("")),
            make_boolean(false), make_boolean(true));
        return make_let(
            ov, expr(*f.object),
            make_if(prim1(PrimOp::IsLoc, id(ov)),
                    make_let(work, make_ref(make_deref(id(ov))),
                             make_label(brk, make_while(std::move(not_empty),
                                                        std::move(loop_body)))),
                    undef()));
    }

    ExprPtr stmt_or_undef(const js_ast::Stmt& s) {
        ExprPtr e = stmt(s);
        return e ? e : undef();
    }

    ExprPtr stmt(const js_ast::Stmt& s) {
        ExprPtr out = stmt_node(s);
        if (out && !out->span.valid() && s.span.valid()) out = with_span(out, s.span);
        return out;
    }

    ExprPtr stmt_node(const js_ast::Stmt& s) {
        if (const auto* x = s.as<js_ast::VarDecl>()) {
            std::vector<ExprPtr> parts;
            for (const auto& [name, init] : x->decls) {
                if (init) parts.push_back(ident_assign(name, expr(*init)));
            }
            if (parts.empty()) return nullptr;
            return seq_fold(std::move(parts));
        }
        if (const auto* x = s.as<js_ast::ExprStmt>()) return expr(*x->expr);
        if (const auto* x = s.as<js_ast::IfStmt>()) {
            return make_if(condition(*x->cond), stmt_or_undef(*x->then_stmt),
                           x->else_stmt ? stmt_or_undef(*x->else_stmt) : undef());
        }
        if (const auto* x = s.as<js_ast::WhileStmt>()) return loop_while(*x, "");
        if (const auto* x = s.as<js_ast::DoWhileStmt>()) return loop_dowhile(*x, "");
        if (const auto* x = s.as<js_ast::ForStmt>()) return loop_for(*x, "");
        if (const auto* x = s.as<js_ast::ForInStmt>()) return loop_forin(*x, "");
        if (const auto* x = s.as<js_ast::ReturnStmt>()) {
            return make_break("%ret", x->value ? expr(*x->value) : undef());
        }
        if (const auto* x = s.as<js_ast::BreakStmt>()) {
            if (x->label.empty()) {
                assert(!breakables_.empty());
                return make_break(breakables_.back().brk, undef());
            }
            LabelTargets* t = find_label(x->label);
            assert(t);
            return make_break(t->brk, undef());
        }
        if (const auto* x = s.as<js_ast::ContinueStmt>()) {
            if (x->label.empty()) {
                for (auto it = breakables_.rbegin(); it != breakables_.rend(); ++it) {
                    if (!it->cont.empty()) return make_break(it->cont, undef());
                }
                assert(false && "continue outside a loop");
            }
            LabelTargets* t = find_label(x->label);
            assert(t && !t->cont.empty());
            return make_break(t->cont, undef());
        }
        if (const auto* x = s.as<js_ast::LabeledStmt>()) {
            if (const auto* w = x->body->as<js_ast::WhileStmt>())
                return loop_while(*w, x->label);
            if (const auto* w = x->body->as<js_ast::DoWhileStmt>())
                return loop_dowhile(*w, x->label);
            if (const auto* w = x->body->as<js_ast::ForStmt>()) return loop_for(*w, x->label);
            if (const auto* w = x->body->as<js_ast::ForInStmt>())
                return loop_forin(*w, x->label);
            labels_.push_back({x->label, {x->label, ""}});
            ExprPtr body = stmt_or_undef(*x->body);
            labels_.pop_back();
            return make_label(x->label, std::move(body));
        }
        if (const auto* x = s.as<js_ast::TryStmt>()) {
            ExprPtr result = stmt_list(x->block);
            if (x->has_catch) {
                std::set<std::string> assigned = assigned_names(x->catch_block);
                bool cell = assigned.count(x->catch_binder) != 0;
                Scope sc;
                sc.names.emplace(x->catch_binder, cell ? BindKind::Cell : BindKind::Direct);
                ExprPtr handler;
                {
                    ScopeGuard guard(*this, sc);
                    handler = stmt_list(x->catch_block);
                }
                if (cell) {
                    std::string ev = fresh("e");
                    result = make_trycatch(
                        std::move(result), ev,
                        make_let(x->catch_binder, make_ref(id(ev)), std::move(handler)));
                } else {
                    result =
                        make_trycatch(std::move(result), x->catch_binder, std::move(handler));
                }
            }
            if (x->has_finally) {
                result = make_tryfinally(std::move(result), stmt_list(x->finally_block));
            }
            return result;
        }
        if (const auto* x = s.as<js_ast::ThrowStmt>()) return make_throw(expr(*x->value));
        if (const auto* x = s.as<js_ast::SwitchStmt>()) return switch_stmt(*x);
        if (const auto* x = s.as<js_ast::WithStmt>()) {
            std::string w = fresh("w");
            Scope sc;
            sc.is_with = true;
            sc.with_temp = w;
            ExprPtr body;
            {
                ScopeGuard guard(*this, sc);
                body = stmt_or_undef(*x->body);
            }
            return make_let(w, expr(*x->object), std::move(body));
        }
        if (const auto* x = s.as<js_ast::BlockStmt>()) {
            if (x->body.empty()) return nullptr;
            return stmt_list(x->body);
        }
        if (s.is<js_ast::FuncDecl>()) return nullptr;  // hoisted by the enclosing scope
        if (s.is<js_ast::EmptyStmt>()) return nullptr;
        assert(false && "unhandled statement form");
        return nullptr;
    }

    ExprPtr switch_stmt(const js_ast::SwitchStmt& sw) {
        std::string brk = fresh("brk");
        std::string d = fresh("d");
        std::string hit = fresh("hit");
        breakables_.push_back({brk, ""});
        std::vector<ExprPtr> parts;
        for (const auto& c : sw.cases) {
            ExprPtr body = stmt_list(c.body);
            if (c.test) {
                ExprPtr match = make_if(make_deref(id(hit)), make_boolean(true),
                                        prim2(PrimOp::StxEq, id(d), expr(*c.test)));
                parts.push_back(
                    make_if(std::move(match),
                            make_seq(make_setref(id(hit), make_boolean(true)),
                                     std::move(body)),
                            undef()));
            } else {
                // default is last (validated); once reached it always runs:
                // either some case matched and fell through, or none matched.
                parts.push_back(make_seq(make_setref(id(hit), make_boolean(true)),
                                         std::move(body)));
            }
        }
        breakables_.pop_back();
        return make_label(brk,
                          make_let(d, expr(*sw.disc),
                                   make_let(hit, make_ref(make_boolean(false)),
                                            seq_fold(std::move(parts)))));
    }
};

// ---- the preamble ----

ExprPtr build_to_str_prim() { return make_func({"%v"}, primitive_stringify(id("%v"))); }

ExprPtr build_to_num_prim() {
    ExprPtr v = id("%v");
    return make_func(
        {"%v"},
        make_if(type_is(v, "number"), v,
                make_if(type_is(v, "string"), prim1(PrimOp::StrToNum, v),
                        make_if(type_is(v, "boolean"), make_if(v, num(1), num(0)),
                                make_if(type_is(v, "undefined"), num(std::nan("")),
                                        make_if(prim2(PrimOp::StxEq, v, make_null()), num(0),
                                                throw_type_error(
                                                    "cannot convert to a number")))))));
}

// ToPrimitive with the number hint: valueOf first, then toString; a
// non-callable method or compound result falls through; two failures throw.
ExprPtr build_to_prim() {
    auto call_method_if_callable = [](const char* name, const std::string& m,
                                      const std::string& mr) {
        return make_let(
            m, make_get(make_deref(id("%v")), str(name)),
            make_if(prim1(PrimOp::IsLoc, id(m)),
                    make_let(mr, make_deref(id(m)),
                             make_if(prim2(PrimOp::HasOwnField, id(mr), str("code")),
                                     make_app(make_get(id(mr), str("code")), {id("%v")}),
                                     id("%v"))),
                    id("%v")));
    };
    ExprPtr body = make_if(
        prim1(PrimOp::IsLoc, id("%v")),
        make_let("%r", call_method_if_callable("valueOf", "%m", "%mr"),
                 make_if(prim1(PrimOp::IsLoc, id("%r")),
                         make_let("%r2", call_method_if_callable("toString", "%m2", "%mr2"),
                                  make_if(prim1(PrimOp::IsLoc, id("%r2")),
                                          throw_type_error(
                                              "cannot convert object to primitive"),
                                          id("%r2"))),
                         id("%r"))),
        id("%v"));
    return make_func({"%v"}, std::move(body));
}

// Walks a prototype chain looking for an own field; locations only.
ExprPtr build_in_chain() {
    ExprPtr advance = make_setref(id("%cur"), make_get(id("%rec"), str("__proto__")));
    ExprPtr loop_body = make_let(
        "%c", make_deref(id("%cur")),
        make_if(prim1(PrimOp::IsLoc, id("%c")),
                make_let("%rec", make_deref(id("%c")),
                         make_if(prim2(PrimOp::HasOwnField, id("%rec"), id("%f")),
                                 make_break("%found", make_boolean(true)),
                                 std::move(advance))),
                make_break("%found", make_boolean(false))));
    ExprPtr body =
        make_label("%found", make_let("%cur", make_ref(id("%o")),
                                      make_while(make_boolean(true), std::move(loop_body))));
    return make_func({"%o", "%f"}, std::move(body));
}

ExprPtr build_instance_of() {
    ExprPtr advance = make_setref(id("%cur"), make_get(id("%rec"), str("__proto__")));
    ExprPtr loop_body = make_let(
        "%c", make_deref(id("%cur")),
        make_if(prim1(PrimOp::IsLoc, id("%c")),
                make_if(prim2(PrimOp::StxEq, id("%c"), id("%p")),
                        make_break("%found", make_boolean(true)),
                        make_let("%rec", make_deref(id("%c")), std::move(advance))),
                make_break("%found", make_boolean(false))));
    ExprPtr body = make_label(
        "%found",
        make_let("%cur", make_ref(make_get(make_deref(id("%o")), str("__proto__"))),
                 make_while(make_boolean(true), std::move(loop_body))));
    return make_func({"%o", "%p"}, std::move(body));
}

}  // namespace

const std::set<std::string>& preamble_binding_names() {
    static const std::set<std::string> names = {
        "%window", "%toStrPrim", "%toNumPrim", "%toPrim", "%inChain", "%instanceOf",
        "%ObjectProto", "%Object", "%NumberProto", "%Number", "%XhrProto",
        "%XMLHttpRequest", "%print",
    };
    return names;
}

ExprPtr core_preamble(ExprPtr program) {
    ExprPtr object_proto = make_ref(make_object({
        {"__proto__", make_null()},
        {"hasOwnProperty",
         method_object(make_func({"this", "%f"},
                                 prim2(PrimOp::HasOwnField, make_deref(id("this")),
                                       id("%f"))))},
        {"valueOf", method_object(make_func({"this"}, id("this")))},
        {"toString", method_object(make_func({"this"}, str("[object Object]")))},
    }));

    ExprPtr number_proto = make_ref(make_object({
        {"__proto__", id("%ObjectProto")},
        {"valueOf",
         method_object(
             make_func({"this"}, make_get(make_deref(id("this")), str("__value__"))))},
        {"toString",
         method_object(make_func(
             {"this"},
             make_app(id("%toStrPrim"),
                      {make_get(make_deref(id("this")), str("__value__"))})))},
    }));

    ExprPtr number_ctor = make_ref(make_object({
        {"code",
         make_func({"this", "%v"},
                   make_setref(id("this"),
                               make_update(make_deref(id("this")), str("__value__"),
                                           make_app(id("%toNumPrim"),
                                                    {make_app(id("%toPrim"),
                                                              {id("%v")})}))))},
        {"prototype", id("%NumberProto")},
    }));

    ExprPtr install = make_setref(id("%window"), make_object({
                                                     {"window", id("%window")},
                                                     {"undefined", undef()},
                                                     {"NaN", num(std::nan(""))},
                                                     {"Object", id("%Object")},
                                                     {"Number", id("%Number")},
                                                     {"print", id("%print")},
                                                     {"XMLHttpRequest", id("%XMLHttpRequest")},
                                                 }));

    ExprPtr body = make_seq(std::move(install), std::move(program));
    body = make_let("%print", method_object(print_code_value()), std::move(body));
    body = make_let("%XMLHttpRequest",
                    make_ref(make_object({{"code", make_func({"this"}, undef())},
                                          {"prototype", id("%XhrProto")}})),
                    std::move(body));
    body = make_let("%XhrProto", make_ref(make_object({{"__proto__", id("%ObjectProto")}})),
                    std::move(body));
    body = make_let("%Number", std::move(number_ctor), std::move(body));
    body = make_let("%NumberProto", std::move(number_proto), std::move(body));
    body = make_let("%Object",
                    make_ref(make_object({{"code", make_func({"this"}, undef())},
                                          {"prototype", id("%ObjectProto")}})),
                    std::move(body));
    body = make_let("%ObjectProto", std::move(object_proto), std::move(body));
    body = make_let("%instanceOf", build_instance_of(), std::move(body));
    body = make_let("%inChain", build_in_chain(), std::move(body));
    body = make_let("%toPrim", build_to_prim(), std::move(body));
    body = make_let("%toNumPrim", build_to_num_prim(), std::move(body));
    body = make_let("%toStrPrim", build_to_str_prim(), std::move(body));
    // The first allocation in the program: the global object lands at #0.
    body = make_let("%window", make_ref(make_object({})), std::move(body));
    return body;
}

ExprPtr desugar_program(const js::Program& program, const DesugarOptions& opts) {
    Desugarer d;
    ExprPtr core = d.run(program);
    if (opts.include_preamble) core = core_preamble(std::move(core));
    return core;
}

namespace {

void collect_assigned_expr(const js::Expr& e, std::set<std::string>& out);
void collect_assigned_stmt(const js::Stmt& s, std::set<std::string>& out);

void collect_lifted(const js::Stmt& s, std::set<std::string>& out) {
    if (const auto* v = s.as<js::VarDecl>()) {
        for (const auto& [name, init] : v->decls) {
            (void)init;
            out.insert(name);
        }
        return;
    }
    if (const auto* f = s.as<js::FuncDecl>()) {
        out.insert(f->name);
        return;  // nested function bodies are their own scope
    }
    if (const auto* x = s.as<js::IfStmt>()) {
        collect_lifted(*x->then_stmt, out);
        if (x->else_stmt) collect_lifted(*x->else_stmt, out);
        return;
    }
    if (const auto* x = s.as<js::WhileStmt>()) return collect_lifted(*x->body, out);
    if (const auto* x = s.as<js::DoWhileStmt>()) return collect_lifted(*x->body, out);
    if (const auto* x = s.as<js::ForStmt>()) {
        if (x->init) collect_lifted(*x->init, out);
        collect_lifted(*x->body, out);
        return;
    }
    if (const auto* x = s.as<js::ForInStmt>()) {
        if (x->declares) out.insert(x->name);
        collect_lifted(*x->body, out);
        return;
    }
    if (const auto* x = s.as<js::LabeledStmt>()) return collect_lifted(*x->body, out);
    if (const auto* x = s.as<js::TryStmt>()) {
        for (const auto& st : x->block) collect_lifted(*st, out);
        for (const auto& st : x->catch_block) collect_lifted(*st, out);
        for (const auto& st : x->finally_block) collect_lifted(*st, out);
        return;
    }
    if (const auto* x = s.as<js::SwitchStmt>()) {
        for (const auto& c : x->cases) {
            for (const auto& st : c.body) collect_lifted(*st, out);
        }
        return;
    }
    if (const auto* x = s.as<js::WithStmt>()) return collect_lifted(*x->body, out);
    if (const auto* x = s.as<js::BlockStmt>()) {
        for (const auto& st : x->body) collect_lifted(*st, out);
        return;
    }
}

void collect_assigned_stmt(const js::Stmt& s, std::set<std::string>& out) {
    if (const auto* v = s.as<js::VarDecl>()) {
        for (const auto& [name, init] : v->decls) {
            if (init) {
                out.insert(name);
                collect_assigned_expr(*init, out);
            }
        }
        return;
    }
    if (const auto* x = s.as<js::ExprStmt>()) return collect_assigned_expr(*x->expr, out);
    if (const auto* x = s.as<js::IfStmt>()) {
        collect_assigned_expr(*x->cond, out);
        collect_assigned_stmt(*x->then_stmt, out);
        if (x->else_stmt) collect_assigned_stmt(*x->else_stmt, out);
        return;
    }
    if (const auto* x = s.as<js::WhileStmt>()) {
        collect_assigned_expr(*x->cond, out);
        collect_assigned_stmt(*x->body, out);
        return;
    }
    if (const auto* x = s.as<js::DoWhileStmt>()) {
        collect_assigned_stmt(*x->body, out);
        collect_assigned_expr(*x->cond, out);
        return;
    }
    if (const auto* x = s.as<js::ForStmt>()) {
        if (x->init) collect_assigned_stmt(*x->init, out);
        if (x->cond) collect_assigned_expr(*x->cond, out);
        if (x->update) collect_assigned_expr(*x->update, out);
        collect_assigned_stmt(*x->body, out);
        return;
    }
    if (const auto* x = s.as<js::ForInStmt>()) {
        out.insert(x->name);
        collect_assigned_expr(*x->object, out);
        collect_assigned_stmt(*x->body, out);
        return;
    }
    if (const auto* x = s.as<js::ReturnStmt>()) {
        if (x->value) collect_assigned_expr(*x->value, out);
        return;
    }
    if (const auto* x = s.as<js::LabeledStmt>()) return collect_assigned_stmt(*x->body, out);
    if (const auto* x = s.as<js::TryStmt>()) {
        for (const auto& st : x->block) collect_assigned_stmt(*st, out);
        for (const auto& st : x->catch_block) collect_assigned_stmt(*st, out);
        for (const auto& st : x->finally_block) collect_assigned_stmt(*st, out);
        return;
    }
    if (const auto* x = s.as<js::ThrowStmt>()) return collect_assigned_expr(*x->value, out);
    if (const auto* x = s.as<js::SwitchStmt>()) {
        collect_assigned_expr(*x->disc, out);
        for (const auto& c : x->cases) {
            if (c.test) collect_assigned_expr(*c.test, out);
            for (const auto& st : c.body) collect_assigned_stmt(*st, out);
        }
        return;
    }
    if (const auto* x = s.as<js::WithStmt>()) {
        collect_assigned_expr(*x->object, out);
        collect_assigned_stmt(*x->body, out);
        return;
    }
    if (const auto* x = s.as<js::BlockStmt>()) {
        for (const auto& st : x->body) collect_assigned_stmt(*st, out);
        return;
    }
    if (const auto* x = s.as<js::FuncDecl>()) {
        out.insert(x->name);
        for (const auto& st : x->body) collect_assigned_stmt(*st, out);
        return;
    }
}

void collect_assigned_expr(const js::Expr& e, std::set<std::string>& out) {
    if (const auto* a = e.as<js::Assign>()) {
        if (const auto* ident = a->target->as<js::Ident>()) out.insert(ident->name);
        collect_assigned_expr(*a->target, out);
        collect_assigned_expr(*a->value, out);
        return;
    }
    if (const auto* x = e.as<js::IncDec>()) {
        if (const auto* ident = x->target->as<js::Ident>()) out.insert(ident->name);
        collect_assigned_expr(*x->target, out);
        return;
    }
    if (const auto* x = e.as<js::FuncLit>()) {
        for (const auto& st : x->body) collect_assigned_stmt(*st, out);
        return;
    }
    if (const auto* x = e.as<js::ObjectLit>()) {
        for (const auto& [k, v] : x->fields) {
            (void)k;
            collect_assigned_expr(*v, out);
        }
        return;
    }
    if (const auto* x = e.as<js::ArrayLit>()) {
        for (const auto& el : x->elements) collect_assigned_expr(*el, out);
        return;
    }
    if (const auto* x = e.as<js::Member>()) {
        collect_assigned_expr(*x->object, out);
        if (x->field) collect_assigned_expr(*x->field, out);
        return;
    }
    if (const auto* x = e.as<js::Call>()) {
        collect_assigned_expr(*x->callee, out);
        for (const auto& a2 : x->args) collect_assigned_expr(*a2, out);
        return;
    }
    if (const auto* x = e.as<js::New>()) {
        collect_assigned_expr(*x->callee, out);
        for (const auto& a2 : x->args) collect_assigned_expr(*a2, out);
        return;
    }
    if (const auto* x = e.as<js::Binary>()) {
        collect_assigned_expr(*x->lhs, out);
        collect_assigned_expr(*x->rhs, out);
        return;
    }
    if (const auto* x = e.as<js::Unary>()) return collect_assigned_expr(*x->operand, out);
    if (const auto* x = e.as<js::DeleteExpr>()) return collect_assigned_expr(*x->target, out);
    if (const auto* x = e.as<js::Cond>()) {
        collect_assigned_expr(*x->cond, out);
        collect_assigned_expr(*x->then_expr, out);
        collect_assigned_expr(*x->else_expr, out);
        return;
    }
    if (const auto* x = e.as<js::Comma>()) {
        collect_assigned_expr(*x->first, out);
        collect_assigned_expr(*x->rest, out);
        return;
    }
}

}  // namespace

std::set<std::string> lifted_var_names(const std::vector<js::StmtPtr>& body) {
    std::set<std::string> out;
    for (const auto& s : body) collect_lifted(*s, out);
    return out;
}

std::set<std::string> assigned_names(const std::vector<js::StmtPtr>& body) {
    std::set<std::string> out;
    for (const auto& s : body) collect_assigned_stmt(*s, out);
    return out;
}

}  // namespace ljs
