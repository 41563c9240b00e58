#include "ljs/subst.hpp"

#include <algorithm>

namespace ljs {

namespace {

void free_vars_into(const Expr& e, std::set<std::string>& bound, std::set<std::string>& out) {
    if (const auto* id = e.as<IdExpr>()) {
        if (!bound.count(id->name)) out.insert(id->name);
        return;
    }
    if (const auto* fn = e.as<FuncExpr>()) {
        std::vector<std::string> added;
        for (const auto& p : fn->params) {
            if (bound.insert(p).second) added.push_back(p);
        }
        free_vars_into(*fn->body, bound, out);
        for (const auto& p : added) bound.erase(p);
        return;
    }
    if (const auto* let = e.as<LetExpr>()) {
        free_vars_into(*let->bound, bound, out);
        bool added = bound.insert(let->name).second;
        free_vars_into(*let->body, bound, out);
        if (added) bound.erase(let->name);
        return;
    }
    if (const auto* tc = e.as<TryCatchExpr>()) {
        free_vars_into(*tc->body, bound, out);
        bool added = bound.insert(tc->binder).second;
        free_vars_into(*tc->handler, bound, out);
        if (added) bound.erase(tc->binder);
        return;
    }
    for_each_child(e, [&](int, const ExprPtr& c) { free_vars_into(*c, bound, out); });
}

struct Subst {
    std::map<std::string, ExprPtr> map;
    // Union of the free variables of all replacements; binders colliding with
    // these must be freshened before descending.
    std::set<std::string> repl_free;
    int fresh_counter = 0;

    std::string fresh(const std::string& base, const std::set<std::string>& avoid) {
        for (;;) {
            std::string cand = base + "~" + std::to_string(fresh_counter++);
            if (!avoid.count(cand) && !repl_free.count(cand) && !map.count(cand)) return cand;
        }
    }
};

ExprPtr subst_apply(const ExprPtr& e, Subst& s);

// Handles one binder: returns the (possibly renamed) binder and the body to
// descend into, with s temporarily shrunk if the binder shadows a key.
ExprPtr apply_under_binder(const std::string& binder, const ExprPtr& body, Subst& s,
                           std::string& binder_out) {
    binder_out = binder;
    ExprPtr inner = body;
    if (s.repl_free.count(binder)) {
        // Capture: freshen the binder first. Unreachable when replacements
        // are closed, which is all evaluation ever does.
        std::set<std::string> avoid = free_variables(*body);
        std::string nb = s.fresh(binder, avoid);
        Subst rename;
        rename.map.emplace(binder, make_id(nb));
        inner = subst_apply(body, rename);
        binder_out = nb;
    }
    auto it = s.map.find(binder_out);
    if (it != s.map.end()) {
        ExprPtr saved = it->second;
        s.map.erase(it);
        ExprPtr result = subst_apply(inner, s);
        s.map.emplace(binder_out, std::move(saved));
        return result;
    }
    return subst_apply(inner, s);
}

ExprPtr subst_apply(const ExprPtr& e, Subst& s) {
    if (s.map.empty()) return e;
    if (const auto* id = e->as<IdExpr>()) {
        auto it = s.map.find(id->name);
        return it == s.map.end() ? e : it->second;
    }
    if (const auto* fn = e->as<FuncExpr>()) {
        // Drop shadowed keys; freshen captured binders.
        std::vector<std::pair<std::string, ExprPtr>> saved;
        std::vector<std::string> new_params = fn->params;
        ExprPtr body = fn->body;
        for (auto& p : new_params) {
            if (s.repl_free.count(p)) {
                std::set<std::string> avoid = free_variables(*body);
                for (const auto& q : new_params) avoid.insert(q);
                std::string np = s.fresh(p, avoid);
                Subst rename;
                rename.map.emplace(p, make_id(np));
                body = subst_apply(body, rename);
                p = np;
            }
        }
        for (const auto& p : new_params) {
            auto it = s.map.find(p);
            if (it != s.map.end()) {
                saved.emplace_back(p, it->second);
                s.map.erase(it);
            }
        }
        ExprPtr new_body = s.map.empty() ? body : subst_apply(body, s);
        for (auto& [k, v] : saved) s.map.emplace(k, std::move(v));
        if (new_body == fn->body && new_params == fn->params) return e;
        auto out = make_func(std::move(new_params), std::move(new_body));
        return with_span(out, e->span);
    }
    if (const auto* let = e->as<LetExpr>()) {
        ExprPtr nb = subst_apply(let->bound, s);
        std::string binder;
        ExprPtr nbody = apply_under_binder(let->name, let->body, s, binder);
        if (nb == let->bound && nbody == let->body && binder == let->name) return e;
        return with_span(make_let(binder, std::move(nb), std::move(nbody)), e->span);
    }
    if (const auto* tc = e->as<TryCatchExpr>()) {
        ExprPtr nbody = subst_apply(tc->body, s);
        std::string binder;
        ExprPtr nh = apply_under_binder(tc->binder, tc->handler, s, binder);
        if (nbody == tc->body && nh == tc->handler && binder == tc->binder) return e;
        return with_span(make_trycatch(std::move(nbody), binder, std::move(nh)), e->span);
    }

    ExprPtr out = e;
    int n = child_count(*e);
    for (int i = 0; i < n; ++i) {
        ExprPtr c = get_child(*out, i);
        ExprPtr nc = subst_apply(c, s);
        if (nc != c) out = replace_child(*out, i, std::move(nc));
    }
    return out;
}

}  // namespace

ExprPtr substitute(const ExprPtr& body, const std::string& name, const ExprPtr& replacement) {
    Subst s;
    s.repl_free = free_variables(*replacement);
    s.map.emplace(name, replacement);
    return subst_apply(body, s);
}

ExprPtr substitute_many(const ExprPtr& body, const std::map<std::string, ExprPtr>& subst) {
    if (subst.empty()) return body;
    Subst s;
    for (const auto& [k, v] : subst) {
        auto fv = free_variables(*v);
        s.repl_free.insert(fv.begin(), fv.end());
        s.map.emplace(k, v);
    }
    return subst_apply(body, s);
}

std::set<std::string> free_variables(const Expr& e) {
    std::set<std::string> bound, out;
    free_vars_into(e, bound, out);
    return out;
}

namespace {

// A single allocation-free pass: closedness (scope tracked on a stack),
// allocated locations, distinct object keys, and err placement.
struct WfWalker {
    const Store& store;
    std::vector<const std::string*> scope;
    std::string reason;

    bool bound(const std::string& name) const {
        for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
            if (**it == name) return true;
        }
        return false;
    }

    bool walk(const Expr& e, bool in_value_position) {
        if (const auto* id = e.as<IdExpr>()) {
            if (!bound(id->name)) {
                reason = "free variable: " + id->name;
                return false;
            }
            return true;
        }
        if (const auto* loc = e.as<LocExpr>()) {
            if (!store.contains(loc->loc)) {
                reason = "dangling location #" + std::to_string(loc->loc.id);
                return false;
            }
            return true;
        }
        if (const auto* obj = e.as<ObjectExpr>()) {
            // Field positions are evaluation contexts, so the inherited flag
            // is kept: a literal mid-evaluation may hold an err transiently.
            for (size_t i = 0; i < obj->fields.size(); ++i) {
                for (size_t j = i + 1; j < obj->fields.size(); ++j) {
                    if (obj->fields[i].first == obj->fields[j].first) {
                        reason = "duplicate object key \"" + obj->fields[i].first + "\"";
                        return false;
                    }
                }
                if (!walk(*obj->fields[i].second, in_value_position)) return false;
            }
            return true;
        }
        if (const auto* err = e.as<ErrExpr>()) {
            if (in_value_position) {
                reason = "err inside a value position";
                return false;
            }
            if (!is_value(*err->value)) {
                reason = "err payload is not a value";
                return false;
            }
            return walk(*err->value, true);
        }
        if (const auto* fn = e.as<FuncExpr>()) {
            size_t mark = scope.size();
            for (const auto& p : fn->params) scope.push_back(&p);
            bool ok = walk(*fn->body, true);
            scope.resize(mark);
            return ok;
        }
        if (const auto* let = e.as<LetExpr>()) {
            if (!walk(*let->bound, in_value_position)) return false;
            scope.push_back(&let->name);
            bool ok = walk(*let->body, in_value_position);
            scope.pop_back();
            return ok;
        }
        if (const auto* tc = e.as<TryCatchExpr>()) {
            if (!walk(*tc->body, in_value_position)) return false;
            scope.push_back(&tc->binder);
            bool ok = walk(*tc->handler, in_value_position);
            scope.pop_back();
            return ok;
        }
        int n = child_count(e);
        for (int i = 0; i < n; ++i) {
            if (!walk(*get_child(e, i), in_value_position)) return false;
        }
        return true;
    }
};

}  // namespace

WellFormedness check_well_formed(const Store& store, const Expr& e) {
    WellFormedness wf;
    WfWalker walker{store, {}, {}};
    if (!walker.walk(e, false)) {
        wf.ok = false;
        wf.reason = walker.reason;
        return wf;
    }
    for (const auto& [id, v] : store.cells()) {
        if (id >= store.next_id()) {
            wf.ok = false;
            wf.reason = "store id beyond fresh counter";
            return wf;
        }
        walker.scope.clear();
        if (!walker.walk(*v, true)) {
            wf.ok = false;
            wf.reason = "store cell #" + std::to_string(id) + ": " + walker.reason;
            return wf;
        }
    }
    return wf;
}

bool well_formed(const Store& store, const Expr& e) { return check_well_formed(store, e).ok; }

namespace {
bool no_runtime_forms(const Expr& e, std::string* reason) {
    if (e.is<LocExpr>()) {
        if (reason) *reason = "location literal in source";
        return false;
    }
    if (e.is<ErrExpr>()) {
        if (reason) *reason = "err in source";
        return false;
    }
    int n = child_count(e);
    for (int i = 0; i < n; ++i) {
        if (!no_runtime_forms(*get_child(e, i), reason)) return false;
    }
    return true;
}
}  // namespace

namespace {
// Distinct-key check alone; source programs may be open (the preamble closes
// them) and contain no locations to chase.
bool distinct_keys(const Expr& e, std::string* reason) {
    if (const auto* obj = e.as<ObjectExpr>()) {
        for (size_t i = 0; i < obj->fields.size(); ++i) {
            for (size_t j = i + 1; j < obj->fields.size(); ++j) {
                if (obj->fields[i].first == obj->fields[j].first) {
                    if (reason) {
                        *reason = "duplicate object key \"" + obj->fields[i].first + "\"";
                    }
                    return false;
                }
            }
        }
    }
    int n = child_count(e);
    for (int i = 0; i < n; ++i) {
        if (!distinct_keys(*get_child(e, i), reason)) return false;
    }
    return true;
}
}  // namespace

bool source_well_formed(const Expr& e, std::string* reason) {
    std::string r;
    if (!no_runtime_forms(e, &r)) {
        if (reason) *reason = r;
        return false;
    }
    return distinct_keys(e, reason);
}

}  // namespace ljs
