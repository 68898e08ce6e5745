#include "cicr/print.hpp"

#include <set>

#include "cicr/typecheck.hpp"

namespace cicr {

namespace {

enum Prec { Top = 0, ArrowLeft = 1, Arg = 2 };

std::string paren(std::string s, bool wrap) { return wrap ? "(" + s + ")" : s; }

std::string sort_text(const Sort& s) {
    switch (s.kind) {
    case SortKind::Prop: return "Prop";
    case SortKind::Set: return s.level == 0 ? "Set" : "Set@" + std::to_string(s.level);
    case SortKind::Type: return "Type@" + std::to_string(s.level);
    }
    return "?";
}

class Printer {
public:
    Printer(std::vector<std::string> names, const GlobalEnv* env) : names_(std::move(names)), env_(env) {}

    std::string print(const Term& t, Prec prec) {
        switch (t.kind()) {
        case Kind::Var: {
            unsigned i = t.var_index();
            if (i < names_.size()) return names_[names_.size() - 1 - i];
            return "#" + std::to_string(i - names_.size());
        }
        case Kind::Sort: return sort_text(t.sort());
        case Kind::Ind:
        case Kind::Constr:
        case Kind::Const: return t.name();
        case Kind::App: {
            Spine s = decompose_app(t);
            std::string out = print(s.head, Arg);
            for (const auto& a : s.args) out += " " + print(a, Arg);
            return paren(out, prec == Arg);
        }
        case Kind::Prod:
            if (!has_free_var(t.body(), 0)) {
                std::string dom = print(t.domain(), ArrowLeft);
                names_.push_back("_");
                std::string cod = print(t.body(), Top);
                names_.pop_back();
                return paren(dom + " -> " + cod, prec != Top);
            }
            return paren(binder_group(t, Kind::Prod, "forall", ","), prec != Top);
        case Kind::Lam: return paren(binder_group(t, Kind::Lam, "fun", " =>"), prec != Top);
        case Kind::Case: return print_case(t);
        case Kind::Fix: return paren(print_fix(t), prec != Top);
        }
        return "?";
    }

private:
    // A name for a binder over `body` that does not capture any variable the
    // body refers to from outside, nor shadow a global it mentions.
    std::string choose(const std::string& hint, const Term& body, bool force_real = false) {
        const bool used = has_free_var(body, 0);
        std::string base = hint.empty() ? "_" : hint;
        if (base == "_" && (used || force_real)) base = "x";
        if (base == "_") return base;
        auto clashes = [&](const std::string& cand) {
            for (unsigned j : free_vars(body)) {
                if (j == 0) continue;
                unsigned outer = j - 1;
                if (outer < names_.size() && names_[names_.size() - 1 - outer] == cand) return true;
            }
            return env_ && env_->has_name(cand) && mentions_global(body, cand);
        };
        if (!clashes(base)) return base;
        std::set<std::string> taken(names_.begin(), names_.end());
        if (env_)
            for (const auto& n : env_->names()) taken.insert(n);
        std::string cand = NameSupply::fresh(base, taken);
        while (clashes(cand)) {
            taken.insert(cand);
            cand = NameSupply::fresh(base, taken);
        }
        return cand;
    }

    std::string binder_group(const Term& t, Kind kind, const std::string& keyword, const std::string& sep) {
        std::vector<std::pair<std::string, std::string>> binders;
        Term cur = t;
        const std::size_t saved = names_.size();
        while (cur.is(kind) && (kind == Kind::Lam || has_free_var(cur.body(), 0))) {
            std::string dom = print(cur.domain(), Top);
            std::string name = choose(cur.name(), cur.body());
            binders.emplace_back(name, dom);
            names_.push_back(name);
            cur = cur.body();
        }
        std::string body = print(cur, Top);
        names_.resize(saved);
        std::string out = keyword;
        if (binders.size() == 1) {
            out += " " + binders[0].first + " : " + binders[0].second;
        } else {
            for (const auto& [n, d] : binders) out += " (" + n + " : " + d + ")";
        }
        return out + sep + " " + body;
    }

    // match sugar is exact when the motive and branches abstract exactly the
    // telescopes the elaborator would generate.
    bool case_sugar_applies(const Term& c, const InductiveDecl& ind) const {
        if (c.params().size() != ind.param_count || c.branches().size() != ind.constructors.size()) return false;
        Telescope ar = arity_telescope(ind, c.params());
        Term m = c.motive();
        for (const auto& [_, dom] : ar.binders) {
            if (!m.is(Kind::Lam) || !alpha_eq(m.domain(), dom)) return false;
            m = m.body();
        }
        const unsigned n = ind.index_count;
        std::vector<Term> args;
        for (const auto& q : c.params()) args.push_back(lift(q, n));
        for (unsigned i = 0; i < n; ++i) args.push_back(mk_var(n - 1 - i));
        if (!m.is(Kind::Lam) || !alpha_eq(m.domain(), mk_app(mk_ind(ind.name), args))) return false;
        for (unsigned j = 0; j < ind.constructors.size(); ++j) {
            Telescope tel = constructor_telescope(ind, j, c.params());
            Term b = c.branches()[j];
            for (const auto& [_, dom] : tel.binders) {
                if (!b.is(Kind::Lam) || !alpha_eq(b.domain(), dom)) return false;
                b = b.body();
            }
        }
        return true;
    }

    std::string print_case(const Term& c) {
        const InductiveDecl* ind = env_ ? env_->find_inductive(c.name()) : nullptr;
        std::string params;
        for (const auto& q : c.params()) params += " " + print(q, Arg);
        if (!ind || !case_sugar_applies(c, *ind)) {
            std::string out = "elim " + print(c.scrutinee(), Top) + " in " + c.name() + params + " return " +
                              print(c.motive(), Top) + " with";
            for (const auto& b : c.branches()) out += " | " + print(b, Top);
            return out + " end";
        }
        const std::size_t saved = names_.size();
        std::string out = "match " + print(c.scrutinee(), Top);
        std::vector<std::string> ys;
        Term m = c.motive();
        for (unsigned i = 0; i < ind->index_count; ++i) {
            ys.push_back(choose(m.name(), m.body()));
            names_.push_back(ys.back());
            m = m.body();
        }
        std::string as = choose(m.name(), m.body());
        names_.push_back(as);
        std::string ret = print(m.body(), Top);
        names_.resize(saved);
        out += " as " + as + " in " + c.name() + params;
        for (const auto& y : ys) out += " " + y;
        out += " return " + ret + " with";
        for (unsigned j = 0; j < ind->constructors.size(); ++j) {
            Term b = c.branches()[j];
            out += " | " + ind->constructors[j].name;
            for (unsigned i = 0; i < ind->constructors[j].arg_count; ++i) {
                std::string z = choose(b.name(), b.body());
                out += " " + z;
                names_.push_back(z);
                b = b.body();
            }
            out += " => " + print(b, Top);
            names_.resize(saved);
        }
        return out + " end";
    }

    std::string print_fix(const Term& f) {
        const std::size_t saved = names_.size();
        const unsigned k = f.struct_arg();
        // Count binders shared by the type annotation and the body.
        unsigned m = 0;
        {
            Term ty = f.domain(), body = f.body();
            while (ty.is(Kind::Prod) && body.is(Kind::Lam) && alpha_eq(body.domain(), lift(ty.domain(), 1, m))) {
                ++m;
                ty = ty.body();
                body = body.body();
            }
        }
        std::set<std::string> local;
        auto pick = [&](const std::string& hint, bool real) {
            std::set<std::string> taken(names_.begin(), names_.end());
            taken.insert(local.begin(), local.end());
            if (env_)
                for (const auto& n : env_->names()) taken.insert(n);
            std::string base = hint.empty() || hint == "_" ? (real ? "x" : "_") : hint;
            std::string name = base == "_" ? base : NameSupply::fresh(base, taken);
            local.insert(name);
            return name;
        };
        std::string fname = pick(f.name(), true);
        if (m <= k) {
            std::string ty = print(f.domain(), Top);
            names_.push_back(fname);
            std::string body = print(f.body(), Top);
            names_.resize(saved);
            return "fix " + fname + " : " + ty + " {struct " + std::to_string(k) + "} := " + body;
        }
        std::vector<std::string> xs;
        Term ty = f.domain(), body = f.body();
        std::string out = "fix " + fname;
        for (unsigned i = 0; i < m; ++i) {
            xs.push_back(pick(body.name(), true));
            out += " (" + xs.back() + " : " + print(ty.domain(), Top) + ")";
            names_.push_back(xs.back());
            ty = ty.body();
            body = body.body();
        }
        out += " {struct " + xs[k] + "} : " + print(ty, Top);
        names_.resize(saved);
        names_.push_back(fname);
        for (const auto& x : xs) names_.push_back(x);
        out += " := " + print(body, Top);
        names_.resize(saved);
        return out;
    }

    std::vector<std::string> names_;
    const GlobalEnv* env_;
};

std::vector<std::string> context_names(const Context& ctx) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < ctx.size(); ++i) names.push_back(ctx.at_level(i).name);
    return names;
}

}  // namespace

std::string print_term(const Term& t, const Context& ctx, const GlobalEnv* env) {
    return Printer(context_names(ctx), env).print(t, Top);
}

std::string print_term(const Term& t, const std::vector<std::string>& names, const GlobalEnv* env) {
    return Printer(names, env).print(t, Top);
}

std::string print_inductive(const InductiveDecl& ind, const GlobalEnv* env) {
    std::string out = "Inductive " + ind.name;
    std::vector<std::string> names;
    Term ar = ind.arity;
    for (unsigned i = 0; i < ind.param_count; ++i) {
        std::string n = ar.name().empty() || ar.name() == "_" ? "A" + std::to_string(i) : ar.name();
        out += " (" + n + " : " + print_term(ar.domain(), names, env) + ")";
        names.push_back(n);
        ar = ar.body();
    }
    out += " : " + print_term(ar, names, env) + " :=";
    for (const auto& c : ind.constructors) {
        Term ty = c.type;
        for (unsigned i = 0; i < ind.param_count; ++i) ty = ty.body();
        out += "\n  | " + c.name + " : " + print_term(ty, names, env);
    }
    return out + ".";
}

std::string print_definition(const Definition& def, const GlobalEnv* env) {
    return "Definition " + def.name + " : " + print_term(def.type, Context{}, env) + " :=\n  " +
           print_term(def.body, Context{}, env) + ".";
}

std::string print_axiom(const Axiom& ax, const GlobalEnv* env) {
    return "Axiom " + ax.name + " : " + print_term(ax.type, Context{}, env) + ".";
}

}  // namespace cicr
