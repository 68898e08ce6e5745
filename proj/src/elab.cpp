#include "cicr/elab.hpp"

#include "cicr/print.hpp"
#include "cicr/reduce.hpp"

namespace cicr {

namespace {

class Elaborator {
public:
    Elaborator(const GlobalEnv& env, const Context& ctx, const std::set<std::string>& pending)
        : env_(env), ctx_(ctx), pending_(pending) {
        for (std::size_t i = 0; i < ctx.size(); ++i) names_.push_back(ctx.at_level(i).name);
    }

    Term term(const ExprPtr& e) {
        switch (e->kind) {
        case ExprKind::Ident: return ident(*e);
        case ExprKind::Sort: return mk_sort(e->sort);
        case ExprKind::Forall:
        case ExprKind::Fun: {
            std::size_t saved = names_.size();
            std::vector<std::pair<std::string, Term>> bs = push_binders(e->binders);
            Term body = term(e->body);
            pop_to(saved);
            return wrap(bs, body, e->kind == ExprKind::Forall ? Kind::Prod : Kind::Lam);
        }
        case ExprKind::Arrow: {
            Term dom = term(e->head);
            push("_", dom);
            Term cod = term(e->body);
            pop_to(names_.size() - 1);
            return mk_prod("_", dom, cod);
        }
        case ExprKind::App: {
            Term t = term(e->head);
            for (const auto& a : e->args) t = mk_app(t, term(a));
            return t;
        }
        case ExprKind::Match: return match(*e);
        case ExprKind::Elim: return elim(*e);
        case ExprKind::Fix: return fix(*e);
        case ExprKind::RawFix: {
            Term ty = term(e->head);
            push(e->name, ty);
            Term body = term(e->body);
            pop_to(names_.size() - 1);
            return mk_fix(e->name, ty, body, e->struct_index);
        }
        }
        throw SourceError(e->span, ErrorCode::ParseError, "unknown expression");
    }

    std::vector<std::pair<std::string, Term>> push_binders(const std::vector<Binder>& binders) {
        std::vector<std::pair<std::string, Term>> out;
        for (const auto& b : binders) {
            Term ty = term(b.type);
            out.emplace_back(b.name, ty);
            push(b.name, ty);
        }
        return out;
    }

    void push(const std::string& name, const Term& type) {
        names_.push_back(name);
        ctx_.push_in_place(name, type);
    }

    void pop_to(std::size_t size) {
        while (names_.size() > size) {
            names_.pop_back();
            ctx_.pop_in_place();
        }
    }

    static Term wrap(const std::vector<std::pair<std::string, Term>>& bs, Term body, Kind kind) {
        for (std::size_t i = bs.size(); i-- > 0;)
            body = kind == Kind::Prod ? mk_prod(bs[i].first, bs[i].second, body) : mk_lam(bs[i].first, bs[i].second, body);
        return body;
    }

private:
    Term ident(const Expr& e) {
        if (e.name != "_")
            for (std::size_t i = names_.size(); i-- > 0;)
                if (names_[i] == e.name) return mk_var(static_cast<unsigned>(names_.size() - 1 - i));
        if (pending_.count(e.name)) return mk_ind(e.name);
        if (env_.find_inductive(e.name)) return mk_ind(e.name);
        if (env_.find_constructor(e.name)) return mk_constr(e.name);
        if (env_.find_definition(e.name) || env_.find_axiom(e.name)) return mk_const(e.name);
        if (e.name == "_") throw SourceError(e.span, ErrorCode::ParseError, "'_' cannot be used as a term");
        throw SourceError(e.span, ErrorCode::UnknownGlobal, "unknown identifier " + e.name);
    }

    template <typename F>
    auto kernel(const Span& sp, F&& f) -> decltype(f()) {
        try {
            return f();
        } catch (const KernelError& err) {
            throw SourceError(sp, err.code(), err.what());
        }
    }

    Term match(const Expr& e) {
        Term scrut = term(e.head);
        const InductiveDecl* ind = nullptr;
        std::vector<Term> params;
        std::vector<std::string> ys;
        if (e.in_ind) {
            ind = env_.find_inductive(*e.in_ind);
            if (!ind) throw SourceError(e.span, ErrorCode::UnknownGlobal, "unknown inductive " + *e.in_ind);
            if (e.args.size() != ind->param_count + ind->index_count)
                throw SourceError(e.span, ErrorCode::MalformedCase,
                                  "the 'in' clause of a match on " + ind->name + " needs " +
                                      std::to_string(ind->param_count) + " parameters and " +
                                      std::to_string(ind->index_count) + " index names");
            for (unsigned i = 0; i < ind->param_count; ++i) params.push_back(term(e.args[i]));
            for (std::size_t i = ind->param_count; i < e.args.size(); ++i) {
                if (e.args[i]->kind != ExprKind::Ident)
                    throw SourceError(e.args[i]->span, ErrorCode::ParseError, "index positions of 'in' must be names");
                ys.push_back(e.args[i]->name);
            }
        } else {
            Term ty = kernel(e.span, [&] { return whnf(infer(ctx_, scrut, env_), env_); });
            Spine s = decompose_app(ty);
            if (s.head.is(Kind::Ind)) ind = env_.find_inductive(s.head.name());
            if (!ind || s.args.size() != ind->param_count + ind->index_count)
                throw SourceError(e.span, ErrorCode::IllTyped,
                                  "cannot match on a term of type " + print_term(ty, ctx_, &env_));
            params.assign(s.args.begin(), s.args.begin() + ind->param_count);
            ys.assign(ind->index_count, "_");
        }

        if (e.clauses.size() != ind->constructors.size())
            throw SourceError(e.span, ErrorCode::MalformedCase,
                              "match on " + ind->name + " needs one clause per constructor (" +
                                  std::to_string(ind->constructors.size()) + ")");
        std::vector<Term> branches;
        std::vector<std::optional<Term>> rhs_types;
        const std::size_t saved = names_.size();
        for (unsigned j = 0; j < ind->constructors.size(); ++j) {
            const MatchClause& cl = e.clauses[j];
            const ConstructorDecl& cd = ind->constructors[j];
            if (cl.constructor != cd.name)
                throw SourceError(cl.span, ErrorCode::MalformedCase,
                                  "expected a clause for " + cd.name + " here, found " + cl.constructor);
            if (cl.vars.size() != cd.arg_count)
                throw SourceError(cl.span, ErrorCode::MalformedCase,
                                  cd.name + " takes " + std::to_string(cd.arg_count) + " arguments");
            Telescope tel = constructor_telescope(*ind, j, params);
            for (unsigned i = 0; i < cd.arg_count; ++i) push(cl.vars[i], tel.binders[i].second);
            Term rhs = term(cl.rhs);
            if (!e.result) {
                auto lowered = [&]() -> std::optional<Term> {
                    try {
                        return lower(infer(ctx_, rhs, env_), cd.arg_count);
                    } catch (const KernelError&) {
                        return std::nullopt;
                    }
                }();
                rhs_types.push_back(lowered);
            }
            pop_to(saved);
            std::vector<std::pair<std::string, Term>> bs;
            for (unsigned i = 0; i < cd.arg_count; ++i) bs.emplace_back(cl.vars[i], tel.binders[i].second);
            branches.push_back(wrap(bs, rhs, Kind::Lam));
        }

        // Motive: lambda over the indices and the scrutinee.
        Telescope ar = arity_telescope(*ind, params);
        std::vector<std::pair<std::string, Term>> mbs;
        const unsigned n = ind->index_count;
        for (unsigned i = 0; i < n; ++i) {
            mbs.emplace_back(ys[i], ar.binders[i].second);
            push(ys[i], ar.binders[i].second);
        }
        std::vector<Term> iargs;
        for (const auto& q : params) iargs.push_back(lift(q, n));
        for (unsigned i = 0; i < n; ++i) iargs.push_back(mk_var(n - 1 - i));
        std::string as = e.as_name.value_or("_");
        mbs.emplace_back(as, mk_app(mk_ind(ind->name), iargs));
        push(as, mbs.back().second);
        Term ret;
        if (e.result) {
            ret = term(e.result);
        } else {
            pop_to(saved);
            ret = lift(infer_return(e, *ind, params, branches, rhs_types), n + 1);
        }
        pop_to(saved);
        return mk_case(ind->name, scrut, params, wrap(mbs, ret, Kind::Lam), branches);
    }

    // Non-dependent motive: the first branch type every branch inhabits.
    Term infer_return(const Expr& e, const InductiveDecl& ind, const std::vector<Term>& params,
                      const std::vector<Term>& branches, const std::vector<std::optional<Term>>& candidates) {
        for (const auto& cand : candidates) {
            if (!cand) continue;
            bool ok = true;
            for (unsigned j = 0; ok && j < branches.size(); ++j) {
                Term motive = *cand;
                for (unsigned i = 0; i <= ind.index_count; ++i) motive = mk_lam("_", mk_prop(), lift(motive, 1));
                try {
                    Term expected = branch_type(ind, j, params, motive);
                    ok = check(ctx_, branches[j], expected, env_);
                } catch (const KernelError&) {
                    ok = false;
                }
            }
            if (ok) return *cand;
        }
        throw SourceError(e.span, ErrorCode::MotiveMismatch,
                          "cannot infer the return type of this match; add a 'return' clause");
    }

    Term elim(const Expr& e) {
        Term scrut = term(e.head);
        const InductiveDecl* ind = env_.find_inductive(e.name);
        if (!ind) throw SourceError(e.span, ErrorCode::UnknownGlobal, "unknown inductive " + e.name);
        if (e.args.size() != ind->param_count)
            throw SourceError(e.span, ErrorCode::MalformedCase,
                              ind->name + " takes " + std::to_string(ind->param_count) + " parameters");
        std::vector<Term> params, branches;
        for (const auto& a : e.args) params.push_back(term(a));
        Term motive = term(e.result);
        for (const auto& b : e.branches) branches.push_back(term(b));
        return mk_case(ind->name, scrut, params, motive, branches);
    }

    Term fix(const Expr& e) {
        const std::size_t saved = names_.size();
        std::optional<unsigned> k;
        for (unsigned i = 0; i < e.binders.size(); ++i)
            if (e.binders[i].name == e.struct_name) k = i;
        if (!k)
            throw SourceError(e.span, ErrorCode::ParseError,
                              "struct argument " + e.struct_name + " is not one of the fixpoint's binders");
        auto bs = push_binders(e.binders);
        Term result = term(e.result);
        pop_to(saved);
        Term type = wrap(bs, result, Kind::Prod);
        push(e.name, type);
        auto inner = push_binders(e.binders);
        Term body = term(e.body);
        pop_to(saved);
        return mk_fix(e.name, type, wrap(inner, body, Kind::Lam), *k);
    }

    const GlobalEnv& env_;
    Context ctx_;
    const std::set<std::string>& pending_;
    std::vector<std::string> names_;
};

}  // namespace

Term elaborate(const ExprPtr& e, const Context& ctx, const GlobalEnv& env, const std::set<std::string>& pending) {
    return Elaborator(env, ctx, pending).term(e);
}

Term elaborate(const ExprPtr& e, const GlobalEnv& env) { return elaborate(e, Context{}, env); }

InductiveCandidate elaborate_inductive(const Command& c, const GlobalEnv& env) {
    std::set<std::string> pending{c.name};
    Elaborator el(env, Context{}, pending);
    InductiveCandidate cand;
    cand.name = c.name;
    cand.param_count = static_cast<unsigned>(c.binders.size());
    auto params = el.push_binders(c.binders);
    Term arity = el.term(c.type);
    cand.arity = Elaborator::wrap(params, arity, Kind::Prod);
    for (const auto& ctor : c.constructors) {
        Term ty = el.term(ctor.type);
        cand.constructors.emplace_back(ctor.name, Elaborator::wrap(params, ty, Kind::Prod));
    }
    return cand;
}

ElaboratedDefinition elaborate_definition(const Command& c, const GlobalEnv& env) {
    if (c.kind == CommandKind::Fixpoint) {
        Expr fx{ExprKind::Fix, c.span};
        fx.name = c.name;
        fx.binders = c.binders;
        fx.struct_name = c.struct_name;
        fx.result = c.type;
        fx.body = c.body;
        return {std::nullopt, elaborate(std::make_shared<const Expr>(std::move(fx)), env)};
    }
    std::set<std::string> none;
    Elaborator el(env, Context{}, none);
    auto bs = el.push_binders(c.binders);
    ElaboratedDefinition out;
    if (c.type) out.type = Elaborator::wrap(bs, el.term(c.type), Kind::Prod);
    out.body = Elaborator::wrap(bs, el.term(c.body), Kind::Lam);
    return out;
}

}  // namespace cicr
