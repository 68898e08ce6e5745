#include "cicr/typecheck.hpp"

#include <algorithm>
#include <set>

#include "cicr/error.hpp"
#include "cicr/print.hpp"
#include "cicr/reduce.hpp"

namespace cicr {

namespace {

unsigned level_weight(const Sort& s) { return s.is_prop() ? 0 : s.level; }

void validate_sort(const Sort& s, const GlobalEnv& env) {
    if (env.config().mode == Mode::CIC) {
        if (s.is_set()) fail(ErrorCode::UniverseError, "Set@" + std::to_string(s.level) + " is not a CIC sort");
        return;
    }
    if (s.is_type() && s.level == 0) fail(ErrorCode::UniverseError, "Type levels start at 1");
}

}  // namespace

Sort sort_of_sort(const Sort& s, const GlobalEnv& env) {
    validate_sort(s, env);
    switch (s.kind) {
    case SortKind::Prop: return Sort::type(1);
    case SortKind::Set:
    case SortKind::Type: return Sort::type(s.level + 1);
    }
    return Sort::type(1);
}

// Join reading of the product rules: a product lands in its codomain's family,
// at the maximum of the codomain level and the domain's level. Prop is impredicative.
Sort product_sort(const Sort& domain, const Sort& codomain) {
    switch (codomain.kind) {
    case SortKind::Prop: return Sort::prop();
    case SortKind::Set: return Sort::set(std::max(codomain.level, level_weight(domain)));
    case SortKind::Type: return Sort::type(std::max(codomain.level, level_weight(domain)));
    }
    return codomain;
}

bool sort_leq(const Sort& a, const Sort& b, const GlobalEnv& env) {
    if (a == b) return true;
    if (a.kind == b.kind && !a.is_prop()) return a.level < b.level;
    return env.config().mode == Mode::CIC && env.config().prop_cumulative && a.is_prop() && b.is_type();
}

bool subtype(const Term& a, const Term& b, const GlobalEnv& env) {
    Fuel fuel(env.config().fuel);
    Term wa = whnf(a, env, fuel), wb = whnf(b, env, fuel);
    if (wa.is(Kind::Sort) && wb.is(Kind::Sort)) return sort_leq(wa.sort(), wb.sort(), env);
    if (wa.is(Kind::Prod) && wb.is(Kind::Prod))
        return conv(wa.domain(), wb.domain(), env, fuel) && subtype(wa.body(), wb.body(), env);
    return conv(wa, wb, env, fuel);
}

namespace {

class Checker {
public:
    Checker(const GlobalEnv& env, Context ctx) : env_(env), ctx_(std::move(ctx)) {}

    Term infer(const Term& t) {
        switch (t.kind()) {
        case Kind::Var:
            if (t.var_index() >= ctx_.size())
                fail(ErrorCode::UnboundVariable, "unbound variable #" + std::to_string(t.var_index()));
            return ctx_.type_of(t.var_index());
        case Kind::Sort: return mk_sort(sort_of_sort(t.sort(), env_));
        case Kind::Prod: {
            Sort s1 = infer_sort(t.domain());
            ctx_.push_in_place(t.name(), t.domain());
            Sort s2 = infer_sort(t.body());
            ctx_.pop_in_place();
            return mk_sort(product_sort(s1, s2));
        }
        case Kind::Lam: {
            infer_sort(t.domain());
            ctx_.push_in_place(t.name(), t.domain());
            Term body_type = infer(t.body());
            ctx_.pop_in_place();
            return mk_prod(t.name(), t.domain(), body_type);
        }
        case Kind::App: {
            Term fn_type = whnf(infer(t.fn()), env_);
            if (!fn_type.is(Kind::Prod))
                fail(ErrorCode::NotAFunction,
                     "cannot apply " + show(t.fn()) + " of type " + show(fn_type));
            expect(t.arg(), fn_type.domain(), ErrorCode::IllTyped);
            return instantiate(fn_type.body(), t.arg());
        }
        case Kind::Ind: {
            const InductiveDecl* ind = env_.find_inductive(t.name());
            if (!ind) fail(ErrorCode::UnknownGlobal, "unknown inductive " + t.name());
            return ind->arity;
        }
        case Kind::Constr: {
            auto ref = env_.find_constructor(t.name());
            if (!ref) fail(ErrorCode::UnknownGlobal, "unknown constructor " + t.name());
            return ref->inductive->constructors[ref->index].type;
        }
        case Kind::Const: {
            if (const Definition* d = env_.find_definition(t.name())) return d->type;
            if (const Axiom* a = env_.find_axiom(t.name())) return a->type;
            fail(ErrorCode::UnknownGlobal, "unknown constant " + t.name());
        }
        case Kind::Case: return infer_case(t);
        case Kind::Fix: return infer_fix(t);
        }
        fail(ErrorCode::IllTyped, "unknown term kind");
    }

    Sort infer_sort(const Term& t) {
        Term ty = whnf(infer(t), env_);
        if (!ty.is(Kind::Sort))
            fail(ErrorCode::SortMismatch, show(t) + " is not a type (it has type " + show(ty) + ")");
        return ty.sort();
    }

    bool check(const Term& t, const Term& expected) { return subtype(infer(t), expected, env_); }

    void expect(const Term& t, const Term& expected, ErrorCode code) {
        Term actual = infer(t);
        if (!subtype(actual, expected, env_))
            fail(code, show(t) + " has type " + show(actual) + " but is expected to have type " +
                           show(expected));
    }

    Term infer_case(const Term& c) {
        const InductiveDecl* ind = env_.find_inductive(c.name());
        if (!ind) fail(ErrorCode::UnknownGlobal, "case on unknown inductive " + c.name());
        const unsigned p = ind->param_count, n = ind->index_count;
        if (c.params().size() != p)
            fail(ErrorCode::MalformedCase, "case on " + ind->name + " expects " + std::to_string(p) +
                                               " parameters, got " + std::to_string(c.params().size()));
        if (c.branches().size() != ind->constructors.size())
            fail(ErrorCode::MalformedCase, "case on " + ind->name + " expects " +
                                               std::to_string(ind->constructors.size()) + " branches, got " +
                                               std::to_string(c.branches().size()));

        // Parameters against the arity telescope.
        Term tele = ind->arity;
        for (unsigned i = 0; i < p; ++i) {
            expect(c.params()[i], tele.domain(), ErrorCode::IllTyped);
            tele = instantiate(tele.body(), c.params()[i]);
        }

        // Scrutinee : I Q G.
        Term scrut_type = whnf(infer(c.scrutinee()), env_);
        Spine st = decompose_app(scrut_type);
        if (!st.head.is(Kind::Ind) || st.head.name() != ind->name || st.args.size() != p + n)
            fail(ErrorCode::IllTyped, "scrutinee " + show(c.scrutinee()) + " has type " + show(scrut_type) +
                                          ", not an instance of " + ind->name);
        for (unsigned i = 0; i < p; ++i)
            if (!conv(st.args[i], c.params()[i], env_))
                fail(ErrorCode::IllTyped, "case parameter " + show(c.params()[i]) +
                                              " does not match scrutinee type " + show(scrut_type));
        std::vector<Term> indices(st.args.begin() + p, st.args.end());

        // Motive : forall (y : B[Q/x]), I Q y -> r.
        Sort target = check_motive(*ind, c.params(), tele, c.motive());
        check_elimination(*ind, target);

        for (unsigned j = 0; j < ind->constructors.size(); ++j) {
            Term expected = branch_type(*ind, j, c.params(), c.motive());
            Term actual = infer(c.branches()[j]);
            if (!subtype(actual, expected, env_))
                fail(ErrorCode::BranchMismatch, "branch for " + ind->constructors[j].name + " has type " +
                                                    show(actual) + " but should have type " + show(expected));
        }
        indices.push_back(c.scrutinee());
        return mk_app(c.motive(), indices);
    }

    Sort check_motive(const InductiveDecl& ind, const std::vector<Term>& params, const Term& index_tele,
                      const Term& motive) {
        Term mt = infer(motive);
        Term expected = index_tele;
        const unsigned n = ind.index_count;
        Fuel fuel(env_.config().fuel);
        unsigned pushed = 0;
        auto mismatch = [&](const std::string& why) {
            for (; pushed > 0; --pushed) ctx_.pop_in_place();
            fail(ErrorCode::MotiveMismatch, "motive " + show(motive) + " : " + why);
        };
        for (unsigned i = 0; i < n; ++i) {
            mt = whnf(mt, env_, fuel);
            expected = whnf(expected, env_, fuel);
            if (!mt.is(Kind::Prod) || !expected.is(Kind::Prod)) mismatch("too few index binders");
            if (!conv(mt.domain(), expected.domain(), env_, fuel)) mismatch("index binder type mismatch");
            ctx_.push_in_place(mt.name(), mt.domain());
            ++pushed;
            mt = mt.body();
            expected = expected.body();
        }
        mt = whnf(mt, env_, fuel);
        if (!mt.is(Kind::Prod)) mismatch("missing binder for the eliminated value");
        std::vector<Term> args;
        for (const auto& q : params) args.push_back(lift(q, n));
        for (unsigned i = 0; i < n; ++i) args.push_back(mk_var(n - 1 - i));
        if (!conv(mt.domain(), mk_app(mk_ind(ind.name), args), env_, fuel))
            mismatch("eliminated value binder must have type " + ind.name + " applied to the parameters and indices");
        ctx_.push_in_place(mt.name(), mt.domain());
        ++pushed;
        Term result = whnf(mt.body(), env_, fuel);
        if (!result.is(Kind::Sort)) mismatch("does not return a sort");
        for (; pushed > 0; --pushed) ctx_.pop_in_place();
        return result.sort();
    }

    void check_elimination(const InductiveDecl& ind, const Sort& target) {
        const Sort& source = ind.concl_sort;
        if (source.is_prop()) {
            if (target.is_prop()) return;
            bool ok = ind.constructors.empty() ||
                      (ind.constructors.size() == 1 && ind.constructors[0].prop_args_only);
            if (!ok)
                fail(ErrorCode::IllegalElimination,
                     "restriction (1): " + ind.name + " is in Prop and may only be eliminated into " + to_string(target) +
                         " when it has zero constructors or one constructor with Prop arguments");
            return;
        }
        if (env_.config().mode == Mode::CICr && target.is_type() && !ind.is_small)
            fail(ErrorCode::IllegalElimination, "large elimination of " + ind.name + " into " + to_string(target) +
                                                    " requires a small inductive definition");
    }

    Term infer_fix(const Term& f) {
        Term ft = infer(f.domain());
        if (!whnf(ft, env_).is(Kind::Sort))
            fail(ErrorCode::AnnotationNotAType, "fixpoint annotation " + show(f.domain()) + " is not a type");
        ctx_.push_in_place(f.name(), f.domain());
        Term body_type = infer(f.body());
        bool ok = subtype(body_type, lift(f.domain(), 1), env_);
        if (!ok) {
            std::string msg = "fixpoint body has type " + show(body_type) + " but the annotation is " +
                              show(lift(f.domain(), 1));
            ctx_.pop_in_place();
            fail(ErrorCode::IllTyped, msg);
        }
        ctx_.pop_in_place();

        // The decreasing argument must have an inductive type.
        Term tele = f.domain();
        Fuel fuel(env_.config().fuel);
        Context local = ctx_;
        for (unsigned i = 0;; ++i) {
            tele = whnf(tele, env_, fuel);
            if (!tele.is(Kind::Prod))
                fail(ErrorCode::GuardViolation, "fixpoint type has fewer than " +
                                                    std::to_string(f.struct_arg() + 1) + " arguments");
            if (i == f.struct_arg()) {
                Term dom = whnf(tele.domain(), env_, fuel);
                if (!decompose_app(dom).head.is(Kind::Ind))
                    fail(ErrorCode::GuardViolation, "decreasing argument of type " + print_term(dom, local) +
                                                        " is not an inductive type");
                break;
            }
            local.push_in_place(tele.name(), tele.domain());
            tele = tele.body();
        }
        check_guard(f);
        return f.domain();
    }

    std::string show(const Term& t) const { return print_term(t, ctx_, &env_); }

    Context& context() { return ctx_; }

private:
    const GlobalEnv& env_;
    Context ctx_;
};

}  // namespace

Term infer(const Context& ctx, const Term& t, const GlobalEnv& env) { return Checker(env, ctx).infer(t); }

Sort infer_sort(const Context& ctx, const Term& t, const GlobalEnv& env) {
    return Checker(env, ctx).infer_sort(t);
}

bool check(const Context& ctx, const Term& t, const Term& expected, const GlobalEnv& env) {
    return Checker(env, ctx).check(t, expected);
}

void check_context(const Context& ctx, const GlobalEnv& env) {
    Context prefix;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        infer_sort(prefix, ctx.at_level(i).type, env);
        prefix.push_in_place(ctx.at_level(i).name, ctx.at_level(i).type);
    }
}

Term check_case(const Context& ctx, const Term& case_term, const GlobalEnv& env) {
    return Checker(env, ctx).infer_case(case_term);
}

Term check_fix(const Context& ctx, const Term& fix_term, const GlobalEnv& env) {
    return Checker(env, ctx).infer_fix(fix_term);
}

Telescope constructor_telescope(const InductiveDecl& ind, unsigned j, const std::vector<Term>& params) {
    Term t = ind.constructors.at(j).type;
    for (unsigned i = 0; i < ind.param_count; ++i) t = t.body();
    t = instantiate_many(t, params);
    Telescope tel;
    for (unsigned i = 0; i < ind.constructors[j].arg_count; ++i) {
        tel.binders.emplace_back(t.name(), t.domain());
        t = t.body();
    }
    tel.conclusion = t;
    return tel;
}

Telescope arity_telescope(const InductiveDecl& ind, const std::vector<Term>& params) {
    Term t = ind.arity;
    for (unsigned i = 0; i < ind.param_count; ++i) t = t.body();
    t = instantiate_many(t, params);
    Telescope tel;
    for (unsigned i = 0; i < ind.index_count; ++i) {
        tel.binders.emplace_back(t.name(), t.domain());
        t = t.body();
    }
    tel.conclusion = t;
    return tel;
}

Term branch_type(const InductiveDecl& ind, unsigned j, const std::vector<Term>& params, const Term& motive) {
    Telescope tel = constructor_telescope(ind, j, params);
    const unsigned nz = static_cast<unsigned>(tel.binders.size());
    Spine concl = decompose_app(tel.conclusion);
    std::vector<Term> args(concl.args.begin() + ind.param_count, concl.args.end());
    std::vector<Term> ctor_args;
    for (const auto& q : params) ctor_args.push_back(lift(q, nz));
    for (unsigned i = 0; i < nz; ++i) ctor_args.push_back(mk_var(nz - 1 - i));
    args.push_back(mk_app(mk_constr(ind.constructors[j].name), ctor_args));
    Term result = mk_app(lift(motive, nz), args);
    for (unsigned i = nz; i-- > 0;) result = mk_prod(tel.binders[i].first, tel.binders[i].second, result);
    return result;
}

// ---------------------------------------------------------------------------
// Inductive declarations

namespace {

struct Unrolled {
    std::vector<std::pair<std::string, Term>> binders;
    Term conclusion;
};

// Head-normalizes a product telescope binder by binder.
Unrolled unroll(const Term& t, const GlobalEnv& env) {
    Unrolled u;
    Fuel fuel(env.config().fuel);
    Term cur = whnf(t, env, fuel);
    while (cur.is(Kind::Prod)) {
        u.binders.emplace_back(cur.name(), cur.domain());
        cur = whnf(cur.body(), env, fuel);
    }
    u.conclusion = cur;
    return u;
}

Term reroll(const std::vector<std::pair<std::string, Term>>& binders, Term concl) {
    for (std::size_t i = binders.size(); i-- > 0;) concl = mk_prod(binders[i].first, binders[i].second, concl);
    return concl;
}

bool is_param_var(const Term& t, unsigned param_index, unsigned p, unsigned depth_after_params) {
    return t.is(Kind::Var) && t.var_index() == depth_after_params + (p - 1 - param_index);
}

// I may occur in a constructor argument type only as the conclusion, applied to
// the uniform parameters. `depth` counts binders between the parameters and E.
void check_strictly_positive(const Term& arg_type, const InductiveDecl& ind, unsigned depth,
                             const GlobalEnv& env, const std::string& ctor) {
    if (!mentions_global(arg_type, ind.name)) return;
    Unrolled u = unroll(arg_type, env);
    for (const auto& [name, dom] : u.binders)
        if (mentions_global(dom, ind.name))
            fail(ErrorCode::PositivityViolation,
                 ind.name + " occurs to the left of an arrow in an argument of constructor " + ctor);
    Spine s = decompose_app(u.conclusion);
    if (!s.head.is(Kind::Ind) || s.head.name() != ind.name)
        fail(ErrorCode::PositivityViolation,
             ind.name + " occurs in a non-conclusion position in an argument of constructor " + ctor);
    const unsigned p = ind.param_count;
    if (s.args.size() != p + ind.index_count)
        fail(ErrorCode::PositivityViolation, "recursive occurrence of " + ind.name + " in " + ctor +
                                                 " is not fully applied");
    const unsigned inner = depth + static_cast<unsigned>(u.binders.size());
    for (unsigned i = 0; i < s.args.size(); ++i) {
        if (mentions_global(s.args[i], ind.name))
            fail(ErrorCode::PositivityViolation,
                 ind.name + " occurs inside the arguments of its own recursive occurrence in " + ctor);
        if (i < p && !is_param_var(s.args[i], i, p, inner))
            fail(ErrorCode::PositivityViolation, "recursive occurrence of " + ind.name + " in " + ctor +
                                                     " must use the same parameters");
    }
}

void require_fresh(const GlobalEnv& env, const std::string& name, std::set<std::string>& seen) {
    if (env.has_name(name) || !seen.insert(name).second) fail(ErrorCode::NameClash, "name " + name + " is already used");
}

}  // namespace

void declare_inductive_in_place(GlobalEnv& env, const InductiveCandidate& cand) {
    std::set<std::string> seen;
    require_fresh(env, cand.name, seen);
    for (const auto& [cname, _] : cand.constructors) require_fresh(env, cname, seen);

    // Condition 2: the arity concludes in Prop or Set (Prop or Type in CIC mode).
    try {
        infer_sort(Context{}, cand.arity, env);
    } catch (const KernelError& e) {
        fail(ErrorCode::NotAnArity, "arity of " + cand.name + " is not a type: " + e.what());
    }
    Unrolled arity = unroll(cand.arity, env);
    if (!arity.conclusion.is(Kind::Sort))
        fail(ErrorCode::NotAnArity, "arity of " + cand.name + " does not end in a sort");
    const Sort r = arity.conclusion.sort();
    const bool cic = env.config().mode == Mode::CIC;
    if (!(r.is_prop() || (cic ? r.is_type() : r.is_set())))
        fail(ErrorCode::NotAnArity, "arity of " + cand.name + " must conclude in Prop or " +
                                        std::string(cic ? "Type" : "Set") + ", not " + to_string(r));
    if (arity.binders.size() < cand.param_count)
        fail(ErrorCode::NotAnArity, "arity of " + cand.name + " has fewer binders than parameters");

    InductiveDecl decl;
    decl.name = cand.name;
    decl.param_count = cand.param_count;
    decl.arity = reroll(arity.binders, arity.conclusion);
    decl.concl_sort = r;
    decl.index_count = static_cast<unsigned>(arity.binders.size()) - cand.param_count;
    decl.is_small = true;

    GlobalEnv scratch = env;
    scratch.add_inductive(decl);  // I : A, no constructors yet

    const unsigned p = cand.param_count;
    for (const auto& [cname, ctype] : cand.constructors) {
        try {
            infer_sort(Context{}, ctype, scratch);
        } catch (const KernelError& e) {
            fail(ErrorCode::ConstructorIllTyped, "type of constructor " + cname + " is ill-typed: " + e.what());
        }
        Unrolled u = unroll(ctype, scratch);
        if (u.binders.size() < p)
            fail(ErrorCode::ConstructorIllTyped, "constructor " + cname + " does not bind the parameters");
        // Uniform parameters.
        {
            Fuel fuel(env.config().fuel);
            for (unsigned i = 0; i < p; ++i) {
                if (mentions_global(u.binders[i].second, cand.name))
                    fail(ErrorCode::PositivityViolation, cand.name + " occurs in a parameter type of " + cname);
                if (!conv(u.binders[i].second, arity.binders[i].second, scratch, fuel))
                    fail(ErrorCode::ConstructorIllTyped, "parameter " + std::to_string(i) + " of constructor " +
                                                             cname + " differs from the inductive's");
            }
        }
        const unsigned nz = static_cast<unsigned>(u.binders.size()) - p;
        Spine concl = decompose_app(u.conclusion);
        if (!concl.head.is(Kind::Ind) || concl.head.name() != cand.name ||
            concl.args.size() != p + decl.index_count)
            fail(ErrorCode::ConstructorIllTyped,
                 "constructor " + cname + " must conclude in " + cand.name + " applied to its parameters and indices");
        for (unsigned i = 0; i < concl.args.size(); ++i) {
            if (i < p && !is_param_var(concl.args[i], i, p, nz))
                fail(ErrorCode::ConstructorIllTyped, "constructor " + cname + " must conclude in " + cand.name +
                                                         " applied to its own parameters");
            if (i >= p && mentions_global(concl.args[i], cand.name))
                fail(ErrorCode::PositivityViolation, cand.name + " occurs in an index of " + cname);
        }

        ConstructorDecl cdecl;
        cdecl.name = cname;
        cdecl.arg_count = nz;
        cdecl.type = reroll(u.binders, u.conclusion);

        // Positivity and the sorts of the non-parameter arguments.
        Context ctx;
        for (unsigned i = 0; i < p; ++i) ctx.push_in_place(u.binders[i].first, u.binders[i].second);
        std::vector<std::pair<std::string, Term>> tail(u.binders.begin() + p, u.binders.end());
        {
            // Condition 4: forall (z : E), I x D has sort r under the parameters.
            Sort tail_sort;
            try {
                tail_sort = infer_sort(ctx, reroll(tail, u.conclusion), scratch);
            } catch (const KernelError& e) {
                fail(ErrorCode::ConstructorIllTyped, "constructor " + cname + ": " + e.what());
            }
            if (!sort_leq(tail_sort, r, env))
                fail(ErrorCode::UniverseError, "constructor " + cname + " lives in " + to_string(tail_sort) +
                                                   ", above the inductive's sort " + to_string(r));
        }
        for (unsigned k = 0; k < nz; ++k) {
            check_strictly_positive(tail[k].second, decl, k, scratch, cname);
            Sort s = infer_sort(ctx, tail[k].second, scratch);
            if (!s.is_prop()) cdecl.prop_args_only = false;
            if (s.is_type()) decl.is_small = false;
            ctx.push_in_place(tail[k].first, tail[k].second);
        }
        decl.constructors.push_back(std::move(cdecl));
    }
    env.add_inductive(std::move(decl));
}

GlobalEnv declare_inductive(const GlobalEnv& env, const InductiveCandidate& candidate) {
    GlobalEnv out = env;
    declare_inductive_in_place(out, candidate);
    return out;
}

void register_definition_in_place(GlobalEnv& env, const std::string& name, std::optional<Term> type,
                                  const Term& body) {
    if (env.has_name(name)) fail(ErrorCode::NameClash, "name " + name + " is already used");
    Context empty;
    Term ty;
    if (type) {
        infer_sort(empty, *type, env);
        Term actual = infer(empty, body, env);
        if (!subtype(actual, *type, env))
            fail(ErrorCode::IllTyped, "body of " + name + " has type " + print_term(actual, empty, &env) +
                                          " but is declared with type " + print_term(*type, empty, &env));
        ty = *type;
    } else {
        ty = infer(empty, body, env);
    }
    env.add_definition({name, ty, body});
}

GlobalEnv register_definition(const GlobalEnv& env, const std::string& name, std::optional<Term> type,
                              const Term& body) {
    GlobalEnv out = env;
    register_definition_in_place(out, name, std::move(type), body);
    return out;
}

void register_axiom_in_place(GlobalEnv& env, const std::string& name, const Term& type) {
    if (env.has_name(name)) fail(ErrorCode::NameClash, "name " + name + " is already used");
    try {
        infer_sort(Context{}, type, env);
    } catch (const KernelError& e) {
        fail(ErrorCode::IllTyped, "type of axiom " + name + " is ill-typed: " + e.what());
    }
    env.add_axiom({name, type});
}

GlobalEnv register_axiom(const GlobalEnv& env, const std::string& name, const Term& type) {
    GlobalEnv out = env;
    register_axiom_in_place(out, name, type);
    return out;
}

void register_witness_in_place(GlobalEnv& env, const std::string& axiom, const std::string& definition_name,
                               const Term& witness, const Term& relation) {
    const Axiom* ax = env.find_axiom(axiom);
    if (!ax) fail(ErrorCode::UnknownGlobal, axiom + " is not an axiom");
    if (env.witness_of(axiom)) fail(ErrorCode::NameClash, "axiom " + axiom + " already has a witness");
    if (env.has_name(definition_name)) fail(ErrorCode::NameClash, "name " + definition_name + " is already used");
    Term expected = beta_normalize(mk_prod("h", ax->type, mk_app(lift(relation, 1), {mk_var(0), mk_var(0)})));
    Context empty;
    Term actual;
    try {
        actual = infer(empty, witness, env);
    } catch (const KernelError& e) {
        fail(ErrorCode::WitnessTypeMismatch, "witness for " + axiom + " is ill-typed: " + e.what());
    }
    if (!subtype(actual, expected, env))
        fail(ErrorCode::WitnessTypeMismatch, "witness for " + axiom + " has type " + print_term(actual, empty, &env) +
                                                 " but must have type " + print_term(expected, empty, &env));
    env.add_definition({definition_name, expected, witness});
    env.add_witness(axiom, definition_name);
}

GlobalEnv register_witness(const GlobalEnv& env, const std::string& axiom, const std::string& definition_name,
                           const Term& witness, const Term& relation) {
    GlobalEnv out = env;
    register_witness_in_place(out, axiom, definition_name, witness, relation);
    return out;
}

// ---------------------------------------------------------------------------
// Guard condition

namespace {

class GuardChecker {
public:
    explicit GuardChecker(unsigned struct_arg) : k_(struct_arg) {}

    void run(const Term& fix_body) {
        // Levels: 0 is the recursive function, 1..k+1 its leading arguments.
        Term t = fix_body;
        unsigned depth = 1;
        for (unsigned i = 0; i <= k_; ++i) {
            if (!t.is(Kind::Lam))
                fail(ErrorCode::GuardViolation, "fixpoint body must abstract its first " + std::to_string(k_ + 1) +
                                                    " arguments");
            walk(t.domain(), depth);
            t = t.body();
            ++depth;
        }
        rec_level_ = k_ + 1;
        walk(t, depth);
    }

private:
    static unsigned level_of(const Term& v, unsigned depth) { return depth - 1 - v.var_index(); }

    bool is_structural(const Term& t, unsigned depth) const {
        if (!t.is(Kind::Var) || t.var_index() >= depth) return false;
        unsigned lvl = level_of(t, depth);
        return lvl == rec_level_ || subterms_.count(lvl);
    }

    bool is_smaller(const Term& t, unsigned depth) const {
        if (!t.is(Kind::Var) || t.var_index() >= depth) return false;
        return subterms_.count(level_of(t, depth)) > 0;
    }

    bool is_self(const Term& t, unsigned depth) const {
        return t.is(Kind::Var) && t.var_index() < depth && level_of(t, depth) == 0;
    }

    void walk(const Term& t, unsigned depth) {
        if (t.loose_bound() == 0) return;  // closed subterm cannot mention the fixpoint
        switch (t.kind()) {
        case Kind::Var:
            if (is_self(t, depth))
                fail(ErrorCode::GuardViolation, "recursive function used without its decreasing argument");
            return;
        case Kind::App: {
            Spine s = decompose_app(t);
            if (is_self(s.head, depth)) {
                if (s.args.size() <= k_)
                    fail(ErrorCode::GuardViolation, "recursive call is missing its decreasing argument");
                if (!is_smaller(s.args[k_], depth))
                    fail(ErrorCode::GuardViolation,
                         "recursive call on an argument that is not a structural subterm of the decreasing argument");
            } else {
                walk(s.head, depth);
            }
            for (const auto& a : s.args) walk(a, depth);
            return;
        }
        case Kind::Prod:
        case Kind::Lam:
        case Kind::Fix:
            walk(t.domain(), depth);
            walk(t.body(), depth + 1);
            return;
        case Kind::Case: {
            walk(t.scrutinee(), depth);
            walk(t.motive(), depth);
            for (const auto& p : t.params()) walk(p, depth);
            const bool decreasing = is_structural(t.scrutinee(), depth);
            for (const auto& b : t.branches()) {
                if (!decreasing) {
                    walk(b, depth);
                    continue;
                }
                // Leading abstractions of a branch bind the constructor arguments.
                Term cur = b;
                unsigned d = depth;
                std::vector<unsigned> added;
                while (cur.is(Kind::Lam)) {
                    walk(cur.domain(), d);
                    if (subterms_.insert(d).second) added.push_back(d);
                    cur = cur.body();
                    ++d;
                }
                walk(cur, d);
                for (unsigned lvl : added) subterms_.erase(lvl);
            }
            return;
        }
        default: return;
        }
    }

    unsigned k_;
    unsigned rec_level_ = 0;
    std::set<unsigned> subterms_;
};

}  // namespace

void check_guard(const Term& fix_term) {
    if (!fix_term.is(Kind::Fix)) fail(ErrorCode::GuardViolation, "not a fixpoint");
    GuardChecker(fix_term.struct_arg()).run(fix_term.body());
}

}  // namespace cicr
