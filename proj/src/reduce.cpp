#include "cicr/reduce.hpp"

#include "cicr/error.hpp"

namespace cicr {

void Fuel::consume() {
    if (remaining_ == 0) fail(ErrorCode::FuelExhausted, "reduction fuel exhausted");
    --remaining_;
}

namespace {

Term apply_from(Term head, const std::vector<Term>& args, std::size_t from) {
    for (std::size_t i = from; i < args.size(); ++i) head = mk_app(std::move(head), args[i]);
    return head;
}

bool constructor_headed(const Term& t) { return decompose_app(t).head.is(Kind::Constr); }

// Contracts case_I(c_j Q M, Q, T, F) to F_j M given a constructor-headed scrutinee.
Term select_branch(const Term& c, const Term& scrutinee, const GlobalEnv& env) {
    Spine s = decompose_app(scrutinee);
    auto ref = env.find_constructor(s.head.name());
    if (!ref) fail(ErrorCode::UnknownGlobal, "unknown constructor " + s.head.name());
    const InductiveDecl& ind = *ref->inductive;
    if (ind.name != c.name())
        fail(ErrorCode::MalformedCase, "case on " + c.name() + " applied to constructor " +
                                           s.head.name() + " of " + ind.name);
    if (c.branches().size() != ind.constructors.size())
        fail(ErrorCode::MalformedCase, "case on " + ind.name + " has " +
                                           std::to_string(c.branches().size()) + " branches, expected " +
                                           std::to_string(ind.constructors.size()));
    return apply_from(c.branches()[ref->index], s.args, ind.param_count);
}

}  // namespace

std::optional<Term> beta_step(const Term& t) {
    Spine s = decompose_app(t);
    if (!s.head.is(Kind::Lam) || s.args.empty()) return std::nullopt;
    return apply_from(instantiate(s.head.body(), s.args[0]), s.args, 1);
}

std::optional<Term> iota_step(const Term& t, const GlobalEnv& env) {
    Spine s = decompose_app(t);
    if (s.head.is(Kind::Case)) {
        if (!constructor_headed(s.head.scrutinee())) return std::nullopt;
        return apply_from(select_branch(s.head, s.head.scrutinee(), env), s.args, 0);
    }
    if (s.head.is(Kind::Fix)) {
        unsigned k = s.head.struct_arg();
        if (s.args.size() <= k || !constructor_headed(s.args[k])) return std::nullopt;
        return apply_from(instantiate(s.head.body(), s.head), s.args, 0);
    }
    return std::nullopt;
}

std::optional<Term> delta_step(const Term& t, const GlobalEnv& env) {
    Spine s = decompose_app(t);
    if (!s.head.is(Kind::Const)) return std::nullopt;
    const Definition* d = env.find_definition(s.head.name());
    if (!d) return std::nullopt;
    return apply_from(d->body, s.args, 0);
}

Term whnf(const Term& t, const GlobalEnv& env, Fuel& fuel, ReduceFlags flags) {
    Term cur = t;
    for (;;) {
        if (!cur.is(Kind::App) && !cur.is(Kind::Case) && !cur.is(Kind::Const)) return cur;
        Spine s = decompose_app(cur);
        const Term& head = s.head;
        switch (head.kind()) {
        case Kind::Lam:
            if (!flags.beta || s.args.empty()) return cur;
            fuel.consume();
            cur = apply_from(instantiate(head.body(), s.args[0]), s.args, 1);
            continue;
        case Kind::Case: {
            if (!flags.iota) return cur;
            Term scrut = whnf(head.scrutinee(), env, fuel, flags);
            if (!constructor_headed(scrut)) {
                if (scrut.get() == head.scrutinee().get()) return cur;
                Term stuck = mk_case(head.name(), scrut, head.params(), head.motive(), head.branches());
                return apply_from(stuck, s.args, 0);
            }
            fuel.consume();
            cur = apply_from(select_branch(head, scrut, env), s.args, 0);
            continue;
        }
        case Kind::Fix: {
            unsigned k = head.struct_arg();
            if (!flags.iota || s.args.size() <= k) return cur;
            Term rec = whnf(s.args[k], env, fuel, flags);
            if (!constructor_headed(rec)) {
                if (rec.get() == s.args[k].get()) return cur;
                s.args[k] = rec;
                return apply_from(head, s.args, 0);
            }
            fuel.consume();
            s.args[k] = rec;
            cur = apply_from(instantiate(head.body(), head), s.args, 0);
            continue;
        }
        case Kind::Const: {
            if (!flags.delta) return cur;
            const Definition* d = env.find_definition(head.name());
            if (!d) return cur;
            fuel.consume();
            cur = apply_from(d->body, s.args, 0);
            continue;
        }
        default: return cur;
        }
    }
}

Term whnf(const Term& t, const GlobalEnv& env) {
    Fuel fuel(env.config().fuel);
    return whnf(t, env, fuel);
}

namespace {

Term normalize_rec(const Term& t, const GlobalEnv& env, Fuel& fuel, ReduceFlags flags);

Term normalize_head(const Term& h, const GlobalEnv& env, Fuel& fuel, ReduceFlags flags) {
    switch (h.kind()) {
    case Kind::Prod:
        return mk_prod(h.name(), normalize_rec(h.domain(), env, fuel, flags),
                       normalize_rec(h.body(), env, fuel, flags));
    case Kind::Lam:
        return mk_lam(h.name(), normalize_rec(h.domain(), env, fuel, flags),
                      normalize_rec(h.body(), env, fuel, flags));
    case Kind::Case: {
        std::vector<Term> ps, bs;
        for (const auto& p : h.params()) ps.push_back(normalize_rec(p, env, fuel, flags));
        for (const auto& b : h.branches()) bs.push_back(normalize_rec(b, env, fuel, flags));
        return mk_case(h.name(), normalize_rec(h.scrutinee(), env, fuel, flags), std::move(ps),
                       normalize_rec(h.motive(), env, fuel, flags), std::move(bs));
    }
    case Kind::Fix:
        return mk_fix(h.name(), normalize_rec(h.domain(), env, fuel, flags),
                      normalize_rec(h.body(), env, fuel, flags), h.struct_arg());
    default: return h;
    }
}

Term normalize_rec(const Term& t, const GlobalEnv& env, Fuel& fuel, ReduceFlags flags) {
    Term w = whnf(t, env, fuel, flags);
    Spine s = decompose_app(w);
    Term out = normalize_head(s.head, env, fuel, flags);
    for (const auto& a : s.args) out = mk_app(out, normalize_rec(a, env, fuel, flags));
    return out;
}

bool conv_rec(const Term& a, const Term& b, const GlobalEnv& env, Fuel& fuel);

bool same_head(const Term& a, const Term& b, const GlobalEnv& env, Fuel& fuel) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Kind::Var: return a.var_index() == b.var_index();
    case Kind::Sort: return a.sort() == b.sort();
    case Kind::Ind:
    case Kind::Constr:
    case Kind::Const: return a.name() == b.name();
    case Kind::Prod:
    case Kind::Lam:
        return conv_rec(a.domain(), b.domain(), env, fuel) && conv_rec(a.body(), b.body(), env, fuel);
    case Kind::Case: {
        if (a.name() != b.name() || a.params().size() != b.params().size() ||
            a.branches().size() != b.branches().size())
            return false;
        if (!conv_rec(a.scrutinee(), b.scrutinee(), env, fuel)) return false;
        for (std::size_t i = 0; i < a.params().size(); ++i)
            if (!conv_rec(a.params()[i], b.params()[i], env, fuel)) return false;
        if (!conv_rec(a.motive(), b.motive(), env, fuel)) return false;
        for (std::size_t i = 0; i < a.branches().size(); ++i)
            if (!conv_rec(a.branches()[i], b.branches()[i], env, fuel)) return false;
        return true;
    }
    case Kind::Fix:
        return a.struct_arg() == b.struct_arg() && conv_rec(a.domain(), b.domain(), env, fuel) &&
               conv_rec(a.body(), b.body(), env, fuel);
    case Kind::App: return false;
    }
    return false;
}

bool structural(const Term& a, const Term& b, const GlobalEnv& env, Fuel& fuel) {
    Spine sa = decompose_app(a), sb = decompose_app(b);
    if (sa.args.size() != sb.args.size()) return false;
    if (!same_head(sa.head, sb.head, env, fuel)) return false;
    for (std::size_t i = 0; i < sa.args.size(); ++i)
        if (!conv_rec(sa.args[i], sb.args[i], env, fuel)) return false;
    return true;
}

bool unfoldable_head(const Term& t, const GlobalEnv& env) {
    Spine s = decompose_app(t);
    if (s.head.is(Kind::Const)) return env.find_definition(s.head.name()) != nullptr;
    // stuck case/fix may become reducible once definitions are unfolded
    return s.head.is(Kind::Case) || s.head.is(Kind::Fix);
}

bool conv_rec(const Term& a, const Term& b, const GlobalEnv& env, Fuel& fuel) {
    if (alpha_eq(a, b)) return true;
    fuel.consume();
    ReduceFlags lazy{true, true, false};
    Term wa = whnf(a, env, fuel, lazy);
    Term wb = whnf(b, env, fuel, lazy);
    if (alpha_eq(wa, wb)) return true;
    bool ua = unfoldable_head(wa, env), ub = unfoldable_head(wb, env);
    if (!ua && !ub) return structural(wa, wb, env, fuel);
    // Same folded head: try argument-wise first, unfold on failure.
    Spine sa = decompose_app(wa), sb = decompose_app(wb);
    if (sa.head.is(Kind::Const) && sb.head.is(Kind::Const) && sa.head.name() == sb.head.name() &&
        structural(wa, wb, env, fuel))
        return true;
    Term da = whnf(wa, env, fuel);
    Term db = whnf(wb, env, fuel);
    if (alpha_eq(da, db)) return true;
    return structural(da, db, env, fuel);
}

}  // namespace

Term normalize(const Term& t, const GlobalEnv& env, Fuel& fuel, ReduceFlags flags) {
    return normalize_rec(t, env, fuel, flags);
}

Term normalize(const Term& t, const GlobalEnv& env) {
    Fuel fuel(env.config().fuel);
    return normalize(t, env, fuel);
}

Term beta_normalize(const Term& t) {
    static const GlobalEnv empty;
    Fuel fuel(empty.config().fuel);
    return normalize(t, empty, fuel, ReduceFlags::beta_only());
}

bool conv(const Term& a, const Term& b, const GlobalEnv& env, Fuel& fuel) {
    return conv_rec(a, b, env, fuel);
}

bool conv(const Term& a, const Term& b, const GlobalEnv& env) {
    Fuel fuel(env.config().fuel);
    return conv(a, b, env, fuel);
}

}  // namespace cicr
