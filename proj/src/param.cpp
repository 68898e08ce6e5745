#include "cicr/param.hpp"

#include <algorithm>
#include <optional>

#include "cicr/error.hpp"
#include "cicr/reduce.hpp"
#include "cicr/typecheck.hpp"

namespace cicr {

Sort hat(const Sort& s) { return s.is_type() ? s : Sort::prop(); }

namespace {

using Binders = std::vector<std::pair<std::string, Term>>;

Term lams(const Binders& bs, Term body) {
    for (std::size_t i = bs.size(); i-- > 0;) body = mk_lam(bs[i].first, bs[i].second, body);
    return body;
}

Term pis(const Binders& bs, Term body) {
    for (std::size_t i = bs.size(); i-- > 0;) body = mk_prod(bs[i].first, bs[i].second, body);
    return body;
}

std::string base_name(const std::string& n) { return n.empty() || n == "_" ? "x" : n; }

std::string fresh_global(const GlobalEnv& env, const std::string& base, const std::set<std::string>& extra = {}) {
    std::set<std::string> taken = env.names();
    taken.insert(extra.begin(), extra.end());
    return NameSupply::fresh(base, taken);
}

// Where a source variable lives in the target: its original copy, its primed
// copy and its relation witness, all valid at target depth `depth`.
struct Slot {
    Term orig, prime, rel;
    unsigned depth;
};

Slot tripled_slot(unsigned depth) { return {mk_var(2), mk_var(1), mk_var(0), depth}; }

const InductiveDecl& inductive_or_fail(const GlobalEnv& env, const std::string& name) {
    const InductiveDecl* ind = env.find_inductive(name);
    if (!ind) fail(ErrorCode::UnknownGlobal, "unknown inductive " + name);
    return *ind;
}

class Translator {
public:
    explicit Translator(GlobalEnv& env) : env_(env) {}

    void push(const std::string& name, const Term& src_type, Slot slot) {
        slots_.push_back(std::move(slot));
        src_.push_in_place(name, src_type);
    }

    void pop(unsigned n = 1) {
        for (unsigned i = 0; i < n; ++i) {
            slots_.pop_back();
            src_.pop_in_place();
        }
    }

    void bind_tripled(const Context& ctx) {
        for (std::size_t i = 0; i < ctx.size(); ++i)
            push(ctx.at_level(i).name, ctx.at_level(i).type, tripled_slot(static_cast<unsigned>(3 * (i + 1))));
    }

    Term orig(const Term& t, unsigned d) const { return relocate(t, false, d, 0); }
    Term prime(const Term& t, unsigned d) const { return relocate(t, true, d, 0); }

    // Binders x : orig A, x' : prime A, x_R : [[A]] x x' starting at depth d,
    // with the source variable pushed.
    Binders triple(const std::string& hint, const Term& src_type, unsigned d) {
        std::string n = base_name(hint);
        Binders bs{{n, orig(src_type, d)},
                   {NameSupply::prime_of(n), prime(src_type, d + 1)},
                   {NameSupply::relation_of(n), mk_app(rel(src_type, d + 2), {mk_var(1), mk_var(0)})}};
        push(n, src_type, tripled_slot(d + 3));
        return bs;
    }

    Term rel(const Term& t, unsigned d) {
        switch (t.kind()) {
        case Kind::Var: {
            const Slot& s = slot(t.var_index());
            return lift(s.rel, d - s.depth);
        }
        case Kind::Sort:
            return mk_lam("x", t, mk_lam("x'", t, mk_prod("_", mk_var(1), mk_prod("_", mk_var(1), mk_sort(hat(t.sort()))))));
        case Kind::Prod: {
            Term f = orig(t, d), f2 = prime(t, d + 1);
            Binders bs = triple(t.name(), t.domain(), d + 2);
            Term rb = rel(t.body(), d + 5);
            pop();
            Term body = mk_app(rb, {mk_app(mk_var(4), mk_var(2)), mk_app(mk_var(3), mk_var(1))});
            return mk_lam("f", f, mk_lam("f'", f2, pis(bs, body)));
        }
        case Kind::Lam: {
            Binders bs = triple(t.name(), t.domain(), d);
            Term rb = rel(t.body(), d + 3);
            pop();
            return lams(bs, rb);
        }
        case Kind::App: return mk_app(rel(t.fn(), d), {orig(t.arg(), d), prime(t.arg(), d), rel(t.arg(), d)});
        case Kind::Ind: return mk_ind(translate_inductive(env_, t.name()));
        case Kind::Constr: return mk_constr(translate_constructor(env_, t.name()));
        case Kind::Const: {
            if (env_.find_definition(t.name())) return mk_const(translate_definition(env_, t.name()));
            if (env_.find_axiom(t.name())) {
                auto w = env_.witness_of(t.name());
                if (!w)
                    fail(ErrorCode::MissingWitness,
                         "axiom " + t.name() + " has no parametricity witness (provide one with Realize)");
                return mk_app(mk_const(*w), t);
            }
            fail(ErrorCode::UnknownGlobal, "unknown constant " + t.name());
        }
        case Kind::Fix: {
            Term fo = orig(t, d), fp = prime(t, d);
            Term ty = mk_app(rel(t.domain(), d), {fo, fp});
            push(t.name(), t.domain(), {lift(fo, 1), lift(fp, 1), mk_var(0), d + 1});
            FixTail saved = tail_;
            tail_ = fix_tail(t);
            Term body = rel(t.body(), d + 1);
            tail_ = saved;
            pop();
            return mk_fix(NameSupply::relation_of(base_name(t.name())), ty, body, 3 * t.struct_arg() + 2);
        }
        case Kind::Case: return is_large(t) ? large_elim(t, d) : small_case(t, d);
        }
        fail(ErrorCode::NotSupported, "unknown term kind");
    }

    Term small_case(const Term& c, unsigned d) {
        std::string name_r = translate_inductive(env_, c.name());
        std::optional<Term> unfolded = tail_unfolding(c);
        std::vector<Term> branches;
        for (const auto& b : c.branches()) branches.push_back(rel(b, d));
        return mk_case(name_r, rel(c.scrutinee(), d), interleave(c.params(), d), theta(c, d, unfolded), branches);
    }

    // `unfolded`, when present, replaces case_I(a, ...) in the motive; it lives
    // in the source context extended by the scrutinee binder a.
    Term theta(const Term& c, unsigned d, const std::optional<Term>& unfolded = std::nullopt) {
        const InductiveDecl& ind = inductive_or_fail(env_, c.name());
        const unsigned n = ind.index_count;
        Telescope tel = arity_telescope(ind, c.params());
        std::vector<std::string> hints;
        for (Term m = c.motive(); m.is(Kind::Lam); m = m.body()) hints.push_back(m.name());
        auto hint = [&](unsigned i, const char* fallback) {
            return i < hints.size() && hints[i] != "_" ? hints[i] : std::string(fallback);
        };
        Binders bs;
        unsigned dd = d;
        for (unsigned i = 0; i < n; ++i) {
            for (auto& b : triple(hint(i, "y"), tel.binders[i].second, dd)) bs.push_back(b);
            dd += 3;
        }
        std::vector<Term> iargs;
        for (const auto& q : c.params()) iargs.push_back(lift(q, n));
        for (unsigned i = 0; i < n; ++i) iargs.push_back(mk_var(n - 1 - i));
        for (auto& b : triple(hint(n, "a"), mk_app(mk_ind(ind.name), iargs), dd)) bs.push_back(b);
        dd += 3;

        std::vector<Term> targs;
        for (unsigned i = 0; i < n; ++i) targs.push_back(mk_var(n - i));
        targs.push_back(mk_var(0));
        Term t_app = mk_app(lift(c.motive(), n + 1), targs);
        Term case_a = unfolded ? *unfolded : lifted_case(c, mk_var(0), n + 1);
        Term body = mk_app(rel(t_app, dd), {orig(case_a, dd), prime(case_a, dd)});
        pop(n + 1);
        return lams(bs, body);
    }

    Term large_elim(const Term& c, unsigned d);

    std::vector<Term> interleave(const std::vector<Term>& qs, unsigned d) {
        std::vector<Term> out;
        for (const auto& q : qs) {
            out.push_back(orig(q, d));
            out.push_back(prime(q, d));
            out.push_back(rel(q, d));
        }
        return out;
    }

    GlobalEnv& env() { return env_; }
    const Context& source_context() const { return src_; }

private:
    // A case sitting right under the leading lambdas of a fixpoint body and
    // scrutinizing its decreasing argument.
    struct FixTail {
        const Node* tail = nullptr;
        unsigned f_level = 0;
        unsigned struct_arg = 0;
        unsigned lambdas = 0;
    };

    FixTail fix_tail(const Term& fix) const {
        FixTail ft;
        Term b = fix.body();
        while (b.is(Kind::Lam)) {
            b = b.body();
            ++ft.lambdas;
        }
        if (ft.lambdas <= fix.struct_arg() || !b.is(Kind::Case)) return {};
        ft.tail = b.get();
        ft.f_level = static_cast<unsigned>(src_.size()) - 1;
        ft.struct_arg = fix.struct_arg();
        return ft;
    }

    // The fixpoint applied to its leading arguments, the decreasing one replaced
    // by the scrutinee binder. Conversion cannot unfold a fixpoint on a variable,
    // so this is the form the annotation of the translated fixpoint expects.
    std::optional<Term> tail_unfolding(const Term& c) const {
        if (!tail_.tail || c.get() != tail_.tail) return std::nullopt;
        const InductiveDecl* ind = env_.find_inductive(c.name());
        if (!ind || ind->index_count != 0) return std::nullopt;
        const unsigned s = static_cast<unsigned>(src_.size());
        const unsigned x = s - (tail_.f_level + 1 + tail_.struct_arg) - 1;
        if (!c.scrutinee().is(Kind::Var) || c.scrutinee().var_index() != x) return std::nullopt;
        if (has_free_var(c.motive(), x)) return std::nullopt;
        for (const auto& q : c.params())
            if (has_free_var(q, x)) return std::nullopt;
        for (const auto& b : c.branches())
            if (has_free_var(b, x)) return std::nullopt;
        std::vector<Term> args;
        for (unsigned i = 0; i < tail_.lambdas; ++i)
            args.push_back(i == tail_.struct_arg ? mk_var(0) : mk_var(s - tail_.f_level - 1 - i));
        return mk_app(mk_var(s - tail_.f_level), args);
    }

    const Slot& slot(unsigned index) const {
        if (index >= slots_.size()) fail(ErrorCode::UnboundVariable, "free variable #" + std::to_string(index));
        return slots_[slots_.size() - 1 - index];
    }

    Term relocate(const Term& t, bool primed, unsigned d, unsigned b) const {
        if (t.loose_bound() <= b) return t;
        switch (t.kind()) {
        case Kind::Var: {
            const Slot& s = slot(t.var_index() - b);
            return lift(primed ? s.prime : s.orig, d + b - s.depth);
        }
        case Kind::Prod: return mk_prod(t.name(), relocate(t.domain(), primed, d, b), relocate(t.body(), primed, d, b + 1));
        case Kind::Lam: return mk_lam(t.name(), relocate(t.domain(), primed, d, b), relocate(t.body(), primed, d, b + 1));
        case Kind::Fix:
            return mk_fix(t.name(), relocate(t.domain(), primed, d, b), relocate(t.body(), primed, d, b + 1),
                          t.struct_arg());
        case Kind::App: return mk_app(relocate(t.fn(), primed, d, b), relocate(t.arg(), primed, d, b));
        case Kind::Case: {
            std::vector<Term> ps, bs;
            for (const auto& p : t.params()) ps.push_back(relocate(p, primed, d, b));
            for (const auto& br : t.branches()) bs.push_back(relocate(br, primed, d, b));
            return mk_case(t.name(), relocate(t.scrutinee(), primed, d, b), std::move(ps),
                           relocate(t.motive(), primed, d, b), std::move(bs));
        }
        default: return t;
        }
    }

    // The source case with its parameters, motive and branches lifted by k and a new scrutinee.
    static Term lifted_case(const Term& c, const Term& scrutinee, unsigned k) {
        std::vector<Term> ps, bs;
        for (const auto& p : c.params()) ps.push_back(lift(p, k));
        for (const auto& b : c.branches()) bs.push_back(lift(b, k));
        return mk_case(c.name(), scrutinee, std::move(ps), lift(c.motive(), k), std::move(bs));
    }

    Sort motive_sort(const Term& c) {
        Term ty = whnf(infer(src_, c.motive(), env_), env_);
        while (ty.is(Kind::Prod)) ty = whnf(ty.body(), env_);
        if (!ty.is(Kind::Sort)) fail(ErrorCode::MotiveMismatch, "case motive does not end in a sort");
        return ty.sort();
    }

    bool is_large(const Term& c) {
        const InductiveDecl& ind = inductive_or_fail(env_, c.name());
        return ind.concl_sort.is_set() && motive_sort(c).is_type();
    }

    // [[T a]] (case a) (case' a') with the source scrutinee variable a bound to `a_slot`.
    Term relation_at(const Term& c, const Slot& a_slot) {
        push("a", mk_app(mk_ind(c.name()), c.params()), a_slot);
        Term t_app = mk_app(lift(c.motive(), 1), mk_var(0));
        Term case_a = lifted_case(c, mk_var(0), 1);
        const unsigned d = a_slot.depth;
        Term out = mk_app(rel(t_app, d), {orig(case_a, d), prime(case_a, d)});
        pop();
        return out;
    }

    friend struct LargeElim;

    GlobalEnv& env_;
    std::vector<Slot> slots_;
    Context src_;
    FixTail tail_;
};

// ---------------------------------------------------------------------------
// Auxiliary definitions for large eliminations

struct Prelude {
    std::string true_ind, true_ctor, false_ind;
};

Prelude find_prelude(const GlobalEnv& env) {
    const InductiveDecl* t = env.find_inductive("True");
    const InductiveDecl* f = env.find_inductive("False");
    bool ok = t && f && t->concl_sort.is_prop() && t->param_count == 0 && t->index_count == 0 &&
              t->constructors.size() == 1 && t->constructors[0].arg_count == 0 && f->concl_sort.is_prop() &&
              f->param_count == 0 && f->index_count == 0 && f->constructors.empty();
    if (!ok)
        fail(ErrorCode::NotSupported,
             "translating a large elimination needs True (one constant constructor) and False (no constructors) in Prop");
    return {t->name, t->constructors[0].name, f->name};
}

std::string absurd_definition(GlobalEnv& env, unsigned level, const Prelude& pre) {
    const std::string key = "absurd:" + std::to_string(level);
    if (auto n = env.translation_of(key)) return *n;
    std::string name = fresh_global(env, "absurd_" + std::to_string(level));
    Term ty = mk_prod("A", mk_type(level), mk_arrow(mk_ind(pre.false_ind), mk_var(0)));
    Term body = mk_lam("A", mk_type(level),
                       mk_lam("h", mk_ind(pre.false_ind),
                              mk_case(pre.false_ind, mk_var(0), {}, mk_lam("_", mk_ind(pre.false_ind), mk_var(2)), {})));
    register_definition_in_place(env, name, ty, body);
    env.set_translation(key, name);
    return name;
}

// Builds inv_{j,m} and abs_{j,l} for a non-indexed small inductive. All of
// them abstract the tripled parameters first.
class AuxBuilder {
public:
    AuxBuilder(GlobalEnv& env, const InductiveDecl& ind, const Prelude& pre)
        : env_(env), ind_(ind), pre_(pre), p_(ind.param_count), tr_(env) {
        ind_r_ = translate_inductive(env_, ind_.name);
        Term ar = ind_.arity;
        for (unsigned i = 0; i < p_; ++i) {
            for (auto& b : tr_.triple(ar.name(), ar.domain(), 3 * i)) prefix_.push_back(b);
            ar = ar.body();
        }
        for (unsigned i = 0; i < p_; ++i) src_params_.push_back(mk_var(p_ - 1 - i));
    }

    std::string inv(unsigned j, unsigned m) {
        const std::string key = "inv:" + ind_.name + ":" + std::to_string(j) + ":" + std::to_string(m);
        if (auto n = env_.translation_of(key)) return *n;
        for (unsigned l = 0; l < m; ++l) inv(j, l);
        const unsigned nj = ind_.constructors[j].arg_count;
        const unsigned D = 3 * p_;
        Binders bs = prefix_;
        for (auto& b : constructor_telescope(ind_, j, po(D)).binders) bs.push_back(b);
        for (auto& b : constructor_telescope(ind_, j, pp(D + nj)).binders) {
            b.first = NameSupply::prime_of(base_name(b.first));
            bs.push_back(b);
        }
        const unsigned G = D + 2 * nj;
        bs.emplace_back("r", ir(G, ctor_app(j, po(G), zs(G, D, nj)), ctor_app(j, pp(G), zs(G, D + nj, nj))));
        const unsigned B = G + 1;
        Term type = pis(bs, comp(j, m, B, zs(B, D, nj), zs(B, D + nj, nj), mk_var(0)));

        // motive: fun w w' w_R => Outer w w' w_R
        Binders mbs{{"w", io(B)}, {"w'", ip(B + 1)}, {"w_R", ir(B + 2, mk_var(1), mk_var(0))}};
        Term motive = lams(mbs, mk_app(inv_outer(j, m, B + 3, mk_var(2)), {mk_var(1), mk_var(0)}));
        std::vector<Term> branches;
        const InductiveDecl& ir_decl = *env_.find_inductive(ind_r_);
        for (unsigned l0 = 0; l0 < ind_.constructors.size(); ++l0) {
            Telescope tel = constructor_telescope(ir_decl, l0, p3(B));
            const unsigned k = static_cast<unsigned>(tel.binders.size());
            Term body = l0 == j ? mk_var(k - (3 * m + 2) - 1) : mk_constr(pre_.true_ctor);
            branches.push_back(lams(tel.binders, body));
        }
        Term body = lams(bs, mk_case(ind_r_, mk_var(0), p3(B), motive, branches));
        std::string name = fresh_global(env_, ind_.name + "_inv_" + std::to_string(j + 1) + "_" + std::to_string(m + 1));
        register_definition_in_place(env_, name, type, body);
        env_.set_translation(key, name);
        return name;
    }

    std::string abs(unsigned j, unsigned l) {
        const std::string key = "abs:" + ind_.name + ":" + std::to_string(j) + ":" + std::to_string(l);
        if (auto n = env_.translation_of(key)) return *n;
        const unsigned nj = ind_.constructors[j].arg_count, nl = ind_.constructors[l].arg_count;
        const unsigned D = 3 * p_;
        Binders bs = prefix_;
        for (auto& b : constructor_telescope(ind_, j, po(D)).binders) bs.push_back(b);
        for (auto& b : constructor_telescope(ind_, l, pp(D + nj)).binders) {
            b.first = NameSupply::prime_of(base_name(b.first));
            bs.push_back(b);
        }
        const unsigned G = D + nj + nl;
        bs.emplace_back("r", ir(G, ctor_app(j, po(G), zs(G, D, nj)), ctor_app(l, pp(G), zs(G, D + nj, nl))));
        const unsigned B = G + 1;
        Term type = pis(bs, mk_ind(pre_.false_ind));

        Binders mbs{{"w", io(B)}, {"w'", ip(B + 1)}, {"w_R", ir(B + 2, mk_var(1), mk_var(0))}};
        Term motive = lams(mbs, discriminate(j, l, B + 3, mk_var(2), mk_var(1)));
        std::vector<Term> branches;
        const InductiveDecl& ir_decl = *env_.find_inductive(ind_r_);
        for (unsigned l0 = 0; l0 < ind_.constructors.size(); ++l0) {
            Telescope tel = constructor_telescope(ir_decl, l0, p3(B));
            branches.push_back(lams(tel.binders, mk_constr(pre_.true_ctor)));
        }
        Term body = lams(bs, mk_case(ind_r_, mk_var(0), p3(B), motive, branches));
        std::string name = fresh_global(env_, ind_.name + "_abs_" + std::to_string(j + 1) + "_" + std::to_string(l + 1));
        register_definition_in_place(env_, name, type, body);
        env_.set_translation(key, name);
        return name;
    }

    const std::string& relation_name() const { return ind_r_; }

private:
    // Parameter variables of the prefix seen from depth X.
    std::vector<Term> po(unsigned X) const { return pick(X, 0); }
    std::vector<Term> pp(unsigned X) const { return pick(X, 1); }
    std::vector<Term> p3(unsigned X) const {
        std::vector<Term> out;
        for (unsigned i = 0; i < 3 * p_; ++i) out.push_back(mk_var(X - i - 1));
        return out;
    }
    std::vector<Term> pick(unsigned X, unsigned off) const {
        std::vector<Term> out;
        for (unsigned i = 0; i < p_; ++i) out.push_back(mk_var(X - (3 * i + off) - 1));
        return out;
    }
    // Variables bound at levels [from, from + count) seen from depth X.
    static std::vector<Term> zs(unsigned X, unsigned from, unsigned count) {
        std::vector<Term> out;
        for (unsigned i = 0; i < count; ++i) out.push_back(mk_var(X - (from + i) - 1));
        return out;
    }
    Term ctor_app(unsigned j, std::vector<Term> params, const std::vector<Term>& args) const {
        for (const auto& a : args) params.push_back(a);
        return mk_app(mk_constr(ind_.constructors[j].name), params);
    }
    Term io(unsigned X) const { return mk_app(mk_ind(ind_.name), po(X)); }
    Term ip(unsigned X) const { return mk_app(mk_ind(ind_.name), pp(X)); }
    Term ir(unsigned X, const Term& a, const Term& a2) const {
        std::vector<Term> args = p3(X);
        args.push_back(a);
        args.push_back(a2);
        return mk_app(mk_ind(ind_r_), args);
    }

    // [[E_m]] z_m z'_m, where earlier relation witnesses are inv_{j,l} ... r.
    Term comp(unsigned j, unsigned m, unsigned X, const std::vector<Term>& z, const std::vector<Term>& z2, const Term& r) {
        Telescope src = constructor_telescope(ind_, j, src_params_);
        std::vector<Term> inv_args = p3(X);
        for (const auto& t : z) inv_args.push_back(t);
        for (const auto& t : z2) inv_args.push_back(t);
        inv_args.push_back(r);
        for (unsigned l = 0; l < m; ++l)
            tr_.push(src.binders[l].first, src.binders[l].second,
                     {z[l], z2[l], mk_app(mk_const(inv(j, l)), inv_args), X});
        Term out = mk_app(tr_.rel(src.binders[m].second, X), {z[m], z2[m]});
        tr_.pop(m);
        return out;
    }

    // match w with c_l1 y => fun w' => match w' with c_l2 y' => fun r => (comp or True) end end
    Term inv_outer(unsigned j, unsigned m, unsigned X, const Term& w) {
        Term motive = mk_lam("w", io(X), mk_prod("w'", ip(X + 1), mk_arrow(ir(X + 2, mk_var(1), mk_var(0)), mk_prop())));
        std::vector<Term> branches;
        for (unsigned l1 = 0; l1 < ind_.constructors.size(); ++l1) {
            Telescope t1 = constructor_telescope(ind_, l1, po(X));
            const unsigned n1 = static_cast<unsigned>(t1.binders.size());
            const unsigned Y = X + n1 + 1;  // after y and w'
            auto c1 = [&](unsigned at) { return ctor_app(l1, po(at), zs(at, X, n1)); };
            Term imotive = mk_lam("w'", ip(Y), mk_arrow(ir(Y + 1, c1(Y + 1), mk_var(0)), mk_prop()));
            std::vector<Term> ibranches;
            for (unsigned l2 = 0; l2 < ind_.constructors.size(); ++l2) {
                Telescope t2 = constructor_telescope(ind_, l2, pp(Y));
                const unsigned n2 = static_cast<unsigned>(t2.binders.size());
                const unsigned R = Y + n2;
                Term rty = ir(R, c1(R), ctor_app(l2, pp(R), zs(R, Y, n2)));
                Term res = (l1 == j && l2 == j) ? comp(j, m, R + 1, zs(R + 1, X, n1), zs(R + 1, Y, n2), mk_var(0))
                                                : mk_ind(pre_.true_ind);
                ibranches.push_back(lams(t2.binders, mk_lam("r", rty, res)));
            }
            Term inner = mk_case(ind_.name, mk_var(0), pp(Y), imotive, ibranches);
            branches.push_back(lams(t1.binders, mk_lam("w'", ip(X + n1), inner)));
        }
        return mk_case(ind_.name, w, po(X), motive, branches);
    }

    // False on (c_j, c_l), True elsewhere.
    Term discriminate(unsigned j, unsigned l, unsigned X, const Term& w, const Term& w2) {
        Term motive = mk_lam("_", io(X), mk_prop());
        std::vector<Term> branches;
        for (unsigned l1 = 0; l1 < ind_.constructors.size(); ++l1) {
            Telescope t1 = constructor_telescope(ind_, l1, po(X));
            const unsigned n1 = static_cast<unsigned>(t1.binders.size());
            const unsigned Y = X + n1;
            std::vector<Term> ibranches;
            for (unsigned l2 = 0; l2 < ind_.constructors.size(); ++l2) {
                Telescope t2 = constructor_telescope(ind_, l2, pp(Y));
                ibranches.push_back(
                    lams(t2.binders, mk_ind(l1 == j && l2 == l ? pre_.false_ind : pre_.true_ind)));
            }
            Term inner = mk_case(ind_.name, lift(w2, n1), pp(Y), mk_lam("_", ip(Y), mk_prop()), ibranches);
            branches.push_back(lams(t1.binders, inner));
        }
        return mk_case(ind_.name, w, po(X), motive, branches);
    }

    GlobalEnv& env_;
    const InductiveDecl& ind_;
    Prelude pre_;
    unsigned p_;
    Translator tr_;
    std::string ind_r_;
    Binders prefix_;
    std::vector<Term> src_params_;
};

struct LargeElim {
    static Term build(Translator& tr, const Term& c, unsigned d) {
        GlobalEnv& env = tr.env_;
        const InductiveDecl& ind = inductive_or_fail(env, c.name());
        if (!ind.is_small)
            fail(ErrorCode::NotSmallInductive,
                 ind.name + " has a constructor argument in Type, so its large elimination has no relational translation");
        if (ind.index_count != 0)
            fail(ErrorCode::NotSupported, "translation of large eliminations over indexed inductives (" + ind.name + ")");
        Sort target = tr.motive_sort(c);
        Prelude pre = find_prelude(env);
        std::string absurd = absurd_definition(env, target.level, pre);
        AuxBuilder aux(env, ind, pre);

        const std::vector<Term>& Q = c.params();
        const Term IQ = mk_app(mk_ind(ind.name), Q);
        auto qo = [&](unsigned X) {
            std::vector<Term> out;
            for (const auto& q : Q) out.push_back(tr.orig(q, X));
            return out;
        };
        auto qp = [&](unsigned X) {
            std::vector<Term> out;
            for (const auto& q : Q) out.push_back(tr.prime(q, X));
            return out;
        };
        auto vars = [](unsigned X, unsigned from, unsigned count) {
            std::vector<Term> out;
            for (unsigned i = 0; i < count; ++i) out.push_back(mk_var(X - (from + i) - 1));
            return out;
        };
        auto ctor = [&](unsigned j, std::vector<Term> params, const std::vector<Term>& args) {
            for (const auto& a : args) params.push_back(a);
            return mk_app(mk_constr(ind.constructors[j].name), params);
        };

        // The relation [[T a]] must not look at the relation witness of a.
        {
            tr.push("a", IQ, tripled_slot(d + 3));
            Term r = beta_normalize(tr.rel(mk_app(lift(c.motive(), 1), mk_var(0)), d + 3));
            tr.pop();
            if (has_free_var(r, 0))
                fail(ErrorCode::NotSupported,
                     "large elimination whose relation depends on the relation witness of the scrutinee");
        }

        Term t1 = mk_lam("a", tr.orig(IQ, d),
                         mk_prod("a'", tr.prime(IQ, d + 1),
                                 mk_prod("a_R", mk_app(tr.rel(IQ, d + 2), {mk_var(1), mk_var(0)}),
                                         tr.relation_at(c, tripled_slot(d + 3)))));
        const unsigned k = static_cast<unsigned>(ind.constructors.size());
        std::vector<Term> outer;
        for (unsigned j = 0; j < k; ++j) {
            Telescope tj = constructor_telescope(ind, j, qo(d));
            const unsigned nj = static_cast<unsigned>(tj.binders.size());
            const unsigned e = d + nj;
            auto cj = [&](unsigned X) { return ctor(j, qo(X), vars(X, d, nj)); };
            Term a2_ty = tr.prime(IQ, e);
            Term ar_ty = mk_app(tr.rel(IQ, e + 1), {cj(e + 1), mk_var(0)});
            const unsigned I0 = e + 2;
            Term t2 = mk_lam("b'", tr.prime(IQ, I0),
                             mk_prod("b_R", mk_app(tr.rel(IQ, I0 + 1), {cj(I0 + 1), mk_var(0)}),
                                     tr.relation_at(c, {cj(I0 + 2), mk_var(1), mk_var(0), I0 + 2})));
            std::vector<Term> inner;
            for (unsigned l = 0; l < k; ++l) {
                Telescope tl = constructor_telescope(ind, l, qp(I0));
                for (auto& b : tl.binders) b.first = NameSupply::prime_of(base_name(b.first));
                const unsigned nl = static_cast<unsigned>(tl.binders.size());
                const unsigned f = I0 + nl;
                auto cl = [&](unsigned X) { return ctor(l, qp(X), vars(X, I0, nl)); };
                Term br_ty = mk_app(tr.rel(IQ, f), {cj(f), cl(f)});
                const unsigned g = f + 1;
                std::vector<Term> lemma_args = tr.interleave(Q, g);
                for (auto& z : vars(g, d, nj)) lemma_args.push_back(z);
                for (auto& z : vars(g, I0, nl)) lemma_args.push_back(z);
                lemma_args.push_back(mk_var(0));
                Term body;
                if (l == j) {
                    std::vector<Term> args;
                    for (unsigned i = 0; i < nj; ++i) {
                        args.push_back(mk_var(g - (d + i) - 1));
                        args.push_back(mk_var(g - (I0 + i) - 1));
                        args.push_back(mk_app(mk_const(aux.inv(j, i)), lemma_args));
                    }
                    body = mk_app(tr.rel(c.branches()[j], g), args);
                } else {
                    Term goal = tr.relation_at(c, {cj(g), cl(g), mk_var(0), g});
                    body = mk_app(mk_const(absurd), {goal, mk_app(mk_const(aux.abs(j, l)), lemma_args)});
                }
                inner.push_back(lams(tl.binders, mk_lam("b_R", br_ty, body)));
            }
            Term inner_case = mk_app(mk_case(ind.name, mk_var(1), qp(I0), t2, inner), mk_var(0));
            outer.push_back(lams(tj.binders, mk_lam("a'", a2_ty, mk_lam("a_R", ar_ty, inner_case))));
        }
        Term outer_case = mk_case(ind.name, tr.orig(c.scrutinee(), d), qo(d), t1, outer);
        return mk_app(outer_case, {tr.prime(c.scrutinee(), d), tr.rel(c.scrutinee(), d)});
    }
};

Term Translator::large_elim(const Term& c, unsigned d) { return LargeElim::build(*this, c, d); }

// First-order matching of `p` (whose variables >= k + depth are pattern
// variables) against `t`, both under `depth` extra binders.
class PatternMatcher {
public:
    PatternMatcher(const Term& pattern, unsigned vars) : pattern_(pattern), values_(vars) {}

    std::optional<std::vector<Term>> match(const Term& t) {
        std::fill(values_.begin(), values_.end(), Term());
        if (!go(pattern_, t, 0)) return std::nullopt;
        for (const auto& v : values_)
            if (!v) return std::nullopt;
        return values_;
    }

private:
    bool go(const Term& p, const Term& t, unsigned depth) {
        if (p.is(Kind::Var) && p.var_index() >= depth) {
            unsigned j = p.var_index() - depth;
            if (j >= values_.size()) return false;
            auto v = lower(t, depth);
            if (!v) return false;
            if (values_[j]) return alpha_eq(values_[j], *v);
            values_[j] = *v;
            return true;
        }
        if (p.kind() != t.kind()) return false;
        switch (p.kind()) {
        case Kind::Var: return p.var_index() == t.var_index();
        case Kind::Sort: return p.sort() == t.sort();
        case Kind::Ind:
        case Kind::Constr:
        case Kind::Const: return p.name() == t.name();
        case Kind::Prod:
        case Kind::Lam: return go(p.domain(), t.domain(), depth) && go(p.body(), t.body(), depth + 1);
        case Kind::Fix:
            return p.struct_arg() == t.struct_arg() && go(p.domain(), t.domain(), depth) &&
                   go(p.body(), t.body(), depth + 1);
        case Kind::App: return go(p.fn(), t.fn(), depth) && go(p.arg(), t.arg(), depth);
        case Kind::Case: {
            if (p.name() != t.name() || p.params().size() != t.params().size() ||
                p.branches().size() != t.branches().size())
                return false;
            if (!go(p.scrutinee(), t.scrutinee(), depth) || !go(p.motive(), t.motive(), depth)) return false;
            for (std::size_t i = 0; i < p.params().size(); ++i)
                if (!go(p.params()[i], t.params()[i], depth)) return false;
            for (std::size_t i = 0; i < p.branches().size(); ++i)
                if (!go(p.branches()[i], t.branches()[i], depth)) return false;
            return true;
        }
        }
        return false;
    }

    Term pattern_;
    std::vector<Term> values_;
};

// Replaces instances of the body of `def` by applications of its name, so
// translated definitions mention `d x` rather than an inlined copy of d.
class DefinitionFolder {
public:
    explicit DefinitionFolder(const Definition& def) : name_(mk_const(def.name)) {
        Term b = def.body;
        while (b.is(Kind::Lam)) {
            b = b.body();
            ++vars_;
        }
        core_ = b;
        whole_ = def.body;
    }

    Term fold(const Term& t) {
        if (t.loose_bound() == 0 && alpha_eq(t, whole_)) return name_;
        if (vars_ > 0 && t.kind() == core_.kind()) {
            PatternMatcher m(core_, vars_);
            if (auto vals = m.match(t)) {
                std::vector<Term> args(vals->rbegin(), vals->rend());
                return mk_app(name_, args);
            }
        }
        switch (t.kind()) {
        case Kind::Prod: return mk_prod(t.name(), fold(t.domain()), fold(t.body()));
        case Kind::Lam: return mk_lam(t.name(), fold(t.domain()), fold(t.body()));
        case Kind::Fix: return mk_fix(t.name(), fold(t.domain()), fold(t.body()), t.struct_arg());
        case Kind::App: return mk_app(fold(t.fn()), fold(t.arg()));
        case Kind::Case: {
            std::vector<Term> ps, bs;
            for (const auto& p : t.params()) ps.push_back(fold(p));
            for (const auto& b : t.branches()) bs.push_back(fold(b));
            return mk_case(t.name(), fold(t.scrutinee()), std::move(ps), fold(t.motive()), std::move(bs));
        }
        default: return t;
        }
    }

private:
    Term name_, core_, whole_;
    unsigned vars_ = 0;
};

Term check_case_node(const Term& t) {
    if (!t.is(Kind::Case)) fail(ErrorCode::MalformedCase, "expected a case expression");
    return t;
}

}  // namespace

Term prime(const Term& t, unsigned ctx_size) {
    GlobalEnv scratch;
    Translator tr(scratch);
    Context ctx;
    for (unsigned i = 0; i < ctx_size; ++i) ctx.push_in_place("x", mk_prop());
    tr.bind_tripled(ctx);
    return tr.prime(t, 3 * ctx_size);
}

Term original(const Term& t, unsigned ctx_size) {
    GlobalEnv scratch;
    Translator tr(scratch);
    Context ctx;
    for (unsigned i = 0; i < ctx_size; ++i) ctx.push_in_place("x", mk_prop());
    tr.bind_tripled(ctx);
    return tr.orig(t, 3 * ctx_size);
}

Term translate_term(const Context& ctx, const Term& t, GlobalEnv& env) {
    Translator tr(env);
    tr.bind_tripled(ctx);
    return tr.rel(t, static_cast<unsigned>(3 * ctx.size()));
}

Context translate_context(const Context& ctx, GlobalEnv& env) {
    Translator tr(env);
    Context out;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        const auto& e = ctx.at_level(i);
        unsigned d = static_cast<unsigned>(3 * i);
        std::string n = base_name(e.name);
        out.push_in_place(n, tr.orig(e.type, d));
        out.push_in_place(NameSupply::prime_of(n), tr.prime(e.type, d + 1));
        out.push_in_place(NameSupply::relation_of(n),
                          beta_normalize(mk_app(tr.rel(e.type, d + 2), {mk_var(1), mk_var(0)})));
        tr.push(e.name, e.type, tripled_slot(d + 3));
    }
    return out;
}

std::string translate_inductive(GlobalEnv& env, const std::string& inductive) {
    if (auto n = env.translation_of("ind:" + inductive)) return *n;
    const InductiveDecl& ind = inductive_or_fail(env, inductive);
    GlobalEnv work = env;
    std::string name = fresh_global(work, NameSupply::relation_of(ind.name));
    work.set_translation("ind:" + ind.name, name);
    std::set<std::string> taken{name};
    InductiveCandidate cand;
    cand.name = name;
    cand.param_count = 3 * ind.param_count;
    Translator tr(work);
    cand.arity = beta_normalize(mk_app(tr.rel(ind.arity, 0), {mk_ind(ind.name), mk_ind(ind.name)}));
    for (const auto& c : ind.constructors) {
        std::string cname = fresh_global(work, NameSupply::relation_of(c.name), taken);
        taken.insert(cname);
        Term ty = beta_normalize(mk_app(tr.rel(c.type, 0), {mk_constr(c.name), mk_constr(c.name)}));
        cand.constructors.emplace_back(cname, ty);
    }
    declare_inductive_in_place(work, cand);
    for (std::size_t j = 0; j < ind.constructors.size(); ++j)
        work.set_translation("ctor:" + ind.constructors[j].name, cand.constructors[j].first);
    env = std::move(work);
    return name;
}

std::string translate_constructor(GlobalEnv& env, const std::string& constructor) {
    auto ref = env.find_constructor(constructor);
    if (!ref) fail(ErrorCode::UnknownGlobal, "unknown constructor " + constructor);
    translate_inductive(env, ref->inductive->name);
    return *env.translation_of("ctor:" + constructor);
}

std::string translate_definition(GlobalEnv& env, const std::string& definition) {
    if (auto n = env.translation_of("def:" + definition)) return *n;
    const Definition* def = env.find_definition(definition);
    if (!def) fail(ErrorCode::UnknownGlobal, "unknown definition " + definition);
    GlobalEnv work = env;
    Translator tr(work);
    DefinitionFolder folder(*def);
    Term r = folder.fold(beta_normalize(tr.rel(def->body, 0)));
    Term expected = beta_normalize(mk_app(tr.rel(def->type, 0), {mk_const(def->name), mk_const(def->name)}));
    std::string name = fresh_global(work, NameSupply::relation_of(def->name));
    register_definition_in_place(work, name, expected, r);
    work.set_translation("def:" + definition, name);
    env = std::move(work);
    return name;
}

Term theta(const Context& ctx, const Term& case_term, GlobalEnv& env) {
    Translator tr(env);
    tr.bind_tripled(ctx);
    return tr.theta(check_case_node(case_term), static_cast<unsigned>(3 * ctx.size()));
}

Term translate_case(const Context& ctx, const Term& case_term, GlobalEnv& env) {
    Translator tr(env);
    tr.bind_tripled(ctx);
    return tr.rel(check_case_node(case_term), static_cast<unsigned>(3 * ctx.size()));
}

Term translate_large_elim(const Context& ctx, const Term& case_term, GlobalEnv& env) {
    Translator tr(env);
    tr.bind_tripled(ctx);
    return tr.large_elim(check_case_node(case_term), static_cast<unsigned>(3 * ctx.size()));
}

TranslationResult check_abstraction(const Context& ctx, const Term& t, GlobalEnv& env) {
    Term type = infer(ctx, t, env);
    Context target = translate_context(ctx, env);
    Translator tr(env);
    tr.bind_tripled(ctx);
    const unsigned d = static_cast<unsigned>(3 * ctx.size());
    TranslationResult res;
    res.original = tr.orig(t, d);
    res.primed = tr.prime(t, d);
    res.relation_witness = tr.rel(t, d);
    res.expected_type = mk_app(tr.rel(type, d), {res.original, res.primed});
    res.verified = check(target, res.relation_witness, res.expected_type, env);
    return res;
}

TranslationResult check_abstraction(const std::string& name, GlobalEnv& env) {
    TranslationResult res;
    if (const InductiveDecl* ind = env.find_inductive(name)) {
        std::string r = translate_inductive(env, name);
        res.original = res.primed = mk_ind(ind->name);
        res.relation_witness = mk_ind(r);
        res.expected_type = env.find_inductive(r)->arity;
        res.verified = check(Context{}, res.relation_witness, res.expected_type, env);
        return res;
    }
    if (env.find_constructor(name)) {
        std::string r = translate_constructor(env, name);
        res.original = res.primed = mk_constr(name);
        res.relation_witness = mk_constr(r);
        res.expected_type = infer(Context{}, res.relation_witness, env);
        res.verified = true;
        return res;
    }
    if (env.find_definition(name)) {
        std::string r = translate_definition(env, name);
        const Definition* d = env.find_definition(r);
        res.original = res.primed = mk_const(name);
        res.relation_witness = d->body;
        res.expected_type = d->type;
        res.verified = check(Context{}, d->body, d->type, env);
        return res;
    }
    if (const Axiom* ax = env.find_axiom(name)) {
        auto w = env.witness_of(name);
        if (!w) fail(ErrorCode::MissingWitness, "axiom " + name + " has no parametricity witness (provide one with Realize)");
        Translator tr(env);
        res.original = res.primed = mk_const(name);
        res.relation_witness = mk_app(mk_const(*w), res.original);
        res.expected_type = beta_normalize(mk_app(tr.rel(ax->type, 0), {res.original, res.primed}));
        res.verified = check(Context{}, res.relation_witness, res.expected_type, env);
        return res;
    }
    fail(ErrorCode::UnknownGlobal, "unknown global " + name);
}

std::string realize(GlobalEnv& env, const std::string& axiom, const Term& witness) {
    const Axiom* ax = env.find_axiom(axiom);
    if (!ax) fail(ErrorCode::UnknownGlobal, axiom + " is not an axiom");
    GlobalEnv work = env;
    Translator tr(work);
    Term relation = beta_normalize(tr.rel(ax->type, 0));
    std::string name = fresh_global(work, NameSupply::relation_of(axiom));
    register_witness_in_place(work, axiom, name, witness, relation);
    env = std::move(work);
    return name;
}

}  // namespace cicr
