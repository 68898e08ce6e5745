// Runs the acceptance criteria and prints one PASS/FAIL line for each.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "cicr/embed.hpp"
#include "cicr/param.hpp"
#include "cicr/print.hpp"
#include "cicr/reduce.hpp"
#include "cicr/typecheck.hpp"
#include "helpers.hpp"
#include "properties.hpp"

using namespace cicr;
using namespace cicr::testing;

namespace {

struct Verdict {
    std::vector<std::string> failures;
    std::string note;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

bool has_type(const Context& ctx, const Term& t, const Term& ty, const GlobalEnv& env) {
    try {
        return check(ctx, t, ty, env);
    } catch (const KernelError&) {
        return false;
    }
}

Term strip_lams(Term t) {
    while (t.is(Kind::Lam)) t = t.body();
    return t;
}

void kernel_rules(Verdict& v) {
    GlobalEnv env;
    for (unsigned i = 0; i <= 3; ++i) {
        std::string n = std::to_string(i);
        v.expect(alpha_eq(infer({}, mk_set(i), env), mk_type(i + 1)), "Set@" + n + " : Type@" + std::to_string(i + 1));
        v.expect(alpha_eq(infer({}, mk_type(i + 1), env), mk_type(i + 2)),
                 "Type@" + std::to_string(i + 1) + " : Type@" + std::to_string(i + 2));
        for (unsigned j = 0; j <= 4; ++j)
            v.expect(!has_type({}, mk_set(i), mk_set(j), env), "Set@" + n + " : Set@" + std::to_string(j) + " rejected");
        v.expect(!has_type({}, mk_type(i + 1), mk_type(i + 1), env), "Type@" + std::to_string(i + 1) + " : itself rejected");
    }
    v.expect(alpha_eq(infer({}, mk_prop(), env), mk_type(1)), "Prop : Type@1");
    v.expect(alpha_eq(infer({}, mk_prod("X", mk_prop(), mk_var(0)), env), mk_prop()), "forall X : Prop, X : Prop");
    Term poly = mk_prod("a", mk_set(0), mk_arrow(mk_var(0), mk_var(0)));
    v.expect(!has_type({}, poly, mk_set(0), env), "forall a : Set@0, a -> a rejected at Set@0");
    v.expect(has_type({}, poly, mk_set(1), env), "forall a : Set@0, a -> a accepted at Set@1");
}

void example_inductives(Verdict& v) {
    Session s = load_corpus("prelude.cicr");
    const GlobalEnv& env = s.env();
    const std::vector<std::pair<const char*, Sort>> expected = {
        {"nat", Sort::set(0)},  {"list_0", Sort::set(0)}, {"list_1", Sort::set(1)}, {"True", Sort::prop()},
        {"False", Sort::prop()}, {"eq_0", Sort::prop()},  {"eq_1", Sort::prop()},   {"eqP", Sort::prop()},
        {"eqT_1", Sort::prop()}, {"eqT_2", Sort::prop()}};
    for (const auto& [name, sort] : expected) {
        const InductiveDecl* ind = env.find_inductive(name);
        v.expect(ind && ind->concl_sort == sort, std::string(name) + " declared in " + to_string(sort));
    }
    Session pos;
    pos.run_file(corpus_path("bad/positivity.cicr"));
    v.expect(pos.failed() && pos.diagnostics().front().code == ErrorCode::PositivityViolation,
             "bad rejected with PositivityViolation");
    Session guard;
    guard.run_file(corpus_path("bad/guard.cicr"));
    v.expect(guard.failed() && guard.diagnostics().front().code == ErrorCode::GuardViolation,
             "unguarded fix rejected with GuardViolation");
}

void substitution_lemmas(Verdict& v) {
    PropertyReport enumerated = check_enumerated(7, 5);
    PropertyReport corpus = check_corpus_subterms(corpus_files());
    v.note = enumerated.summary() + "; " + corpus.summary();
    v.expect(enumerated.well_typed > 0 && enumerated.substitutions > 0, "enumeration is not empty");
    v.expect(corpus.corpus_subterms > 0, "corpus subterms were visited");
    for (const auto& c : enumerated.counterexamples) v.expect(false, c);
    for (const auto& c : corpus.counterexamples) v.expect(false, c);
}

void abstraction_instances(Verdict& v) {
    auto verified = [&](GlobalEnv& env, const std::string& name) {
        try {
            v.expect(check_abstraction(name, env).verified, name + " verified");
        } catch (const KernelError& e) {
            v.expect(false, name + ": " + e.what());
        }
    };
    {
        Session s = load_corpus("church.cicr");
        GlobalEnv env = s.env();
        for (const char* n : {"id", "church_0", "zero_0", "one_0", "two_0", "three_0", "iter_0", "iter_1"})
            verified(env, n);
    }
    {
        Session s = load_corpus("tree.cicr");
        GlobalEnv env = s.env();
        for (const char* n : {"tree_0", "tree_1", "map_0", "map_1", "mu_0", "mu_1"}) verified(env, n);
        Context a = Context{}.push("A", mk_set(0));
        Context c1 = a.push("x", parse_term(env, "tree_0 A", a));
        v.expect(conv(parse_term(env, "mu_0 A (leaf_0 (tree_0 A) x)", c1), mk_var(0), env), "mu (leaf x) = x");
        Context c2 = a.push("x", parse_term(env, "tree_0 (tree_0 A)", a));
        c2 = c2.push("y", lift(c2.at_level(1).type, 1));
        v.expect(conv(parse_term(env, "mu_0 A (node_0 (tree_0 A) x y)", c2),
                      parse_term(env, "node_0 A (mu_0 A x) (mu_0 A y)", c2), env),
                 "mu (node x y) = node (mu x) (mu y)");
    }
    {
        Session s = load_corpus("large_elim.cicr");
        GlobalEnv env = s.env();
        verified(env, "nat_or_bool");
        TranslationResult r = check_abstraction("f", env);
        v.expect(r.verified, "f verified");
        auto absurd = env.translation_of("absurd:1");
        v.expect(absurd.has_value(), "absurd eliminator generated");
        Term outer = decompose_app(strip_lams(r.relation_witness)).head;
        std::size_t leaves = 0, absurd_leaves = 0;
        if (outer.is(Kind::Case))
            for (const auto& b : outer.branches()) {
                Term inner = decompose_app(strip_lams(b)).head;
                if (!inner.is(Kind::Case)) continue;
                for (const auto& l : inner.branches()) {
                    ++leaves;
                    if (absurd && mentions_global(l, *absurd)) ++absurd_leaves;
                }
            }
        v.expect(leaves == 4, "f_R has 4 branches (found " + std::to_string(leaves) + ")");
        v.expect(absurd_leaves == 2, "f_R has 2 absurd branches (found " + std::to_string(absurd_leaves) + ")");
    }
}

Term sort_relation(Sort s) {
    return mk_lam("x", mk_sort(s), mk_lam("x'", mk_sort(s), mk_arrow(mk_var(1), mk_arrow(mk_var(0), mk_sort(hat(s))))));
}

void translation_goldens(Verdict& v) {
    GlobalEnv empty;
    v.expect(alpha_eq(translate_term({}, mk_prop(), empty), sort_relation(Sort::prop())) &&
                 print_term(translate_term({}, mk_prop(), empty)) == "fun (x : Prop) (x' : Prop) => x -> x' -> Prop",
             "[[Prop]]");
    v.expect(alpha_eq(translate_term({}, mk_set(0), empty),
                      mk_lam("x", mk_set(0), mk_lam("x'", mk_set(0), mk_arrow(mk_var(1), mk_arrow(mk_var(0), mk_prop()))))),
             "[[Set@0]]");
    {
        Session s = load_corpus("church.cicr");
        GlobalEnv env = s.env();
        Term display = parse_term(env, R"(
          fun (f f' : forall a : Set@0, (a -> a) -> a -> a) =>
            forall (a a' : Set@0) (R : a -> a' -> Prop) (g : a -> a) (g' : a' -> a'),
              (forall (x : a) (x' : a'), R x x' -> R (g x) (g' x')) ->
              forall (z : a) (z' : a'), R z z' -> R (f a g z) (f' a' g' z'))");
        v.expect(alpha_eq(beta_normalize(translate_term({}, env.find_definition("church_0")->body, env)), display),
                 "[[church_0]]");
    }
    {
        Session s = load_corpus("prelude.cicr");
        GlobalEnv env = s.env();
        const InductiveDecl* nat = env.find_inductive("nat");
        const InductiveDecl* nat_r = env.find_inductive(translate_inductive(env, "nat"));
        bool same = nat_r && nat_r->constructors.size() == nat->constructors.size() &&
                    alpha_eq(nat_r->arity, parse_term(env, "nat -> nat -> Prop"));
        for (std::size_t j = 0; same && j < nat->constructors.size(); ++j) {
            const auto& c = nat->constructors[j];
            Term oracle = beta_normalize(mk_app(translate_term({}, c.type, env), {mk_constr(c.name), mk_constr(c.name)}));
            same = alpha_eq(nat_r->constructors[j].type, oracle);
        }
        v.expect(same, "[[nat]]");
    }
    {
        Session s = load_corpus("box.cicr");
        GlobalEnv env = s.env();
        const InductiveDecl* b = env.find_inductive(translate_inductive(env, "box_0"));
        v.expect(b && alpha_eq(b->arity, parse_term(env, "box_0 -> box_0 -> Prop")) && b->constructors.size() == 1 &&
                     alpha_eq(b->constructors[0].type,
                              parse_term(env, "forall (A A' : Set@0), (A -> A' -> Prop) -> box_0_R (close_0 A) (close_0 A')")),
                 "[[box_0]]");
        Context ctx = Context{}.push("b", mk_ind("box_0"));
        Term c = mk_case("box_0", mk_var(0), {}, mk_lam("_", mk_ind("box_0"), mk_set(0)), {mk_lam("A", mk_set(0), mk_var(0))});
        v.expect(kernel_error([&] { translate_large_elim(ctx, c, env); }) == ErrorCode::NotSmallInductive,
                 "large elimination of box_0 fails with NotSmallInductive");
    }
}

void axiom_discipline(Verdict& v) {
    Session unwitnessed;
    unwitnessed.run_file(corpus_path("bad/unwitnessed.cicr"));
    v.expect(unwitnessed.failed() && unwitnessed.diagnostics().front().code == ErrorCode::MissingWitness,
             "translating a term over an unwitnessed axiom fails with MissingWitness");
    {
        Session s = load_corpus("axioms.cicr");
        GlobalEnv env = s.env();
        v.expect(env.witness_of("PI").has_value(), "PI realized");
        Term t = parse_term(env, "fun (X : Prop) (p q : X) => PI X q p");
        v.expect(check_abstraction({}, t, env).verified, "a term using PI passes check_abstraction");
    }
    {
        Session s = load_corpus("peirce.cicr");
        GlobalEnv env = s.env();
        auto r = env.translation_of("def:Peirce");
        v.expect(r.has_value() && env.find_definition(*r), "[[Peirce]] registered");
        const Definition* refutation = env.find_definition("Peirce_not_parametric");
        if (r && refutation) {
            Term stated = parse_term(env, "forall (h h' : Peirce), " + *r + " h h' -> False");
            v.expect(has_type({}, refutation->body, stated, env), "refutation typechecks");
        } else {
            v.expect(false, "refutation present");
        }
    }
}

void embedding(Verdict& v) {
    std::size_t count = 0;
    for (const auto& file : corpus_files()) {
        Session s = load_corpus(file);
        for (const auto& rec : s.env().log()) {
            ++count;
            try {
                v.expect(check_embedding(rec.name, s.env()), file + ": " + rec.name);
            } catch (const KernelError& e) {
                v.expect(false, file + ": " + rec.name + ": " + e.what());
            }
        }
    }
    v.note = std::to_string(count) + " declarations";
    Term all_props = mk_prod("X", mk_prop(), mk_var(0));
    v.expect(alpha_eq(embed(all_props), all_props), "embed(forall X : Prop, X) unchanged");
}

std::vector<std::string> transcript(const std::string& file) {
    Session s;
    s.run_file(corpus_path(file));
    std::vector<std::string> out;
    for (const auto& d : s.diagnostics()) out.push_back(d.format());
    for (const auto& r : s.reports()) out.push_back(r.format());
    return out;
}

void determinism(Verdict& v) {
    std::size_t terms = 0;
    for (const auto& file : corpus_files()) {
        Session s = load_corpus(file);
        const GlobalEnv& env = s.env();
        auto round = [&](const Term& t, const std::string& what) {
            ++terms;
            try {
                v.expect(alpha_eq(parse_term(env, print_term(t, Context{}, &env)), t), file + ": " + what);
            } catch (const std::exception& e) {
                v.expect(false, file + ": " + what + ": " + e.what());
            }
        };
        for (const auto& rec : env.log()) {
            if (const Definition* d = env.find_definition(rec.name)) {
                round(d->type, rec.name + " type");
                round(d->body, rec.name + " body");
            } else if (const InductiveDecl* ind = env.find_inductive(rec.name)) {
                round(ind->arity, rec.name + " arity");
                for (const auto& c : ind->constructors) round(c.type, c.name);
            } else if (const Axiom* ax = env.find_axiom(rec.name)) {
                round(ax->type, rec.name);
            }
        }
    }
    std::vector<std::string> files = corpus_files();
    for (const char* bad : {"bad/positivity.cicr", "bad/guard.cicr", "bad/unwitnessed.cicr"}) files.push_back(bad);
    for (const auto& file : files) v.expect(transcript(file) == transcript(file), file + " deterministic");
    v.note = std::to_string(terms) + " terms round-tripped";
}

struct Criterion {
    const char* label;
    double budget_seconds;  // 0: no bound
    std::function<void(Verdict&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"1 kernel rule conformance", 1, kernel_rules},
        {"2 example inductives", 1, example_inductives},
        {"3 substitution lemma properties", 60, substitution_lemmas},
        {"4 abstraction instances", 10, abstraction_instances},
        {"5 translation goldens", 0, translation_goldens},
        {"6 axiom discipline", 0, axiom_discipline},
        {"7 embedding", 5, embedding},
        {"8 determinism and round-trip", 0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Verdict v;
        auto start = std::chrono::steady_clock::now();
        try {
            c.run(v);
        } catch (const std::exception& e) {
            v.expect(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0 && secs > c.budget_seconds)
            v.expect(false, "took " + std::to_string(secs) + " s, budget " + std::to_string(c.budget_seconds) + " s");
        bool ok = v.failures.empty();
        failed += !ok;
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2f s", secs);
        std::cout << (ok ? "PASS " : "FAIL ") << c.label << " (" << timing;
        if (!v.note.empty()) std::cout << "; " << v.note;
        std::cout << ")\n";
        for (std::size_t i = 0; i < v.failures.size() && i < 10; ++i) std::cout << "    " << v.failures[i] << "\n";
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
