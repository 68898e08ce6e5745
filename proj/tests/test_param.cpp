#include <doctest.h>

#include "cicr/param.hpp"
#include "cicr/print.hpp"
#include "cicr/reduce.hpp"
#include "cicr/typecheck.hpp"
#include "helpers.hpp"

using namespace cicr;
using namespace cicr::testing;

namespace {

// fun (x : s) (x' : s) => x -> x' -> hat
Term sort_relation(Sort s, Sort hat_s) {
    return mk_lam("x", mk_sort(s), mk_lam("x'", mk_sort(s), mk_arrow(mk_var(1), mk_arrow(mk_var(0), mk_sort(hat_s)))));
}

Term strip_lams(Term t, unsigned n) {
    for (unsigned i = 0; i < n; ++i) {
        REQUIRE(t.is(Kind::Lam));
        t = t.body();
    }
    return t;
}

Term strip_all_lams(Term t) {
    while (t.is(Kind::Lam)) t = t.body();
    return t;
}

}  // namespace

TEST_CASE("hat") {
    CHECK(hat(Sort::prop()) == Sort::prop());
    CHECK(hat(Sort::set(3)) == Sort::prop());
    CHECK(hat(Sort::type(2)) == Sort::type(2));
}

TEST_CASE("relations of sorts") {
    GlobalEnv env;
    CHECK(alpha_eq(translate_term({}, mk_prop(), env), sort_relation(Sort::prop(), Sort::prop())));
    CHECK(alpha_eq(translate_term({}, mk_set(0), env), sort_relation(Sort::set(0), Sort::prop())));
    CHECK(alpha_eq(translate_term({}, mk_set(2), env), sort_relation(Sort::set(2), Sort::prop())));
    CHECK(alpha_eq(translate_term({}, mk_type(2), env), sort_relation(Sort::type(2), Sort::type(2))));
}

TEST_CASE("variables translate to their relation witness") {
    GlobalEnv env;
    Context ctx = Context{}.push("X", mk_set(0)).push("x", mk_var(0));
    CHECK(translate_term(ctx, mk_var(0), env).var_index() == 0);
    CHECK(translate_term(ctx, mk_var(1), env).var_index() == 3);
    CHECK(alpha_eq(prime(mk_var(1), 2), mk_var(4)));
    CHECK(alpha_eq(original(mk_var(1), 2), mk_var(5)));
    CHECK(alpha_eq(prime(mk_app(mk_var(0), mk_var(1)), 2), mk_app(mk_var(1), mk_var(4))));
}

TEST_CASE("applications pass the argument three times") {
    GlobalEnv env;
    Context ctx = Context{}.push("P", mk_prop()).push("f", mk_arrow(mk_var(0), mk_var(1))).push("p", mk_var(1));
    Term r = translate_term(ctx, mk_app(mk_var(1), mk_var(0)), env);
    // f_R p p' p_R
    CHECK(alpha_eq(r, mk_app(mk_var(3), {mk_var(2), mk_var(1), mk_var(0)})));
}

TEST_CASE("translated contexts") {
    GlobalEnv env;
    Context ctx = Context{}.push("X", mk_set(0)).push("x", mk_var(0));
    Context t = translate_context(ctx, env);
    REQUIRE(t.size() == 6);
    CHECK(t.name_of(5) == "X");
    CHECK(t.name_of(4) == "X'");
    CHECK(t.name_of(3) == "X_R");
    CHECK(t.name_of(2) == "x");
    CHECK(t.name_of(1) == "x'");
    CHECK(t.name_of(0) == "x_R");
    // X_R : X -> X' -> Prop, x : X, x' : X', x_R : X_R x x'
    CHECK(alpha_eq(t.at_level(2).type, mk_arrow(mk_var(1), mk_arrow(mk_var(0), mk_prop()))));
    CHECK(alpha_eq(t.at_level(3).type, mk_var(2)));
    CHECK(alpha_eq(t.at_level(4).type, mk_var(2)));
    CHECK(alpha_eq(t.at_level(5).type, mk_app(mk_var(2), {mk_var(1), mk_var(0)})));
    check_context(t, env);
}

TEST_CASE("relation of the Church numeral type") {
    Session s = load_corpus("church.cicr");
    GlobalEnv env = s.env();
    Term church = env.find_definition("church_0")->body;
    Term expected = parse_term(env, R"(
      fun (f f' : forall a : Set@0, (a -> a) -> a -> a) =>
        forall (a a' : Set@0) (R : a -> a' -> Prop) (g : a -> a) (g' : a' -> a'),
          (forall (x : a) (x' : a'), R x x' -> R (g x) (g' x')) ->
          forall (z : a) (z' : a'), R z z' -> R (f a g z) (f' a' g' z'))");
    CHECK(alpha_eq(beta_normalize(translate_term({}, church, env)), expected));
    std::string name = translate_definition(env, "church_0");
    CHECK(name == "church_0_R");
    CHECK(conv(env.find_definition(name)->body, expected, env));
}

TEST_CASE("nat_R agrees with the translation of the constructor types") {
    Session s = load_corpus("prelude.cicr");
    GlobalEnv env = s.env();
    std::string name = translate_inductive(env, "nat");
    const InductiveDecl* nat_r = env.find_inductive(name);
    REQUIRE(nat_r != nullptr);
    const InductiveDecl* nat = env.find_inductive("nat");
    CHECK(nat_r->param_count == 0);
    CHECK(alpha_eq(nat_r->arity, parse_term(env, "nat -> nat -> Prop")));
    REQUIRE(nat_r->constructors.size() == nat->constructors.size());
    for (std::size_t j = 0; j < nat->constructors.size(); ++j) {
        const auto& c = nat->constructors[j];
        Term oracle = beta_normalize(
            mk_app(translate_term({}, c.type, env), {mk_constr(c.name), mk_constr(c.name)}));
        CHECK(alpha_eq(nat_r->constructors[j].type, oracle));
        CHECK(nat_r->constructors[j].name == c.name + "_R");
    }
    CHECK(alpha_eq(nat_r->constructors[0].type, parse_term(env, "nat_R O O")));
    CHECK(alpha_eq(nat_r->constructors[1].type,
                   parse_term(env, "forall (n n' : nat), nat_R n n' -> nat_R (S n) (S n')")));
    CHECK(translate_constructor(env, "S") == "S_R");
    // memoized
    CHECK(translate_inductive(env, "nat") == name);
}

TEST_CASE("parameters are tripled") {
    Session s = load_corpus("prelude.cicr");
    GlobalEnv env = s.env();
    const InductiveDecl* l = env.find_inductive(translate_inductive(env, "list_0"));
    CHECK(l->param_count == 3);
    CHECK(alpha_eq(l->constructors[1].type, parse_term(env, R"(
      forall (A A' : Set@0) (A_R : A -> A' -> Prop) (x : A) (x' : A'), A_R x x' ->
        forall (l : list_0 A) (l' : list_0 A'), list_0_R A A' A_R l l' ->
          list_0_R A A' A_R (cons_0 A x l) (cons_0 A' x' l'))")));
    const InductiveDecl* e = env.find_inductive(translate_inductive(env, "eq_0"));
    CHECK(e->param_count == 6);
    CHECK(e->index_count == 5);
}

TEST_CASE("box relation") {
    Session s = load_corpus("box.cicr");
    GlobalEnv env = s.env();
    const InductiveDecl* b = env.find_inductive(translate_inductive(env, "box_0"));
    CHECK(alpha_eq(b->arity, parse_term(env, "box_0 -> box_0 -> Prop")));
    CHECK(alpha_eq(b->constructors[0].type, parse_term(env, R"(
      forall (A A' : Set@0), (A -> A' -> Prop) -> box_0_R (close_0 A) (close_0 A'))")));
}

TEST_CASE("large elimination of a non-small inductive is refused") {
    Session s = load_corpus("box.cicr");
    GlobalEnv env = s.env();
    Context ctx = Context{}.push("b", mk_ind("box_0"));
    Term c = mk_case("box_0", mk_var(0), {}, mk_lam("_", mk_ind("box_0"), mk_set(0)),
                     {mk_lam("A", mk_set(0), mk_var(0))});
    CHECK(kernel_error([&] { translate_large_elim(ctx, c, env); }) == ErrorCode::NotSmallInductive);
}

TEST_CASE("motive of a translated case on nat") {
    Session s = load_corpus("prelude.cicr");
    GlobalEnv env = s.env();
    Context ctx = Context{}.push("m", mk_ind("nat"));
    Term motive = mk_lam("k", mk_ind("nat"), mk_ind("nat"));
    Term succ = mk_lam("p", mk_ind("nat"), mk_app(mk_constr("S"), mk_var(0)));
    Term c = mk_case("nat", mk_var(0), {}, motive, {mk_var(0), succ});
    Term th = beta_normalize(theta(ctx, c, env));
    // in m, m', m_R and then a, a', a_R
    Term expected = mk_lam(
        "a", mk_ind("nat"),
        mk_lam("a'", mk_ind("nat"),
               mk_lam("a_R", mk_app(mk_ind("nat_R"), {mk_var(1), mk_var(0)}),
                      mk_app(mk_ind("nat_R"), {mk_case("nat", mk_var(2), {}, motive, {mk_var(5), succ}),
                                               mk_case("nat", mk_var(1), {}, motive, {mk_var(4), succ})}))));
    CHECK(alpha_eq(th, expected));
    Term rc = translate_case(ctx, c, env);
    REQUIRE(rc.is(Kind::Case));
    CHECK(rc.name() == "nat_R");
    CHECK(rc.branches().size() == 2);
    CHECK(check_abstraction(ctx, c, env).verified);
}

TEST_CASE("abstraction for the polymorphic identity") {
    Session s = load_corpus("church.cicr");
    GlobalEnv env = s.env();
    TranslationResult r = check_abstraction("id", env);
    CHECK(r.verified);
    CHECK(alpha_eq(r.expected_type, parse_term(env, R"(
      forall (X X' : Prop) (X_R : X -> X' -> Prop) (x : X) (x' : X'), X_R x x' -> X_R (id X x) (id X' x'))")));
    CHECK(alpha_eq(r.relation_witness,
                   parse_term(env, "fun (X X' : Prop) (X_R : X -> X' -> Prop) (x : X) (x' : X') (x_R : X_R x x') => x_R")));

    Term open_id = parse_term(env, "fun (X : Prop) (x : X) => x");
    TranslationResult r2 = check_abstraction({}, open_id, env);
    CHECK(r2.verified);
    CHECK(alpha_eq(r2.original, open_id));
    CHECK(alpha_eq(r2.primed, open_id));
}

TEST_CASE("abstraction for Church numerals and the iterator") {
    Session s = load_corpus("church.cicr");
    GlobalEnv env = s.env();
    for (const char* n : {"church_0", "church_1", "zero_0", "one_0", "two_0", "three_0", "iter_0", "iter_1"}) {
        CAPTURE(n);
        CHECK(check_abstraction(n, env).verified);
    }
    // iter_0_R is a fixpoint recursing on the relation witness
    Term body = strip_all_lams(env.find_definition("iter_0_R")->body);
    Term head = decompose_app(body).head;
    REQUIRE(head.is(Kind::Fix));
    CHECK(head.struct_arg() == 2);
}

TEST_CASE("abstraction for trees, map and mu") {
    Session s = load_corpus("tree.cicr");
    GlobalEnv env = s.env();
    for (const char* n : {"tree_0", "tree_1", "leaf_0", "node_1", "map_0", "map_1", "mu_0", "mu_1", "ret_0"}) {
        CAPTURE(n);
        CHECK(check_abstraction(n, env).verified);
    }
    Context ctx = Context{}.push("A", mk_set(0)).push("x", parse_term(env, "tree_0 A", Context{}.push("A", mk_set(0))));
    Term lhs = parse_term(env, "mu_0 A (leaf_0 (tree_0 A) x)", ctx);
    CHECK(conv(lhs, mk_var(0), env));
    Context ctx2 = Context{}
                       .push("A", mk_set(0))
                       .push("x", parse_term(env, "tree_0 (tree_0 A)", Context{}.push("A", mk_set(0))));
    ctx2 = ctx2.push("y", lift(ctx2.at_level(1).type, 1));
    CHECK(conv(parse_term(env, "mu_0 A (node_0 (tree_0 A) x y)", ctx2),
               parse_term(env, "node_0 A (mu_0 A x) (mu_0 A y)", ctx2), env));
    CHECK_FALSE(conv(parse_term(env, "mu_0 A (node_0 (tree_0 A) x y)", ctx2),
                     parse_term(env, "node_0 A (mu_0 A y) (mu_0 A x)", ctx2), env));
}

TEST_CASE("large elimination over a small inductive") {
    Session s = load_corpus("large_elim.cicr");
    GlobalEnv env = s.env();
    TranslationResult r = check_abstraction("f", env);
    CHECK(r.verified);
    auto absurd = env.translation_of("absurd:1");
    REQUIRE(absurd.has_value());
    Term outer = decompose_app(strip_lams(r.relation_witness, 3)).head;
    REQUIRE(outer.is(Kind::Case));
    CHECK(outer.name() == "nat_or_bool");
    std::vector<Term> leaves;
    for (const auto& b : outer.branches()) {
        Term inner = decompose_app(strip_all_lams(b)).head;
        REQUIRE(inner.is(Kind::Case));
        CHECK(inner.name() == "nat_or_bool");
        for (const auto& l : inner.branches()) leaves.push_back(l);
    }
    REQUIRE(leaves.size() == 4);
    std::size_t absurd_count = 0;
    for (const auto& l : leaves) absurd_count += mentions_global(l, *absurd);
    CHECK(absurd_count == 2);
    CHECK_FALSE(mentions_global(leaves[0], *absurd));
    CHECK_FALSE(mentions_global(leaves[3], *absurd));
    CHECK(mentions_global(leaves[0], "vector_R"));
    CHECK(mentions_global(leaves[3], "nat_R"));
    for (const char* aux : {"nat_or_bool_inv_1_1", "nat_or_bool_abs_1_2", "nat_or_bool_abs_2_1", "absurd_1"})
        CHECK(env.find_definition(aux) != nullptr);
    CHECK(alpha_eq(env.find_definition("absurd_1")->type, parse_term(env, "forall A : Type@1, False -> A")));
    CHECK(alpha_eq(env.find_definition("nat_or_bool_inv_1_1")->type,
                   parse_term(env, "forall (n n' : nat), nat_or_bool_R (N n) (N n') -> nat_R n n'")));

    TranslationResult single = check_abstraction("first_type", env);
    CHECK(single.verified);
}

TEST_CASE("large elimination of an indexed inductive is not supported") {
    Session s = load_corpus("large_elim.cicr");
    GlobalEnv env = s.env();
    Context ctx = Context{}.push("v", parse_term(env, "vector O"));
    Term motive = parse_term(env, "fun (n : nat) (w : vector n) => Set@0");
    Term c = mk_case("vector", mk_var(0), {}, motive,
                     {mk_ind("nat"), parse_term(env, "fun (n : nat) (b : bool) (w : vector n) => bool")});
    CHECK(kernel_error([&] { translate_large_elim(ctx, c, env); }) == ErrorCode::NotSupported);
}

TEST_CASE("axioms need a witness") {
    Session s = load_source(R"(
Inductive eqP (A : Prop) (x : A) : A -> Prop := reflP : eqP A x x.
Axiom PI : forall (X : Prop) (p q : X), eqP X p q.
Definition PI_sym := fun (X : Prop) (p q : X) => PI X q p.
)");
    GlobalEnv env = s.env();
    CHECK(kernel_error([&] { check_abstraction("PI_sym", env); }) == ErrorCode::MissingWitness);
    CHECK(kernel_error([&] { check_abstraction("PI", env); }) == ErrorCode::MissingWitness);
    CHECK(kernel_error([&] { realize(env, "PI", mk_prop()); }) == ErrorCode::WitnessTypeMismatch);
    CHECK(kernel_error([&] { realize(env, "PI_sym", mk_prop()); }) == ErrorCode::UnknownGlobal);
}

TEST_CASE("a realized axiom can be used") {
    Session s = load_corpus("axioms.cicr");
    GlobalEnv env = s.env();
    REQUIRE(env.witness_of("PI").has_value());
    CHECK(check_abstraction("PI", env).verified);
    CHECK(check_abstraction("PI_sym", env).verified);
    Term t = parse_term(env, "fun (X : Prop) (p : X) => PI X p p");
    CHECK(check_abstraction({}, t, env).verified);
}

TEST_CASE("Peirce's law has a refuted relation") {
    Session s = load_corpus("peirce.cicr");
    GlobalEnv env = s.env();
    auto r = env.translation_of("def:Peirce");
    REQUIRE(r.has_value());
    const Definition* refutation = env.find_definition("Peirce_not_parametric");
    REQUIRE(refutation != nullptr);
    Term stated = parse_term(env, "forall (h h' : Peirce), " + *r + " h h' -> False");
    CHECK(alpha_eq(refutation->type, stated));
    CHECK(check({}, refutation->body, stated, env));
}

TEST_CASE("translations of definitions are well-typed") {
    for (const auto& file : {"fingrp.cicr", "tree.cicr", "church.cicr"}) {
        Session s = load_corpus(file);
        GlobalEnv env = s.env();
        for (const auto& rec : s.env().log()) {
            if (rec.kind != DeclKind::Definition) continue;
            if (!s.env().translation_of("def:" + rec.name)) continue;
            CAPTURE(rec.name);
            const Definition* d = env.find_definition(*env.translation_of("def:" + rec.name));
            CHECK(check({}, d->body, d->type, env));
        }
    }
}
