#include <doctest.h>

#include "cicr/embed.hpp"
#include "cicr/typecheck.hpp"
#include "helpers.hpp"
#include "properties.hpp"

using namespace cicr;
using namespace cicr::testing;

TEST_CASE("embedding leaves Set-free terms alone") {
    Term all_props = mk_prod("X", mk_prop(), mk_var(0));
    CHECK(alpha_eq(embed(all_props), all_props));
    CHECK(alpha_eq(embed(mk_type(3)), mk_type(3)));
}

TEST_CASE("embedding collapses Set into Type") {
    CHECK(alpha_eq(embed(mk_set(0)), mk_type(0)));
    CHECK(alpha_eq(embed(mk_set(2)), mk_type(2)));
    Term poly = mk_prod("a", mk_set(0), mk_arrow(mk_var(0), mk_var(0)));
    CHECK(alpha_eq(embed(poly), mk_prod("a", mk_type(0), mk_arrow(mk_var(0), mk_var(0)))));
}

TEST_CASE("embedding commutes with substitution") {
    Term body = mk_lam("y", mk_var(0), mk_app(mk_var(1), mk_set(1)));
    Term value = mk_prod("z", mk_set(0), mk_var(0));
    CHECK(alpha_eq(embed(instantiate(body, value)), instantiate(embed(body), embed(value))));
}

TEST_CASE("embedded contexts") {
    Context ctx = Context{}.push("A", mk_set(1)).push("a", mk_var(0));
    Context e = embed_context(ctx);
    CHECK(alpha_eq(e.at_level(0).type, mk_type(1)));
    CHECK(alpha_eq(e.at_level(1).type, mk_var(0)));
}

TEST_CASE("church_0 lands in Type@1") {
    Session s = load_corpus("church.cicr");
    GlobalEnv cic = embed_env(s.env());
    CHECK(cic.config().mode == Mode::CIC);
    const Definition* d = cic.find_definition("church_0");
    REQUIRE(d != nullptr);
    CHECK(alpha_eq(d->type, mk_type(1)));
    CHECK(alpha_eq(infer({}, d->body, cic), mk_type(1)));
}

TEST_CASE("every corpus declaration embeds") {
    for (const auto& file : corpus_files()) {
        Session s = load_corpus(file);
        for (const auto& rec : s.env().log()) {
            CAPTURE(file);
            CAPTURE(rec.name);
            CHECK(check_embedding(rec.name, s.env()));
        }
    }
}

TEST_CASE("embedded judgments") {
    GlobalEnv env;
    Context ctx = Context{}.push("A", mk_set(0)).push("a", mk_var(0));
    CHECK(check_embedded_judgment(ctx, mk_var(0), env));
    CHECK(check_embedded_judgment({}, mk_prod("a", mk_set(0), mk_arrow(mk_var(0), mk_var(0))), env));
}

TEST_CASE("Prop cumulativity in the target is optional") {
    GlobalEnv off(KernelConfig{Mode::CIC, false});
    GlobalEnv on(KernelConfig{Mode::CIC, true});
    CHECK_FALSE(sort_leq(Sort::prop(), Sort::type(0), off));
    CHECK(sort_leq(Sort::prop(), Sort::type(0), on));
    Session s = load_corpus("prelude.cicr");
    CHECK(check_embedding("plus", s.env(), true));
}
