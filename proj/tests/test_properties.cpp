#include <doctest.h>

#include "properties.hpp"

using namespace cicr::testing;

TEST_CASE("enumeration sizes") {
    CHECK(enumerate_raw(1, 2).size() == 5);
    CHECK(enumerate_raw(3, 2).size() == 90);
    CHECK(enumerate_raw(7, 2).size() == 148845);
}

TEST_CASE("lemmas hold on every small well-typed term") {
    PropertyReport r = check_enumerated(7, 5);
    INFO(r.summary());
    for (const auto& c : r.counterexamples) INFO(c);
    CHECK(r.well_typed > 100);
    CHECK(r.substitutions > 100);
    CHECK(r.conversions > 10);
    CHECK(r.ok());
    if (!r.ok()) MESSAGE(r.counterexamples.front());
}

TEST_CASE("lemmas hold on corpus subterms") {
    PropertyReport r = check_corpus_subterms(corpus_files());
    INFO(r.summary());
    CHECK(r.corpus_subterms > 100);
    CHECK(r.substitutions > 10);
    CHECK(r.ok());
    if (!r.ok()) MESSAGE(r.counterexamples.front());
}
