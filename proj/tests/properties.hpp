#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cicr/term.hpp"

namespace cicr::testing {

struct PropertyReport {
    std::size_t raw_terms = 0;
    std::size_t well_typed = 0;
    std::size_t substitutions = 0;     // (A, B) pairs checked for the prime and relation lemmas
    std::size_t conversions = 0;       // non-normal terms checked for the conversion lemma
    std::size_t abstractions = 0;      // translated judgments re-checked by the kernel
    std::size_t embeddings = 0;        // judgments re-checked in CIC mode after embedding
    std::size_t corpus_subterms = 0;
    std::size_t skipped = 0;           // subterms whose translation is undefined (e.g. unwitnessed axiom)
    std::vector<std::string> counterexamples;

    bool ok() const { return counterexamples.empty(); }
    std::string summary() const;
};

/// All terms of size <= max_size over Prop, Set@0, Type@1, variables, products,
/// abstractions and applications, with `free` variables in scope at the root.
std::vector<Term> enumerate_raw(unsigned max_size, unsigned free);

/// Runs the substitution and conversion lemmas, plus the abstraction check, on
/// every well-typed enumerated term in (X : Set@0)(x : X) and (X Y : Set@0).
PropertyReport check_enumerated(unsigned max_size = 7, unsigned pool_size = 5);

/// Same lemmas on every subterm of every definition in the given corpus files.
PropertyReport check_corpus_subterms(const std::vector<std::string>& files);

/// The checked corpus files (everything but corpus/bad).
std::vector<std::string> corpus_files();

}  // namespace cicr::testing
