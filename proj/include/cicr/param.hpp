#pragma once

#include <string>

#include "cicr/env.hpp"
#include "cicr/term.hpp"

namespace cicr {

/// Sort of the relation induced by a type of sort s: Prop and Set@i relate
/// into Prop, Type@i into Type@i.
Sort hat(const Sort& s);

/// For a term living in a context of `ctx_size` variables, its copy in the
/// tripled context (x, x', x_R per variable) with each x replaced by x' or
/// kept as x. Globals are their own primed copies.
Term prime(const Term& t, unsigned ctx_size);
Term original(const Term& t, unsigned ctx_size);

/// The relational translation of t, living in translate_context(ctx).
/// Translations of globals are generated and registered in env on first use.
Term translate_term(const Context& ctx, const Term& t, GlobalEnv& env);

/// x : A becomes x : A, x' : A', x_R : [[A]] x x' (the last type beta-normalized).
Context translate_context(const Context& ctx, GlobalEnv& env);

/// Registers I_R with 3p parameters, arity [[A]] I I and constructors
/// c_R : [[C]] c c (beta-normalized). Memoized; returns the name of I_R.
std::string translate_inductive(GlobalEnv& env, const std::string& inductive);

/// Name of the translated constructor, translating its inductive if needed.
std::string translate_constructor(GlobalEnv& env, const std::string& constructor);

/// Registers d_R := [[body]] : [[T]] d d for a definition d : T. Memoized.
std::string translate_definition(GlobalEnv& env, const std::string& definition);

/// Motive of the translated case node.
Term theta(const Context& ctx, const Term& case_term, GlobalEnv& env);

/// Translation of a small elimination: a case over I_R with parameters
/// interleaved as (Q, Q', [[Q]]) and motive theta.
Term translate_case(const Context& ctx, const Term& case_term, GlobalEnv& env);

/// Translation of an elimination of a small Set inductive into Type, by nested
/// destruction of both scrutinees; relation arguments on the diagonal come from
/// generated inversion lemmas and off-diagonal branches are discharged through
/// generated absurdity lemmas. Throws NotSmallInductive outside that fragment and
/// NotSupported for indexed inductives or motives whose relation depends on the
/// relation witness of the scrutinee.
Term translate_large_elim(const Context& ctx, const Term& case_term, GlobalEnv& env);

struct TranslationResult {
    Term original;
    Term primed;
    Term relation_witness;
    Term expected_type;
    bool verified = false;
};

/// Computes A', [[A]] and [[B]] A A' for A : B and checks the judgment in the
/// translated context.
TranslationResult check_abstraction(const Context& ctx, const Term& t, GlobalEnv& env);

/// For a definition: check and register d_R. For an inductive: register I_R
/// (the result carries Ind I and Ind I_R, expected type [[A]] I I).
TranslationResult check_abstraction(const std::string& name, GlobalEnv& env);

/// Registers `witness` as the proof that axiom P is parametric, checked at
/// forall h : P, [[P]] h h. Returns the name of the stored witness.
std::string realize(GlobalEnv& env, const std::string& axiom, const Term& witness);

}  // namespace cicr
