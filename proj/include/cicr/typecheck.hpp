#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cicr/env.hpp"
#include "cicr/term.hpp"

namespace cicr {

// Sort rules. These consult the environment mode, so the CIC-mode kernel used
// by the embedding check is the same code with a different table.
Sort sort_of_sort(const Sort& s, const GlobalEnv& env);
Sort product_sort(const Sort& domain, const Sort& codomain);
bool sort_leq(const Sort& a, const Sort& b, const GlobalEnv& env);

/// a <: b: sort cumulativity, lifted covariantly through product codomains,
/// closed under conversion.
bool subtype(const Term& a, const Term& b, const GlobalEnv& env);

/// Minimal type of t in ctx. Throws KernelError on ill-typed input.
Term infer(const Context& ctx, const Term& t, const GlobalEnv& env);

/// The sort of a type; throws SortMismatch when t is not a type.
Sort infer_sort(const Context& ctx, const Term& t, const GlobalEnv& env);

/// Whether t inhabits `expected` up to conversion and cumulativity. Throws when
/// t itself is ill-typed.
bool check(const Context& ctx, const Term& t, const Term& expected, const GlobalEnv& env);

/// Checks every entry of the context against its prefix.
void check_context(const Context& ctx, const GlobalEnv& env);

/// Typing of a case node (CASE rule plus the elimination restrictions).
Term check_case(const Context& ctx, const Term& case_term, const GlobalEnv& env);

/// Typing of a fixpoint (FIX rule plus the structural guard).
Term check_fix(const Context& ctx, const Term& fix_term, const GlobalEnv& env);

/// The type a branch must have: forall (z : E_j[Q/x]), T D_j[Q/x] (c_j Q z).
Term branch_type(const InductiveDecl& ind, unsigned j, const std::vector<Term>& params,
                 const Term& motive);

/// Constructor argument telescope with the parameters instantiated.
struct Telescope {
    std::vector<std::pair<std::string, Term>> binders;  // each type under the previous binders
    Term conclusion;                                     // under all binders
};
Telescope constructor_telescope(const InductiveDecl& ind, unsigned j, const std::vector<Term>& params);

/// Index telescope of the arity with parameters instantiated; the conclusion is the sort.
Telescope arity_telescope(const InductiveDecl& ind, const std::vector<Term>& params);

struct InductiveCandidate {
    std::string name;
    unsigned param_count = 0;
    Term arity;
    std::vector<std::pair<std::string, Term>> constructors;
};

/// Checks freshness, arity shape, constructor shape, strict positivity and
/// constructor typing, derives the smallness flag, and registers I and its
/// constructors.
GlobalEnv declare_inductive(const GlobalEnv& env, const InductiveCandidate& candidate);

/// When `type` is absent the inferred type of `body` is recorded.
GlobalEnv register_definition(const GlobalEnv& env, const std::string& name,
                              std::optional<Term> type, const Term& body);
GlobalEnv register_axiom(const GlobalEnv& env, const std::string& name, const Term& type);

/// Registers `witness` as the parametricity witness of an axiom P. `relation`
/// must be the translation of P; the witness is checked at forall h : P, relation h h
/// and stored as the definition `definition_name`.
GlobalEnv register_witness(const GlobalEnv& env, const std::string& axiom,
                           const std::string& definition_name, const Term& witness,
                           const Term& relation);

// In-place variants used by the elaborator and the translator.
void declare_inductive_in_place(GlobalEnv& env, const InductiveCandidate& candidate);
void register_definition_in_place(GlobalEnv& env, const std::string& name,
                                  std::optional<Term> type, const Term& body);
void register_axiom_in_place(GlobalEnv& env, const std::string& name, const Term& type);
void register_witness_in_place(GlobalEnv& env, const std::string& axiom,
                               const std::string& definition_name, const Term& witness,
                               const Term& relation);

/// Structural guard of a fixpoint body: every recursive call passes a strict
/// subterm of the decreasing argument at position `struct_arg`.
void check_guard(const Term& fix_term);

}  // namespace cicr
