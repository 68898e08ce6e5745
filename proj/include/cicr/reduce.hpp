#pragma once

#include <cstdint>
#include <optional>

#include "cicr/env.hpp"
#include "cicr/term.hpp"

namespace cicr {

/// Step budget for one reduction or conversion query.
class Fuel {
public:
    explicit Fuel(std::uint64_t steps) : remaining_(steps) {}

    /// Throws KernelError(FuelExhausted) once the budget is spent.
    void consume();
    std::uint64_t remaining() const { return remaining_; }

private:
    std::uint64_t remaining_;
};

struct ReduceFlags {
    bool beta = true;
    bool iota = true;
    bool delta = true;

    static ReduceFlags beta_only() { return {true, false, false}; }
};

/// One head beta contraction.
std::optional<Term> beta_step(const Term& t);

/// One head iota contraction: a case on a constructor-headed scrutinee, or a
/// fixpoint applied to a constructor-headed decreasing argument. Only syntactic
/// constructor heads count; whnf takes care of exposing them.
std::optional<Term> iota_step(const Term& t, const GlobalEnv& env);

/// Unfolds a global definition in head position.
std::optional<Term> delta_step(const Term& t, const GlobalEnv& env);

Term whnf(const Term& t, const GlobalEnv& env, Fuel& fuel, ReduceFlags flags = {});
Term whnf(const Term& t, const GlobalEnv& env);

Term normalize(const Term& t, const GlobalEnv& env, Fuel& fuel, ReduceFlags flags = {});
Term normalize(const Term& t, const GlobalEnv& env);

/// Beta normal form; global definitions stay folded.
Term beta_normalize(const Term& t);

/// beta-iota-delta convertibility (no eta, no cumulativity).
bool conv(const Term& a, const Term& b, const GlobalEnv& env, Fuel& fuel);
bool conv(const Term& a, const Term& b, const GlobalEnv& env);

}  // namespace cicr
