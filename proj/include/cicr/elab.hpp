#pragma once

#include <optional>
#include <set>
#include <string>

#include "cicr/env.hpp"
#include "cicr/syntax.hpp"
#include "cicr/typecheck.hpp"

namespace cicr {

/// Resolves names to de Bruijn indices and globals, fills in the parameters
/// and motive of `match`, and expands `fix` binders. Names in `pending` are
/// treated as inductives under declaration. Errors are SourceErrors.
Term elaborate(const ExprPtr& e, const Context& ctx, const GlobalEnv& env,
               const std::set<std::string>& pending = {});
Term elaborate(const ExprPtr& e, const GlobalEnv& env);

InductiveCandidate elaborate_inductive(const Command& c, const GlobalEnv& env);

struct ElaboratedDefinition {
    std::optional<Term> type;
    Term body;
};
/// Definition and Fixpoint commands.
ElaboratedDefinition elaborate_definition(const Command& c, const GlobalEnv& env);

}  // namespace cicr
