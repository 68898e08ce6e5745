#pragma once

#include <string>
#include <vector>

#include "cicr/env.hpp"
#include "cicr/term.hpp"

namespace cicr {

/// Renders a term in the surface syntax accepted by the parser. Binder names
/// are kept unless that would capture a variable or shadow a global the body
/// refers to. With an environment, case and fix nodes print in their sugared
/// forms whenever the sugar elaborates back to the same node.
std::string print_term(const Term& t, const Context& ctx = {}, const GlobalEnv* env = nullptr);
std::string print_term(const Term& t, const std::vector<std::string>& names, const GlobalEnv* env);

/// Vernacular rendering of declarations.
std::string print_inductive(const InductiveDecl& ind, const GlobalEnv* env = nullptr);
std::string print_definition(const Definition& def, const GlobalEnv* env = nullptr);
std::string print_axiom(const Axiom& ax, const GlobalEnv* env = nullptr);

}  // namespace cicr
