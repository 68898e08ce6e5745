#pragma once

#include <string>

#include "cicr/env.hpp"
#include "cicr/term.hpp"

namespace cicr {

/// Forgetful map into CIC: Set@i becomes Type@i, everything else is kept.
Term embed(const Term& t);
Context embed_context(const Context& ctx);

/// Replays every declaration of env, embedded, through the kernel in CIC mode.
/// Throws EmbeddingFailed naming the first declaration that does not check.
GlobalEnv embed_env(const GlobalEnv& env, bool prop_cumulative = false);

/// Replays the declarations up to and including `name` in CIC mode. True on
/// success; a failure throws EmbeddingFailed with the rejected judgment.
bool check_embedding(const std::string& name, const GlobalEnv& env, bool prop_cumulative = false);

/// |ctx| |- |t| : |B| in CIC mode, where B is the CICr type of t.
bool check_embedded_judgment(const Context& ctx, const Term& t, const GlobalEnv& env,
                             bool prop_cumulative = false);

}  // namespace cicr
