#pragma once

#include <functional>
#include <optional>
#include <string>

#include "cicr/driver.hpp"
#include "cicr/elab.hpp"
#include "cicr/env.hpp"
#include "cicr/syntax.hpp"
#include "cicr/term.hpp"

namespace cicr::testing {

inline std::string corpus_path(const std::string& file) { return std::string(CICR_CORPUS_DIR) + "/" + file; }

/// A session with one corpus file loaded; throws if it does not check.
inline Session load_corpus(const std::string& file, Options opts = {}) {
    Session s(opts);
    s.run_file(corpus_path(file));
    if (s.failed()) throw std::runtime_error(file + ": " + s.diagnostics().front().format());
    return s;
}

inline Session load_source(const std::string& source, Options opts = {}) {
    Session s(opts);
    s.run_source(source, "<test>");
    if (s.failed()) throw std::runtime_error(s.diagnostics().front().format());
    return s;
}

/// Code of the first diagnostic a source produces, if any.
inline std::optional<ErrorCode> first_error(const std::string& source, Options opts = {}) {
    Session s(opts);
    s.run_source(source, "<test>");
    if (!s.failed()) return std::nullopt;
    return s.diagnostics().front().code;
}

/// Code of the KernelError f raises, if any.
inline std::optional<ErrorCode> kernel_error(const std::function<void()>& f) {
    try {
        f();
    } catch (const KernelError& e) {
        return e.code();
    }
    return std::nullopt;
}

inline Term parse_term(const GlobalEnv& env, const std::string& src, const Context& ctx = Context{}) {
    return elaborate(parse_expr(src), ctx, env);
}

}  // namespace cicr::testing
