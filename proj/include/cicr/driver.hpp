#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "cicr/env.hpp"
#include "cicr/syntax.hpp"

namespace cicr {

struct Options {
    std::uint64_t fuel = 1'000'000;
    bool continue_on_error = false;
    bool cic_prop_cumul = false;
};

enum class Severity { Error, Note };

struct Diagnostic {
    Severity severity = Severity::Error;
    Span span;
    ErrorCode code = ErrorCode::IllTyped;
    std::string message;
    std::string judgment;  // the command that was rejected, pretty-printed

    /// file:line:col: code: message
    std::string format() const;
};

struct CommandReport {
    Span span;
    std::string label;   // e.g. "Parametricity church"
    bool ok = false;
    std::string output;  // what the command produced (registered names, types, normal forms)

    /// PASS/FAIL line, with the output appended after " -- " when present.
    std::string format() const;
};

/// One environment fed by a sequence of vernacular sources.
class Session {
public:
    explicit Session(Options opts = {});

    /// Processes a file (Imports are resolved relative to it and loaded once).
    /// Returns false once an error has been recorded.
    bool run_file(const std::filesystem::path& path);
    bool run_source(const std::string& source, const std::string& filename);

    GlobalEnv& env() { return env_; }
    const GlobalEnv& env() const { return env_; }
    const Options& options() const { return opts_; }
    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }
    const std::vector<CommandReport>& reports() const { return reports_; }
    bool failed() const { return !diagnostics_.empty(); }
    bool io_error() const { return io_error_; }

    /// Exit status: 0 success, 1 check failure, 2 unreadable input.
    int exit_status() const;

    // Queries used by the CLI subcommands once the files are loaded.
    std::string parametricity(const std::string& name);
    std::string embedding(const std::string& name);
    std::string evaluate(const std::string& term_source);

private:
    bool run_commands(const std::vector<Command>& cmds, const std::filesystem::path& file);
    std::string execute(const Command& c, const std::filesystem::path& file);
    void record(const Span& span, ErrorCode code, const std::string& msg, const std::string& judgment);

    Options opts_;
    GlobalEnv env_;
    std::vector<Diagnostic> diagnostics_;
    std::vector<CommandReport> reports_;
    std::set<std::string> loaded_;
    bool stopped_ = false;
    bool io_error_ = false;
};

std::string command_label(const Command& c);

}  // namespace cicr
