#include "cicr/driver.hpp"

#include <fstream>
#include <sstream>

#include "cicr/elab.hpp"
#include "cicr/embed.hpp"
#include "cicr/error.hpp"
#include "cicr/param.hpp"
#include "cicr/print.hpp"
#include "cicr/reduce.hpp"
#include "cicr/typecheck.hpp"

namespace cicr {

namespace fs = std::filesystem;

std::string Diagnostic::format() const {
    std::ostringstream os;
    os << span.file << ":" << span.line << ":" << span.col << ": " << error_code_name(code) << ": " << message;
    return os.str();
}

std::string CommandReport::format() const {
    std::string s = (ok ? "PASS " : "FAIL ") + label;
    if (!output.empty()) s += " -- " + output;
    return s;
}

std::string command_label(const Command& c) {
    switch (c.kind) {
    case CommandKind::Inductive: return "Inductive " + c.name;
    case CommandKind::Definition: return "Definition " + c.name;
    case CommandKind::Fixpoint: return "Fixpoint " + c.name;
    case CommandKind::Axiom: return "Axiom " + c.name;
    case CommandKind::Realize: return "Realize " + c.name;
    case CommandKind::Parametricity: return "Parametricity " + c.name;
    case CommandKind::Check: return "Check";
    case CommandKind::Eval: return "Eval";
    case CommandKind::Embed: return "Embed " + c.name;
    case CommandKind::Import: return "Import \"" + c.path + "\"";
    }
    return "command";
}

Session::Session(Options opts) : opts_(opts) {
    env_.config().fuel = opts_.fuel;
}

int Session::exit_status() const {
    if (io_error_) return 2;
    return failed() ? 1 : 0;
}

void Session::record(const Span& span, ErrorCode code, const std::string& msg, const std::string& judgment) {
    diagnostics_.push_back({Severity::Error, span, code, msg, judgment});
    if (!opts_.continue_on_error) stopped_ = true;
}

bool Session::run_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        io_error_ = true;
        record({path.string(), 0, 0}, ErrorCode::IOError, "cannot read " + path.string(), "");
        stopped_ = true;
        return false;
    }
    std::error_code ec;
    fs::path canon = fs::weakly_canonical(path, ec);
    loaded_.insert(ec ? path.string() : canon.string());
    std::stringstream ss;
    ss << in.rdbuf();
    std::vector<Command> cmds;
    try {
        cmds = parse_file(ss.str(), path.string());
    } catch (const SourceError& e) {
        record(e.span(), e.code(), e.what(), "");
        stopped_ = true;
        return false;
    }
    return run_commands(cmds, path);
}

bool Session::run_source(const std::string& source, const std::string& filename) {
    std::vector<Command> cmds;
    try {
        cmds = parse_file(source, filename);
    } catch (const SourceError& e) {
        record(e.span(), e.code(), e.what(), "");
        stopped_ = true;
        return false;
    }
    return run_commands(cmds, fs::path(filename));
}

bool Session::run_commands(const std::vector<Command>& cmds, const fs::path& file) {
    for (const auto& c : cmds) {
        if (stopped_) break;
        if (c.kind == CommandKind::Import) {
            fs::path target = file.parent_path() / c.path;
            std::error_code ec;
            fs::path canon = fs::weakly_canonical(target, ec);
            if (loaded_.count(ec ? target.string() : canon.string())) continue;
            if (!fs::exists(target)) {
                record(c.span, ErrorCode::IOError, "cannot import " + target.string(), command_label(c));
                reports_.push_back({c.span, command_label(c), false, ""});
                continue;
            }
            run_file(target);
            continue;
        }
        std::string label = command_label(c);
        try {
            std::string out = execute(c, file);
            reports_.push_back({c.span, label, true, out});
        } catch (const SourceError& e) {
            record(e.span(), e.code(), e.what(), label);
            reports_.push_back({c.span, label, false, ""});
        } catch (const KernelError& e) {
            record(c.span, e.code(), e.what(), label);
            reports_.push_back({c.span, label, false, ""});
        }
    }
    return !failed();
}

std::string Session::execute(const Command& c, const fs::path&) {
    switch (c.kind) {
    case CommandKind::Inductive: {
        InductiveCandidate cand = elaborate_inductive(c, env_);
        declare_inductive_in_place(env_, cand);
        return "";
    }
    case CommandKind::Definition:
    case CommandKind::Fixpoint: {
        ElaboratedDefinition d = elaborate_definition(c, env_);
        register_definition_in_place(env_, c.name, d.type, d.body);
        return "";
    }
    case CommandKind::Axiom: {
        Term ty = elaborate(c.type, env_);
        register_axiom_in_place(env_, c.name, ty);
        return "";
    }
    case CommandKind::Realize: {
        Term w = elaborate(c.body, env_);
        return realize(env_, c.name, w) + " registered";
    }
    case CommandKind::Parametricity: {
        TranslationResult r = check_abstraction(c.name, env_);
        if (!r.verified)
            fail(ErrorCode::IllTyped, "translation of " + c.name + " does not have type " +
                                          print_term(r.expected_type, Context{}, &env_));
        std::string registered;
        if (env_.find_inductive(c.name)) registered = *env_.translation_of("ind:" + c.name);
        else if (env_.find_constructor(c.name)) registered = *env_.translation_of("ctor:" + c.name);
        else if (env_.find_definition(c.name)) registered = *env_.translation_of("def:" + c.name);
        else registered = *env_.witness_of(c.name);
        return registered + " registered";
    }
    case CommandKind::Check: {
        Term t = elaborate(c.body, env_);
        if (!c.type) return print_term(t, Context{}, &env_) + " : " + print_term(infer(Context{}, t, env_), Context{}, &env_);
        Term ty = elaborate(c.type, env_);
        infer_sort(Context{}, ty, env_);
        if (!check(Context{}, t, ty, env_))
            fail(ErrorCode::IllTyped, print_term(t, Context{}, &env_) + " has type " +
                                          print_term(infer(Context{}, t, env_), Context{}, &env_) +
                                          " but is expected to have type " + print_term(ty, Context{}, &env_));
        return print_term(t, Context{}, &env_) + " : " + print_term(ty, Context{}, &env_);
    }
    case CommandKind::Eval: {
        Term t = elaborate(c.body, env_);
        infer(Context{}, t, env_);
        Fuel fuel(opts_.fuel);
        return print_term(normalize(t, env_, fuel), Context{}, &env_);
    }
    case CommandKind::Embed: {
        check_embedding(c.name, env_, opts_.cic_prop_cumul);
        return "embeds into CIC";
    }
    case CommandKind::Import: return "";
    }
    return "";
}

std::string Session::parametricity(const std::string& name) {
    check_abstraction(name, env_);
    if (env_.find_inductive(name)) return print_inductive(*env_.find_inductive(*env_.translation_of("ind:" + name)), &env_);
    if (env_.find_constructor(name)) {
        std::string r = *env_.translation_of("ctor:" + name);
        return r + " : " + print_term(infer(Context{}, mk_constr(r), env_), Context{}, &env_);
    }
    if (env_.find_definition(name)) return print_definition(*env_.find_definition(*env_.translation_of("def:" + name)), &env_);
    return print_definition(*env_.find_definition(*env_.witness_of(name)), &env_);
}

std::string Session::embedding(const std::string& name) {
    check_embedding(name, env_, opts_.cic_prop_cumul);
    GlobalEnv cic = embed_env(env_, opts_.cic_prop_cumul);
    std::string owner = name;
    if (auto c = env_.find_constructor(name)) owner = c->inductive->name;
    if (const InductiveDecl* ind = cic.find_inductive(owner)) return print_inductive(*ind, &cic);
    if (const Definition* d = cic.find_definition(owner)) return print_definition(*d, &cic);
    return print_axiom(*cic.find_axiom(owner), &cic);
}

std::string Session::evaluate(const std::string& term_source) {
    Term t = elaborate(parse_expr(term_source), env_);
    infer(Context{}, t, env_);
    Fuel fuel(opts_.fuel);
    return print_term(normalize(t, env_, fuel), Context{}, &env_);
}

}  // namespace cicr
