#include <CLI11.hpp>

#include <iostream>

#include "cicr/driver.hpp"
#include "cicr/error.hpp"

namespace {

void print_diagnostics(const cicr::Session& s) {
    for (const auto& d : s.diagnostics()) std::cerr << d.format() << "\n";
}

int load(cicr::Session& s, const std::vector<std::string>& files, bool echo) {
    for (const auto& f : files) {
        if (s.failed() && !s.options().continue_on_error) break;
        std::size_t first = s.reports().size();
        s.run_file(f);
        if (echo)
            for (std::size_t i = first; i < s.reports().size(); ++i) std::cout << s.reports()[i].format() << "\n";
    }
    print_diagnostics(s);
    return s.exit_status();
}

template <typename F>
int query(cicr::Session& s, const std::string& file, F&& f) {
    int status = load(s, {file}, false);
    if (status != 0) return status;
    try {
        std::cout << f() << "\n";
        return 0;
    } catch (const cicr::SourceError& e) {
        std::cerr << cicr::Diagnostic{cicr::Severity::Error, e.span(), e.code(), e.what(), ""}.format() << "\n";
    } catch (const cicr::KernelError& e) {
        std::cerr << file << ":0:0: " << cicr::error_code_name(e.code()) << ": " << e.what() << "\n";
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Type checker and parametricity translator for a calculus of inductive constructions with Set and Type"};
    app.require_subcommand(1);
    cicr::Options opts;
    app.add_option("--fuel", opts.fuel, "Reduction steps allowed per query")->check(CLI::PositiveNumber);
    app.add_flag("--continue-on-error", opts.continue_on_error, "Keep processing commands after an error");
    app.add_flag("--cic-prop-cumul", opts.cic_prop_cumul, "Let Prop be a subtype of Type@i when checking embeddings");

    std::vector<std::string> files;
    auto* check = app.add_subcommand("check", "Typecheck files and run their commands");
    check->add_option("files", files, "Source files")->required();

    std::string file, name, term;
    auto* param = app.add_subcommand("param", "Print the parametricity translation of a global");
    param->add_option("file", file)->required();
    param->add_option("--def", name, "Global to translate")->required();

    auto* embed = app.add_subcommand("embed", "Print the CIC embedding of a global");
    embed->add_option("file", file)->required();
    embed->add_option("--def", name, "Global to embed")->required();

    auto* eval = app.add_subcommand("eval", "Normalize a term in the environment of a file");
    eval->add_option("file", file)->required();
    eval->add_option("--term", term, "Term to normalize")->required();

    for (auto* sub : {check, param, embed, eval}) {
        sub->add_option("--fuel", opts.fuel, "Reduction steps allowed per query")->check(CLI::PositiveNumber);
        sub->add_flag("--continue-on-error", opts.continue_on_error, "Keep processing commands after an error");
        sub->add_flag("--cic-prop-cumul", opts.cic_prop_cumul, "Let Prop be a subtype of Type@i in CIC mode");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    cicr::Session session(opts);
    if (*check) return load(session, files, true);
    if (*param) return query(session, file, [&] { return session.parametricity(name); });
    if (*embed) return query(session, file, [&] { return session.embedding(name); });
    return query(session, file, [&] { return session.evaluate(term); });
}
