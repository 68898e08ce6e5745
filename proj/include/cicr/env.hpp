#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cicr/term.hpp"

namespace cicr {

/// Sort-rule table. CICr is the refined calculus; CIC is the target of the
/// forgetful embedding, where Set is absent and Type@0 exists.
enum class Mode : std::uint8_t { CICr, CIC };

struct KernelConfig {
    Mode mode = Mode::CICr;
    bool prop_cumulative = false;  // CIC only: Prop <: Type@i
    std::uint64_t fuel = 1'000'000;
};

struct ConstructorDecl {
    std::string name;
    Term type;                   // closed, params included, telescope in product form
    unsigned arg_count = 0;      // non-parameter arguments
    bool prop_args_only = true;  // every non-parameter argument has sort Prop
};

struct InductiveDecl {
    std::string name;
    unsigned param_count = 0;
    Term arity;  // closed, telescope in product form
    std::vector<ConstructorDecl> constructors;

    // Derived at declaration time.
    Sort concl_sort;
    unsigned index_count = 0;
    bool is_small = true;
};

struct Definition {
    std::string name;
    Term type;
    Term body;
};

struct Axiom {
    std::string name;
    Term type;
};

enum class DeclKind : std::uint8_t { Inductive, Definition, Axiom, Witness };

struct DeclRecord {
    DeclKind kind;
    std::string name;  // for Witness: the axiom name
};

/// Registry of global declarations. Copies share their payloads; kernel entry
/// points in typecheck.hpp return extended copies.
class GlobalEnv {
public:
    GlobalEnv() = default;
    explicit GlobalEnv(KernelConfig cfg) : config_(cfg) {}

    const KernelConfig& config() const { return config_; }
    KernelConfig& config() { return config_; }

    const InductiveDecl* find_inductive(const std::string& name) const;
    struct ConstructorRef {
        const InductiveDecl* inductive;
        unsigned index;
    };
    std::optional<ConstructorRef> find_constructor(const std::string& name) const;
    const Definition* find_definition(const std::string& name) const;
    const Axiom* find_axiom(const std::string& name) const;

    /// Name of the definition holding the parametricity witness of an axiom.
    std::optional<std::string> witness_of(const std::string& axiom) const;

    /// Name of the generated translation of a global (I_R, c_R, d_R, aux keys).
    std::optional<std::string> translation_of(const std::string& key) const;

    bool has_name(const std::string& name) const;
    std::set<std::string> names() const;
    const std::vector<DeclRecord>& log() const { return log_; }

    // Raw insertion; callers are responsible for having checked the payload.
    void add_inductive(InductiveDecl decl);
    void add_definition(Definition def);
    void add_axiom(Axiom ax);
    void add_witness(const std::string& axiom, const std::string& definition);
    void set_translation(const std::string& key, const std::string& name);

private:
    KernelConfig config_;
    std::map<std::string, std::shared_ptr<const InductiveDecl>> inductives_;
    std::map<std::string, std::pair<std::string, unsigned>> constructors_;
    std::map<std::string, std::shared_ptr<const Definition>> definitions_;
    std::map<std::string, std::shared_ptr<const Axiom>> axioms_;
    std::map<std::string, std::string> witnesses_;
    std::map<std::string, std::string> translations_;
    std::vector<DeclRecord> log_;
};

}  // namespace cicr
