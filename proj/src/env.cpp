#include "cicr/env.hpp"

#include "cicr/error.hpp"

namespace cicr {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::UnknownGlobal: return "UnknownGlobal";
    case ErrorCode::NotAFunction: return "NotAFunction";
    case ErrorCode::SortMismatch: return "SortMismatch";
    case ErrorCode::UniverseError: return "UniverseError";
    case ErrorCode::IllTyped: return "IllTyped";
    case ErrorCode::NotAnArity: return "NotAnArity";
    case ErrorCode::PositivityViolation: return "PositivityViolation";
    case ErrorCode::ConstructorIllTyped: return "ConstructorIllTyped";
    case ErrorCode::NameClash: return "NameClash";
    case ErrorCode::IllegalElimination: return "IllegalElimination";
    case ErrorCode::BranchMismatch: return "BranchMismatch";
    case ErrorCode::MotiveMismatch: return "MotiveMismatch";
    case ErrorCode::MalformedCase: return "MalformedCase";
    case ErrorCode::GuardViolation: return "GuardViolation";
    case ErrorCode::AnnotationNotAType: return "AnnotationNotAType";
    case ErrorCode::WitnessTypeMismatch: return "WitnessTypeMismatch";
    case ErrorCode::FuelExhausted: return "FuelExhausted";
    case ErrorCode::MissingWitness: return "MissingWitness";
    case ErrorCode::NotSmallInductive: return "NotSmallInductive";
    case ErrorCode::NotSupported: return "NotSupported";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmbeddingFailed: return "EmbeddingFailed";
    case ErrorCode::IOError: return "IOError";
    }
    return "Unknown";
}

const InductiveDecl* GlobalEnv::find_inductive(const std::string& name) const {
    auto it = inductives_.find(name);
    return it == inductives_.end() ? nullptr : it->second.get();
}

std::optional<GlobalEnv::ConstructorRef> GlobalEnv::find_constructor(const std::string& name) const {
    auto it = constructors_.find(name);
    if (it == constructors_.end()) return std::nullopt;
    return ConstructorRef{find_inductive(it->second.first), it->second.second};
}

const Definition* GlobalEnv::find_definition(const std::string& name) const {
    auto it = definitions_.find(name);
    return it == definitions_.end() ? nullptr : it->second.get();
}

const Axiom* GlobalEnv::find_axiom(const std::string& name) const {
    auto it = axioms_.find(name);
    return it == axioms_.end() ? nullptr : it->second.get();
}

std::optional<std::string> GlobalEnv::witness_of(const std::string& axiom) const {
    auto it = witnesses_.find(axiom);
    if (it == witnesses_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::string> GlobalEnv::translation_of(const std::string& key) const {
    auto it = translations_.find(key);
    if (it == translations_.end()) return std::nullopt;
    return it->second;
}

bool GlobalEnv::has_name(const std::string& name) const {
    return inductives_.count(name) || constructors_.count(name) || definitions_.count(name) ||
           axioms_.count(name);
}

std::set<std::string> GlobalEnv::names() const {
    std::set<std::string> out;
    for (const auto& [k, _] : inductives_) out.insert(k);
    for (const auto& [k, _] : constructors_) out.insert(k);
    for (const auto& [k, _] : definitions_) out.insert(k);
    for (const auto& [k, _] : axioms_) out.insert(k);
    return out;
}

void GlobalEnv::add_inductive(InductiveDecl decl) {
    auto name = decl.name;
    for (unsigned j = 0; j < decl.constructors.size(); ++j)
        constructors_[decl.constructors[j].name] = {name, j};
    inductives_[name] = std::make_shared<const InductiveDecl>(std::move(decl));
    log_.push_back({DeclKind::Inductive, name});
}

void GlobalEnv::add_definition(Definition def) {
    auto name = def.name;
    definitions_[name] = std::make_shared<const Definition>(std::move(def));
    log_.push_back({DeclKind::Definition, name});
}

void GlobalEnv::add_axiom(Axiom ax) {
    auto name = ax.name;
    axioms_[name] = std::make_shared<const Axiom>(std::move(ax));
    log_.push_back({DeclKind::Axiom, name});
}

void GlobalEnv::add_witness(const std::string& axiom, const std::string& definition) {
    witnesses_[axiom] = definition;
    log_.push_back({DeclKind::Witness, axiom});
}

void GlobalEnv::set_translation(const std::string& key, const std::string& name) {
    translations_[key] = name;
}

}  // namespace cicr
