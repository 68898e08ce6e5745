#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cicr {

enum class SortKind : std::uint8_t { Prop, Set, Type };

/// A universe. Prop carries no level; Set levels start at 0 and Type levels at 1
/// (Type@0 only exists in CIC mode, see embed.hpp).
struct Sort {
    SortKind kind = SortKind::Prop;
    unsigned level = 0;

    static Sort prop() { return {SortKind::Prop, 0}; }
    static Sort set(unsigned i) { return {SortKind::Set, i}; }
    static Sort type(unsigned i) { return {SortKind::Type, i}; }

    bool is_prop() const { return kind == SortKind::Prop; }
    bool is_set() const { return kind == SortKind::Set; }
    bool is_type() const { return kind == SortKind::Type; }

    friend bool operator==(const Sort&, const Sort&) = default;
};

std::string to_string(const Sort& s);

enum class Kind : std::uint8_t { Var, Sort, Prod, Lam, App, Ind, Constr, Const, Case, Fix };

class Node;

/// Immutable, shared term handle. Variables are de Bruijn indices; binder names
/// are kept only as printing hints, so structural equality is alpha-equivalence.
class Term {
public:
    Term() = default;
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    explicit operator bool() const { return static_cast<bool>(node_); }
    const Node* get() const { return node_.get(); }
    const Node* operator->() const { return node_.get(); }

    Kind kind() const;
    bool is(Kind k) const { return node_ && kind() == k; }

    // Var
    unsigned var_index() const;
    // Sort
    const Sort& sort() const;
    // Prod, Lam, Fix: binder hint; Ind, Constr, Const: global name; Case: inductive name
    const std::string& name() const;
    // Prod, Lam: binder domain; Fix: the fixpoint type annotation
    const Term& domain() const;
    // Prod, Lam, Fix: the term under the binder
    const Term& body() const;
    // App
    const Term& fn() const;
    const Term& arg() const;
    // Case
    const Term& scrutinee() const;
    const Term& motive() const;
    const std::vector<Term>& params() const;
    const std::vector<Term>& branches() const;
    // Fix: position of the structurally decreasing argument
    unsigned struct_arg() const;

    /// Every free de Bruijn index is strictly below this bound.
    unsigned loose_bound() const;

private:
    std::shared_ptr<const Node> node_;
};

class Node {
public:
    Kind kind;
    unsigned index = 0;  // Var index or Fix struct argument
    unsigned loose = 0;
    Sort sort_value;
    std::string name;
    Term first;   // domain / fn / scrutinee
    Term second;  // body / arg / motive
    std::vector<Term> params;
    std::vector<Term> branches;
};

Term mk_var(unsigned index);
Term mk_sort(Sort s);
Term mk_prop();
Term mk_set(unsigned level);
Term mk_type(unsigned level);
Term mk_prod(std::string binder, Term domain, Term body);
Term mk_arrow(Term domain, Term codomain);
Term mk_lam(std::string binder, Term domain, Term body);
Term mk_app(Term fn, Term arg);
Term mk_app(Term fn, const std::vector<Term>& args);
Term mk_ind(std::string name);
Term mk_constr(std::string name);
Term mk_const(std::string name);
Term mk_case(std::string ind, Term scrutinee, std::vector<Term> params, Term motive,
             std::vector<Term> branches);
Term mk_fix(std::string binder, Term type, Term body, unsigned struct_arg);

/// Head and arguments of an application spine, outermost argument last.
struct Spine {
    Term head;
    std::vector<Term> args;
};
Spine decompose_app(const Term& t);

/// Adds `amount` to every free index >= `cutoff`.
Term lift(const Term& t, unsigned amount, unsigned cutoff = 0);

/// Replaces free index `target` (counted from the term's own context) by `value`
/// and lowers every free index above it by one. `value` lives in the context
/// with the target binder removed. Capture-avoiding by construction.
Term subst(const Term& body, const Term& value, unsigned target = 0);

/// body[value/0] for a body opened under one binder.
Term instantiate(const Term& body, const Term& value);

/// Instantiates the outermost `values.size()` binders of a body that lives under
/// them, first value for the outermost binder.
Term instantiate_many(const Term& body, const std::vector<Term>& values);

/// Lowers free indices >= cutoff by `amount`; nullopt when one of the indices
/// in [cutoff, cutoff + amount) occurs free.
std::optional<Term> lower(const Term& t, unsigned amount, unsigned cutoff = 0);

bool alpha_eq(const Term& a, const Term& b);
bool has_free_var(const Term& t, unsigned index);
std::set<unsigned> free_vars(const Term& t);
bool mentions_global(const Term& t, std::string_view name);
std::size_t term_size(const Term& t);

/// Ordered list of (name, type) entries; types live in the prefix before them.
/// Names are display names only and are kept pairwise distinct.
class Context {
public:
    struct Entry {
        std::string name;
        Term type;
    };

    Context() = default;

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    /// Entry bound by de Bruijn index i, with its type lifted into the full context.
    Term type_of(unsigned index) const;
    const std::string& name_of(unsigned index) const;
    const Entry& at_level(std::size_t level) const { return entries_[level]; }

    Context push(std::string name, Term type) const;
    void push_in_place(std::string name, Term type);
    void pop_in_place() { entries_.pop_back(); }

    std::optional<unsigned> lookup(std::string_view name) const;
    std::set<std::string> names() const;

private:
    std::vector<Entry> entries_;
};

/// Deterministic fresh-name source for primed copies and relation names.
class NameSupply {
public:
    static std::string prime_of(std::string_view base) { return std::string(base) + "'"; }
    static std::string relation_of(std::string_view base) { return std::string(base) + "_R"; }

    /// `base` itself when unused, else base0, base1, ... (first free one).
    static std::string fresh(std::string_view base, const std::set<std::string>& taken);
};

}  // namespace cicr
