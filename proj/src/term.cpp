#include "cicr/term.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace cicr {

std::string to_string(const Sort& s) {
    switch (s.kind) {
    case SortKind::Prop: return "Prop";
    case SortKind::Set: return "Set@" + std::to_string(s.level);
    case SortKind::Type: return "Type@" + std::to_string(s.level);
    }
    return "?";
}

Kind Term::kind() const { return node_->kind; }
unsigned Term::var_index() const { return node_->index; }
const Sort& Term::sort() const { return node_->sort_value; }
const std::string& Term::name() const { return node_->name; }
const Term& Term::domain() const { return node_->first; }
const Term& Term::body() const { return node_->second; }
const Term& Term::fn() const { return node_->first; }
const Term& Term::arg() const { return node_->second; }
const Term& Term::scrutinee() const { return node_->first; }
const Term& Term::motive() const { return node_->second; }
const std::vector<Term>& Term::params() const { return node_->params; }
const std::vector<Term>& Term::branches() const { return node_->branches; }
unsigned Term::struct_arg() const { return node_->index; }
unsigned Term::loose_bound() const { return node_->loose; }

namespace {

unsigned under_binder(unsigned bound) { return bound == 0 ? 0 : bound - 1; }

Term make(Node n) { return Term(std::make_shared<const Node>(std::move(n))); }

}  // namespace

Term mk_var(unsigned index) {
    Node n{Kind::Var};
    n.index = index;
    n.loose = index + 1;
    return make(std::move(n));
}

Term mk_sort(Sort s) {
    Node n{Kind::Sort};
    n.sort_value = s;
    return make(std::move(n));
}

Term mk_prop() { return mk_sort(Sort::prop()); }
Term mk_set(unsigned level) { return mk_sort(Sort::set(level)); }
Term mk_type(unsigned level) { return mk_sort(Sort::type(level)); }

namespace {

Term mk_binder(Kind k, std::string binder, Term domain, Term body) {
    Node n{k};
    n.loose = std::max(domain.loose_bound(), under_binder(body.loose_bound()));
    n.name = std::move(binder);
    n.first = std::move(domain);
    n.second = std::move(body);
    return make(std::move(n));
}

Term mk_global(Kind k, std::string name) {
    Node n{k};
    n.name = std::move(name);
    return make(std::move(n));
}

}  // namespace

Term mk_prod(std::string binder, Term domain, Term body) {
    return mk_binder(Kind::Prod, std::move(binder), std::move(domain), std::move(body));
}

Term mk_arrow(Term domain, Term codomain) {
    return mk_prod("_", std::move(domain), lift(codomain, 1));
}

Term mk_lam(std::string binder, Term domain, Term body) {
    return mk_binder(Kind::Lam, std::move(binder), std::move(domain), std::move(body));
}

Term mk_app(Term fn, Term arg) {
    Node n{Kind::App};
    n.loose = std::max(fn.loose_bound(), arg.loose_bound());
    n.first = std::move(fn);
    n.second = std::move(arg);
    return make(std::move(n));
}

Term mk_app(Term fn, const std::vector<Term>& args) {
    for (const auto& a : args) fn = mk_app(std::move(fn), a);
    return fn;
}

Term mk_ind(std::string name) { return mk_global(Kind::Ind, std::move(name)); }
Term mk_constr(std::string name) { return mk_global(Kind::Constr, std::move(name)); }
Term mk_const(std::string name) { return mk_global(Kind::Const, std::move(name)); }

Term mk_case(std::string ind, Term scrutinee, std::vector<Term> params, Term motive,
             std::vector<Term> branches) {
    Node n{Kind::Case};
    n.loose = std::max(scrutinee.loose_bound(), motive.loose_bound());
    for (const auto& p : params) n.loose = std::max(n.loose, p.loose_bound());
    for (const auto& b : branches) n.loose = std::max(n.loose, b.loose_bound());
    n.name = std::move(ind);
    n.first = std::move(scrutinee);
    n.second = std::move(motive);
    n.params = std::move(params);
    n.branches = std::move(branches);
    return make(std::move(n));
}

Term mk_fix(std::string binder, Term type, Term body, unsigned struct_arg) {
    Node n{Kind::Fix};
    n.loose = std::max(type.loose_bound(), under_binder(body.loose_bound()));
    n.index = struct_arg;
    n.name = std::move(binder);
    n.first = std::move(type);
    n.second = std::move(body);
    return make(std::move(n));
}

Spine decompose_app(const Term& t) {
    Spine s;
    Term cur = t;
    while (cur.is(Kind::App)) {
        s.args.push_back(cur.arg());
        cur = cur.fn();
    }
    std::reverse(s.args.begin(), s.args.end());
    s.head = cur;
    return s;
}

namespace {

// Rebuilds t, mapping each free variable (index, depth-under-t) through `on_var`.
// Subterms whose loose bound is <= depth are closed relative to the walk and reused.
template <typename F>
Term map_vars(const Term& t, unsigned depth, const F& on_var) {
    if (t.loose_bound() <= depth) return t;
    switch (t.kind()) {
    case Kind::Var: return on_var(t.var_index(), depth);
    case Kind::Prod:
        return mk_prod(t.name(), map_vars(t.domain(), depth, on_var),
                       map_vars(t.body(), depth + 1, on_var));
    case Kind::Lam:
        return mk_lam(t.name(), map_vars(t.domain(), depth, on_var),
                      map_vars(t.body(), depth + 1, on_var));
    case Kind::App:
        return mk_app(map_vars(t.fn(), depth, on_var), map_vars(t.arg(), depth, on_var));
    case Kind::Case: {
        std::vector<Term> ps, bs;
        ps.reserve(t.params().size());
        bs.reserve(t.branches().size());
        for (const auto& p : t.params()) ps.push_back(map_vars(p, depth, on_var));
        for (const auto& b : t.branches()) bs.push_back(map_vars(b, depth, on_var));
        return mk_case(t.name(), map_vars(t.scrutinee(), depth, on_var), std::move(ps),
                       map_vars(t.motive(), depth, on_var), std::move(bs));
    }
    case Kind::Fix:
        return mk_fix(t.name(), map_vars(t.domain(), depth, on_var),
                      map_vars(t.body(), depth + 1, on_var), t.struct_arg());
    default: return t;
    }
}

}  // namespace

Term lift(const Term& t, unsigned amount, unsigned cutoff) {
    if (amount == 0) return t;
    return map_vars(t, cutoff, [amount](unsigned i, unsigned depth) {
        return i >= depth ? mk_var(i + amount) : mk_var(i);
    });
}

Term subst(const Term& body, const Term& value, unsigned target) {
    return map_vars(body, target, [&](unsigned i, unsigned depth) {
        // depth = target + binders crossed inside body
        if (i < depth) return mk_var(i);
        if (i == depth) return lift(value, depth - target);
        return mk_var(i - 1);
    });
}

Term instantiate(const Term& body, const Term& value) { return subst(body, value, 0); }

Term instantiate_many(const Term& body, const std::vector<Term>& values) {
    // The innermost binder corresponds to the last value.
    const unsigned n = static_cast<unsigned>(values.size());
    if (n == 0) return body;
    return map_vars(body, 0, [&](unsigned i, unsigned depth) {
        if (i < depth) return mk_var(i);
        unsigned rel = i - depth;
        if (rel < n) return lift(values[n - 1 - rel], depth);
        return mk_var(i - n);
    });
}

std::optional<Term> lower(const Term& t, unsigned amount, unsigned cutoff) {
    if (amount == 0) return t;
    bool ok = true;
    Term r = map_vars(t, cutoff, [&](unsigned i, unsigned depth) {
        if (i < depth) return mk_var(i);
        if (i < depth + amount) {
            ok = false;
            return mk_var(i);
        }
        return mk_var(i - amount);
    });
    if (!ok) return std::nullopt;
    return r;
}

bool alpha_eq(const Term& a, const Term& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a.kind() != b.kind() || a.loose_bound() != b.loose_bound()) return false;
    switch (a.kind()) {
    case Kind::Var: return a.var_index() == b.var_index();
    case Kind::Sort: return a.sort() == b.sort();
    case Kind::Prod:
    case Kind::Lam: return alpha_eq(a.domain(), b.domain()) && alpha_eq(a.body(), b.body());
    case Kind::App: return alpha_eq(a.fn(), b.fn()) && alpha_eq(a.arg(), b.arg());
    case Kind::Ind:
    case Kind::Constr:
    case Kind::Const: return a.name() == b.name();
    case Kind::Case: {
        if (a.name() != b.name() || a.params().size() != b.params().size() ||
            a.branches().size() != b.branches().size())
            return false;
        if (!alpha_eq(a.scrutinee(), b.scrutinee()) || !alpha_eq(a.motive(), b.motive()))
            return false;
        for (std::size_t i = 0; i < a.params().size(); ++i)
            if (!alpha_eq(a.params()[i], b.params()[i])) return false;
        for (std::size_t i = 0; i < a.branches().size(); ++i)
            if (!alpha_eq(a.branches()[i], b.branches()[i])) return false;
        return true;
    }
    case Kind::Fix:
        return a.struct_arg() == b.struct_arg() && alpha_eq(a.domain(), b.domain()) &&
               alpha_eq(a.body(), b.body());
    }
    return false;
}

namespace {

void collect_free(const Term& t, unsigned depth, std::set<unsigned>& out) {
    if (t.loose_bound() <= depth) return;
    switch (t.kind()) {
    case Kind::Var: out.insert(t.var_index() - depth); return;
    case Kind::Prod:
    case Kind::Lam:
    case Kind::Fix:
        collect_free(t.domain(), depth, out);
        collect_free(t.body(), depth + 1, out);
        return;
    case Kind::App:
        collect_free(t.fn(), depth, out);
        collect_free(t.arg(), depth, out);
        return;
    case Kind::Case:
        collect_free(t.scrutinee(), depth, out);
        collect_free(t.motive(), depth, out);
        for (const auto& p : t.params()) collect_free(p, depth, out);
        for (const auto& b : t.branches()) collect_free(b, depth, out);
        return;
    default: return;
    }
}

}  // namespace

std::set<unsigned> free_vars(const Term& t) {
    std::set<unsigned> out;
    collect_free(t, 0, out);
    return out;
}

bool has_free_var(const Term& t, unsigned index) {
    if (t.loose_bound() <= index) return false;
    return !lower(t, 1, index).has_value();
}

bool mentions_global(const Term& t, std::string_view name) {
    switch (t.kind()) {
    case Kind::Ind:
    case Kind::Constr:
    case Kind::Const: return t.name() == name;
    case Kind::Prod:
    case Kind::Lam:
    case Kind::Fix: return mentions_global(t.domain(), name) || mentions_global(t.body(), name);
    case Kind::App: return mentions_global(t.fn(), name) || mentions_global(t.arg(), name);
    case Kind::Case: {
        if (t.name() == name) return true;
        if (mentions_global(t.scrutinee(), name) || mentions_global(t.motive(), name)) return true;
        for (const auto& p : t.params())
            if (mentions_global(p, name)) return true;
        for (const auto& b : t.branches())
            if (mentions_global(b, name)) return true;
        return false;
    }
    default: return false;
    }
}

std::size_t term_size(const Term& t) {
    switch (t.kind()) {
    case Kind::Prod:
    case Kind::Lam:
    case Kind::Fix: return 1 + term_size(t.domain()) + term_size(t.body());
    case Kind::App: return 1 + term_size(t.fn()) + term_size(t.arg());
    case Kind::Case: {
        std::size_t n = 1 + term_size(t.scrutinee()) + term_size(t.motive());
        for (const auto& p : t.params()) n += term_size(p);
        for (const auto& b : t.branches()) n += term_size(b);
        return n;
    }
    default: return 1;
    }
}

Term Context::type_of(unsigned index) const {
    if (index >= entries_.size()) throw std::out_of_range("context index out of range");
    return lift(entries_[entries_.size() - 1 - index].type, index + 1);
}

const std::string& Context::name_of(unsigned index) const {
    if (index >= entries_.size()) throw std::out_of_range("context index out of range");
    return entries_[entries_.size() - 1 - index].name;
}

Context Context::push(std::string name, Term type) const {
    Context c = *this;
    c.push_in_place(std::move(name), std::move(type));
    return c;
}

void Context::push_in_place(std::string name, Term type) {
    if (name.empty()) name = "_";
    if (name != "_") {
        bool clash = std::any_of(entries_.begin(), entries_.end(),
                                 [&](const Entry& e) { return e.name == name; });
        if (clash) name = NameSupply::fresh(name, names());
    }
    entries_.push_back({std::move(name), std::move(type)});
}

std::optional<unsigned> Context::lookup(std::string_view name) const {
    for (std::size_t k = entries_.size(); k-- > 0;)
        if (entries_[k].name == name) return static_cast<unsigned>(entries_.size() - 1 - k);
    return std::nullopt;
}

std::set<std::string> Context::names() const {
    std::set<std::string> out;
    for (const auto& e : entries_) out.insert(e.name);
    return out;
}

std::string NameSupply::fresh(std::string_view base, const std::set<std::string>& taken) {
    std::string b(base.empty() ? "x" : base);
    if (!taken.count(b)) return b;
    for (unsigned i = 0;; ++i) {
        std::string cand = b + std::to_string(i);
        if (!taken.count(cand)) return cand;
    }
}

}  // namespace cicr
