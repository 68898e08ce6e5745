#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cicr/error.hpp"
#include "cicr/term.hpp"

namespace cicr {

struct Span {
    std::string file;
    unsigned line = 1;
    unsigned col = 1;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Binder {
    std::string name;
    ExprPtr type;
    Span span;
};

struct MatchClause {
    std::string constructor;
    std::vector<std::string> vars;
    ExprPtr rhs;
    Span span;
};

enum class ExprKind { Ident, Sort, Forall, Fun, Arrow, App, Match, Elim, Fix, RawFix };

/// Named surface syntax, resolved to de Bruijn terms by the elaborator.
struct Expr {
    ExprKind kind;
    Span span;
    std::string name;              // Ident; Fix/RawFix function name; Elim inductive
    Sort sort;                     // Sort
    std::vector<Binder> binders;   // Forall, Fun, Fix
    ExprPtr body;                  // Forall/Fun/Fix/RawFix body; Arrow codomain
    ExprPtr head;                  // App head; Arrow domain; Match/Elim scrutinee; RawFix type
    std::vector<ExprPtr> args;     // App arguments; Match `in` arguments; Elim parameters
    ExprPtr result;                // Match `return` clause; Elim motive; Fix result type
    std::optional<std::string> as_name;   // Match
    std::optional<std::string> in_ind;    // Match
    std::vector<MatchClause> clauses;     // Match
    std::vector<ExprPtr> branches;        // Elim
    std::string struct_name;              // Fix
    unsigned struct_index = 0;            // RawFix
};

struct ConstructorSyntax {
    std::string name;
    ExprPtr type;
    Span span;
};

enum class CommandKind { Inductive, Definition, Fixpoint, Axiom, Realize, Parametricity, Check, Eval, Embed, Import };

struct Command {
    CommandKind kind;
    Span span;
    std::string name;
    std::vector<Binder> binders;
    ExprPtr type;  // arity, declared type, axiom type, Check annotation, Fixpoint result type
    ExprPtr body;  // definition body, witness, Check/Eval term
    std::vector<ConstructorSyntax> constructors;
    std::string struct_name;  // Fixpoint
    std::string path;         // Import
};

/// Parses a whole vernacular file. Throws SourceError(ParseError) on malformed input.
std::vector<Command> parse_file(const std::string& source, const std::string& filename);

/// Parses a single term (used by `cicr eval --term` and tests).
ExprPtr parse_expr(const std::string& source, const std::string& filename = "<term>");

/// Error raised by the frontend with a source position attached.
class SourceError : public std::runtime_error {
public:
    SourceError(Span span, ErrorCode code, const std::string& msg)
        : std::runtime_error(msg), span_(std::move(span)), code_(code) {}
    const Span& span() const { return span_; }
    ErrorCode code() const { return code_; }

private:
    Span span_;
    ErrorCode code_;
};

}  // namespace cicr
