#include <cctype>
#include <set>

#include "cicr/syntax.hpp"

namespace cicr {

namespace {

enum class Tok { Ident, Number, String, Symbol, Eof };

struct Token {
    Tok kind;
    std::string text;
    Span span;
};

const std::set<std::string> keywords = {
    "forall", "fun", "fix", "match", "elim", "as", "in", "return", "with", "end", "Prop", "Set", "Type",
    "Inductive", "Definition", "Fixpoint", "Axiom", "Realize", "Parametricity", "Check", "Eval", "Embed",
    "Import", "struct"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

class Lexer {
public:
    Lexer(const std::string& src, std::string file) : src_(src), file_(std::move(file)) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Span sp = here();
            if (pos_ >= src_.size()) {
                out.push_back({Tok::Eof, "", sp});
                return out;
            }
            char c = src_[pos_];
            if (ident_start(c)) {
                std::size_t b = pos_;
                while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
                out.push_back({Tok::Ident, src_.substr(b, pos_ - b), sp});
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t b = pos_;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
                out.push_back({Tok::Number, src_.substr(b, pos_ - b), sp});
            } else if (c == '"') {
                advance();
                std::size_t b = pos_;
                while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') advance();
                if (pos_ >= src_.size() || src_[pos_] != '"')
                    throw SourceError(sp, ErrorCode::ParseError, "unterminated string literal");
                out.push_back({Tok::String, src_.substr(b, pos_ - b), sp});
                advance();
            } else {
                static const char* multi[] = {":=", "=>", "->"};
                std::string sym;
                for (const char* m : multi)
                    if (src_.compare(pos_, 2, m) == 0) sym = m;
                if (sym.empty()) {
                    if (std::string("():,.|{}@").find(c) == std::string::npos)
                        throw SourceError(sp, ErrorCode::ParseError, std::string("unexpected character '") + c + "'");
                    sym = std::string(1, c);
                }
                for (std::size_t i = 0; i < sym.size(); ++i) advance();
                out.push_back({Tok::Symbol, sym, sp});
            }
        }
    }

private:
    Span here() const { return {file_, line_, col_}; }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        for (;;) {
            while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
            if (src_.compare(pos_, 2, "(*") != 0) return;
            Span start = here();
            int depth = 0;
            do {
                if (pos_ >= src_.size()) throw SourceError(start, ErrorCode::ParseError, "unterminated comment");
                if (src_.compare(pos_, 2, "(*") == 0) {
                    ++depth;
                    advance();
                    advance();
                } else if (src_.compare(pos_, 2, "*)") == 0) {
                    --depth;
                    advance();
                    advance();
                } else {
                    advance();
                }
            } while (depth > 0);
        }
    }

    const std::string& src_;
    std::string file_;
    std::size_t pos_ = 0;
    unsigned line_ = 1, col_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    std::vector<Command> file() {
        std::vector<Command> out;
        while (peek().kind != Tok::Eof) out.push_back(command());
        return out;
    }

    ExprPtr lone_term() {
        ExprPtr e = term();
        if (peek().kind != Tok::Eof) error("unexpected '" + peek().text + "' after term");
        return e;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    bool is_sym(const std::string& s, std::size_t ahead = 0) const {
        return peek(ahead).kind == Tok::Symbol && peek(ahead).text == s;
    }
    bool is_kw(const std::string& s) const { return peek().kind == Tok::Ident && peek().text == s; }

    [[noreturn]] void error(const std::string& msg) const { throw SourceError(peek().span, ErrorCode::ParseError, msg); }

    void expect_sym(const std::string& s) {
        if (!is_sym(s)) error("expected '" + s + "' but found " + describe(peek()));
        next();
    }
    void expect_kw(const std::string& s) {
        if (!is_kw(s)) error("expected '" + s + "' but found " + describe(peek()));
        next();
    }

    static std::string describe(const Token& t) {
        return t.kind == Tok::Eof ? "end of input" : "'" + t.text + "'";
    }

    std::string name() {
        if (peek().kind != Tok::Ident || keywords.count(peek().text))
            error("expected an identifier but found " + describe(peek()));
        return next().text;
    }

    unsigned number() {
        if (peek().kind != Tok::Number) error("expected a number but found " + describe(peek()));
        return static_cast<unsigned>(std::stoul(next().text));
    }

    static ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

    // ----- terms

    ExprPtr term() {
        Span sp = peek().span;
        if (is_kw("forall") || is_kw("fun")) {
            bool pi = peek().text == "forall";
            next();
            Expr e{pi ? ExprKind::Forall : ExprKind::Fun, sp};
            e.binders = binders(true);
            if (pi) expect_sym(",");
            else expect_sym("=>");
            e.body = term();
            return make(std::move(e));
        }
        if (is_kw("fix")) return fix();
        ExprPtr lhs = application();
        if (is_sym("->")) {
            next();
            Expr e{ExprKind::Arrow, sp};
            e.head = lhs;
            e.body = term();
            return make(std::move(e));
        }
        return lhs;
    }

    // Either `x y : A` or one or more `(x y : A)` groups.
    std::vector<Binder> binders(bool allow_bare) {
        std::vector<Binder> out;
        if (!is_sym("(")) {
            if (!allow_bare) error("expected a parenthesized binder");
            std::vector<std::pair<std::string, Span>> names;
            while (peek().kind == Tok::Ident && !keywords.count(peek().text)) {
                Span s = peek().span;
                names.emplace_back(next().text, s);
            }
            if (names.empty()) error("expected a binder");
            expect_sym(":");
            ExprPtr ty = term();
            for (auto& [n, s] : names) out.push_back({n, ty, s});
            return out;
        }
        while (is_sym("(")) group(out);
        return out;
    }

    void group(std::vector<Binder>& out) {
        expect_sym("(");
        std::vector<std::pair<std::string, Span>> names;
        while (peek().kind == Tok::Ident && !keywords.count(peek().text)) {
            Span s = peek().span;
            names.emplace_back(next().text, s);
        }
        if (names.empty()) error("expected a binder name");
        expect_sym(":");
        ExprPtr ty = term();
        expect_sym(")");
        for (auto& [n, s] : names) out.push_back({n, ty, s});
    }

    ExprPtr fix() {
        Span sp = peek().span;
        expect_kw("fix");
        std::string f = name();
        if (is_sym(":")) {
            next();
            Expr e{ExprKind::RawFix, sp};
            e.name = f;
            e.head = term();
            expect_sym("{");
            expect_kw("struct");
            e.struct_index = number();
            expect_sym("}");
            expect_sym(":=");
            e.body = term();
            return make(std::move(e));
        }
        Expr e{ExprKind::Fix, sp};
        e.name = f;
        e.binders = binders(false);
        expect_sym("{");
        expect_kw("struct");
        e.struct_name = name();
        expect_sym("}");
        expect_sym(":");
        e.result = term();
        expect_sym(":=");
        e.body = term();
        return make(std::move(e));
    }

    bool atom_start() const {
        const Token& t = peek();
        if (t.kind == Tok::Ident) {
            if (!keywords.count(t.text)) return true;
            return t.text == "Prop" || t.text == "Set" || t.text == "Type" || t.text == "match" || t.text == "elim";
        }
        return t.kind == Tok::Symbol && t.text == "(";
    }

    ExprPtr application() {
        Span sp = peek().span;
        ExprPtr head = atom();
        std::vector<ExprPtr> args;
        while (atom_start()) args.push_back(atom());
        if (args.empty()) return head;
        Expr e{ExprKind::App, sp};
        e.head = head;
        e.args = std::move(args);
        return make(std::move(e));
    }

    ExprPtr atom() {
        Span sp = peek().span;
        if (is_sym("(")) {
            next();
            ExprPtr e = term();
            expect_sym(")");
            return e;
        }
        if (is_kw("Prop")) {
            next();
            Expr e{ExprKind::Sort, sp};
            e.sort = Sort::prop();
            return make(std::move(e));
        }
        if (is_kw("Set") || is_kw("Type")) {
            bool set = next().text == "Set";
            unsigned level = 0;
            if (is_sym("@")) {
                next();
                level = number();
            } else if (!set) {
                error("Type needs an explicit level, as in Type@1");
            }
            Expr e{ExprKind::Sort, sp};
            e.sort = set ? Sort::set(level) : Sort::type(level);
            return make(std::move(e));
        }
        if (is_kw("match")) return match();
        if (is_kw("elim")) return elim();
        Expr e{ExprKind::Ident, sp};
        e.name = name();
        return make(std::move(e));
    }

    ExprPtr match() {
        Span sp = peek().span;
        expect_kw("match");
        Expr e{ExprKind::Match, sp};
        e.head = term();
        if (is_kw("as")) {
            next();
            e.as_name = name();
        }
        if (is_kw("in")) {
            next();
            e.in_ind = name();
            while (atom_start()) e.args.push_back(atom());
        }
        if (is_kw("return")) {
            next();
            e.result = term();
        }
        expect_kw("with");
        bool first = true;
        while (!is_kw("end")) {
            if (is_sym("|")) next();
            else if (!first) error("expected '|' or 'end' but found " + describe(peek()));
            first = false;
            MatchClause c;
            c.span = peek().span;
            c.constructor = name();
            while (peek().kind == Tok::Ident && !keywords.count(peek().text)) c.vars.push_back(next().text);
            expect_sym("=>");
            c.rhs = term();
            e.clauses.push_back(std::move(c));
        }
        expect_kw("end");
        return make(std::move(e));
    }

    ExprPtr elim() {
        Span sp = peek().span;
        expect_kw("elim");
        Expr e{ExprKind::Elim, sp};
        e.head = term();
        expect_kw("in");
        e.name = name();
        while (atom_start()) e.args.push_back(atom());
        expect_kw("return");
        e.result = term();
        expect_kw("with");
        while (is_sym("|")) {
            next();
            e.branches.push_back(term());
        }
        expect_kw("end");
        return make(std::move(e));
    }

    // ----- vernacular

    Command command() {
        Span sp = peek().span;
        if (peek().kind != Tok::Ident) error("expected a command but found " + describe(peek()));
        std::string kw = peek().text;
        next();
        Command c{CommandKind::Check, sp};
        if (kw == "Inductive") {
            c.kind = CommandKind::Inductive;
            c.name = name();
            if (is_sym("(")) c.binders = binders(false);
            expect_sym(":");
            c.type = term();
            expect_sym(":=");
            bool first = true;
            while (!is_sym(".")) {
                if (is_sym("|")) next();
                else if (!first) error("expected '|' or '.' but found " + describe(peek()));
                first = false;
                ConstructorSyntax ctor;
                ctor.span = peek().span;
                ctor.name = name();
                expect_sym(":");
                ctor.type = term();
                c.constructors.push_back(std::move(ctor));
            }
        } else if (kw == "Definition") {
            c.kind = CommandKind::Definition;
            c.name = name();
            if (is_sym("(")) c.binders = binders(false);
            if (is_sym(":")) {
                next();
                c.type = term();
            }
            expect_sym(":=");
            c.body = term();
        } else if (kw == "Fixpoint") {
            c.kind = CommandKind::Fixpoint;
            c.name = name();
            c.binders = binders(false);
            expect_sym("{");
            expect_kw("struct");
            c.struct_name = name();
            expect_sym("}");
            expect_sym(":");
            c.type = term();
            expect_sym(":=");
            c.body = term();
        } else if (kw == "Axiom") {
            c.kind = CommandKind::Axiom;
            c.name = name();
            expect_sym(":");
            c.type = term();
        } else if (kw == "Realize") {
            c.kind = CommandKind::Realize;
            c.name = name();
            expect_sym(":=");
            c.body = term();
        } else if (kw == "Parametricity" || kw == "Embed") {
            c.kind = kw == "Embed" ? CommandKind::Embed : CommandKind::Parametricity;
            c.name = name();
        } else if (kw == "Check") {
            c.kind = CommandKind::Check;
            c.body = term();
            if (is_sym(":")) {
                next();
                c.type = term();
            }
        } else if (kw == "Eval") {
            c.kind = CommandKind::Eval;
            c.body = term();
        } else if (kw == "Import") {
            c.kind = CommandKind::Import;
            if (peek().kind != Tok::String) error("Import expects a quoted file name");
            c.path = next().text;
        } else {
            pos_--;
            error("unknown command '" + kw + "'");
        }
        expect_sym(".");
        return c;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<Command> parse_file(const std::string& source, const std::string& filename) {
    return Parser(Lexer(source, filename).run()).file();
}

ExprPtr parse_expr(const std::string& source, const std::string& filename) {
    return Parser(Lexer(source, filename).run()).lone_term();
}

}  // namespace cicr
