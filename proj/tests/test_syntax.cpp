#include <doctest.h>

#include "cicr/param.hpp"
#include "cicr/print.hpp"
#include "helpers.hpp"
#include "properties.hpp"

using namespace cicr;
using namespace cicr::testing;

namespace {

std::optional<ErrorCode> parse_error(const std::string& src) {
    try {
        parse_file(src, "<test>");
    } catch (const SourceError& e) {
        return e.code();
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("printing sorts, binders and arrows") {
    CHECK(print_term(mk_prop()) == "Prop");
    CHECK(print_term(mk_set(0)) == "Set");
    CHECK(print_term(mk_set(2)) == "Set@2");
    CHECK(print_term(mk_type(3)) == "Type@3");
    CHECK(print_term(mk_prod("X", mk_prop(), mk_var(0))) == "forall X : Prop, X");
    CHECK(print_term(mk_arrow(mk_prop(), mk_arrow(mk_prop(), mk_prop()))) == "Prop -> Prop -> Prop");
    CHECK(print_term(mk_arrow(mk_arrow(mk_prop(), mk_prop()), mk_prop())) == "(Prop -> Prop) -> Prop");
}

TEST_CASE("the relation of Prop prints with grouped binders") {
    GlobalEnv env;
    Term r = translate_term({}, mk_prop(), env);
    CHECK(print_term(r) == "fun (x : Prop) (x' : Prop) => x -> x' -> Prop");
}

TEST_CASE("printing avoids capture") {
    // fun x : Prop => fun x : x => x, where the inner body refers to the outer x
    Term t = mk_lam("x", mk_prop(), mk_lam("x", mk_var(0), mk_var(1)));
    std::string s = print_term(t);
    GlobalEnv env;
    CHECK(alpha_eq(parse_term(env, s), t));
}

TEST_CASE("Type needs a level") {
    CHECK(parse_error("Definition t := Type.") == ErrorCode::ParseError);
    CHECK(parse_error("Definition t := Type@2.") == std::nullopt);
    CHECK(parse_error("Definition t := Set.") == std::nullopt);
}

TEST_CASE("comments nest") {
    CHECK(parse_error("(* outer (* inner *) still comment *) Definition t := Prop.") == std::nullopt);
    CHECK(parse_error("(* unterminated (* inner *) Definition t := Prop.") == ErrorCode::ParseError);
}

TEST_CASE("malformed commands") {
    CHECK(parse_error("Definition t := .") == ErrorCode::ParseError);
    CHECK(parse_error("Definition t := Prop") == ErrorCode::ParseError);
    CHECK(parse_error("Inductive t : Set@0 := | .") == ErrorCode::ParseError);
    CHECK(parse_error("Frobnicate t.") == ErrorCode::ParseError);
}

TEST_CASE("parse errors carry a position") {
    try {
        parse_file("Definition a := Prop.\nDefinition b := ).", "f.cicr");
        FAIL("expected a parse error");
    } catch (const SourceError& e) {
        CHECK(e.span().file == "f.cicr");
        CHECK(e.span().line == 2);
    }
}

TEST_CASE("set without a level is level zero") {
    GlobalEnv env;
    CHECK(alpha_eq(parse_term(env, "Set"), mk_set(0)));
    CHECK(alpha_eq(parse_term(env, "Set@4"), mk_set(4)));
}

TEST_CASE("print then parse is alpha-stable on the corpus") {
    for (const auto& file : corpus_files()) {
        Session s = load_corpus(file);
        const GlobalEnv& env = s.env();
        for (const auto& rec : env.log()) {
            CAPTURE(file);
            CAPTURE(rec.name);
            if (const Definition* d = env.find_definition(rec.name)) {
                CHECK(alpha_eq(parse_term(env, print_term(d->body, Context{}, &env)), d->body));
                CHECK(alpha_eq(parse_term(env, print_term(d->type, Context{}, &env)), d->type));
            } else if (const InductiveDecl* ind = env.find_inductive(rec.name)) {
                CHECK(alpha_eq(parse_term(env, print_term(ind->arity, Context{}, &env)), ind->arity));
                for (const auto& c : ind->constructors)
                    CHECK(alpha_eq(parse_term(env, print_term(c.type, Context{}, &env)), c.type));
            }
        }
    }
}

TEST_CASE("declarations print as vernacular") {
    Session s = load_corpus("prelude.cicr");
    const GlobalEnv& env = s.env();
    CHECK(print_inductive(*env.find_inductive("nat"), &env) == "Inductive nat : Set :=\n  | O : nat\n  | S : nat -> nat.");
    std::string list = print_inductive(*env.find_inductive("list_0"), &env);
    CHECK(list.find("Inductive list_0 (A : Set) : Set :=") == 0);
    CHECK(print_definition(*env.find_definition("not"), &env) == "Definition not : Prop -> Prop :=\n  fun P : Prop => P -> False.");
}
