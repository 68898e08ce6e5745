#include "cicr/embed.hpp"

#include <optional>

#include "cicr/error.hpp"
#include "cicr/print.hpp"
#include "cicr/typecheck.hpp"

namespace cicr {

Term embed(const Term& t) {
    switch (t.kind()) {
    case Kind::Sort: return t.sort().is_set() ? mk_type(t.sort().level) : t;
    case Kind::Prod: return mk_prod(t.name(), embed(t.domain()), embed(t.body()));
    case Kind::Lam: return mk_lam(t.name(), embed(t.domain()), embed(t.body()));
    case Kind::Fix: return mk_fix(t.name(), embed(t.domain()), embed(t.body()), t.struct_arg());
    case Kind::App: return mk_app(embed(t.fn()), embed(t.arg()));
    case Kind::Case: {
        std::vector<Term> ps, bs;
        for (const auto& p : t.params()) ps.push_back(embed(p));
        for (const auto& b : t.branches()) bs.push_back(embed(b));
        return mk_case(t.name(), embed(t.scrutinee()), std::move(ps), embed(t.motive()), std::move(bs));
    }
    default: return t;
    }
}

Context embed_context(const Context& ctx) {
    Context out;
    for (std::size_t i = 0; i < ctx.size(); ++i) out.push_in_place(ctx.at_level(i).name, embed(ctx.at_level(i).type));
    return out;
}

namespace {

GlobalEnv cic_env(const GlobalEnv& env, bool prop_cumulative) {
    KernelConfig cfg = env.config();
    cfg.mode = Mode::CIC;
    cfg.prop_cumulative = prop_cumulative;
    return GlobalEnv(cfg);
}

void replay(GlobalEnv& cic, const GlobalEnv& env, const DeclRecord& rec) {
    try {
        switch (rec.kind) {
        case DeclKind::Inductive: {
            const InductiveDecl& ind = *env.find_inductive(rec.name);
            InductiveCandidate cand{ind.name, ind.param_count, embed(ind.arity), {}};
            for (const auto& c : ind.constructors) cand.constructors.emplace_back(c.name, embed(c.type));
            declare_inductive_in_place(cic, cand);
            return;
        }
        case DeclKind::Definition: {
            const Definition& d = *env.find_definition(rec.name);
            register_definition_in_place(cic, d.name, embed(d.type), embed(d.body));
            return;
        }
        case DeclKind::Axiom: {
            const Axiom& a = *env.find_axiom(rec.name);
            register_axiom_in_place(cic, a.name, embed(a.type));
            return;
        }
        case DeclKind::Witness: cic.add_witness(rec.name, *env.witness_of(rec.name)); return;
        }
    } catch (const KernelError& e) {
        fail(ErrorCode::EmbeddingFailed,
             "embedding of " + rec.name + " does not check in CIC: " + std::string(error_code_name(e.code())) + ": " +
                 e.what());
    }
}

}  // namespace

GlobalEnv embed_env(const GlobalEnv& env, bool prop_cumulative) {
    GlobalEnv cic = cic_env(env, prop_cumulative);
    for (const auto& rec : env.log()) replay(cic, env, rec);
    return cic;
}

bool check_embedding(const std::string& name, const GlobalEnv& env, bool prop_cumulative) {
    if (!env.has_name(name)) fail(ErrorCode::UnknownGlobal, "unknown global " + name);
    std::string owner = name;
    if (auto c = env.find_constructor(name)) owner = c->inductive->name;
    GlobalEnv cic = cic_env(env, prop_cumulative);
    for (const auto& rec : env.log()) {
        replay(cic, env, rec);
        if (rec.kind != DeclKind::Witness && rec.name == owner) return true;
    }
    return true;
}

bool check_embedded_judgment(const Context& ctx, const Term& t, const GlobalEnv& env, bool prop_cumulative) {
    Term type = infer(ctx, t, env);
    GlobalEnv cic = embed_env(env, prop_cumulative);
    Context ectx = embed_context(ctx);
    try {
        check_context(ectx, cic);
        if (check(ectx, embed(t), embed(type), cic)) return true;
    } catch (const KernelError& e) {
        fail(ErrorCode::EmbeddingFailed, std::string("embedded judgment rejected: ") + e.what());
    }
    fail(ErrorCode::EmbeddingFailed, "embedded judgment rejected: " + print_term(embed(t), ectx, &cic) + " : " +
                                         print_term(embed(type), ectx, &cic));
}

}  // namespace cicr
