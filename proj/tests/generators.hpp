#pragma once

// Random well-formed documents for round-trip and evaluation tests. Unlike
// oracle.hpp, which deliberately produces ill-sorted formulas, everything
// here is correct by construction.

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "pml/parser.hpp"

namespace gen {

struct ScopedVar {
    std::string name;
    std::string sort;
};

inline std::optional<pml::Term> pick_term(std::mt19937_64& rng, const pml::Signature& sig,
                                          const std::vector<ScopedVar>& ctx,
                                          const std::string& target) {
    std::vector<pml::Term> candidates;
    for (const ScopedVar& v : ctx)
        if (sig.is_subsort(v.sort, target)) candidates.push_back(pml::Variable{v.name});
    for (const pml::ConstantDecl& c : sig.constants())
        if (sig.is_subsort(c.sort, target)) candidates.push_back(pml::Constant{c.name});
    if (candidates.empty()) return std::nullopt;
    return candidates[rng() % candidates.size()];
}

inline pml::FormulaPtr try_atom(std::mt19937_64& rng, const pml::Signature& sig,
                                const std::vector<ScopedVar>& ctx) {
    std::vector<pml::FormulaPtr> options;
    for (const pml::RelationDecl& rel : sig.relations()) {
        std::vector<pml::Term> args;
        bool ok = true;
        for (const std::string& slot : rel.arg_sorts) {
            auto t = pick_term(rng, sig, ctx, slot);
            if (!t) {
                ok = false;
                break;
            }
            args.push_back(*t);
        }
        if (ok) options.push_back(pml::make_atom(rel.name, std::move(args)));
    }
    for (const pml::Sort& s : sig.sorts()) {
        if (s.kind == pml::SortKind::Power) {
            auto coll = pick_term(rng, sig, ctx, s.name);
            auto elem = pick_term(rng, sig, ctx, s.base);
            if (coll && elem) options.push_back(pml::make_atom("in", {*elem, *coll}));
            continue;
        }
        auto t1 = pick_term(rng, sig, ctx, s.name);
        auto t2 = pick_term(rng, sig, ctx, s.name);
        if (t1 && t2) {
            options.push_back(pml::make_atom("=", {*t1, *t2}));
            if (s.kind == pml::SortKind::Ordered)
                options.push_back(pml::make_atom("<=", {*t1, *t2}));
        }
    }
    if (options.empty()) return nullptr;
    return options[rng() % options.size()];
}

inline pml::FormulaPtr sorted_formula_rec(std::mt19937_64& rng, const pml::Signature& sig,
                                          std::vector<ScopedVar>& ctx, int depth, int& fresh) {
    auto quantify = [&](int d) -> pml::FormulaPtr {
        const std::vector<pml::Sort>& sorts = sig.sorts();
        const pml::Sort& s = sorts[rng() % sorts.size()];
        std::string v = "v" + std::to_string(fresh++);
        ctx.push_back({v, s.name});
        pml::FormulaPtr body = sorted_formula_rec(rng, sig, ctx, d, fresh);
        ctx.pop_back();
        auto kind = rng() % 2 ? pml::QuantifierKind::Forall : pml::QuantifierKind::Exists;
        return pml::make_quantifier(kind, v, s.name, std::move(body));
    };

    if (depth <= 0) {
        if (auto atom = try_atom(rng, sig, ctx)) return atom;
        // nothing in scope yet: every generated signature has a scalar sort,
        // so a reflexive equality under one binder always exists
        for (const pml::Sort& s : sig.sorts()) {
            if (s.kind == pml::SortKind::Power) continue;
            std::string v = "v" + std::to_string(fresh++);
            return pml::make_forall(
                v, s.name, pml::make_atom("=", {pml::Variable{v}, pml::Variable{v}}));
        }
        return nullptr;
    }
    switch (rng() % 8) {
    case 0:
    case 1:
    case 2:
        return quantify(depth - 1);
    case 3:
        return pml::make_not(sorted_formula_rec(rng, sig, ctx, depth - 1, fresh));
    case 4:
    case 5:
    case 6: {
        auto op = static_cast<pml::BinaryOp>(rng() % 4);
        auto lhs = sorted_formula_rec(rng, sig, ctx, depth - 1, fresh);
        auto rhs = sorted_formula_rec(rng, sig, ctx, depth - 1, fresh);
        return pml::make_binary(op, std::move(lhs), std::move(rhs));
    }
    default:
        if (auto atom = try_atom(rng, sig, ctx)) return atom;
        return quantify(depth - 1);
    }
}

inline pml::FormulaPtr random_sorted_formula(std::mt19937_64& rng, const pml::Signature& sig,
                                             int depth) {
    std::vector<ScopedVar> ctx;
    int fresh = 0;
    return sorted_formula_rec(rng, sig, ctx, depth, fresh);
}

inline pml::SpecDocument random_spec_document(std::mt19937_64& rng) {
    pml::SpecDocument doc;
    doc.declarations = oracle::random_declarations(rng);
    doc.signature = pml::build_signature(doc.declarations).value();
    doc.name = "th" + std::to_string(rng() % 1000);
    int n_ax = int(rng() % 4);
    for (int i = 0; i < n_ax; ++i)
        doc.axioms.push_back({"AX" + std::to_string(i),
                              random_sorted_formula(rng, doc.signature, 1 + int(rng() % 3))});
    return doc;
}

/// Fact document for `spec` with nonempty carriers for every scalar sort,
/// all declared constants present, and sort-correct facts.
inline pml::FactDocument random_fact_document(std::mt19937_64& rng,
                                              const pml::SpecDocument& spec) {
    const pml::Signature& sig = spec.signature;
    pml::FactDocument doc;
    doc.name = "m" + std::to_string(rng() % 1000);
    doc.spec_name = spec.name;

    int counter = 0;
    int next_int = 0;
    std::map<std::string, std::string> sort_of;
    for (const pml::Sort& s : sig.sorts()) {
        if (s.kind == pml::SortKind::Power) continue;
        int k = 1 + int(rng() % 3);
        for (int i = 0; i < k; ++i) {
            std::string name = s.kind == pml::SortKind::Ordered
                                   ? std::to_string(next_int += 1 + int(rng() % 3))
                                   : "e" + std::to_string(counter++);
            doc.elements.push_back({name, s.name, {}});
            sort_of[name] = s.name;
        }
    }
    for (const pml::ConstantDecl& c : sig.constants()) {
        doc.elements.push_back({c.name, c.sort, {}});
        sort_of[c.name] = c.sort;
    }

    int coll_counter = 0;
    std::map<std::string, std::vector<std::string>> colls_by_sort;
    for (const pml::Sort& s : sig.sorts()) {
        if (s.kind != pml::SortKind::Power) continue;
        std::vector<std::string> pool;
        for (const auto& [e, es] : sort_of)
            if (sig.is_subsort(es, s.base)) pool.push_back(e);
        if (pool.empty()) continue;
        int k = 1 + int(rng() % 2);
        for (int i = 0; i < k; ++i) {
            std::set<std::string> chosen;
            int m = 1 + int(rng() % pool.size());
            for (int j = 0; j < m; ++j) chosen.insert(pool[rng() % pool.size()]);
            std::string cname = "w" + std::to_string(coll_counter++);
            doc.collections.push_back(
                {cname, s.name, std::vector<std::string>(chosen.begin(), chosen.end()), {}});
            colls_by_sort[s.name].push_back(cname);
        }
    }

    std::set<std::vector<std::string>> seen;
    for (const pml::RelationDecl& rel : sig.relations()) {
        int k = int(rng() % 4);
        for (int i = 0; i < k; ++i) {
            std::vector<std::string> keyed{rel.name};
            bool ok = true;
            for (const std::string& slot : rel.arg_sorts) {
                const pml::Sort* s = sig.find_sort(slot);
                std::vector<std::string> pool;
                if (s->kind == pml::SortKind::Power) {
                    auto it = colls_by_sort.find(slot);
                    if (it != colls_by_sort.end()) pool = it->second;
                } else {
                    for (const auto& [e, es] : sort_of)
                        if (sig.is_subsort(es, slot)) pool.push_back(e);
                }
                if (pool.empty()) {
                    ok = false;
                    break;
                }
                keyed.push_back(pool[rng() % pool.size()]);
            }
            if (!ok || !seen.insert(keyed).second) continue;
            doc.facts.push_back(
                {rel.name, std::vector<std::string>(keyed.begin() + 1, keyed.end()), {}});
        }
    }
    return doc;
}

} // namespace gen
