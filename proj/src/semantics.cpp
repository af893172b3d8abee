#include "pml/semantics.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pml {

namespace {

ParseDiagnostic diag_at(SourceLoc loc, std::string message) {
    ParseDiagnostic d;
    if (loc.known()) {
        d.line = loc.line;
        d.column = loc.column;
    }
    d.message = std::move(message);
    return d;
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

/// Canonical element name: integer spellings collapse to their decimal value
/// so that "05" and "5" denote the same time point.
std::string canonical_name(const std::string& name) {
    if (!all_digits(name)) return name;
    size_t i = 0;
    while (i + 1 < name.size() && name[i] == '0') ++i;
    return name.substr(i);
}

void rebuild_carriers(Interpretation& interp) {
    interp.carriers.clear();
    for (const Sort& sort : interp.signature.sorts()) {
        std::vector<std::string>& carrier = interp.carriers[sort.name];
        if (sort.kind == SortKind::Power) {
            for (const std::string& coll : interp.collections)
                if (interp.collection_sort.at(coll) == sort.name) carrier.push_back(coll);
            continue;
        }
        for (const std::string& elem : interp.elements)
            if (interp.signature.is_subsort(interp.element_sort.at(elem), sort.name))
                carrier.push_back(elem);
        if (sort.kind == SortKind::Ordered)
            std::stable_sort(carrier.begin(), carrier.end(),
                             [&](const std::string& a, const std::string& b) {
                                 return interp.ordered_value.at(a) < interp.ordered_value.at(b);
                             });
    }
}

const std::string& value_of(const Assignment& env, const Term& term) {
    const std::string& name = term_name(term);
    if (!is_variable(term)) return name; // constants denote their own name
    auto it = env.find(name);
    if (it == env.end())
        throw std::logic_error("evaluate: unbound variable '" + name + "'");
    return it->second;
}

bool eval_atom(const Interpretation& interp, const Assignment& env, const Atom& atom) {
    std::vector<std::string> values;
    values.reserve(atom.args.size());
    for (const Term& t : atom.args) values.push_back(value_of(env, t));

    if (atom.relation == kEqualityRel) return values[0] == values[1];
    if (atom.relation == kOrderRel) {
        auto a = interp.ordered_value.find(values[0]);
        auto b = interp.ordered_value.find(values[1]);
        if (a == interp.ordered_value.end() || b == interp.ordered_value.end())
            throw std::logic_error("evaluate: '" + atom_to_string(atom) +
                                   "' compares non-numeric elements");
        return a->second <= b->second;
    }
    if (atom.relation == kMembershipRel) {
        auto coll = interp.collection_members.find(values[1]);
        if (coll == interp.collection_members.end())
            throw std::logic_error("evaluate: '" + values[1] + "' is not a collection");
        return coll->second.count(values[0]) > 0;
    }
    auto ext = interp.extensions.find(atom.relation);
    return ext != interp.extensions.end() && ext->second.count(values) > 0;
}

bool eval_rec(const Interpretation& interp, Assignment& env, const Formula& f) {
    if (const auto* atom = std::get_if<Atom>(&f.node)) return eval_atom(interp, env, *atom);
    if (const auto* neg = std::get_if<Not>(&f.node)) return !eval_rec(interp, env, *neg->body);
    if (const auto* bin = std::get_if<Binary>(&f.node)) {
        switch (bin->op) {
        case BinaryOp::And:
            return eval_rec(interp, env, *bin->lhs) && eval_rec(interp, env, *bin->rhs);
        case BinaryOp::Or:
            return eval_rec(interp, env, *bin->lhs) || eval_rec(interp, env, *bin->rhs);
        case BinaryOp::Implies:
            return !eval_rec(interp, env, *bin->lhs) || eval_rec(interp, env, *bin->rhs);
        case BinaryOp::Iff:
            return eval_rec(interp, env, *bin->lhs) == eval_rec(interp, env, *bin->rhs);
        }
        throw std::logic_error("evaluate: unknown connective");
    }
    const auto& q = std::get<Quantifier>(f.node);
    const std::vector<std::string>& domain = interp.carrier(q.sort);
    auto previous = env.find(q.var) != env.end() ? std::optional<std::string>(env.at(q.var))
                                                 : std::nullopt;
    bool result = q.kind == QuantifierKind::Forall;
    for (const std::string& elem : domain) {
        env[q.var] = elem;
        bool v = eval_rec(interp, env, *q.body);
        if (q.kind == QuantifierKind::Forall ? !v : v) {
            result = !result;
            break;
        }
    }
    if (previous)
        env[q.var] = *previous;
    else
        env.erase(q.var);
    return result;
}

} // namespace

const std::vector<std::string>& Interpretation::carrier(std::string_view sort) const {
    auto it = carriers.find(std::string(sort));
    if (it == carriers.end())
        throw std::logic_error("carrier: unknown sort '" + std::string(sort) + "'");
    return it->second;
}

Result<Interpretation, ParseDiagnostic> build_interpretation(const Signature& sig,
                                                             const FactDocument& facts) {
    Interpretation interp;
    interp.signature = sig;
    std::vector<ParseDiagnostic> diags;

    for (const ElementEntry& entry : facts.elements) {
        const Sort* sort = sig.find_sort(entry.sort);
        if (!sort) {
            diags.push_back(diag_at(entry.loc, "unknown sort '" + entry.sort + "'"));
            continue;
        }
        if (sort->kind == SortKind::Power) {
            diags.push_back(diag_at(entry.loc, "elements of " + display_name(*sort) +
                                                   " are declared with 'coll'"));
            continue;
        }
        bool numeric = all_digits(entry.name);
        if (numeric && sort->kind != SortKind::Ordered) {
            diags.push_back(diag_at(entry.loc, "integer element '" + entry.name +
                                                   "' requires an ordered sort, '" +
                                                   entry.sort + "' is not ordered"));
            continue;
        }
        if (!numeric && sort->kind == SortKind::Ordered) {
            diags.push_back(diag_at(entry.loc, "elements of ordered sort '" + entry.sort +
                                                   "' must be integers, found '" + entry.name +
                                                   "'"));
            continue;
        }
        if (numeric && entry.name.size() > 18) {
            diags.push_back(diag_at(entry.loc, "integer element '" + entry.name +
                                                   "' is out of range"));
            continue;
        }
        std::string name = canonical_name(entry.name);
        auto existing = interp.element_sort.find(name);
        if (existing != interp.element_sort.end()) {
            if (existing->second == entry.sort)
                diags.push_back(diag_at(entry.loc, "duplicate element '" + name + "'"));
            else
                diags.push_back(diag_at(entry.loc, "element '" + name +
                                                       "' declared in both '" +
                                                       existing->second + "' and '" +
                                                       entry.sort +
                                                       "'; carriers must be disjoint"));
            continue;
        }
        interp.elements.push_back(name);
        interp.element_sort[name] = entry.sort;
        if (numeric) interp.ordered_value[name] = std::stoll(name);
    }

    for (const CollectionEntry& entry : facts.collections) {
        const Sort* sort = sig.find_sort(entry.sort);
        if (!sort) {
            diags.push_back(diag_at(entry.loc, "unknown sort '" + entry.sort + "'"));
            continue;
        }
        if (sort->kind != SortKind::Power) {
            diags.push_back(diag_at(entry.loc, "'" + entry.sort + "' is not a power sort"));
            continue;
        }
        if (interp.element_sort.count(entry.name) || interp.collection_sort.count(entry.name)) {
            diags.push_back(diag_at(entry.loc, "duplicate name '" + entry.name + "'"));
            continue;
        }
        std::set<std::string> members;
        bool bad = false;
        for (const std::string& member : entry.members) {
            auto it = interp.element_sort.find(canonical_name(member));
            if (it == interp.element_sort.end()) {
                diags.push_back(diag_at(entry.loc, "collection member '" + member +
                                                       "' is not a declared element"));
                bad = true;
                continue;
            }
            if (!sig.is_subsort(it->second, sort->base)) {
                diags.push_back(diag_at(entry.loc, "collection member '" + member +
                                                       "' has sort '" + it->second +
                                                       "', expected a subsort of '" +
                                                       sort->base + "'"));
                bad = true;
                continue;
            }
            members.insert(it->first);
        }
        if (bad) continue;
        interp.collections.push_back(entry.name);
        interp.collection_sort[entry.name] = entry.sort;
        interp.collection_members[entry.name] = std::move(members);
    }

    for (const FactEntry& entry : facts.facts) {
        const RelationDecl* rel = sig.find_relation(entry.relation);
        if (!rel) {
            diags.push_back(diag_at(entry.loc, "unknown relation '" + entry.relation + "'"));
            continue;
        }
        if (rel->arg_sorts.size() != entry.args.size()) {
            diags.push_back(diag_at(entry.loc, entry.relation + " expects " +
                                                   std::to_string(rel->arg_sorts.size()) +
                                                   " arguments, got " +
                                                   std::to_string(entry.args.size())));
            continue;
        }
        std::vector<std::string> tuple;
        bool bad = false;
        for (size_t i = 0; i < entry.args.size(); ++i) {
            std::string arg = canonical_name(entry.args[i]);
            const std::string& slot = rel->arg_sorts[i];
            std::string arg_sort;
            if (auto it = interp.element_sort.find(arg); it != interp.element_sort.end())
                arg_sort = it->second;
            else if (auto ct = interp.collection_sort.find(arg); ct != interp.collection_sort.end())
                arg_sort = ct->second;
            else {
                diags.push_back(diag_at(entry.loc, "in fact " + entry.relation + ": '" +
                                                       entry.args[i] + "' is not declared"));
                bad = true;
                continue;
            }
            if (!sig.is_subsort(arg_sort, slot)) {
                const Sort* found = sig.find_sort(arg_sort);
                const Sort* expected = sig.find_sort(slot);
                diags.push_back(diag_at(entry.loc,
                                        "in fact " + entry.relation + ": argument " +
                                            std::to_string(i + 1) + " expected " +
                                            (expected ? display_name(*expected) : slot) +
                                            ", found " +
                                            (found ? display_name(*found) : arg_sort)));
                bad = true;
                continue;
            }
            tuple.push_back(std::move(arg));
        }
        if (bad) continue;
        interp.extensions[entry.relation].insert(std::move(tuple));
    }

    for (const ConstantDecl& constant : sig.constants()) {
        auto it = interp.element_sort.find(constant.name);
        if (it == interp.element_sort.end()) {
            auto ct = interp.collection_sort.find(constant.name);
            if (ct != interp.collection_sort.end()) { // power-sort constants name collections
                if (ct->second != constant.sort)
                    diags.push_back(diag_at({}, "constant '" + constant.name +
                                                    "' has sort '" + ct->second +
                                                    "', expected '" + constant.sort + "'"));
                continue;
            }
            diags.push_back(diag_at({}, "constant '" + constant.name +
                                            "' is not declared as an element"));
            continue;
        }
        if (!sig.is_subsort(it->second, constant.sort))
            diags.push_back(diag_at({}, "constant '" + constant.name + "' has sort '" +
                                            it->second + "', expected a subsort of '" +
                                            constant.sort + "'"));
    }

    rebuild_carriers(interp);
    for (const Sort& sort : sig.sorts())
        if (sort.kind != SortKind::Power && interp.carriers[sort.name].empty())
            diags.push_back(diag_at({}, "sort '" + sort.name + "' has an empty carrier"));

    if (!diags.empty()) return Result<Interpretation, ParseDiagnostic>(std::move(diags));
    return Result<Interpretation, ParseDiagnostic>(std::move(interp));
}

bool evaluate(const Interpretation& interp, const Assignment& env, const FormulaPtr& f) {
    Assignment scratch = env;
    return eval_rec(interp, scratch, *f);
}

Verdict check_theory(const Interpretation& interp, const Theory& theory) {
    if (!interp.signature.equivalent(theory.signature))
        throw std::invalid_argument(
            "check_theory: interpretation was built for a different signature");

    Verdict verdict;
    for (const NamedAxiom& axiom : theory.axioms) {
        AxiomVerdict av;
        av.axiom = axiom.name;

        // Peel the outermost universal block; its first falsifying assignment
        // (carriers scanned in canonical order, last variable fastest) is the
        // reported witness.
        std::vector<std::pair<std::string, std::string>> prefix; // var, sort
        FormulaPtr body = axiom.formula;
        while (true) {
            const auto* q = std::get_if<Quantifier>(&body->node);
            if (!q || q->kind != QuantifierKind::Forall) break;
            prefix.emplace_back(q->var, q->sort);
            body = q->body;
        }

        if (prefix.empty()) {
            av.value = evaluate(interp, {}, axiom.formula);
            verdict.axioms.push_back(std::move(av));
            continue;
        }

        std::vector<const std::vector<std::string>*> domains;
        bool vacuous = false;
        for (const auto& [var, sort] : prefix) {
            domains.push_back(&interp.carrier(sort));
            if (domains.back()->empty()) vacuous = true;
        }
        av.value = true;
        if (!vacuous) {
            std::vector<size_t> index(prefix.size(), 0);
            while (true) {
                Assignment env;
                for (size_t i = 0; i < prefix.size(); ++i)
                    env[prefix[i].first] = (*domains[i])[index[i]];
                if (!evaluate(interp, env, body)) {
                    av.value = false;
                    for (const auto& [var, sort] : prefix)
                        av.witness.push_back({var, env.at(var)});
                    break;
                }
                size_t pos = prefix.size();
                while (pos > 0) {
                    --pos;
                    if (++index[pos] < domains[pos]->size()) break;
                    index[pos] = 0;
                    if (pos == 0) { pos = SIZE_MAX; break; }
                }
                if (pos == SIZE_MAX) break;
            }
        }
        verdict.axioms.push_back(std::move(av));
    }
    return verdict;
}

Result<Interpretation, ParseDiagnostic> enumerate_collections(const Interpretation& interp,
                                                              std::string_view base_sort,
                                                              int cap) {
    const Sort* base = interp.signature.find_sort(base_sort);
    if (!base)
        return Result<Interpretation, ParseDiagnostic>(
            diag_at({}, "unknown sort '" + std::string(base_sort) + "'"));
    if (base->kind == SortKind::Power)
        return Result<Interpretation, ParseDiagnostic>(
            diag_at({}, "'" + std::string(base_sort) + "' is a power sort, not a base sort"));

    std::vector<std::string> power_sorts;
    for (const Sort& sort : interp.signature.sorts())
        if (sort.kind == SortKind::Power && sort.base == base_sort)
            power_sorts.push_back(sort.name);
    if (power_sorts.empty())
        return Result<Interpretation, ParseDiagnostic>(Interpretation(interp));

    const std::vector<std::string>& carrier = interp.carrier(base->name);
    if (cap > 25) cap = 25; // 2^n - 1 subsets; anything larger is out of reach anyway
    if (carrier.size() > static_cast<size_t>(cap))
        return Result<Interpretation, ParseDiagnostic>(
            diag_at({}, "cannot enumerate subsets of '" + base->name + "': carrier has " +
                            std::to_string(carrier.size()) + " elements, cap is " +
                            std::to_string(cap)));

    // Every nonempty subset, in ascending bitmask order (bit i = i-th carrier
    // element); names spell out the member set.
    std::vector<std::pair<std::string, std::set<std::string>>> subsets;
    for (unsigned long mask = 1; mask < (1ul << carrier.size()); ++mask) {
        std::string name = "{";
        std::set<std::string> members;
        for (size_t i = 0; i < carrier.size(); ++i) {
            if (!(mask & (1ul << i))) continue;
            if (name.size() > 1) name += ",";
            name += carrier[i];
            members.insert(carrier[i]);
        }
        name += "}";
        subsets.emplace_back(std::move(name), std::move(members));
    }

    Interpretation out = interp;
    auto replaced = [&](const std::string& sort) {
        return std::find(power_sorts.begin(), power_sorts.end(), sort) != power_sorts.end();
    };

    // Declared collections of the replaced sorts dissolve into the subset with
    // the same member set; remember where each name went so facts follow.
    std::map<std::string, std::string> renamed;
    for (const std::string& coll : interp.collections) {
        if (!replaced(interp.collection_sort.at(coll))) continue;
        const std::set<std::string>& members = interp.collection_members.at(coll);
        for (const auto& [name, subset] : subsets)
            if (subset == members) {
                renamed[coll] = name;
                break;
            }
        // empty declared collections vanish; facts naming them become stale
        if (!renamed.count(coll)) renamed[coll] = "";
    }

    out.collections.clear();
    out.collection_sort.clear();
    out.collection_members.clear();
    for (const std::string& coll : interp.collections) {
        if (replaced(interp.collection_sort.at(coll))) continue;
        out.collections.push_back(coll);
        out.collection_sort[coll] = interp.collection_sort.at(coll);
        out.collection_members[coll] = interp.collection_members.at(coll);
    }
    for (const std::string& sort : power_sorts)
        for (const auto& [name, members] : subsets) {
            std::string unique = name;
            if (power_sorts.size() > 1) unique += ":" + sort;
            out.collections.push_back(unique);
            out.collection_sort[unique] = sort;
            out.collection_members[unique] = members;
        }

    for (auto& [rel, tuples] : out.extensions) {
        std::set<std::vector<std::string>> rewritten;
        for (std::vector<std::string> tuple : tuples) {
            bool stale = false;
            for (std::string& arg : tuple) {
                auto it = renamed.find(arg);
                if (it == renamed.end()) continue;
                if (it->second.empty()) {
                    stale = true;
                    break;
                }
                const RelationDecl* decl = out.signature.find_relation(rel);
                std::string target = it->second;
                if (power_sorts.size() > 1 && decl) {
                    size_t i = &arg - tuple.data();
                    if (i < decl->arg_sorts.size() && replaced(decl->arg_sorts[i]))
                        target += ":" + decl->arg_sorts[i];
                }
                arg = std::move(target);
            }
            if (!stale) rewritten.insert(std::move(tuple));
        }
        tuples = std::move(rewritten);
    }

    rebuild_carriers(out);
    return Result<Interpretation, ParseDiagnostic>(std::move(out));
}

std::string render_verdict_lines(const Verdict& verdict) {
    std::ostringstream out;
    for (const AxiomVerdict& av : verdict.axioms) {
        out << "AXIOM " << av.axiom << ": " << (av.value ? "true" : "false");
        if (!av.witness.empty()) {
            out << " [witness: ";
            for (size_t i = 0; i < av.witness.size(); ++i) {
                if (i > 0) out << ", ";
                out << av.witness[i].var << "=" << av.witness[i].element;
            }
            out << "]";
        }
        out << "\n";
    }
    return out.str();
}

std::string render_verdict_json(const Verdict& verdict) {
    nlohmann::ordered_json report = nlohmann::ordered_json::array();
    for (const AxiomVerdict& av : verdict.axioms) {
        nlohmann::ordered_json entry;
        entry["axiom"] = av.axiom;
        entry["value"] = av.value;
        if (av.witness.empty()) {
            entry["witness"] = nullptr;
        } else {
            nlohmann::ordered_json w = nlohmann::ordered_json::object();
            for (const WitnessBinding& b : av.witness) w[b.var] = b.element;
            entry["witness"] = w;
        }
        report.push_back(std::move(entry));
    }
    return report.dump(2) + "\n";
}

} // namespace pml
