#include "pml/modelfinder.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pml {

namespace {

ParseDiagnostic bound_error(std::string message) {
    ParseDiagnostic d;
    d.message = std::move(message);
    return d;
}

// ---------------------------------------------------------------------------
// decision variables: one boolean per candidate relation tuple

struct RelGrid {
    std::string name;
    std::vector<const std::vector<std::string>*> domains; // carrier per slot
    size_t offset = 0; // first variable index
    size_t count = 0;  // product of domain sizes
};

struct Grid {
    std::vector<RelGrid> rels;
    size_t total = 0;

    // tuple of a variable, last argument position varying fastest
    std::pair<const RelGrid*, std::vector<std::string>> decode(size_t var) const {
        for (const RelGrid& g : rels) {
            if (var < g.offset || var >= g.offset + g.count) continue;
            size_t idx = var - g.offset;
            std::vector<std::string> tuple(g.domains.size());
            for (size_t i = g.domains.size(); i-- > 0;) {
                const std::vector<std::string>& dom = *g.domains[i];
                tuple[i] = dom[idx % dom.size()];
                idx /= dom.size();
            }
            return {&g, std::move(tuple)};
        }
        throw std::logic_error("decode: variable out of range");
    }
};

Grid make_grid(const Interpretation& interp) {
    Grid grid;
    for (const RelationDecl& rel : interp.signature.relations()) {
        RelGrid g;
        g.name = rel.name;
        g.offset = grid.total;
        g.count = 1;
        for (const std::string& slot : rel.arg_sorts) {
            const std::vector<std::string>& carrier = interp.carrier(slot);
            g.domains.push_back(&carrier);
            g.count *= carrier.size();
        }
        grid.total += g.count;
        grid.rels.push_back(std::move(g));
    }
    return grid;
}

// ---------------------------------------------------------------------------
// ground circuits: axioms instantiated over the fixed universe; builtin atoms
// collapse to constants, relation atoms become variable leaves

struct Gnode {
    enum class Op { True, False, Var, Not, And, Or };
    Op op;
    size_t var = 0;
    std::vector<std::shared_ptr<const Gnode>> kids;
};
using GnodePtr = std::shared_ptr<const Gnode>;

const GnodePtr& g_true() {
    static GnodePtr n = std::make_shared<Gnode>(Gnode{Gnode::Op::True, 0, {}});
    return n;
}
const GnodePtr& g_false() {
    static GnodePtr n = std::make_shared<Gnode>(Gnode{Gnode::Op::False, 0, {}});
    return n;
}
GnodePtr g_var(size_t v) { return std::make_shared<Gnode>(Gnode{Gnode::Op::Var, v, {}}); }

GnodePtr g_not(GnodePtr kid) {
    if (kid->op == Gnode::Op::True) return g_false();
    if (kid->op == Gnode::Op::False) return g_true();
    if (kid->op == Gnode::Op::Not) return kid->kids[0];
    return std::make_shared<Gnode>(Gnode{Gnode::Op::Not, 0, {std::move(kid)}});
}

GnodePtr g_and(std::vector<GnodePtr> kids) {
    std::vector<GnodePtr> kept;
    for (GnodePtr& k : kids) {
        if (k->op == Gnode::Op::False) return g_false();
        if (k->op == Gnode::Op::True) continue;
        kept.push_back(std::move(k));
    }
    if (kept.empty()) return g_true();
    if (kept.size() == 1) return kept[0];
    return std::make_shared<Gnode>(Gnode{Gnode::Op::And, 0, std::move(kept)});
}

GnodePtr g_or(std::vector<GnodePtr> kids) {
    std::vector<GnodePtr> kept;
    for (GnodePtr& k : kids) {
        if (k->op == Gnode::Op::True) return g_true();
        if (k->op == Gnode::Op::False) continue;
        kept.push_back(std::move(k));
    }
    if (kept.empty()) return g_false();
    if (kept.size() == 1) return kept[0];
    return std::make_shared<Gnode>(Gnode{Gnode::Op::Or, 0, std::move(kept)});
}

class Grounder {
public:
    Grounder(const Interpretation& interp, const Grid& grid) : interp_(interp), grid_(grid) {
        for (size_t i = 0; i < grid.rels.size(); ++i) rel_index_[grid.rels[i].name] = i;
        for (const auto& [sort, carrier] : interp.carriers)
            for (size_t i = 0; i < carrier.size(); ++i) elem_index_[sort][carrier[i]] = i;
    }

    GnodePtr ground(const FormulaPtr& f, Assignment& env) {
        if (const auto* atom = std::get_if<Atom>(&f->node)) return ground_atom(*atom, env);
        if (const auto* neg = std::get_if<Not>(&f->node))
            return g_not(ground(neg->body, env));
        if (const auto* bin = std::get_if<Binary>(&f->node)) {
            GnodePtr lhs = ground(bin->lhs, env);
            GnodePtr rhs = ground(bin->rhs, env);
            switch (bin->op) {
            case BinaryOp::And: return g_and({lhs, rhs});
            case BinaryOp::Or: return g_or({lhs, rhs});
            case BinaryOp::Implies: return g_or({g_not(lhs), rhs});
            case BinaryOp::Iff:
                return g_or({g_and({lhs, rhs}), g_and({g_not(lhs), g_not(rhs)})});
            }
        }
        const auto& q = std::get<Quantifier>(f->node);
        std::vector<GnodePtr> kids;
        auto previous = env.find(q.var) != env.end() ? std::optional<std::string>(env.at(q.var))
                                                     : std::nullopt;
        for (const std::string& elem : interp_.carrier(q.sort)) {
            env[q.var] = elem;
            kids.push_back(ground(q.body, env));
        }
        if (previous)
            env[q.var] = *previous;
        else
            env.erase(q.var);
        return q.kind == QuantifierKind::Forall ? g_and(std::move(kids))
                                                : g_or(std::move(kids));
    }

private:
    GnodePtr ground_atom(const Atom& atom, const Assignment& env) {
        std::vector<std::string> values;
        for (const Term& t : atom.args) {
            const std::string& name = term_name(t);
            values.push_back(is_variable(t) ? env.at(name) : name);
        }
        if (is_builtin_relation(atom.relation))
            return evaluate(interp_, env, make_atom(atom.relation, atom.args)) ? g_true()
                                                                               : g_false();
        const RelGrid& g = grid_.rels[rel_index_.at(atom.relation)];
        size_t idx = 0;
        const RelationDecl* decl = interp_.signature.find_relation(atom.relation);
        for (size_t i = 0; i < values.size(); ++i) {
            idx *= g.domains[i]->size();
            idx += elem_index_.at(decl->arg_sorts[i]).at(values[i]);
        }
        return g_var(g.offset + idx);
    }

    const Interpretation& interp_;
    const Grid& grid_;
    std::map<std::string, size_t> rel_index_;
    std::map<std::string, std::map<std::string, size_t>> elem_index_;
};

// ---------------------------------------------------------------------------
// chronological backtracking with circuit propagation

class Search {
public:
    explicit Search(size_t n) : value_(n, -1) {}

    bool assigned(size_t v) const { return value_[v] != -1; }

    bool assign(size_t v, bool b) {
        if (value_[v] != -1) return value_[v] == (b ? 1 : 0);
        value_[v] = b ? 1 : 0;
        trail_.push_back(v);
        changed_ = true;
        return true;
    }

    size_t mark() const { return trail_.size(); }

    void undo_to(size_t m) {
        while (trail_.size() > m) {
            value_[trail_.back()] = -1;
            trail_.pop_back();
        }
    }

    int eval3(const Gnode* n) const {
        switch (n->op) {
        case Gnode::Op::True: return 1;
        case Gnode::Op::False: return 0;
        case Gnode::Op::Var: return value_[n->var];
        case Gnode::Op::Not: {
            int e = eval3(n->kids[0].get());
            return e == -1 ? -1 : 1 - e;
        }
        case Gnode::Op::And: {
            int result = 1;
            for (const GnodePtr& k : n->kids) {
                int e = eval3(k.get());
                if (e == 0) return 0;
                if (e == -1) result = -1;
            }
            return result;
        }
        case Gnode::Op::Or: {
            int result = 0;
            for (const GnodePtr& k : n->kids) {
                int e = eval3(k.get());
                if (e == 1) return 1;
                if (e == -1) result = -1;
            }
            return result;
        }
        }
        return -1;
    }

    // Forces every assignment implied by `n == target`; returns false on
    // contradiction. Under-approximates (defers) when nothing is implied yet.
    bool require(const Gnode* n, bool target) {
        int cur = eval3(n);
        if (cur != -1) return cur == (target ? 1 : 0);
        switch (n->op) {
        case Gnode::Op::Var: return assign(n->var, target);
        case Gnode::Op::Not: return require(n->kids[0].get(), !target);
        case Gnode::Op::And:
            if (target) {
                for (const GnodePtr& k : n->kids)
                    if (!require(k.get(), true)) return false;
                return true;
            } else {
                // all but one child already true: that child must be false
                const Gnode* open = nullptr;
                for (const GnodePtr& k : n->kids) {
                    int e = eval3(k.get());
                    if (e == 1) continue;
                    if (open) return true; // two open children: nothing forced
                    open = k.get();
                }
                return open ? require(open, false) : true;
            }
        case Gnode::Op::Or:
            if (!target) {
                for (const GnodePtr& k : n->kids)
                    if (!require(k.get(), false)) return false;
                return true;
            } else {
                const Gnode* open = nullptr;
                for (const GnodePtr& k : n->kids) {
                    int e = eval3(k.get());
                    if (e == 0) continue;
                    if (open) return true;
                    open = k.get();
                }
                return open ? require(open, true) : true;
            }
        default: return true;
        }
    }

    bool propagate(const std::vector<GnodePtr>& axioms) {
        do {
            changed_ = false;
            for (const GnodePtr& ax : axioms)
                if (!require(ax.get(), true)) return false;
        } while (changed_);
        return true;
    }

    const std::vector<int8_t>& values() const { return value_; }

private:
    std::vector<int8_t> value_;
    std::vector<size_t> trail_;
    bool changed_ = false;
};

std::string joined_messages(const std::vector<ParseDiagnostic>& diags) {
    std::string out;
    for (const ParseDiagnostic& d : diags) {
        if (!out.empty()) out += "; ";
        out += d.message;
    }
    return out;
}

} // namespace

Result<Interpretation, ParseDiagnostic> universe_from_bounds(const Signature& sig,
                                                             const Bounds& bounds) {
    std::vector<ParseDiagnostic> diags;

    for (const auto& [name, size] : bounds.sizes) {
        const Sort* s = sig.find_sort(name);
        if (!s)
            diags.push_back(bound_error("unknown sort '" + name + "' in bounds"));
        else if (s->kind == SortKind::Power)
            diags.push_back(bound_error("'" + name +
                                        "' is a power sort; bound its collection count"));
        if (size < 1)
            diags.push_back(bound_error("bound for '" + name + "' must be at least 1"));
    }
    for (const auto& [name, range] : bounds.ranges) {
        const Sort* s = sig.find_sort(name);
        if (!s || s->kind != SortKind::Ordered)
            diags.push_back(bound_error("'" + name + "' is not an ordered sort"));
        else if (range.first < 0 || range.second < range.first)
            diags.push_back(bound_error("range for '" + name +
                                        "' must be a nonnegative lo..hi span"));
    }
    for (const auto& [name, count] : bounds.collections) {
        const Sort* s = sig.find_sort(name);
        if (!s || s->kind != SortKind::Power)
            diags.push_back(bound_error("'" + name + "' is not a power sort"));
        if (count < 1)
            diags.push_back(bound_error("collection count for '" + name +
                                        "' must be at least 1"));
    }

    std::map<std::string, std::vector<std::string>> constants_at;
    for (const ConstantDecl& c : sig.constants()) {
        const Sort* s = sig.find_sort(c.sort);
        if (!s || s->kind != SortKind::Base) {
            diags.push_back(bound_error("constant '" + c.name + "' has " +
                                        std::string(s && s->kind == SortKind::Ordered
                                                        ? "an ordered"
                                                        : "a power") +
                                        " sort; bounded search cannot name it"));
            continue;
        }
        constants_at[c.sort].push_back(c.name);
    }
    if (!diags.empty()) return Result<Interpretation, ParseDiagnostic>(std::move(diags));

    std::set<std::string> has_children;
    for (const auto& [sub, super] : sig.declared_subsorts()) has_children.insert(super);

    // Numerals name ordered elements globally, so unbounded ordered sorts get
    // pairwise disjoint default ranges, placed above every explicit range.
    std::map<std::string, std::pair<long long, long long>> ordered_range;
    long long next_free = 0;
    for (const Sort& s : sig.sorts()) {
        if (s.kind != SortKind::Ordered) continue;
        if (auto it = bounds.ranges.find(s.name); it != bounds.ranges.end())
            ordered_range[s.name] = it->second;
        else if (auto st = bounds.sizes.find(s.name); st != bounds.sizes.end())
            ordered_range[s.name] = {0, st->second - 1};
        else
            continue;
        next_free = std::max(next_free, ordered_range[s.name].second + 1);
    }
    for (const Sort& s : sig.sorts()) {
        if (s.kind != SortKind::Ordered || ordered_range.count(s.name)) continue;
        if (has_children.count(s.name)) continue; // carrier comes from subsorts
        ordered_range[s.name] = {next_free, next_free};
        ++next_free;
    }

    FactDocument doc;
    doc.name = "bounded";
    for (const Sort& s : sig.sorts()) {
        if (s.kind == SortKind::Power) continue;
        if (s.kind == SortKind::Ordered) {
            auto it = ordered_range.find(s.name);
            if (it == ordered_range.end()) continue;
            for (long long v = it->second.first; v <= it->second.second; ++v)
                doc.elements.push_back({std::to_string(v), s.name, {}});
            continue;
        }
        const std::vector<std::string>& named = constants_at[s.name];
        int n = has_children.count(s.name) ? 0 : 1;
        if (auto it = bounds.sizes.find(s.name); it != bounds.sizes.end()) {
            n = it->second;
            if (static_cast<size_t>(n) < named.size()) {
                diags.push_back(bound_error("bound for '" + s.name + "' is smaller than its " +
                                            std::to_string(named.size()) + " constants"));
                continue;
            }
        } else {
            n = std::max(static_cast<size_t>(n), named.size());
        }
        for (int i = 0; i < n; ++i) {
            std::string name = static_cast<size_t>(i) < named.size()
                                   ? named[i]
                                   : s.name + "_" + std::to_string(i - named.size() + 1);
            doc.elements.push_back({name, s.name, {}});
        }
    }
    if (!diags.empty()) return Result<Interpretation, ParseDiagnostic>(std::move(diags));

    for (const Sort& s : sig.sorts()) {
        if (s.kind != SortKind::Power) continue;
        std::vector<std::string> base;
        for (const ElementEntry& e : doc.elements)
            if (sig.is_subsort(e.sort, s.base)) base.push_back(e.name);
        int count = 1;
        if (auto it = bounds.collections.find(s.name); it != bounds.collections.end())
            count = it->second;
        if (base.size() < 31 && count > (1 << base.size()) - 1) {
            diags.push_back(bound_error(
                "collection count " + std::to_string(count) + " for '" + s.name +
                "' exceeds the " + std::to_string((1 << base.size()) - 1) +
                " nonempty subsets of '" + s.base + "'"));
            continue;
        }
        for (int i = 1; i <= count; ++i) {
            std::vector<std::string> members;
            for (size_t bit = 0; bit < base.size() && bit < 31; ++bit)
                if (i & (1 << bit)) members.push_back(base[bit]);
            doc.collections.push_back(
                {s.name + "_" + std::to_string(i), s.name, std::move(members), {}});
        }
    }
    if (!diags.empty()) return Result<Interpretation, ParseDiagnostic>(std::move(diags));

    return build_interpretation(sig, doc);
}

SearchOutcome find_model(const Theory& theory, const Bounds& bounds,
                         unsigned long long node_limit) {
    auto universe = universe_from_bounds(theory.signature, bounds);
    if (!universe.ok())
        throw std::invalid_argument("find_model: " + joined_messages(universe.errors()));
    Interpretation interp = universe.take();
    Grid grid = make_grid(interp);

    Grounder grounder(interp, grid);
    std::vector<GnodePtr> axioms;
    for (const NamedAxiom& ax : theory.axioms) {
        Assignment env;
        axioms.push_back(grounder.ground(ax.formula, env));
    }

    Search search(grid.total);
    SearchOutcome out;
    if (!search.propagate(axioms)) {
        out.status = SearchStatus::Unsat;
        return out;
    }

    struct Decision {
        size_t var;
        size_t trail_mark;
        bool tried_true;
    };
    std::vector<Decision> stack;
    unsigned long long nodes = 0;

    while (true) {
        size_t var = grid.total;
        for (size_t v = 0; v < grid.total; ++v)
            if (!search.assigned(v)) {
                var = v;
                break;
            }
        if (var == grid.total) break; // everything decided and propagation holds

        if (nodes >= node_limit) {
            out.status = SearchStatus::ResourceLimit;
            out.nodes = nodes;
            return out;
        }
        ++nodes;
        stack.push_back({var, search.mark(), false});
        search.assign(var, false);
        if (search.propagate(axioms)) continue;

        bool resumed = false;
        while (!resumed) {
            if (stack.empty()) {
                out.status = SearchStatus::Unsat;
                out.nodes = nodes;
                return out;
            }
            Decision& d = stack.back();
            search.undo_to(d.trail_mark);
            if (d.tried_true) {
                stack.pop_back();
                continue;
            }
            d.tried_true = true;
            if (nodes >= node_limit) {
                out.status = SearchStatus::ResourceLimit;
                out.nodes = nodes;
                return out;
            }
            ++nodes;
            search.assign(d.var, true);
            if (search.propagate(axioms)) resumed = true;
        }
    }

    for (size_t v = 0; v < grid.total; ++v) {
        if (search.values()[v] != 1) continue;
        auto [rel, tuple] = grid.decode(v);
        interp.extensions[rel->name].insert(std::move(tuple));
    }
    if (!check_theory(interp, theory).all_true())
        throw std::logic_error("find_model: search returned a non-model");

    out.status = SearchStatus::Sat;
    out.model = std::move(interp);
    out.nodes = nodes;
    return out;
}

Result<unsigned long long, ParseDiagnostic> count_models(const Theory& theory,
                                                         const Bounds& bounds) {
    auto universe = universe_from_bounds(theory.signature, bounds);
    if (!universe.ok())
        return Result<unsigned long long, ParseDiagnostic>(universe.errors());
    Interpretation interp = universe.take();
    Grid grid = make_grid(interp);
    if (grid.total > 24)
        return Result<unsigned long long, ParseDiagnostic>(bound_error(
            "search space has 2^" + std::to_string(grid.total) +
            " candidate extensions, the counting limit is 2^24"));

    unsigned long long count = 0;
    for (unsigned long long mask = 0; mask < (1ull << grid.total); ++mask) {
        interp.extensions.clear();
        for (size_t v = 0; v < grid.total; ++v) {
            if (!(mask & (1ull << v))) continue;
            auto [rel, tuple] = grid.decode(v);
            interp.extensions[rel->name].insert(std::move(tuple));
        }
        bool all = true;
        for (const NamedAxiom& ax : theory.axioms)
            if (!evaluate(interp, {}, ax.formula)) {
                all = false;
                break;
            }
        if (all) ++count;
    }
    return Result<unsigned long long, ParseDiagnostic>(std::move(count));
}

FactDocument to_fact_document(const Interpretation& interp, const std::string& model_name,
                              const std::string& spec_name) {
    FactDocument doc;
    doc.name = model_name;
    doc.spec_name = spec_name;
    for (const std::string& elem : interp.elements)
        doc.elements.push_back({elem, interp.element_sort.at(elem), {}});
    for (const std::string& coll : interp.collections) {
        const std::string& sort = interp.collection_sort.at(coll);
        const Sort* decl = interp.signature.find_sort(sort);
        const std::set<std::string>& members = interp.collection_members.at(coll);
        std::vector<std::string> listed; // base-carrier order for readability
        for (const std::string& elem : interp.carrier(decl->base))
            if (members.count(elem)) listed.push_back(elem);
        doc.collections.push_back({coll, sort, std::move(listed), {}});
    }
    for (const RelationDecl& rel : interp.signature.relations()) {
        auto it = interp.extensions.find(rel.name);
        if (it == interp.extensions.end()) continue;
        for (const std::vector<std::string>& tuple : it->second)
            doc.facts.push_back({rel.name, tuple, {}});
    }
    return doc;
}

} // namespace pml
