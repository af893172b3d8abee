#include "pml/blending.hpp"

#include <algorithm>
#include <cstddef>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pml {
namespace {

const std::string& mapped(const std::map<std::string, std::string>& m, const std::string& key) {
    auto it = m.find(key);
    return it == m.end() ? key : it->second;
}

std::string kind_word(SortKind kind) {
    switch (kind) {
    case SortKind::Base: return "base";
    case SortKind::Ordered: return "ordered";
    case SortKind::Power: return "power";
    }
    return "?";
}

ParseDiagnostic blend_error(std::string message) {
    return ParseDiagnostic{1, 1, std::move(message), "error"};
}

// Union-find over side-tagged symbol names ("L Pur" / "R Sell"). Sides keep
// the two input namespaces apart until the generic identifications merge them.
class UnionFind {
public:
    void add(const std::string& x) { parent_.emplace(x, x); }
    std::string find(std::string x) {
        while (parent_.at(x) != x) {
            parent_[x] = parent_.at(parent_.at(x));
            x = parent_.at(x);
        }
        return x;
    }
    void unite(const std::string& a, const std::string& b) { parent_[find(a)] = find(b); }

private:
    std::map<std::string, std::string> parent_;
};

std::string tagged(char side, const std::string& name) {
    return std::string(1, side) + " " + name;
}

struct SymbolClass {
    std::vector<std::string> left;  // member names from the left theory
    std::vector<std::string> right; // member names from the right theory
    std::string name;               // blended name, filled in by assign_names
};

// Groups the left and right symbol lists by their union-find root. Classes
// come out in first-appearance order: left symbols first, then right.
std::vector<SymbolClass> collect_classes(UnionFind& uf, const std::vector<std::string>& left,
                                         const std::vector<std::string>& right) {
    std::vector<SymbolClass> classes;
    std::map<std::string, std::size_t> index_of_root;
    auto class_for = [&](const std::string& key) -> SymbolClass& {
        std::string root = uf.find(key);
        auto it = index_of_root.find(root);
        if (it == index_of_root.end()) {
            it = index_of_root.emplace(root, classes.size()).first;
            classes.emplace_back();
        }
        return classes[it->second];
    };
    for (const std::string& name : left) class_for(tagged('L', name)).left.push_back(name);
    for (const std::string& name : right) class_for(tagged('R', name)).right.push_back(name);
    return classes;
}

// Blended names: a class keeps its left name when it has one, otherwise its
// right name. When an unshared left symbol and an unshared right symbol spell
// the same name, they become name_L and name_R; a shared class always keeps
// its plain name.
void assign_names(std::vector<SymbolClass>& classes) {
    std::map<std::string, int> raw_count;
    for (SymbolClass& c : classes) {
        c.name = c.left.empty() ? c.right.front() : c.left.front();
        ++raw_count[c.name];
    }
    std::set<std::string> used;
    for (SymbolClass& c : classes) {
        std::string base = c.name;
        if (raw_count[base] > 1 && (c.left.empty() || c.right.empty()))
            base += c.left.empty() ? "_R" : "_L";
        std::string final_name = base;
        for (int k = 2; used.count(final_name); ++k) final_name = base + std::to_string(k);
        used.insert(final_name);
        c.name = final_name;
    }
}

} // namespace

Morphism identity_morphism(const Theory& theory) {
    Morphism m;
    m.source = theory;
    m.target = theory;
    for (const Sort& s : theory.signature.sorts()) m.sort_map[s.name] = s.name;
    for (const RelationDecl& r : theory.signature.relations()) m.relation_map[r.name] = r.name;
    for (const ConstantDecl& c : theory.signature.constants()) m.constant_map[c.name] = c.name;
    return m;
}

std::vector<ParseDiagnostic> check_morphism(const Morphism& m) {
    std::vector<ParseDiagnostic> diags;
    const Signature& src = m.source.signature;
    const Signature& dst = m.target.signature;
    auto report = [&](std::string message) { diags.push_back(blend_error(std::move(message))); };

    for (const auto& [name, image] : m.sort_map)
        if (!src.find_sort(name)) report("'" + name + "' is not a sort of the source theory");
    for (const auto& [name, image] : m.relation_map)
        if (!src.find_relation(name))
            report("'" + name + "' is not a relation of the source theory");
    for (const auto& [name, image] : m.constant_map)
        if (!src.find_constant(name))
            report("'" + name + "' is not a constant of the source theory");

    for (const Sort& s : src.sorts()) {
        auto it = m.sort_map.find(s.name);
        if (it == m.sort_map.end()) {
            report("morphism is partial: sort '" + s.name + "' has no image");
            continue;
        }
        const Sort* image = dst.find_sort(it->second);
        if (!image) {
            report("sort '" + s.name + "' maps to unknown sort '" + it->second + "'");
            continue;
        }
        // Kind compatibility is what keeps translation sound: order atoms need
        // an ordered image, equality and membership need scalar images, and
        // membership needs the power structure to carry over.
        if (s.kind == SortKind::Power) {
            if (image->kind != SortKind::Power) {
                report("power sort '" + s.name + "' maps to '" + image->name +
                       "', which is not a power sort");
                continue;
            }
            const std::string& mapped_base = mapped(m.sort_map, s.base);
            if (image->base != mapped_base)
                report("power sort '" + s.name + "' over '" + s.base + "' maps to '" +
                       image->name + "' over '" + image->base + "', but '" + s.base +
                       "' maps to '" + mapped_base + "'");
        } else if (image->kind == SortKind::Power) {
            report("sort '" + s.name + "' (" + kind_word(s.kind) + ") maps to power sort '" +
                   image->name + "'; scalar sorts must map to scalar sorts");
        } else if (s.kind == SortKind::Ordered && image->kind != SortKind::Ordered) {
            report("sort '" + s.name + "' is ordered but its image '" + image->name +
                   "' is not ordered");
        }
    }
    for (const auto& [sub, super] : src.declared_subsorts()) {
        const std::string& msub = mapped(m.sort_map, sub);
        const std::string& msuper = mapped(m.sort_map, super);
        if (dst.find_sort(msub) && dst.find_sort(msuper) && !dst.is_subsort(msub, msuper))
            report("subsorting is not preserved: '" + sub + "' < '" + super + "' in the source, "
                   "but '" + msub + "' is not a subsort of '" + msuper + "'");
    }

    for (const RelationDecl& r : src.relations()) {
        auto it = m.relation_map.find(r.name);
        if (it == m.relation_map.end()) {
            report("morphism is partial: relation '" + r.name + "' has no image");
            continue;
        }
        const RelationDecl* image = dst.find_relation(it->second);
        if (!image) {
            report("relation '" + r.name + "' maps to unknown relation '" + it->second + "'");
            continue;
        }
        if (image->arg_sorts.size() != r.arg_sorts.size()) {
            report("relation '" + r.name + "' has arity " + std::to_string(r.arg_sorts.size()) +
                   " but its image '" + image->name + "' has arity " +
                   std::to_string(image->arg_sorts.size()));
            continue;
        }
        for (std::size_t i = 0; i < r.arg_sorts.size(); ++i) {
            const std::string& expected = mapped(m.sort_map, r.arg_sorts[i]);
            if (image->arg_sorts[i] != expected)
                report("relation '" + r.name + "': argument " + std::to_string(i + 1) +
                       " maps to sort '" + expected + "' but image '" + image->name +
                       "' expects '" + image->arg_sorts[i] + "'");
        }
    }

    for (const ConstantDecl& c : src.constants()) {
        auto it = m.constant_map.find(c.name);
        if (it == m.constant_map.end()) {
            report("morphism is partial: constant '" + c.name + "' has no image");
            continue;
        }
        const ConstantDecl* image = dst.find_constant(it->second);
        if (!image) {
            report("constant '" + c.name + "' maps to unknown constant '" + it->second + "'");
            continue;
        }
        const std::string& expected = mapped(m.sort_map, c.sort);
        if (image->sort != expected)
            report("constant '" + c.name + "' of sort '" + c.sort + "' maps to '" + image->name +
                   "' of sort '" + image->sort + "', expected '" + expected + "'");
    }
    return diags;
}

FormulaPtr translate(const Morphism& m, const FormulaPtr& f) {
    auto translate_term = [&](const Term& t) -> Term {
        if (is_variable(t)) return t;
        return Constant{mapped(m.constant_map, term_name(t))};
    };
    if (const auto* atom = std::get_if<Atom>(&f->node)) {
        std::vector<Term> args;
        args.reserve(atom->args.size());
        for (const Term& t : atom->args) args.push_back(translate_term(t));
        std::string rel = is_builtin_relation(atom->relation)
                              ? atom->relation
                              : mapped(m.relation_map, atom->relation);
        return make_atom(std::move(rel), std::move(args), f->loc);
    }
    if (const auto* neg = std::get_if<Not>(&f->node))
        return make_not(translate(m, neg->body), f->loc);
    if (const auto* bin = std::get_if<Binary>(&f->node))
        return make_binary(bin->op, translate(m, bin->lhs), translate(m, bin->rhs), f->loc);
    const auto& q = std::get<Quantifier>(f->node);
    return make_quantifier(q.kind, q.var, mapped(m.sort_map, q.sort), translate(m, q.body),
                           f->loc);
}

Result<BlendResult, ParseDiagnostic> pushout(const Theory& generic, const Morphism& into_left,
                                             const Morphism& into_right) {
    std::vector<ParseDiagnostic> diags;
    if (!into_left.source.signature.equivalent(generic.signature) ||
        !into_right.source.signature.equivalent(generic.signature))
        return blend_error("both morphisms must have the generic theory as their source");
    // Only what the quotient construction itself needs: every generic symbol
    // must have an image that exists on its side. Deeper morphism validity is
    // the caller's business (check_morphism); kind clashes between the two
    // legs are detected below, on the merged classes.
    auto require_images = [&](const Morphism& m, const char* leg) {
        for (const Sort& s : generic.signature.sorts()) {
            auto it = m.sort_map.find(s.name);
            if (it == m.sort_map.end())
                diags.push_back(blend_error(std::string("morphism into the ") + leg +
                                            " theory does not map sort '" + s.name + "'"));
            else if (!m.target.signature.find_sort(it->second))
                diags.push_back(blend_error(std::string("morphism into the ") + leg +
                                            " theory maps sort '" + s.name +
                                            "' to unknown sort '" + it->second + "'"));
        }
        for (const RelationDecl& r : generic.signature.relations()) {
            auto it = m.relation_map.find(r.name);
            if (it == m.relation_map.end())
                diags.push_back(blend_error(std::string("morphism into the ") + leg +
                                            " theory does not map relation '" + r.name + "'"));
            else if (!m.target.signature.find_relation(it->second))
                diags.push_back(blend_error(std::string("morphism into the ") + leg +
                                            " theory maps relation '" + r.name +
                                            "' to unknown relation '" + it->second + "'"));
        }
        for (const ConstantDecl& c : generic.signature.constants()) {
            auto it = m.constant_map.find(c.name);
            if (it == m.constant_map.end())
                diags.push_back(blend_error(std::string("morphism into the ") + leg +
                                            " theory does not map constant '" + c.name + "'"));
            else if (!m.target.signature.find_constant(it->second))
                diags.push_back(blend_error(std::string("morphism into the ") + leg +
                                            " theory maps constant '" + c.name +
                                            "' to unknown constant '" + it->second + "'"));
        }
    };
    require_images(into_left, "left");
    require_images(into_right, "right");
    if (!diags.empty()) return diags;

    const Theory& left = into_left.target;
    const Theory& right = into_right.target;
    const Signature& lsig = left.signature;
    const Signature& rsig = right.signature;

    // Identify f(x) with g(x) for every generic symbol x.
    UnionFind sorts_uf, rels_uf, consts_uf;
    std::vector<std::string> lsorts, rsorts, lrels, rrels, lconsts, rconsts;
    for (const Sort& s : lsig.sorts()) {
        lsorts.push_back(s.name);
        sorts_uf.add(tagged('L', s.name));
    }
    for (const Sort& s : rsig.sorts()) {
        rsorts.push_back(s.name);
        sorts_uf.add(tagged('R', s.name));
    }
    for (const RelationDecl& r : lsig.relations()) {
        lrels.push_back(r.name);
        rels_uf.add(tagged('L', r.name));
    }
    for (const RelationDecl& r : rsig.relations()) {
        rrels.push_back(r.name);
        rels_uf.add(tagged('R', r.name));
    }
    for (const ConstantDecl& c : lsig.constants()) {
        lconsts.push_back(c.name);
        consts_uf.add(tagged('L', c.name));
    }
    for (const ConstantDecl& c : rsig.constants()) {
        rconsts.push_back(c.name);
        consts_uf.add(tagged('R', c.name));
    }
    for (const Sort& s : generic.signature.sorts())
        sorts_uf.unite(tagged('L', into_left.sort_map.at(s.name)),
                       tagged('R', into_right.sort_map.at(s.name)));
    for (const RelationDecl& r : generic.signature.relations())
        rels_uf.unite(tagged('L', into_left.relation_map.at(r.name)),
                      tagged('R', into_right.relation_map.at(r.name)));
    for (const ConstantDecl& c : generic.signature.constants())
        consts_uf.unite(tagged('L', into_left.constant_map.at(c.name)),
                        tagged('R', into_right.constant_map.at(c.name)));

    std::vector<SymbolClass> sort_classes = collect_classes(sorts_uf, lsorts, rsorts);
    std::vector<SymbolClass> rel_classes = collect_classes(rels_uf, lrels, rrels);
    std::vector<SymbolClass> const_classes = collect_classes(consts_uf, lconsts, rconsts);
    assign_names(sort_classes);
    assign_names(rel_classes);
    assign_names(const_classes);

    std::map<std::string, std::string> lsort_name, rsort_name, lrel_name, rrel_name, lconst_name,
        rconst_name;
    for (const SymbolClass& c : sort_classes) {
        for (const std::string& n : c.left) lsort_name[n] = c.name;
        for (const std::string& n : c.right) rsort_name[n] = c.name;
    }
    for (const SymbolClass& c : rel_classes) {
        for (const std::string& n : c.left) lrel_name[n] = c.name;
        for (const std::string& n : c.right) rrel_name[n] = c.name;
    }
    for (const SymbolClass& c : const_classes) {
        for (const std::string& n : c.left) lconst_name[n] = c.name;
        for (const std::string& n : c.right) rconst_name[n] = c.name;
    }

    // Sorts: identified sorts must agree in kind, and power sorts in base.
    SignatureBuilder builder;
    for (const SymbolClass& c : sort_classes) {
        const Sort* first = c.left.empty() ? rsig.find_sort(c.right.front())
                                           : lsig.find_sort(c.left.front());
        std::string blended_base;
        for (const std::string& n : c.left) {
            const Sort* s = lsig.find_sort(n);
            if (s->kind != first->kind)
                diags.push_back(blend_error("blend identifies sort '" + first->name +
                                            "' with sort '" + n + "', but their kinds differ (" +
                                            kind_word(first->kind) + " vs " + kind_word(s->kind) +
                                            ")"));
            else if (s->kind == SortKind::Power) {
                const std::string& b = lsort_name.at(s->base);
                if (blended_base.empty()) blended_base = b;
                else if (blended_base != b)
                    diags.push_back(blend_error("blend identifies power sorts '" + first->name +
                                                "' and '" + n + "' over different bases"));
            }
        }
        for (const std::string& n : c.right) {
            const Sort* s = rsig.find_sort(n);
            if (s->kind != first->kind)
                diags.push_back(blend_error("blend identifies sort '" + first->name +
                                            "' with sort '" + n + "', but their kinds differ (" +
                                            kind_word(first->kind) + " vs " + kind_word(s->kind) +
                                            ")"));
            else if (s->kind == SortKind::Power) {
                const std::string& b = rsort_name.at(s->base);
                if (blended_base.empty()) blended_base = b;
                else if (blended_base != b)
                    diags.push_back(blend_error("blend identifies power sorts '" + first->name +
                                                "' and '" + n + "' over different bases"));
            }
        }
        if (diags.empty()) builder.add_sort(Sort{c.name, first->kind, blended_base});
    }
    if (!diags.empty()) return diags;

    // Subsort edges from both sides, renamed and deduplicated. A blended
    // sort with two distinct supersorts has no specification syntax, so the
    // identification is rejected.
    std::vector<std::pair<std::string, std::string>> edges;
    auto add_edge = [&](const std::string& sub, const std::string& super) {
        std::pair<std::string, std::string> e{sub, super};
        if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(e);
    };
    for (const auto& [sub, super] : lsig.declared_subsorts())
        add_edge(lsort_name.at(sub), lsort_name.at(super));
    for (const auto& [sub, super] : rsig.declared_subsorts())
        add_edge(rsort_name.at(sub), rsort_name.at(super));
    std::map<std::string, std::string> super_of;
    for (const auto& [sub, super] : edges) {
        auto it = super_of.find(sub);
        if (it != super_of.end() && it->second != super)
            diags.push_back(blend_error("sort '" + sub + "' would have supersorts '" + it->second +
                                        "' and '" + super +
                                        "' in the blend; a sort may have at most one"));
        else
            super_of.emplace(sub, super);
    }
    if (!diags.empty()) return diags;
    for (const auto& [sub, super] : edges) builder.add_subsort(sub, super);

    // Relations: identified relations must agree on renamed argument sorts.
    for (const SymbolClass& c : rel_classes) {
        std::vector<std::string> args;
        std::string first_name;
        auto merge = [&](const RelationDecl* r, const std::map<std::string, std::string>& names) {
            std::vector<std::string> renamed;
            renamed.reserve(r->arg_sorts.size());
            for (const std::string& a : r->arg_sorts) renamed.push_back(names.at(a));
            if (first_name.empty()) {
                first_name = r->name;
                args = std::move(renamed);
            } else if (renamed.size() != args.size()) {
                diags.push_back(blend_error("blend identifies relations '" + first_name +
                                            "' and '" + r->name + "' with different arities"));
            } else if (renamed != args) {
                diags.push_back(blend_error("blend identifies relations '" + first_name +
                                            "' and '" + r->name +
                                            "' with incompatible argument sorts"));
            }
        };
        for (const std::string& n : c.left) merge(lsig.find_relation(n), lsort_name);
        for (const std::string& n : c.right) merge(rsig.find_relation(n), rsort_name);
        if (diags.empty()) builder.add_relation(RelationDecl{c.name, std::move(args), {}});
    }
    // Constants: identified constants must land in the same blended sort.
    for (const SymbolClass& c : const_classes) {
        std::string sort;
        std::string first_name;
        auto merge = [&](const ConstantDecl* k, const std::map<std::string, std::string>& names) {
            const std::string& renamed = names.at(k->sort);
            if (first_name.empty()) {
                first_name = k->name;
                sort = renamed;
            } else if (renamed != sort) {
                diags.push_back(blend_error("blend identifies constants '" + first_name +
                                            "' and '" + k->name + "' of different sorts"));
            }
        };
        for (const std::string& n : c.left) merge(lsig.find_constant(n), lsort_name);
        for (const std::string& n : c.right) merge(rsig.find_constant(n), rsort_name);
        if (diags.empty()) builder.add_constant(ConstantDecl{c.name, std::move(sort), {}});
    }
    if (!diags.empty()) return diags;

    Result<Signature, SortDiagnostic> built = builder.build();
    if (!built.ok()) {
        for (const SortDiagnostic& d : built.errors())
            diags.push_back(blend_error("blend produces an invalid signature: " + d.message));
        return diags;
    }

    BlendResult result;
    result.blend.name = left.name + "_" + right.name + "_blend";
    result.blend.signature = built.take();

    result.left_injection.source = left;
    result.left_injection.sort_map = lsort_name;
    result.left_injection.relation_map = lrel_name;
    result.left_injection.constant_map = lconst_name;
    result.right_injection.source = right;
    result.right_injection.sort_map = rsort_name;
    result.right_injection.relation_map = rrel_name;
    result.right_injection.constant_map = rconst_name;

    // Axioms: left, then right, then the generic theory's own axioms carried
    // through the left leg. Duplicates up to bound-variable renaming collapse
    // onto the first occurrence; a reused name on a distinct formula gets a
    // side suffix.
    std::vector<NamedAxiom>& axioms = result.blend.axioms;
    auto add_axiom = [&](const std::string& name, FormulaPtr f, const char* suffix) {
        for (const NamedAxiom& a : axioms)
            if (alpha_equal(a.formula, f)) return;
        auto taken = [&](const std::string& n) {
            for (const NamedAxiom& a : axioms)
                if (a.name == n) return true;
            return false;
        };
        std::string final_name = taken(name) ? name + suffix : name;
        for (int k = 2; taken(final_name); ++k) final_name = name + suffix + std::to_string(k);
        axioms.push_back(NamedAxiom{final_name, std::move(f)});
    };
    for (const NamedAxiom& a : left.axioms)
        add_axiom(a.name, translate(result.left_injection, a.formula), "_L");
    for (const NamedAxiom& a : right.axioms)
        add_axiom(a.name, translate(result.right_injection, a.formula), "_R");
    for (const NamedAxiom& a : generic.axioms)
        add_axiom(a.name, translate(result.left_injection, translate(into_left, a.formula)), "_G");

    for (const NamedAxiom& a : axioms) {
        std::vector<SortDiagnostic> bad = check_formula(result.blend.signature, {}, a.formula);
        if (!bad.empty())
            throw std::logic_error("pushout produced an ill-sorted axiom " + a.name + ": " +
                                   bad.front().message);
    }

    result.left_injection.target = result.blend;
    result.right_injection.target = result.blend;
    return result;
}

SearchOutcome check_consistency(const Theory& theory, const Bounds& bounds,
                                unsigned long long node_limit) {
    return find_model(theory, bounds, node_limit);
}

std::vector<ParseDiagnostic> check_axiom_preservation(const Morphism& m, const Bounds& bounds,
                                                      unsigned long long node_limit) {
    std::vector<ParseDiagnostic> warnings;
    auto warn = [&](std::string message) {
        warnings.push_back(ParseDiagnostic{1, 1, std::move(message), "warning"});
    };
    SearchOutcome outcome = find_model(m.target, bounds, node_limit);
    if (outcome.status != SearchStatus::Sat) {
        warn("no bounded model of the target theory found; axiom preservation not checked");
        return warnings;
    }
    for (const NamedAxiom& a : m.source.axioms) {
        if (!evaluate(*outcome.model, {}, translate(m, a.formula)))
            warn("axiom '" + a.name +
                 "' does not survive translation: false in a bounded model of the target");
    }
    return warnings;
}

Result<Morphism, ParseDiagnostic> parse_morphism(std::string_view text, const Theory& source,
                                                 const Theory& target) {
    Morphism m;
    m.source = source;
    m.target = target;
    std::vector<ParseDiagnostic> diags;
    int line_no = 0;
    std::istringstream stream{std::string(text)};
    std::string line;
    while (std::getline(stream, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream words(line);
        std::string kind, src, arrow, dst, extra;
        if (!(words >> kind)) continue;
        auto fail = [&](std::string message) {
            diags.push_back(ParseDiagnostic{line_no, 1, std::move(message), "error"});
        };
        if (kind != "sort" && kind != "rel" && kind != "const") {
            fail("expected 'sort', 'rel', or 'const', found '" + kind + "'");
            continue;
        }
        if (!(words >> src)) {
            fail("expected a name after '" + kind + "'");
            continue;
        }
        if (!(words >> arrow) || arrow != "->") {
            fail("expected '->' after '" + src + "'");
            continue;
        }
        if (!(words >> dst)) {
            fail("expected a name after '->'");
            continue;
        }
        if (words >> extra) {
            fail("unexpected trailing text '" + extra + "'");
            continue;
        }
        std::map<std::string, std::string>& map =
            kind == "sort" ? m.sort_map : kind == "rel" ? m.relation_map : m.constant_map;
        if (!map.emplace(src, dst).second)
            fail("duplicate mapping for " + kind + " '" + src + "'");
    }
    if (!diags.empty()) return diags;
    return m;
}

std::string render_morphism(const Morphism& m) {
    std::string out;
    for (const Sort& s : m.source.signature.sorts()) {
        auto it = m.sort_map.find(s.name);
        if (it != m.sort_map.end()) out += "sort " + s.name + " -> " + it->second + "\n";
    }
    for (const RelationDecl& r : m.source.signature.relations()) {
        auto it = m.relation_map.find(r.name);
        if (it != m.relation_map.end()) out += "rel " + r.name + " -> " + it->second + "\n";
    }
    for (const ConstantDecl& c : m.source.signature.constants()) {
        auto it = m.constant_map.find(c.name);
        if (it != m.constant_map.end()) out += "const " + c.name + " -> " + it->second + "\n";
    }
    return out;
}

SpecDocument to_spec_document(const Theory& theory) {
    const Signature& sig = theory.signature;
    SpecDocument doc;
    doc.name = theory.name;
    for (const Sort& s : sig.sorts()) {
        if (s.kind == SortKind::Power) {
            doc.declarations.push_back(PowerSortDecl{s.name, s.base, {}});
        } else {
            std::string super;
            for (const auto& [sub, sup] : sig.declared_subsorts())
                if (sub == s.name) {
                    super = sup;
                    break;
                }
            doc.declarations.push_back(SortDecl{s.name, super, s.kind == SortKind::Ordered, {}});
        }
    }
    for (const RelationDecl& r : sig.relations()) doc.declarations.push_back(r);
    for (const ConstantDecl& c : sig.constants()) doc.declarations.push_back(c);
    doc.axioms = theory.axioms;
    doc.signature = sig;
    return doc;
}

std::string render_theory(const Theory& theory) { return render_spec(to_spec_document(theory)); }

} // namespace pml
