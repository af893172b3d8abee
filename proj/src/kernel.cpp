#include "pml/kernel.hpp"

#include <algorithm>
#include <sstream>

namespace pml {

std::string display_name(const Sort& sort) {
    if (sort.kind == SortKind::Power) return sort.name + "(" + sort.base + ")";
    return sort.name;
}

// ---------------------------------------------------------------------------
// Formula construction

namespace {

FormulaPtr wrap(std::variant<Atom, Not, Binary, Quantifier> node, SourceLoc loc) {
    return std::make_shared<Formula>(Formula{std::move(node), loc});
}

void collect_names(const FormulaPtr& f, std::set<std::string>& out) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Atom>) {
                for (const Term& t : n.args) out.insert(term_name(t));
            } else if constexpr (std::is_same_v<T, Not>) {
                collect_names(n.body, out);
            } else if constexpr (std::is_same_v<T, Binary>) {
                collect_names(n.lhs, out);
                collect_names(n.rhs, out);
            } else {
                out.insert(n.var);
                collect_names(n.body, out);
            }
        },
        f->node);
}

bool binds(const FormulaPtr& f, const std::string& var) {
    return std::visit(
        [&](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Atom>) {
                return false;
            } else if constexpr (std::is_same_v<T, Not>) {
                return binds(n.body, var);
            } else if constexpr (std::is_same_v<T, Binary>) {
                return binds(n.lhs, var) || binds(n.rhs, var);
            } else {
                return n.var == var || binds(n.body, var);
            }
        },
        f->node);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
    for (int i = 2;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (!used.count(candidate)) return candidate;
    }
}

/// Renames free occurrences of variable `from` to `to`. Stops at rebinding.
FormulaPtr rename_free(const FormulaPtr& f, const std::string& from, const std::string& to) {
    return std::visit(
        [&](const auto& n) -> FormulaPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Atom>) {
                Atom atom = n;
                for (Term& t : atom.args)
                    if (is_variable(t) && term_name(t) == from) t = Variable{to};
                return wrap(std::move(atom), f->loc);
            } else if constexpr (std::is_same_v<T, Not>) {
                return wrap(Not{rename_free(n.body, from, to)}, f->loc);
            } else if constexpr (std::is_same_v<T, Binary>) {
                return wrap(Binary{n.op, rename_free(n.lhs, from, to), rename_free(n.rhs, from, to)},
                            f->loc);
            } else {
                if (n.var == from) return f; // rebound below here
                return wrap(Quantifier{n.kind, n.var, n.sort, rename_free(n.body, from, to)},
                            f->loc);
            }
        },
        f->node);
}

/// Gives every binder of `var` inside `f` a fresh name.
FormulaPtr rename_binders_of(const FormulaPtr& f, const std::string& var,
                             std::set<std::string>& used) {
    return std::visit(
        [&](const auto& n) -> FormulaPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Atom>) {
                return f;
            } else if constexpr (std::is_same_v<T, Not>) {
                return wrap(Not{rename_binders_of(n.body, var, used)}, f->loc);
            } else if constexpr (std::is_same_v<T, Binary>) {
                return wrap(Binary{n.op, rename_binders_of(n.lhs, var, used),
                                   rename_binders_of(n.rhs, var, used)},
                            f->loc);
            } else {
                FormulaPtr body = rename_binders_of(n.body, var, used);
                if (n.var != var)
                    return wrap(Quantifier{n.kind, n.var, n.sort, body}, f->loc);
                std::string fresh = fresh_name(var, used);
                used.insert(fresh);
                return wrap(Quantifier{n.kind, fresh, n.sort, rename_free(body, var, fresh)},
                            f->loc);
            }
        },
        f->node);
}

} // namespace

FormulaPtr make_atom(std::string relation, std::vector<Term> args, SourceLoc loc) {
    return wrap(Atom{std::move(relation), std::move(args)}, loc);
}
FormulaPtr make_not(FormulaPtr body, SourceLoc loc) { return wrap(Not{std::move(body)}, loc); }
FormulaPtr make_binary(BinaryOp op, FormulaPtr lhs, FormulaPtr rhs, SourceLoc loc) {
    return wrap(Binary{op, std::move(lhs), std::move(rhs)}, loc);
}
FormulaPtr make_and(FormulaPtr lhs, FormulaPtr rhs, SourceLoc loc) {
    return make_binary(BinaryOp::And, std::move(lhs), std::move(rhs), loc);
}
FormulaPtr make_or(FormulaPtr lhs, FormulaPtr rhs, SourceLoc loc) {
    return make_binary(BinaryOp::Or, std::move(lhs), std::move(rhs), loc);
}
FormulaPtr make_implies(FormulaPtr lhs, FormulaPtr rhs, SourceLoc loc) {
    return make_binary(BinaryOp::Implies, std::move(lhs), std::move(rhs), loc);
}
FormulaPtr make_iff(FormulaPtr lhs, FormulaPtr rhs, SourceLoc loc) {
    return make_binary(BinaryOp::Iff, std::move(lhs), std::move(rhs), loc);
}

FormulaPtr make_quantifier(QuantifierKind kind, std::string var, std::string sort,
                           FormulaPtr body, SourceLoc loc) {
    if (binds(body, var)) {
        std::set<std::string> used;
        collect_names(body, used);
        used.insert(var);
        body = rename_binders_of(body, var, used);
    }
    return wrap(Quantifier{kind, std::move(var), std::move(sort), std::move(body)}, loc);
}
FormulaPtr make_forall(std::string var, std::string sort, FormulaPtr body, SourceLoc loc) {
    return make_quantifier(QuantifierKind::Forall, std::move(var), std::move(sort),
                           std::move(body), loc);
}
FormulaPtr make_exists(std::string var, std::string sort, FormulaPtr body, SourceLoc loc) {
    return make_quantifier(QuantifierKind::Exists, std::move(var), std::move(sort),
                           std::move(body), loc);
}

// ---------------------------------------------------------------------------
// Signature

const Sort* Signature::find_sort(std::string_view name) const {
    for (const Sort& s : sorts_)
        if (s.name == name) return &s;
    return nullptr;
}
const RelationDecl* Signature::find_relation(std::string_view name) const {
    for (const RelationDecl& r : relations_)
        if (r.name == name) return &r;
    return nullptr;
}
const ConstantDecl* Signature::find_constant(std::string_view name) const {
    for (const ConstantDecl& c : constants_)
        if (c.name == name) return &c;
    return nullptr;
}

bool Signature::is_subsort(std::string_view sub, std::string_view super) const {
    if (sub == super) return true;
    auto it = supersorts_.find(sub);
    return it != supersorts_.end() && it->second.count(std::string(super)) > 0;
}

const std::set<std::string>& Signature::supersorts_of(std::string_view name) const {
    static const std::set<std::string> empty;
    auto it = supersorts_.find(name);
    return it == supersorts_.end() ? empty : it->second;
}

bool Signature::have_common_scalar_supersort(std::string_view a, std::string_view b,
                                             bool ordered_only) const {
    for (const Sort& s : sorts_) {
        if (s.kind == SortKind::Power) continue;
        if (ordered_only && s.kind != SortKind::Ordered) continue;
        if (is_subsort(a, s.name) && is_subsort(b, s.name)) return true;
    }
    return false;
}

bool Signature::equivalent(const Signature& other) const {
    auto sorted_sorts = [](const Signature& sig) {
        std::vector<Sort> v = sig.sorts_;
        std::sort(v.begin(), v.end(), [](const Sort& a, const Sort& b) { return a.name < b.name; });
        return v;
    };
    auto sorted_rels = [](const Signature& sig) {
        std::vector<RelationDecl> v = sig.relations_;
        std::sort(v.begin(), v.end(),
                  [](const RelationDecl& a, const RelationDecl& b) { return a.name < b.name; });
        return v;
    };
    auto sorted_consts = [](const Signature& sig) {
        std::vector<ConstantDecl> v = sig.constants_;
        std::sort(v.begin(), v.end(),
                  [](const ConstantDecl& a, const ConstantDecl& b) { return a.name < b.name; });
        return v;
    };
    return sorted_sorts(*this) == sorted_sorts(other) && supersorts_ == other.supersorts_ &&
           sorted_rels(*this) == sorted_rels(other) && sorted_consts(*this) == sorted_consts(other);
}

namespace {

SortDiagnostic make_diag(std::string_view code, SourceLoc loc, std::string context,
                         std::string expected, std::string found, std::string message) {
    return SortDiagnostic{std::string(code), loc,       std::move(context),
                          std::move(expected), std::move(found), std::move(message)};
}

} // namespace

Result<Signature, SortDiagnostic> SignatureBuilder::build() const {
    const std::vector<Declaration>& decls = decls_;
    const std::vector<std::pair<std::string, std::string>>& extra_subsorts = extra_subsorts_;
    std::vector<SortDiagnostic> diags;
    Signature sig;

    // Pass 1: register sorts (forward references in subsort/base positions allowed).
    for (const Declaration& d : decls) {
        if (const auto* sd = std::get_if<SortDecl>(&d)) {
            if (sig.find_sort(sd->name)) {
                diags.push_back(make_diag(diag::duplicate_name, sd->loc, "sort " + sd->name, "",
                                          "", "duplicate sort name '" + sd->name + "'"));
                continue;
            }
            sig.sorts_.push_back(
                Sort{sd->name, sd->ordered ? SortKind::Ordered : SortKind::Base, ""});
            if (!sd->supersort.empty()) sig.subsort_decls_.emplace_back(sd->name, sd->supersort);
        } else if (const auto* pd = std::get_if<PowerSortDecl>(&d)) {
            if (sig.find_sort(pd->name)) {
                diags.push_back(make_diag(diag::duplicate_name, pd->loc, "powersort " + pd->name,
                                          "", "", "duplicate sort name '" + pd->name + "'"));
                continue;
            }
            sig.sorts_.push_back(Sort{pd->name, SortKind::Power, pd->base});
        }
    }
    for (const auto& [sub, super] : extra_subsorts) sig.subsort_decls_.emplace_back(sub, super);

    std::map<std::string, SourceLoc> decl_loc;
    for (const Declaration& d : decls) {
        if (const auto* sd = std::get_if<SortDecl>(&d))
            decl_loc.emplace(sd->name, sd->loc);
        else if (const auto* pd = std::get_if<PowerSortDecl>(&d))
            decl_loc.emplace(pd->name, pd->loc);
    }
    auto loc_of = [&](const std::string& name) {
        auto it = decl_loc.find(name);
        return it == decl_loc.end() ? SourceLoc{} : it->second;
    };

    // Pass 2: validate sort references.
    for (const Sort& s : sig.sorts_) {
        if (s.kind != SortKind::Power) continue;
        const Sort* base = sig.find_sort(s.base);
        if (!base) {
            diags.push_back(make_diag(diag::unknown_sort, loc_of(s.name), "powersort " + s.name,
                                      "", "",
                                      "power sort '" + s.name + "' refers to undeclared sort '" +
                                          s.base + "'"));
        } else if (base->kind != SortKind::Base) {
            diags.push_back(make_diag(diag::invalid_declaration, loc_of(s.name),
                                      "powersort " + s.name, "", display_name(*base),
                                      "power sort base '" + s.base + "' must be a base sort"));
        }
    }
    for (const auto& [sub, super] : sig.subsort_decls_) {
        const Sort* a = sig.find_sort(sub);
        const Sort* b = sig.find_sort(super);
        if (!a || !b) {
            diags.push_back(make_diag(diag::unknown_sort, loc_of(sub),
                                      "subsort " + sub + " < " + super, "", "",
                                      "subsort declaration refers to undeclared sort '" +
                                          (a ? super : sub) + "'"));
            continue;
        }
        if (a->kind == SortKind::Power || b->kind == SortKind::Power || a->kind != b->kind) {
            diags.push_back(make_diag(diag::invalid_declaration, loc_of(sub),
                                      "subsort " + sub + " < " + super, "", "",
                                      "subsorting requires two base (or two ordered) sorts"));
        }
    }
    if (!diags.empty()) return diags;

    // Reflexive-transitive closure over the declared pairs.
    for (const Sort& s : sig.sorts_) sig.supersorts_[s.name] = {s.name};
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [sub, super] : sig.subsort_decls_) {
            auto& ups = sig.supersorts_[sub];
            const auto& super_ups = sig.supersorts_[super];
            for (const std::string& u : super_ups)
                if (ups.insert(u).second) changed = true;
        }
    }
    // Antisymmetry: distinct sorts may not be subsorts of each other.
    for (const Sort& s : sig.sorts_) {
        for (const std::string& up : sig.supersorts_[s.name]) {
            if (up != s.name && sig.supersorts_[up].count(s.name)) {
                diags.push_back(make_diag(diag::subsort_cycle, loc_of(s.name), "sort " + s.name,
                                          "", "",
                                          "subsort cycle between '" + s.name + "' and '" + up +
                                              "'"));
            }
        }
    }
    if (!diags.empty()) return diags;

    // Pass 3: relations and constants.
    for (const Declaration& d : decls) {
        if (const auto* rd = std::get_if<RelationDecl>(&d)) {
            if (is_builtin_relation(rd->name)) {
                diags.push_back(make_diag(diag::duplicate_name, rd->loc, "rel " + rd->name, "", "",
                                          "'" + rd->name + "' is reserved for the builtin"));
                continue;
            }
            if (sig.find_relation(rd->name)) {
                diags.push_back(make_diag(diag::duplicate_name, rd->loc, "rel " + rd->name, "", "",
                                          "duplicate relation name '" + rd->name + "'"));
                continue;
            }
            bool args_ok = true;
            for (const std::string& a : rd->arg_sorts) {
                if (!sig.find_sort(a)) {
                    diags.push_back(make_diag(diag::unknown_sort, rd->loc, "rel " + rd->name, "",
                                              "",
                                              "relation '" + rd->name +
                                                  "' refers to undeclared sort '" + a + "'"));
                    args_ok = false;
                }
            }
            if (args_ok) sig.relations_.push_back(*rd);
        } else if (const auto* cd = std::get_if<ConstantDecl>(&d)) {
            if (sig.find_constant(cd->name)) {
                diags.push_back(make_diag(diag::duplicate_name, cd->loc, "const " + cd->name, "",
                                          "", "duplicate constant name '" + cd->name + "'"));
                continue;
            }
            if (!sig.find_sort(cd->sort)) {
                diags.push_back(make_diag(diag::unknown_sort, cd->loc, "const " + cd->name, "", "",
                                          "constant '" + cd->name +
                                              "' refers to undeclared sort '" + cd->sort + "'"));
                continue;
            }
            sig.constants_.push_back(*cd);
        }
    }
    if (!diags.empty()) return diags;
    return sig;
}

Result<Signature, SortDiagnostic> build_signature(const std::vector<Declaration>& decls) {
    SignatureBuilder builder;
    builder.decls_ = decls;
    return builder.build();
}

SignatureBuilder& SignatureBuilder::add_sort(Sort sort) {
    if (sort.kind == SortKind::Power)
        decls_.push_back(PowerSortDecl{sort.name, sort.base, {}});
    else
        decls_.push_back(SortDecl{sort.name, "", sort.kind == SortKind::Ordered, {}});
    return *this;
}
SignatureBuilder& SignatureBuilder::add_subsort(std::string sub, std::string super) {
    extra_subsorts_.emplace_back(std::move(sub), std::move(super));
    return *this;
}
SignatureBuilder& SignatureBuilder::add_relation(RelationDecl rel) {
    decls_.push_back(std::move(rel));
    return *this;
}
SignatureBuilder& SignatureBuilder::add_constant(ConstantDecl cst) {
    decls_.push_back(std::move(cst));
    return *this;
}

// ---------------------------------------------------------------------------
// Sorting rules

Result<Sort, SortDiagnostic> sort_of_term(const Signature& sig, const SortContext& context,
                                          const Term& term) {
    if (is_variable(term)) {
        const std::string& name = term_name(term);
        auto it = context.find(name);
        if (it == context.end())
            return make_diag(diag::unbound_variable, {}, "variable " + name, "", "",
                             "variable '" + name + "' is not bound in this context");
        const Sort* s = sig.find_sort(it->second);
        if (!s)
            return make_diag(diag::unknown_sort, {}, "variable " + name, "", it->second,
                             "variable '" + name + "' has undeclared sort '" + it->second + "'");
        return *s;
    }
    const std::string& name = term_name(term);
    const ConstantDecl* c = sig.find_constant(name);
    if (!c)
        return make_diag(diag::unknown_constant, {}, "constant " + name, "", "",
                         "'" + name + "' is neither a bound variable nor a declared constant");
    return *sig.find_sort(c->sort);
}

std::string atom_to_string(const Atom& atom) {
    std::ostringstream os;
    if (is_builtin_relation(atom.relation) && atom.args.size() == 2) {
        os << term_name(atom.args[0]) << " " << atom.relation << " " << term_name(atom.args[1]);
        return os.str();
    }
    os << atom.relation << "(";
    for (size_t i = 0; i < atom.args.size(); ++i) {
        if (i) os << ", ";
        os << term_name(atom.args[i]);
    }
    os << ")";
    return os.str();
}

namespace {

void check_atom(const Signature& sig, const SortContext& ctx, const Atom& atom, SourceLoc loc,
                std::vector<SortDiagnostic>& out) {
    const std::string where = "atom " + atom_to_string(atom);

    std::vector<const Sort*> arg_sorts;
    bool resolved = true;
    for (const Term& t : atom.args) {
        auto r = sort_of_term(sig, ctx, t);
        if (!r.ok()) {
            for (SortDiagnostic d : r.errors()) {
                if (!d.loc.known()) d.loc = loc;
                d.context = where;
                out.push_back(std::move(d));
            }
            arg_sorts.push_back(nullptr);
            resolved = false;
        } else {
            arg_sorts.push_back(sig.find_sort(r.value().name));
        }
    }

    auto arity_error = [&](size_t expected) {
        out.push_back(make_diag(diag::arity_mismatch, loc, where, "", "",
                                atom.relation + " expects " + std::to_string(expected) +
                                    " arguments, got " + std::to_string(atom.args.size())));
    };

    if (atom.relation == kMembershipRel) {
        if (atom.args.size() != 2) return arity_error(2);
        if (!resolved) return;
        const Sort* elem = arg_sorts[0];
        const Sort* coll = arg_sorts[1];
        if (coll->kind != SortKind::Power) {
            out.push_back(make_diag(diag::argument_sort, loc, where, "a power sort",
                                    display_name(*coll),
                                    "right operand of 'in' must have a power sort, found '" +
                                        display_name(*coll) + "'"));
            return;
        }
        if (!sig.is_subsort(elem->name, coll->base)) {
            out.push_back(make_diag(diag::argument_sort, loc, where, coll->base,
                                    display_name(*elem),
                                    "expected a subsort of '" + coll->base + "', found '" +
                                        display_name(*elem) + "'"));
        }
        return;
    }
    if (atom.relation == kOrderRel || atom.relation == kEqualityRel) {
        if (atom.args.size() != 2) return arity_error(2);
        if (!resolved) return;
        bool ordered_only = atom.relation == kOrderRel;
        if (!sig.have_common_scalar_supersort(arg_sorts[0]->name, arg_sorts[1]->name,
                                              ordered_only)) {
            out.push_back(make_diag(
                diag::argument_sort, loc, where,
                ordered_only ? "a common ordered sort" : "a common base sort",
                display_name(*arg_sorts[0]) + ", " + display_name(*arg_sorts[1]),
                std::string("operands of '") + (ordered_only ? "<=" : "=") +
                    "' have no common " + (ordered_only ? "ordered" : "base") + " supersort"));
        }
        return;
    }

    const RelationDecl* rel = sig.find_relation(atom.relation);
    if (!rel) {
        out.push_back(make_diag(diag::unknown_relation, loc, where, "", "",
                                "unknown relation '" + atom.relation + "'"));
        return;
    }
    if (atom.args.size() != rel->arg_sorts.size()) return arity_error(rel->arg_sorts.size());
    for (size_t i = 0; i < atom.args.size(); ++i) {
        if (!arg_sorts[i]) continue;
        const std::string& expected = rel->arg_sorts[i];
        if (!sig.is_subsort(arg_sorts[i]->name, expected)) {
            const Sort* exp_sort = sig.find_sort(expected);
            std::string exp_display = exp_sort ? display_name(*exp_sort) : expected;
            out.push_back(make_diag(diag::argument_sort, loc, where, exp_display,
                                    display_name(*arg_sorts[i]),
                                    "argument " + std::to_string(i + 1) + " of " + atom.relation +
                                        ": expected " + exp_display + ", found " +
                                        display_name(*arg_sorts[i])));
        }
    }
}

void check_rec(const Signature& sig, SortContext ctx, const FormulaPtr& f,
               std::vector<SortDiagnostic>& out) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Atom>) {
                check_atom(sig, ctx, n, f->loc, out);
            } else if constexpr (std::is_same_v<T, Not>) {
                check_rec(sig, ctx, n.body, out);
            } else if constexpr (std::is_same_v<T, Binary>) {
                check_rec(sig, ctx, n.lhs, out);
                check_rec(sig, ctx, n.rhs, out);
            } else {
                if (!sig.find_sort(n.sort)) {
                    out.push_back(make_diag(diag::unknown_sort, f->loc,
                                            "quantifier over " + n.var, "", n.sort,
                                            "quantifier sort '" + n.sort + "' is not declared"));
                    return; // body would produce cascading noise
                }
                ctx[n.var] = n.sort;
                check_rec(sig, std::move(ctx), n.body, out);
            }
        },
        f->node);
}

} // namespace

std::vector<SortDiagnostic> check_formula(const Signature& sig, const SortContext& context,
                                          const FormulaPtr& f) {
    std::vector<SortDiagnostic> out;
    check_rec(sig, context, f, out);
    return out;
}

namespace {
void free_vars_rec(const FormulaPtr& f, std::set<std::string>& bound,
                   std::set<std::string>& out) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Atom>) {
                for (const Term& t : n.args)
                    if (is_variable(t) && !bound.count(term_name(t))) out.insert(term_name(t));
            } else if constexpr (std::is_same_v<T, Not>) {
                free_vars_rec(n.body, bound, out);
            } else if constexpr (std::is_same_v<T, Binary>) {
                free_vars_rec(n.lhs, bound, out);
                free_vars_rec(n.rhs, bound, out);
            } else {
                bool inserted = bound.insert(n.var).second;
                free_vars_rec(n.body, bound, out);
                if (inserted) bound.erase(n.var);
            }
        },
        f->node);
}
} // namespace

std::set<std::string> free_variables(const FormulaPtr& f) {
    std::set<std::string> bound, out;
    free_vars_rec(f, bound, out);
    return out;
}

namespace {
FormulaPtr subst_rec(const FormulaPtr& f, const std::string& var, const Term& replacement) {
    return std::visit(
        [&](const auto& n) -> FormulaPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Atom>) {
                Atom atom = n;
                for (Term& t : atom.args)
                    if (is_variable(t) && term_name(t) == var) t = replacement;
                return wrap(std::move(atom), f->loc);
            } else if constexpr (std::is_same_v<T, Not>) {
                return wrap(Not{subst_rec(n.body, var, replacement)}, f->loc);
            } else if constexpr (std::is_same_v<T, Binary>) {
                return wrap(Binary{n.op, subst_rec(n.lhs, var, replacement),
                                   subst_rec(n.rhs, var, replacement)},
                            f->loc);
            } else {
                if (n.var == var) return f; // bound occurrences untouched
                if (is_variable(replacement) && n.var == term_name(replacement)) {
                    // The binder would capture the substituted variable; rename it.
                    std::set<std::string> used;
                    collect_names(n.body, used);
                    used.insert(var);
                    used.insert(n.var);
                    std::string fresh = fresh_name(n.var, used);
                    FormulaPtr body = rename_free(n.body, n.var, fresh);
                    return wrap(
                        Quantifier{n.kind, fresh, n.sort, subst_rec(body, var, replacement)},
                        f->loc);
                }
                return wrap(Quantifier{n.kind, n.var, n.sort, subst_rec(n.body, var, replacement)},
                            f->loc);
            }
        },
        f->node);
}
} // namespace

Result<FormulaPtr, SortDiagnostic> substitute(const Signature& sig, const SortContext& context,
                                              const FormulaPtr& f, const std::string& var,
                                              const Term& replacement) {
    auto var_it = context.find(var);
    if (var_it == context.end())
        return make_diag(diag::unbound_variable, {}, "substitute " + var, "", "",
                         "substituted variable '" + var + "' has no sort in the context");
    auto repl_sort = sort_of_term(sig, context, replacement);
    if (!repl_sort.ok()) return repl_sort.errors();
    if (!sig.is_subsort(repl_sort.value().name, var_it->second)) {
        const Sort* expected = sig.find_sort(var_it->second);
        return make_diag(diag::sort_mismatch, {}, "substitute " + var,
                         expected ? display_name(*expected) : var_it->second,
                         display_name(repl_sort.value()),
                         "replacement sort '" + display_name(repl_sort.value()) +
                             "' is not a subsort of '" + var_it->second + "'");
    }
    return subst_rec(f, var, replacement);
}

namespace {
bool alpha_rec(const FormulaPtr& a, const FormulaPtr& b,
               std::vector<std::pair<std::string, std::string>>& binders) {
    if (a->node.index() != b->node.index()) return false;
    if (const auto* aa = std::get_if<Atom>(&a->node)) {
        const auto& ba = std::get<Atom>(b->node);
        if (aa->relation != ba.relation || aa->args.size() != ba.args.size()) return false;
        for (size_t i = 0; i < aa->args.size(); ++i) {
            const Term& ta = aa->args[i];
            const Term& tb = ba.args[i];
            if (is_variable(ta) != is_variable(tb)) return false;
            if (!is_variable(ta)) {
                if (term_name(ta) != term_name(tb)) return false;
                continue;
            }
            // Bound variables match through the binder stack; free ones by name.
            bool matched = false;
            for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
                bool la = it->first == term_name(ta);
                bool lb = it->second == term_name(tb);
                if (la || lb) {
                    if (!(la && lb)) return false;
                    matched = true;
                    break;
                }
            }
            if (!matched && term_name(ta) != term_name(tb)) return false;
        }
        return true;
    }
    if (const auto* an = std::get_if<Not>(&a->node))
        return alpha_rec(an->body, std::get<Not>(b->node).body, binders);
    if (const auto* ab = std::get_if<Binary>(&a->node)) {
        const auto& bb = std::get<Binary>(b->node);
        return ab->op == bb.op && alpha_rec(ab->lhs, bb.lhs, binders) &&
               alpha_rec(ab->rhs, bb.rhs, binders);
    }
    const auto& aq = std::get<Quantifier>(a->node);
    const auto& bq = std::get<Quantifier>(b->node);
    if (aq.kind != bq.kind || aq.sort != bq.sort) return false;
    binders.emplace_back(aq.var, bq.var);
    bool eq = alpha_rec(aq.body, bq.body, binders);
    binders.pop_back();
    return eq;
}
} // namespace

bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b) {
    std::vector<std::pair<std::string, std::string>> binders;
    return alpha_rec(a, b, binders);
}

} // namespace pml
