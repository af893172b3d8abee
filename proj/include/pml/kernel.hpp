#ifndef PML_KERNEL_HPP
#define PML_KERNEL_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pml/result.hpp"

// Core representation of many-sorted signatures, terms and formulas.
// All values are immutable after construction; every operation is pure.

namespace pml {

struct SourceLoc {
    int line = 0; // 1-based; 0 means "no source position"
    int column = 0;
    bool known() const { return line > 0; }
};

enum class SortKind { Base, Ordered, Power };

struct Sort {
    std::string name;
    SortKind kind = SortKind::Base;
    std::string base; // set iff kind == Power

    bool operator==(const Sort&) const = default;
};

/// Power sorts display functional-style: "P_ph(Pr)". Others display as their name.
std::string display_name(const Sort& sort);

// ---------------------------------------------------------------------------
// Terms

struct Variable {
    std::string name;
    bool operator==(const Variable&) const = default;
};
struct Constant {
    std::string name;
    bool operator==(const Constant&) const = default;
};
using Term = std::variant<Variable, Constant>;

inline const std::string& term_name(const Term& t) {
    return std::holds_alternative<Variable>(t) ? std::get<Variable>(t).name
                                               : std::get<Constant>(t).name;
}
inline bool is_variable(const Term& t) { return std::holds_alternative<Variable>(t); }

// Built-in relation spellings. "in" is collection membership, "<=" the order
// on ordered sorts, "=" sorted equality on base/ordered sorts.
inline constexpr std::string_view kMembershipRel = "in";
inline constexpr std::string_view kOrderRel = "<=";
inline constexpr std::string_view kEqualityRel = "=";

inline bool is_builtin_relation(std::string_view name) {
    return name == kMembershipRel || name == kOrderRel || name == kEqualityRel;
}

// ---------------------------------------------------------------------------
// Formulas

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Atom {
    std::string relation; // user relation name or a builtin spelling
    std::vector<Term> args;
};
struct Not {
    FormulaPtr body;
};
enum class BinaryOp { And, Or, Implies, Iff };
struct Binary {
    BinaryOp op;
    FormulaPtr lhs;
    FormulaPtr rhs;
};
enum class QuantifierKind { Forall, Exists };
struct Quantifier {
    QuantifierKind kind;
    std::string var;
    std::string sort;
    FormulaPtr body;
};

struct Formula {
    std::variant<Atom, Not, Binary, Quantifier> node;
    SourceLoc loc;
};

FormulaPtr make_atom(std::string relation, std::vector<Term> args, SourceLoc loc = {});
FormulaPtr make_not(FormulaPtr body, SourceLoc loc = {});
FormulaPtr make_binary(BinaryOp op, FormulaPtr lhs, FormulaPtr rhs, SourceLoc loc = {});
FormulaPtr make_and(FormulaPtr lhs, FormulaPtr rhs, SourceLoc loc = {});
FormulaPtr make_or(FormulaPtr lhs, FormulaPtr rhs, SourceLoc loc = {});
FormulaPtr make_implies(FormulaPtr lhs, FormulaPtr rhs, SourceLoc loc = {});
FormulaPtr make_iff(FormulaPtr lhs, FormulaPtr rhs, SourceLoc loc = {});

// Quantifier constructors alpha-rename binders inside `body` that reuse `var`,
// so binder names stay distinct along every root-to-leaf path.
FormulaPtr make_quantifier(QuantifierKind kind, std::string var, std::string sort,
                           FormulaPtr body, SourceLoc loc = {});
FormulaPtr make_forall(std::string var, std::string sort, FormulaPtr body, SourceLoc loc = {});
FormulaPtr make_exists(std::string var, std::string sort, FormulaPtr body, SourceLoc loc = {});

// ---------------------------------------------------------------------------
// Declarations (shared with the surface syntax)

struct SortDecl {
    std::string name;
    std::string supersort; // empty when none
    bool ordered = false;
    SourceLoc loc{};
    bool operator==(const SortDecl& o) const {
        return name == o.name && supersort == o.supersort && ordered == o.ordered;
    }
};
struct PowerSortDecl {
    std::string name;
    std::string base;
    SourceLoc loc{};
    bool operator==(const PowerSortDecl& o) const { return name == o.name && base == o.base; }
};
struct ConstantDecl {
    std::string name;
    std::string sort;
    SourceLoc loc{};
    bool operator==(const ConstantDecl& o) const { return name == o.name && sort == o.sort; }
};
struct RelationDecl {
    std::string name;
    std::vector<std::string> arg_sorts;
    SourceLoc loc{};
    bool operator==(const RelationDecl& o) const {
        return name == o.name && arg_sorts == o.arg_sorts;
    }
};
using Declaration = std::variant<SortDecl, PowerSortDecl, ConstantDecl, RelationDecl>;

// ---------------------------------------------------------------------------
// Diagnostics

struct SortDiagnostic {
    std::string code;     // stable identifier, e.g. "unknown-sort", "argument-sort"
    SourceLoc loc{};      // best known source position
    std::string context;  // what was being checked, e.g. "atom PuDo(d, a, b, s, r)"
    std::string expected; // display name of the expected sort ("" when n/a)
    std::string found;    // display name of the found sort ("" when n/a)
    std::string message;
};

// Diagnostic codes used by the kernel.
namespace diag {
inline constexpr std::string_view duplicate_name = "duplicate-name";
inline constexpr std::string_view unknown_sort = "unknown-sort";
inline constexpr std::string_view subsort_cycle = "subsort-cycle";
inline constexpr std::string_view invalid_declaration = "invalid-declaration";
inline constexpr std::string_view unbound_variable = "unbound-variable";
inline constexpr std::string_view unknown_constant = "unknown-constant";
inline constexpr std::string_view unknown_relation = "unknown-relation";
inline constexpr std::string_view arity_mismatch = "arity-mismatch";
inline constexpr std::string_view argument_sort = "argument-sort";
inline constexpr std::string_view sort_mismatch = "sort-mismatch";
} // namespace diag

// ---------------------------------------------------------------------------
// Signature

class Signature {
public:
    Signature() = default;

    const std::vector<Sort>& sorts() const { return sorts_; }
    const std::vector<std::pair<std::string, std::string>>& declared_subsorts() const {
        return subsort_decls_;
    }
    const std::vector<RelationDecl>& relations() const { return relations_; }
    const std::vector<ConstantDecl>& constants() const { return constants_; }

    const Sort* find_sort(std::string_view name) const;
    const RelationDecl* find_relation(std::string_view name) const;
    const ConstantDecl* find_constant(std::string_view name) const;

    /// Reflexive-transitive subsort test. Power sorts are only subsorts of themselves.
    bool is_subsort(std::string_view sub, std::string_view super) const;

    /// All supersorts of `name`, including itself.
    const std::set<std::string>& supersorts_of(std::string_view name) const;

    /// True when some base/ordered sort is a common supersort of both
    /// (the resolution rule for "=" atoms); `ordered_only` restricts to
    /// ordered sorts (the rule for "<=" atoms).
    bool have_common_scalar_supersort(std::string_view a, std::string_view b,
                                      bool ordered_only) const;

    /// Structural equivalence: same sorts, subsort order, relations, constants
    /// (declaration order ignored).
    bool equivalent(const Signature& other) const;

private:
    friend Result<Signature, SortDiagnostic> build_signature(const std::vector<Declaration>&);
    friend class SignatureBuilder;

    std::vector<Sort> sorts_;
    std::vector<std::pair<std::string, std::string>> subsort_decls_;
    std::vector<RelationDecl> relations_;
    std::vector<ConstantDecl> constants_;
    std::map<std::string, std::set<std::string>, std::less<>> supersorts_; // closure, incl. self
};

/// Direct construction path for signatures that do not come from declaration
/// lists (the pushout uses this). Runs the same validation as build_signature.
class SignatureBuilder {
public:
    SignatureBuilder& add_sort(Sort sort);
    SignatureBuilder& add_subsort(std::string sub, std::string super);
    SignatureBuilder& add_relation(RelationDecl rel);
    SignatureBuilder& add_constant(ConstantDecl cst);
    Result<Signature, SortDiagnostic> build() const;

private:
    friend Result<Signature, SortDiagnostic> build_signature(const std::vector<Declaration>&);

    std::vector<Declaration> decls_;
    std::vector<std::pair<std::string, std::string>> extra_subsorts_;
};

/// Validates declarations and computes the subsort closure. Built-in relations
/// (membership per power sort, order per ordered sort, equality per base sort)
/// are implicit in the signature rather than stored.
Result<Signature, SortDiagnostic> build_signature(const std::vector<Declaration>& decls);

// ---------------------------------------------------------------------------
// Sorting rules

/// Variable sorts of the enclosing quantifier scope.
using SortContext = std::map<std::string, std::string, std::less<>>;

Result<Sort, SortDiagnostic> sort_of_term(const Signature& sig, const SortContext& context,
                                          const Term& term);

/// Returns every sort violation in `f` (empty result means well-sorted).
/// An atom R(t1..tn) is well-sorted iff each ti's sort is a subsort of R's
/// i-th declared argument sort.
std::vector<SortDiagnostic> check_formula(const Signature& sig, const SortContext& context,
                                          const FormulaPtr& f);

/// Names of free variables. (Sorts of free variables live in the caller's
/// context, not in the formula.)
std::set<std::string> free_variables(const FormulaPtr& f);

/// Capture-avoiding substitution of `var` by `replacement`. The replacement's
/// sort must be a subsort of the variable's context sort.
Result<FormulaPtr, SortDiagnostic> substitute(const Signature& sig, const SortContext& context,
                                              const FormulaPtr& f, const std::string& var,
                                              const Term& replacement);

/// Structural equality modulo bound-variable names.
bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b);

/// "Pur(a, s, b, t)" / "v in w" — used in diagnostics and by the renderer.
std::string atom_to_string(const Atom& atom);

} // namespace pml

#endif
