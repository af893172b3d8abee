#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "pml/modelfinder.hpp"
#include "pml/parser.hpp"
#include "pml/theory.hpp"

// Theory morphisms and pushout-style blending of two theories over a shared
// generic space.

namespace pml {

struct Morphism {
    Theory source;
    Theory target;
    std::map<std::string, std::string> sort_map;     // total on source sorts
    std::map<std::string, std::string> relation_map; // total on source relations
    std::map<std::string, std::string> constant_map; // total on source constants
};

Morphism identity_morphism(const Theory& theory);

/// Structural validity: total maps, images exist, kinds and subsorting are
/// preserved, power sorts land on power sorts over the mapped base, relation
/// arities and argument sorts correspond, constants keep their mapped sort.
/// An empty result means the morphism is valid.
std::vector<ParseDiagnostic> check_morphism(const Morphism& m);

/// Rewrites quantifier sorts, relation symbols, and constants by the maps.
/// Symbols without an entry pass through unchanged; builtin relations are
/// never renamed.
FormulaPtr translate(const Morphism& m, const FormulaPtr& f);

struct BlendResult {
    Theory blend;
    Morphism left_injection;  // left input theory -> blend
    Morphism right_injection; // right input theory -> blend
};

/// Pushout of the span left <-f- generic -g-> right: the disjoint union of
/// the two signatures with f(x) and g(x) identified for every generic symbol
/// x. Unshared symbols with the same spelling on both sides get `_L`/`_R`
/// suffixes. Blended axioms are the translated left, right, and generic
/// axioms, deduplicated up to bound-variable renaming. Fails when the
/// identifications are incompatible (kind clashes, subsort cycles, a sort
/// left with two supersorts).
Result<BlendResult, ParseDiagnostic> pushout(const Theory& generic, const Morphism& into_left,
                                             const Morphism& into_right);

/// Bounded satisfiability of a (typically blended) theory; the named
/// pipeline step after a blend.
SearchOutcome check_consistency(const Theory& theory, const Bounds& bounds,
                                unsigned long long node_limit);

/// Advisory check that the source axioms survive translation: finds a bounded
/// model of the target and evaluates every translated source axiom in it.
/// Returns warnings only (an axiom false in the found model, or no model at
/// these bounds); never blocks a pipeline.
std::vector<ParseDiagnostic> check_axiom_preservation(const Morphism& m, const Bounds& bounds,
                                                      unsigned long long node_limit);

/// Morphism file: one mapping per line — `sort A -> B`, `rel R -> S`,
/// `const c -> d` — with `#` comments.
Result<Morphism, ParseDiagnostic> parse_morphism(std::string_view text, const Theory& source,
                                                 const Theory& target);

std::string render_morphism(const Morphism& m);

/// Declarations reconstructed from the signature (sorts, then relations,
/// then constants), with the theory's axioms.
SpecDocument to_spec_document(const Theory& theory);

/// The theory in specification syntax (reparses to an equivalent theory).
std::string render_theory(const Theory& theory);

} // namespace pml
