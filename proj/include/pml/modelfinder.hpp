#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "pml/semantics.hpp"
#include "pml/theory.hpp"

// Bounded model search: fix carrier sizes per sort, then look for relation
// extensions satisfying every axiom.

namespace pml {

struct Bounds {
    // direct carrier size per scalar sort (elements declared at exactly that
    // sort, not counting subsort elements); defaults: 1 for sorts without
    // subsorts, 0 otherwise
    std::map<std::string, int> sizes;
    // inclusive value range per ordered sort; overrides `sizes` (which
    // otherwise means the range [0, size-1])
    std::map<std::string, std::pair<long long, long long>> ranges;
    // collection count per power sort (default 1); the finder materializes
    // the first k nonempty subsets of the base carrier in bitmask order
    std::map<std::string, int> collections;
};

enum class SearchStatus { Sat, Unsat, ResourceLimit };

struct SearchOutcome {
    SearchStatus status = SearchStatus::Unsat;
    std::optional<Interpretation> model; // set iff status == Sat
    unsigned long long nodes = 0;        // decisions explored
};

/// The bounded universe itself: fixed carriers, declared constants as the
/// leading elements of their sorts, no facts. All searched interpretations
/// extend this one.
Result<Interpretation, ParseDiagnostic> universe_from_bounds(const Signature& sig,
                                                             const Bounds& bounds);

/// Deterministic backtracking over relation extensions, deciding tuples in
/// signature order (argument positions vary last-fastest), false before true,
/// with ground-axiom propagation for pruning. A Sat outcome carries the
/// lexicographically first satisfying interpretation; Unsat means the bounded
/// space is exhausted. Throws std::invalid_argument on malformed bounds or
/// constants the finder cannot name (ordered or power sorts).
SearchOutcome find_model(const Theory& theory, const Bounds& bounds,
                         unsigned long long node_limit);

/// Exhaustive count of satisfying extensions at the same bounds, evaluated
/// tuple set by tuple set through the semantics module — an independent
/// cross-check for find_model. Refuses spaces above 2^24 candidates.
Result<unsigned long long, ParseDiagnostic> count_models(const Theory& theory,
                                                         const Bounds& bounds);

/// Found model as a fact document (round-trips through the fact parser).
FactDocument to_fact_document(const Interpretation& interp, const std::string& model_name,
                              const std::string& spec_name);

} // namespace pml
