#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pml/kernel.hpp"
#include "pml/parser.hpp"
#include "pml/theory.hpp"

// Finite closed-world interpretations and Tarskian evaluation. Elements are
// identified by name; constants denote the element of the same name.

namespace pml {

using Assignment = std::map<std::string, std::string>;

struct Interpretation {
    Signature signature;

    std::vector<std::string> elements; // declaration order
    std::map<std::string, std::string> element_sort; // most specific sort
    std::map<std::string, long long> ordered_value;  // elements of ordered sorts

    std::vector<std::string> collections; // declaration order
    std::map<std::string, std::string> collection_sort;
    std::map<std::string, std::set<std::string>> collection_members;

    // relation name -> tuple set; tuples hold element/collection names
    std::map<std::string, std::set<std::vector<std::string>>> extensions;

    // per sort, in canonical order: declaration order for scalar carriers
    // (ascending values for ordered sorts), declaration order for collections
    std::map<std::string, std::vector<std::string>> carriers;

    /// Carrier of a sort including subsort elements. Throws std::logic_error
    /// for unknown sorts.
    const std::vector<std::string>& carrier(std::string_view sort) const;
};

/// Closed-world interpretation from a fact document: relation extensions are
/// exactly the listed facts. Collects all diagnostics (unknown names, sort
/// violations, duplicates, missing constants, empty carriers).
Result<Interpretation, ParseDiagnostic> build_interpretation(const Signature& sig,
                                                             const FactDocument& facts);

/// Tarskian satisfaction. `env` must cover the free variables of `f`;
/// violations are programming errors and throw std::logic_error.
bool evaluate(const Interpretation& interp, const Assignment& env, const FormulaPtr& f);

struct WitnessBinding {
    std::string var;
    std::string element;
    bool operator==(const WitnessBinding&) const = default;
};

struct AxiomVerdict {
    std::string axiom;
    bool value = false;
    // falsifying assignment for the outermost universal block, empty when
    // the axiom holds or has no leading universal quantifier
    std::vector<WitnessBinding> witness;
};

struct Verdict {
    std::vector<AxiomVerdict> axioms;
    bool all_true() const {
        for (const AxiomVerdict& v : axioms)
            if (!v.value) return false;
        return true;
    }
};

/// Evaluates every axiom in declaration order. Throws std::invalid_argument
/// when the theory's signature does not match the interpretation's.
Verdict check_theory(const Interpretation& interp, const Theory& theory);

/// Replaces the carriers of all power sorts over `base_sort` with every
/// nonempty subset of the base carrier; extensions referencing declared
/// collections are rewritten to the subset with the same member set.
/// Refuses base carriers larger than `cap`.
Result<Interpretation, ParseDiagnostic> enumerate_collections(const Interpretation& interp,
                                                              std::string_view base_sort,
                                                              int cap);

/// `AXIOM <name>: <true|false> [witness: var=elem, ...]`, one line per axiom.
std::string render_verdict_lines(const Verdict& verdict);

/// JSON array, one object per axiom with fields axiom, value, witness.
std::string render_verdict_json(const Verdict& verdict);

} // namespace pml
