#pragma once

#include <string>
#include <vector>

#include "pml/kernel.hpp"
#include "pml/theory.hpp"

// The land-purchase statute: its canonical formalization, the historically
// ill-sorted per-property variant, and a curated scenario suite.

namespace pml {

/// Specification text of the purchase theory (axiom SENT). The shipped
/// data/purchase.pml is byte-identical.
const char* purchase_spec_text();

/// The worked sale record matching the purchase specification; byte-identical
/// to data/villa_sale.facts.
const char* villa_sale_facts_text();

/// Variant specification whose axiom SENT_LITERAL documents each property
/// separately, passing a single property where the collection slot is
/// expected. Parsing rejects it with exactly one sort diagnostic.
const char* sent_literal_spec_text();

/// Parsed purchase theory.
Theory sent_theory();

/// The SENT_LITERAL body built over the purchase signature — the negative
/// sort-check fixture behind sent_literal_spec_text().
FormulaPtr sent_literal_formula();

struct Scenario {
    std::string name;
    std::string facts; // fact-file syntax against the purchase specification
    std::string axiom; // axiom under test
    bool expected = true;
    std::string rationale;
};

/// The curated suite: concluded sale, missing document, missing purchase,
/// movables-only collection, signing-time equality, a two-property lot with
/// one straggler, and unrelated bystanders.
const std::vector<Scenario>& builtin_scenarios();

struct ScenarioReport {
    std::string scenario;
    bool malformed = false; // facts did not parse/bind, or the axiom is unknown
    bool passed = false;
    std::string detail; // verdict line (with witness) or the first diagnostic
};

/// Parses the scenario's facts against the purchase specification, evaluates
/// the named axiom, and compares with the expected verdict.
ScenarioReport run_scenario(const Scenario& s);

} // namespace pml
