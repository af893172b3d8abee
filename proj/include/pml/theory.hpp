#pragma once

#include <string>
#include <vector>

#include "pml/kernel.hpp"

namespace pml {

struct NamedAxiom {
    std::string name;
    FormulaPtr formula;
};

/// A signature with named closed axioms. Axiom formulas are expected to be
/// well-sorted and closed over the signature; producers enforce this.
struct Theory {
    std::string name;
    Signature signature;
    std::vector<NamedAxiom> axioms;

    const NamedAxiom* find_axiom(std::string_view axiom_name) const {
        for (const NamedAxiom& a : axioms)
            if (a.name == axiom_name) return &a;
        return nullptr;
    }
};

} // namespace pml
