#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pml/kernel.hpp"
#include "pml/result.hpp"
#include "pml/theory.hpp"

// Textual formats: specification files (.pml) carrying a signature plus named
// axioms, and fact files (.facts) carrying a finite interpretation. Parsing is
// ASCII-first; the unicode operator spellings are accepted as aliases and
// rendering always emits the ASCII forms.

namespace pml {

struct ParseDiagnostic {
    int line = 1; // 1-based, columns count code points
    int column = 1;
    std::string message;
    std::string severity = "error";
};

struct SpecDocument {
    std::string name;
    std::vector<Declaration> declarations;
    std::vector<NamedAxiom> axioms;
    Signature signature; // derived from declarations during parsing
};

/// Structural equality modulo bound variable names. The signature field is
/// derived and not compared.
bool spec_documents_equal(const SpecDocument& a, const SpecDocument& b);

struct ElementEntry {
    std::string name; // integer spelling for ordered-sort elements
    std::string sort;
    SourceLoc loc{};
    bool operator==(const ElementEntry& o) const { return name == o.name && sort == o.sort; }
};
struct CollectionEntry {
    std::string name;
    std::string sort; // a power sort
    std::vector<std::string> members;
    SourceLoc loc{};
    bool operator==(const CollectionEntry& o) const {
        return name == o.name && sort == o.sort && members == o.members;
    }
};
struct FactEntry {
    std::string relation;
    std::vector<std::string> args; // element or collection names
    SourceLoc loc{};
    bool operator==(const FactEntry& o) const {
        return relation == o.relation && args == o.args;
    }
};

struct FactDocument {
    std::string name;
    std::string spec_name;
    std::vector<ElementEntry> elements;
    std::vector<CollectionEntry> collections;
    std::vector<FactEntry> facts;
};

bool fact_documents_equal(const FactDocument& a, const FactDocument& b);

/// Parses a specification. The result is fully checked: its declarations form
/// a valid signature and every axiom is well-sorted and closed; violations
/// come back as diagnostics with source positions.
Result<SpecDocument, ParseDiagnostic> parse_spec(std::string_view text);

/// Parses a fact file syntactically. Name resolution against a specification
/// happens when an interpretation is built.
Result<FactDocument, ParseDiagnostic> parse_facts(std::string_view text);

/// Like above, but additionally resolves the document against `spec`:
/// unknown sorts and relations, relation arity, numeric naming of
/// ordered-sort elements, and collection member compatibility.
Result<FactDocument, ParseDiagnostic> parse_facts(std::string_view text,
                                                  const SpecDocument& spec);

/// Canonical text forms. Rendering a parsed document reproduces an equal
/// document; rendering is a fixed point on its own output.
std::string render_formula(const FormulaPtr& f);
std::string render_spec(const SpecDocument& doc);
std::string render_facts(const FactDocument& doc);

inline Theory to_theory(const SpecDocument& doc) {
    return Theory{doc.name, doc.signature, doc.axioms};
}

} // namespace pml
