#include "pml/statutes.hpp"

#include "pml/parser.hpp"
#include "pml/semantics.hpp"

namespace pml {
namespace {

const char* kPurchaseSpec = R"(spec purchase
  sort P_nl
  sort Pr
  sort Pr_R < Pr
  sort Pr_M < Pr
  sort T ordered
  sort D
  powersort P_ph of Pr
  rel Pur : P_nl * Pr * P_nl * T
  rel PuDo : D * P_nl * P_nl * P_ph * T
  axiom SENT: forall a, b: P_nl . forall w: P_ph . forall t: T . (exists v: Pr_R . v in w) -> ((forall s: Pr . s in w -> Pur(a, s, b, t)) <-> (exists d: D . exists r: T . r <= t /\ PuDo(d, a, b, w, r)))
end
)";

const char* kVillaSaleFacts = R"(model villa_sale for purchase
  elem anna, bertil : P_nl
  elem villa1 : Pr_R
  elem boat1 : Pr_M
  elem 3, 5 : T
  elem doc1 : D
  coll w1 : P_ph = { villa1 }
  fact Pur(anna, villa1, bertil, 5)
  fact PuDo(doc1, anna, bertil, w1, 5)
end
)";

// The documented side here quantifies over single properties and passes the
// property itself into the collection slot of PuDo.
const char* kSentLiteralSpec = R"(spec purchase_literal
  sort P_nl
  sort Pr
  sort Pr_R < Pr
  sort Pr_M < Pr
  sort T ordered
  sort D
  powersort P_ph of Pr
  rel Pur : P_nl * Pr * P_nl * T
  rel PuDo : D * P_nl * P_nl * P_ph * T
  axiom SENT_LITERAL: forall a, b: P_nl . forall w: P_ph . forall t: T . (exists v: Pr_R . v in w) -> ((forall s: Pr . s in w -> Pur(a, s, b, t)) <-> (exists d: D . exists r: T . forall s: Pr . s in w -> r <= t /\ PuDo(d, a, b, s, r)))
end
)";

const char* kNoDocumentFacts = R"(model no_document for purchase
  elem anna, bertil : P_nl
  elem villa1 : Pr_R
  elem boat1 : Pr_M
  elem 3, 5 : T
  elem doc1 : D
  coll w1 : P_ph = { villa1 }
  fact Pur(anna, villa1, bertil, 5)
end
)";

const char* kNoPurchaseFacts = R"(model no_purchase for purchase
  elem anna, bertil : P_nl
  elem villa1 : Pr_R
  elem boat1 : Pr_M
  elem 3, 5 : T
  elem doc1 : D
  coll w1 : P_ph = { villa1 }
  fact PuDo(doc1, anna, bertil, w1, 5)
end
)";

const char* kMovablesOnlyFacts = R"(model movables_only for purchase
  elem anna, bertil : P_nl
  elem villa9 : Pr_R
  elem boat1, boat2 : Pr_M
  elem 3, 5 : T
  elem doc1 : D
  coll w1 : P_ph = { boat1, boat2 }
  fact PuDo(doc1, anna, bertil, w1, 5)
end
)";

const char* kSigningTimeEqualityFacts = R"(model signing_time_equality for purchase
  elem anna, bertil : P_nl
  elem villa1 : Pr_R
  elem boat1 : Pr_M
  elem 7 : T
  elem doc1 : D
  coll w1 : P_ph = { villa1 }
  fact Pur(anna, villa1, bertil, 7)
  fact PuDo(doc1, anna, bertil, w1, 7)
end
)";

const char* kTwoPropertyLotFacts = R"(model two_property_lot for purchase
  elem anna, bertil : P_nl
  elem villa1, villa2 : Pr_R
  elem boat1 : Pr_M
  elem 5 : T
  elem doc1 : D
  coll lot : P_ph = { villa1, villa2 }
  fact Pur(anna, villa1, bertil, 5)
  fact PuDo(doc1, anna, bertil, lot, 5)
end
)";

const char* kUnrelatedBystandersFacts = R"(model unrelated_bystanders for purchase
  elem anna, bertil, cecilia : P_nl
  elem villa1 : Pr_R
  elem boat1, boat2 : Pr_M
  elem 3, 5 : T
  elem doc1 : D
  coll w1 : P_ph = { villa1 }
  fact Pur(anna, villa1, bertil, 5)
  fact PuDo(doc1, anna, bertil, w1, 5)
end
)";

Term var(const char* name) { return Variable{name}; }

} // namespace

const char* purchase_spec_text() { return kPurchaseSpec; }
const char* villa_sale_facts_text() { return kVillaSaleFacts; }
const char* sent_literal_spec_text() { return kSentLiteralSpec; }

Theory sent_theory() {
    auto parsed = parse_spec(kPurchaseSpec);
    return to_theory(parsed.value());
}

FormulaPtr sent_literal_formula() {
    auto some_real = make_exists("v", "Pr_R", make_atom("in", {var("v"), var("w")}));
    auto all_purchased =
        make_forall("s", "Pr",
                    make_implies(make_atom("in", {var("s"), var("w")}),
                                 make_atom("Pur", {var("a"), var("s"), var("b"), var("t")})));
    auto documented_each = make_exists(
        "d", "D",
        make_exists(
            "r", "T",
            make_forall(
                "s", "Pr",
                make_implies(
                    make_atom("in", {var("s"), var("w")}),
                    make_and(make_atom("<=", {var("r"), var("t")}),
                             make_atom("PuDo",
                                       {var("d"), var("a"), var("b"), var("s"), var("r")}))))));
    auto body = make_implies(some_real, make_iff(all_purchased, documented_each));
    return make_forall(
        "a", "P_nl",
        make_forall("b", "P_nl", make_forall("w", "P_ph", make_forall("t", "T", body))));
}

const std::vector<Scenario>& builtin_scenarios() {
    static const std::vector<Scenario> scenarios = {
        {"villa_sale", kVillaSaleFacts, "SENT", true,
         "Document and completed purchase both at time 5: the equivalence holds at every "
         "time point."},
        {"no_document", kNoDocumentFacts, "SENT", false,
         "The purchase relation holds at time 5 but no purchase document exists, so the "
         "purchase cannot count as concluded."},
        {"no_purchase", kNoPurchaseFacts, "SENT", false,
         "A document covers the collection at time 5, yet the purchase relation never "
         "holds for its member."},
        {"movables_only", kMovablesOnlyFacts, "SENT", true,
         "The documented collection contains only movables, so the real-property rule "
         "does not apply."},
        {"signing_time_equality", kSigningTimeEqualityFacts, "SENT", true,
         "Document and purchase coincide at time 7: the conclusion counts from the "
         "signing moment itself."},
        {"two_property_lot", kTwoPropertyLotFacts, "SENT", false,
         "The documented lot holds two real properties but only one is purchased, so the "
         "all-members reading fails."},
        {"unrelated_bystanders", kUnrelatedBystandersFacts, "SENT", true,
         "Extra persons and movables outside every collection leave the concluded sale "
         "untouched."},
    };
    return scenarios;
}

ScenarioReport run_scenario(const Scenario& s) {
    ScenarioReport report;
    report.scenario = s.name;
    auto malformed = [&](std::string detail) {
        report.malformed = true;
        report.detail = std::move(detail);
        return report;
    };

    SpecDocument spec = parse_spec(kPurchaseSpec).value();
    auto facts = parse_facts(s.facts, spec);
    if (!facts.ok()) return malformed(facts.errors().front().message);
    auto interp = build_interpretation(spec.signature, facts.value());
    if (!interp.ok()) return malformed(interp.errors().front().message);

    Theory theory = to_theory(spec);
    const NamedAxiom* axiom = theory.find_axiom(s.axiom);
    if (!axiom) return malformed("unknown axiom '" + s.axiom + "'");

    Verdict verdict = check_theory(interp.value(), Theory{theory.name, theory.signature, {*axiom}});
    report.passed = verdict.axioms.front().value == s.expected;
    std::string line = render_verdict_lines(verdict);
    if (!line.empty() && line.back() == '\n') line.pop_back();
    report.detail = line;
    return report;
}

} // namespace pml
