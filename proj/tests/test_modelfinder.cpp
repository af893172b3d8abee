#include "doctest.h"

#include <stdexcept>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracle.hpp"
#include "pml/modelfinder.hpp"
#include "pml/parser.hpp"

using namespace pml;
using fixtures::kPurchaseText;

namespace {

Theory purchase_theory() { return to_theory(parse_spec(kPurchaseText).take()); }

Bounds minimal_purchase_bounds() {
    Bounds b;
    b.sizes = {{"P_nl", 2}, {"Pr_R", 1}, {"Pr_M", 1}, {"D", 1}};
    b.ranges = {{"T", {0, 1}}};
    b.collections = {{"P_ph", 1}};
    return b;
}

Theory single_sort_theory(const char* axiom_body) {
    std::string text = std::string("spec probe\n  sort S\n  rel R : S * S\n  axiom A: ") +
                       axiom_body + "\nend\n";
    return to_theory(parse_spec(text).take());
}

bool interpretations_equal(const Interpretation& a, const Interpretation& b) {
    return a.elements == b.elements && a.element_sort == b.element_sort &&
           a.ordered_value == b.ordered_value && a.collections == b.collections &&
           a.collection_members == b.collection_members && a.extensions == b.extensions;
}

} // namespace

TEST_SUITE("modelfinder") {

TEST_CASE("the bounded universe lays out carriers deterministically") {
    Theory theory = purchase_theory();
    Interpretation u = universe_from_bounds(theory.signature, minimal_purchase_bounds()).take();

    CHECK(u.elements == std::vector<std::string>{"P_nl_1", "P_nl_2", "Pr_R_1", "Pr_M_1", "0",
                                                 "1", "D_1"});
    CHECK(u.carrier("Pr") == std::vector<std::string>{"Pr_R_1", "Pr_M_1"});
    CHECK(u.carrier("T") == std::vector<std::string>{"0", "1"});
    // the single collection is the first nonempty subset of the Pr carrier
    CHECK(u.carrier("P_ph") == std::vector<std::string>{"P_ph_1"});
    CHECK(u.collection_members.at("P_ph_1") == std::set<std::string>{"Pr_R_1"});
    CHECK(u.extensions.empty());
}

TEST_CASE("explicit sizes for a sort with subsorts add dedicated elements") {
    Theory theory = purchase_theory();
    Bounds b = minimal_purchase_bounds();
    b.sizes["Pr"] = 1;
    Interpretation u = universe_from_bounds(theory.signature, b).take();
    CHECK(u.carrier("Pr") == std::vector<std::string>{"Pr_1", "Pr_R_1", "Pr_M_1"});
    CHECK(u.carrier("Pr_R") == std::vector<std::string>{"Pr_R_1"});
}

TEST_CASE("declared constants occupy the leading carrier slots") {
    const char* text = R"(spec named
  sort A
  const hub : A
  rel Link : A * A
end
)";
    Theory theory = to_theory(parse_spec(text).take());
    Bounds b;
    b.sizes = {{"A", 3}};
    Interpretation u = universe_from_bounds(theory.signature, b).take();
    CHECK(u.carrier("A") == std::vector<std::string>{"hub", "A_1", "A_2"});

    // without an explicit bound the constant still fits
    Interpretation v = universe_from_bounds(theory.signature, {}).take();
    CHECK(v.carrier("A") == std::vector<std::string>{"hub"});
}

TEST_CASE("malformed bounds are rejected") {
    Theory theory = purchase_theory();

    auto message_of = [&](const Bounds& b) {
        auto r = universe_from_bounds(theory.signature, b);
        REQUIRE_FALSE(r.ok());
        return r.errors()[0].message;
    };

    Bounds unknown = minimal_purchase_bounds();
    unknown.sizes["Spirits"] = 1;
    CHECK(message_of(unknown).find("unknown sort 'Spirits'") != std::string::npos);

    Bounds zero = minimal_purchase_bounds();
    zero.sizes["P_nl"] = 0;
    CHECK(message_of(zero).find("at least 1") != std::string::npos);

    Bounds power_size = minimal_purchase_bounds();
    power_size.sizes["P_ph"] = 2;
    CHECK(message_of(power_size).find("collection count") != std::string::npos);

    Bounds bad_range = minimal_purchase_bounds();
    bad_range.ranges["T"] = {3, 1};
    CHECK(message_of(bad_range).find("lo..hi") != std::string::npos);

    Bounds negative = minimal_purchase_bounds();
    negative.ranges["T"] = {-2, 1};
    CHECK(message_of(negative).find("nonnegative") != std::string::npos);

    Bounds too_many = minimal_purchase_bounds();
    too_many.collections["P_ph"] = 5; // only 2^2-1 = 3 nonempty subsets exist
    CHECK(message_of(too_many).find("exceeds the 3 nonempty subsets") != std::string::npos);

    Bounds not_ordered = minimal_purchase_bounds();
    not_ordered.ranges["D"] = {0, 1};
    CHECK(message_of(not_ordered).find("not an ordered sort") != std::string::npos);
}

TEST_CASE("constants of ordered or power sorts cannot be searched") {
    const char* text = R"(spec temporal
  sort T ordered
  const genesis : T
end
)";
    Theory theory = to_theory(parse_spec(text).take());
    auto r = universe_from_bounds(theory.signature, {});
    REQUIRE_FALSE(r.ok());
    CHECK(r.errors()[0].message.find("bounded search cannot name it") != std::string::npos);
    CHECK_THROWS_AS(find_model(theory, {}, 1000), std::invalid_argument);
}

TEST_CASE("the sale axiom is satisfiable at minimal bounds by the empty extension") {
    Theory theory = purchase_theory();
    SearchOutcome outcome = find_model(theory, minimal_purchase_bounds(), 100000);
    REQUIRE(outcome.status == SearchStatus::Sat);
    REQUIRE(outcome.model.has_value());
    // lexicographically first: no tuple is asserted at all
    CHECK(outcome.model->extensions.empty());
    CHECK(check_theory(*outcome.model, theory).all_true());

    SearchOutcome again = find_model(theory, minimal_purchase_bounds(), 100000);
    REQUIRE(again.status == SearchStatus::Sat);
    CHECK(interpretations_equal(*outcome.model, *again.model));
    CHECK(outcome.nodes == again.nodes);
}

TEST_CASE("a reflexivity contradiction is unsatisfiable at any bounds") {
    Theory theory = single_sort_theory("forall x: S . not (x = x)");
    Bounds b;
    for (int size = 1; size <= 3; ++size) {
        b.sizes["S"] = size;
        SearchOutcome outcome = find_model(theory, b, 100000);
        CHECK(outcome.status == SearchStatus::Unsat);
    }
}

TEST_CASE("a reflexivity tautology is satisfiable with a singleton carrier") {
    Theory theory = single_sort_theory("exists x: S . x = x");
    Bounds b;
    b.sizes["S"] = 1;
    SearchOutcome outcome = find_model(theory, b, 100000);
    REQUIRE(outcome.status == SearchStatus::Sat);
    CHECK(outcome.model->carrier("S") == std::vector<std::string>{"S_1"});
    CHECK(outcome.model->extensions.empty());
}

TEST_CASE("the finder prefers empty extensions and flips the last tuple first") {
    Theory theory = single_sort_theory("exists x, y: S . R(x, y)");
    Bounds b;
    b.sizes["S"] = 2;
    SearchOutcome outcome = find_model(theory, b, 100000);
    REQUIRE(outcome.status == SearchStatus::Sat);
    // tuples are ordered (S_1,S_1), (S_1,S_2), (S_2,S_1), (S_2,S_2); the
    // lexicographically first model keeps every earlier tuple false
    CHECK(outcome.model->extensions.at("R") ==
          std::set<std::vector<std::string>>{{"S_2", "S_2"}});
}

TEST_CASE("exhausting the node budget reports a resource limit") {
    Theory theory = purchase_theory();
    SearchOutcome outcome = find_model(theory, minimal_purchase_bounds(), 1);
    CHECK(outcome.status == SearchStatus::ResourceLimit);
    CHECK(outcome.nodes == 1);
}

TEST_CASE("model counting matches hand-computed spaces") {
    SUBCASE("one reflexive witness, no relations") {
        Theory theory = to_theory(
            parse_spec("spec t\n  sort S\n  axiom A: exists x: S . x = x\nend\n").take());
        Bounds b;
        b.sizes["S"] = 1;
        CHECK(count_models(theory, b).take() == 1);
    }
    SUBCASE("an unconstrained unary relation has one model per subset") {
        Theory theory =
            to_theory(parse_spec("spec t\n  sort S\n  rel R : S\nend\n").take());
        Bounds b;
        b.sizes["S"] = 2;
        CHECK(count_models(theory, b).take() == 4);
    }
    SUBCASE("contradictions admit no models") {
        Theory theory = single_sort_theory("forall x: S . not (x = x)");
        Bounds b;
        b.sizes["S"] = 2;
        CHECK(count_models(theory, b).take() == 0);
    }
    SUBCASE("oversized spaces are refused") {
        Theory theory = to_theory(
            parse_spec("spec t\n  sort S\n  rel R : S * S * S\nend\n").take());
        Bounds b;
        b.sizes["S"] = 3; // 27 tuple slots > 24
        auto r = count_models(theory, b);
        REQUIRE_FALSE(r.ok());
        CHECK(r.errors()[0].message.find("2^27") != std::string::npos);
    }
}

TEST_CASE("the sale axiom admits documented counts at small bounds") {
    Theory theory = purchase_theory();
    Bounds b;
    b.sizes = {{"P_nl", 1}, {"Pr_R", 1}, {"Pr_M", 1}, {"D", 1}};
    b.ranges = {{"T", {0, 1}}};
    b.collections = {{"P_ph", 1}};
    // Pur grid 1*2*1*2 = 4, PuDo grid 1*1*1*1*2 = 2
    auto counted = count_models(theory, b).take();
    CHECK(counted > 0);
    SearchOutcome outcome = find_model(theory, b, 100000);
    CHECK(outcome.status == SearchStatus::Sat);
}

TEST_CASE("search agrees with exhaustive enumeration on random theories") {
    std::mt19937_64 rng(77007);
    int compared = 0, sat_seen = 0, unsat_seen = 0;
    for (int round = 0; round < 150; ++round) {
        SpecDocument spec = gen::random_spec_document(rng);
        Theory theory = to_theory(spec);
        auto counted = count_models(theory, {});
        if (!counted.ok()) continue; // space too large for the oracle
        SearchOutcome outcome = find_model(theory, {}, 1u << 22);
        REQUIRE(outcome.status != SearchStatus::ResourceLimit);
        bool sat = outcome.status == SearchStatus::Sat;
        CHECK(sat == (counted.value() > 0));
        if (sat) {
            ++sat_seen;
            CHECK(check_theory(*outcome.model, theory).all_true());
        } else {
            ++unsat_seen;
        }
        ++compared;
    }
    CHECK(compared > 100);
    CHECK(sat_seen > 40);
    CHECK(unsat_seen > 5);
}

TEST_CASE("the found model is the lexicographically first satisfying assignment") {
    std::mt19937_64 rng(550123);
    int verified = 0;
    for (int round = 0; round < 120 && verified < 40; ++round) {
        SpecDocument spec = gen::random_spec_document(rng);
        if (spec.axioms.empty()) continue;
        Theory theory = to_theory(spec);

        Interpretation universe = universe_from_bounds(theory.signature, {}).take();
        size_t slots = 0;
        std::vector<std::pair<std::string, std::vector<std::string>>> tuples;
        for (const RelationDecl& rel : theory.signature.relations()) {
            std::vector<std::vector<std::string>> grid{{}};
            for (const std::string& slot : rel.arg_sorts) {
                std::vector<std::vector<std::string>> next;
                for (const std::vector<std::string>& prefix : grid)
                    for (const std::string& elem : universe.carrier(slot)) {
                        std::vector<std::string> t = prefix;
                        t.push_back(elem);
                        next.push_back(std::move(t));
                    }
                grid = std::move(next);
            }
            for (std::vector<std::string>& t : grid) tuples.emplace_back(rel.name, std::move(t));
        }
        slots = tuples.size();
        if (slots > 14) continue;

        // brute force: scan assignments in lexicographic order (variable 0 is
        // the most significant, false < true) and keep the first model
        std::optional<std::vector<bool>> first;
        std::vector<bool> bits(slots, false);
        while (true) {
            universe.extensions.clear();
            for (size_t i = 0; i < slots; ++i)
                if (bits[i]) universe.extensions[tuples[i].first].insert(tuples[i].second);
            bool all = true;
            for (const NamedAxiom& ax : theory.axioms)
                if (!oracle::naive_evaluate(universe, {}, ax.formula)) {
                    all = false;
                    break;
                }
            if (all) {
                first = bits;
                break;
            }
            size_t pos = slots;
            while (pos > 0 && bits[pos - 1]) bits[--pos] = false;
            if (pos == 0) break;
            bits[pos - 1] = true;
        }

        SearchOutcome outcome = find_model(theory, {}, 1u << 22);
        if (!first) {
            CHECK(outcome.status == SearchStatus::Unsat);
            continue;
        }
        REQUIRE(outcome.status == SearchStatus::Sat);
        std::map<std::string, std::set<std::vector<std::string>>> expected;
        for (size_t i = 0; i < slots; ++i)
            if ((*first)[i]) expected[tuples[i].first].insert(tuples[i].second);
        CHECK(outcome.model->extensions == expected);
        ++verified;
    }
    CHECK(verified >= 40);
}

TEST_CASE("satisfiability is monotone in the bounds") {
    Theory sent = purchase_theory();
    Bounds grown = minimal_purchase_bounds();
    grown.sizes["P_nl"] = 3;
    grown.sizes["Pr_M"] = 2;
    grown.ranges["T"] = {0, 2};
    grown.collections["P_ph"] = 3;
    CHECK(find_model(sent, grown, 1u << 22).status == SearchStatus::Sat);

    Theory witness = single_sort_theory("exists x, y: S . R(x, y)");
    for (int size = 1; size <= 4; ++size) {
        Bounds b;
        b.sizes["S"] = size;
        CHECK(find_model(witness, b, 1u << 22).status == SearchStatus::Sat);
    }
}

TEST_CASE("found models round-trip through the fact-file syntax") {
    SpecDocument spec = parse_spec(kPurchaseText).take();
    Theory theory = to_theory(spec);
    Bounds b = minimal_purchase_bounds();
    b.collections["P_ph"] = 3;
    SearchOutcome outcome = find_model(theory, b, 1u << 22);
    REQUIRE(outcome.status == SearchStatus::Sat);

    FactDocument doc = to_fact_document(*outcome.model, "found", "purchase");
    std::string text = render_facts(doc);
    auto reparsed = parse_facts(text, spec);
    REQUIRE(reparsed.ok());
    CHECK(fact_documents_equal(reparsed.value(), doc));
    Interpretation rebuilt = build_interpretation(spec.signature, reparsed.value()).take();
    CHECK(interpretations_equal(rebuilt, *outcome.model));
}

TEST_CASE("random satisfiable models round-trip through the fact-file syntax") {
    std::mt19937_64 rng(31337);
    int round_tripped = 0;
    for (int round = 0; round < 120 && round_tripped < 30; ++round) {
        SpecDocument spec = gen::random_spec_document(rng);
        Theory theory = to_theory(spec);
        SearchOutcome outcome;
        outcome = find_model(theory, {}, 1u << 18);
        if (outcome.status != SearchStatus::Sat) continue;
        FactDocument doc = to_fact_document(*outcome.model, "found", spec.name);
        auto reparsed = parse_facts(render_facts(doc), spec);
        REQUIRE(reparsed.ok());
        Interpretation rebuilt =
            build_interpretation(spec.signature, reparsed.value()).take();
        CHECK(interpretations_equal(rebuilt, *outcome.model));
        ++round_tripped;
    }
    CHECK(round_tripped >= 30);
}

} // TEST_SUITE
