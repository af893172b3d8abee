// End-to-end tests for the command-line binary: every subcommand, every exit
// status, and the stability of machine-readable output. Each case spawns the
// real executable and inspects its streams, so these tests double as a check
// that stdout carries reports and stderr carries diagnostics.

#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "pml/blending.hpp"
#include "pml/parser.hpp"
#include "pml/semantics.hpp"
#include "pml/statutes.hpp"

#include "fixtures.hpp"

using namespace pml;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::filesystem::path scratch_dir() {
    static std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() /
                 ("pml_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string write_temp(const std::string& name, const std::string& content) {
    auto path = scratch_dir() / name;
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << content;
    out.close();
    return path.string();
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    auto out_path = scratch_dir() / ("stdout_" + std::to_string(counter));
    auto err_path = scratch_dir() / ("stderr_" + std::to_string(counter));
    ++counter;
    std::string command = std::string(PML_CLI_PATH) + " " + args + " > " + out_path.string() +
                          " 2> " + err_path.string();
    int raw = std::system(command.c_str());
    CliResult result;
    result.code = (raw != -1 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    std::filesystem::remove(out_path);
    std::filesystem::remove(err_path);
    return result;
}

std::string data_path(const std::string& name) {
    return std::string(PML_DATA_DIR) + "/" + name;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

/// Fact file with twelve real properties and one movable: thirteen elements
/// in the property carrier, one more than the default subset-enumeration cap.
std::string thirteen_property_facts() {
    std::string elems = "v1";
    for (int i = 2; i <= 12; ++i) elems += ", v" + std::to_string(i);
    return "model big for purchase\n"
           "  elem anna, bertil : P_nl\n"
           "  elem " + elems + " : Pr_R\n"
           "  elem boat1 : Pr_M\n"
           "  elem 5 : T\n"
           "  elem doc1 : D\n"
           "  coll w1 : P_ph = { v1 }\n"
           "end\n";
}

const char* kMinimalBounds =
    "--bound P_nl=2 --bound Pr_R=1 --bound Pr_M=1 --bound D=1 "
    "--bound T=0..1 --bound P_ph=1";

} // namespace

TEST_SUITE("cli") {

TEST_CASE("check summarizes a well-sorted specification") {
    CliResult r = run_cli("check " + data_path("purchase.pml"));
    CHECK(r.code == 0);
    CHECK(r.out == "purchase: 7 sorts, 2 relations, 0 constants, 1 axioms\n");
    CHECK(r.err.empty());
}

TEST_CASE("check rejects the elementwise document variant with one sort diagnostic") {
    std::string path = write_temp("literal.pml", sent_literal_spec_text());
    CliResult r = run_cli("check " + path);
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(contains(r.err, path + ":"));
    CHECK(contains(r.err, "error: "));
    CHECK(contains(r.err, "expected P_ph(Pr), found Pr"));
    // Exactly one diagnostic line.
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
}

TEST_CASE("usage errors exit with status 2") {
    CHECK(run_cli("check /no/such/file.pml").code == 2);
    CHECK(contains(run_cli("check /no/such/file.pml").err, "cannot read"));
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("check").code == 2);
    CHECK(run_cli("scenarios").code == 2);
    CHECK(run_cli("eval " + data_path("purchase.pml")).code == 2);
    CHECK(run_cli("--help").code == 0);
}

TEST_CASE("check --json reports the same summary machine-readably") {
    CliResult r = run_cli("check " + data_path("purchase.pml") + " --json");
    CHECK(r.code == 0);
    auto report = nlohmann::json::parse(r.out);
    CHECK(report["ok"] == true);
    CHECK(report["name"] == "purchase");
    CHECK(report["sorts"] == 7);
    CHECK(report["relations"] == 2);
    CHECK(report["axioms"] == 1);
    CHECK(report["diagnostics"].empty());
}

TEST_CASE("eval prints the verdict for the shipped sale facts") {
    CliResult r = run_cli("eval " + data_path("purchase.pml") + " " +
                          data_path("villa_sale.facts"));
    CHECK(r.code == 0);
    CHECK(r.out == "AXIOM SENT: true\n");
    CHECK(r.err.empty());
}

TEST_CASE("eval reports the falsifying assignment when the purchase fact is missing") {
    CliResult r = run_cli("eval " + data_path("purchase.pml") + " " +
                          data_path("scenarios/no_purchase.facts"));
    CHECK(r.code == 1);
    CHECK(r.out == "AXIOM SENT: false [witness: a=anna, b=bertil, w=w1, t=5]\n");
}

TEST_CASE("eval --axiom selects a single axiom and rejects unknown names") {
    CliResult named = run_cli("eval " + data_path("purchase.pml") + " " +
                              data_path("villa_sale.facts") + " --axiom SENT");
    CHECK(named.code == 0);
    CHECK(named.out == "AXIOM SENT: true\n");

    CliResult unknown = run_cli("eval " + data_path("purchase.pml") + " " +
                                data_path("villa_sale.facts") + " --axiom NOPE");
    CHECK(unknown.code == 2);
    CHECK(contains(unknown.err, "unknown axiom 'NOPE'"));
}

TEST_CASE("eval --enumerate-subsets enforces the base-carrier cap") {
    std::string path = write_temp("big.facts", thirteen_property_facts());
    std::string spec = data_path("purchase.pml");

    CliResult capped = run_cli("eval " + spec + " " + path + " --enumerate-subsets");
    CHECK(capped.code == 3);
    CHECK(contains(capped.err, "cannot enumerate subsets of 'Pr'"));
    CHECK(contains(capped.err, "carrier has 13 elements, cap is 12"));

    CliResult raised = run_cli("eval " + spec + " " + path + " --enumerate-subsets --cap 13");
    CHECK(raised.code == 0);
    CHECK(raised.out == "AXIOM SENT: true\n");

    CliResult shipped = run_cli("eval " + spec + " " + data_path("villa_sale.facts") +
                                " --enumerate-subsets");
    CHECK(shipped.code == 0);
    CHECK(shipped.out == "AXIOM SENT: true\n");
}

TEST_CASE("eval --json carries the witness assignment") {
    CliResult r = run_cli("eval " + data_path("purchase.pml") + " " +
                          data_path("scenarios/no_purchase.facts") + " --json");
    CHECK(r.code == 1);
    auto report = nlohmann::json::parse(r.out);
    REQUIRE(report.size() == 1);
    CHECK(report[0]["axiom"] == "SENT");
    CHECK(report[0]["value"] == false);
    CHECK(report[0]["witness"]["a"] == "anna");
    CHECK(report[0]["witness"]["b"] == "bertil");
    CHECK(report[0]["witness"]["w"] == "w1");
    CHECK(report[0]["witness"]["t"] == "5");

    CliResult t = run_cli("eval " + data_path("purchase.pml") + " " +
                          data_path("villa_sale.facts") + " --json");
    CHECK(t.code == 0);
    auto true_report = nlohmann::json::parse(t.out);
    CHECK(true_report[0]["value"] == true);
    CHECK(true_report[0]["witness"].is_null());
}

TEST_CASE("find-model emits a model that satisfies the theory") {
    CliResult r = run_cli("find-model " + data_path("purchase.pml") + " " + kMinimalBounds);
    CHECK(r.code == 0);
    CHECK(r.err.empty());

    auto spec = parse_spec(purchase_spec_text()).take();
    auto facts = parse_facts(r.out, spec);
    REQUIRE(facts.ok());
    CHECK(facts.value().name == "found");
    auto interp = build_interpretation(spec.signature, facts.value());
    REQUIRE(interp.ok());
    CHECK(check_theory(interp.value(), to_theory(spec)).all_true());
}

TEST_CASE("find-model output is identical across runs") {
    std::string args = "find-model " + data_path("purchase.pml") + " " + kMinimalBounds;
    CliResult first = run_cli(args);
    CliResult second = run_cli(args);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);

    CliResult json_first = run_cli(args + " --json");
    CliResult json_second = run_cli(args + " --json");
    CHECK(json_first.code == 0);
    CHECK(json_first.out == json_second.out);
    auto report = nlohmann::json::parse(json_first.out);
    CHECK(report["status"] == "sat");
    CHECK(report["model"] == first.out);
}

TEST_CASE("find-model reports unsatisfiable theories on stdout with status 1") {
    std::string path = write_temp("contradiction.pml",
                                  "spec contradiction\n"
                                  "  sort S\n"
                                  "  rel R : S\n"
                                  "  axiom ALL: forall x: S . R(x)\n"
                                  "  axiom NONE: forall x: S . not R(x)\n"
                                  "end\n");
    CliResult r = run_cli("find-model " + path + " --bound S=1");
    CHECK(r.code == 1);
    CHECK(r.out == "UNSAT within bounds\n");
}

TEST_CASE("find-model stops at the node limit with status 3") {
    CliResult r = run_cli("find-model " + data_path("purchase.pml") + " " + kMinimalBounds +
                          " --nodes 1");
    CHECK(r.code == 3);
    CHECK(contains(r.err, "node limit exhausted"));
}

TEST_CASE("find-model rejects malformed bounds") {
    std::string spec = data_path("purchase.pml");
    CliResult unknown = run_cli("find-model " + spec + " --bound Nope=2");
    CHECK(unknown.code == 2);
    CHECK(contains(unknown.err, "unknown sort 'Nope'"));

    CliResult zero = run_cli("find-model " + spec + " --bound P_nl=0");
    CHECK(zero.code == 2);
    CHECK(contains(zero.err, "must be at least 1"));

    CliResult reversed = run_cli("find-model " + spec + " --bound T=5..1");
    CHECK(reversed.code == 2);
    CHECK(contains(reversed.err, "nonnegative lo..hi span"));

    CliResult junk = run_cli("find-model " + spec + " --bound P_nl=two");
    CHECK(junk.code == 2);
    CHECK(contains(junk.err, "malformed number"));

    CliResult range_on_base = run_cli("find-model " + spec + " --bound P_nl=0..1");
    CHECK(range_on_base.code == 2);
    CHECK(contains(range_on_base.err, "not an ordered sort"));
}

TEST_CASE("blend emits the blended theory and checks its consistency") {
    std::string out = (scratch_dir() / "transfer_blend.pml").string();
    std::string args = "blend " + data_path("transfer.pml") + " " + data_path("purchase.pml") +
                       " " + data_path("movable_sale.pml") + " " +
                       data_path("transfer_to_purchase.map") + " " +
                       data_path("transfer_to_movable_sale.map") + " --out " + out +
                       " --check-bounds P_nl=2 --check-bounds Pr_R=1 --check-bounds Pr_M=1"
                       " --check-bounds D=2 --check-bounds T=0..1 --check-bounds P_ph=2";
    CliResult r = run_cli(args);
    CHECK(r.code == 0);
    CHECK(contains(r.out, "purchase_movable_sale_blend: 7 sorts, 3 relations, 3 axioms"));
    CHECK(contains(r.out, "wrote " + out));
    CHECK(contains(r.out, "consistent within bounds"));

    std::string emitted = slurp(out);
    auto parsed = parse_spec(emitted);
    REQUIRE(parsed.ok());
    CHECK(parsed.value().name == "purchase_movable_sale_blend");
    CHECK(parsed.value().axioms.size() == 3);

    CliResult again = run_cli(args);
    CHECK(slurp(out) == emitted);
    CHECK(again.out == r.out);
}

TEST_CASE("blend of the identity span reproduces the input theory") {
    std::string identity_map = write_temp("purchase_identity.map",
                                          "sort P_nl -> P_nl\n"
                                          "sort Pr -> Pr\n"
                                          "sort Pr_R -> Pr_R\n"
                                          "sort Pr_M -> Pr_M\n"
                                          "sort T -> T\n"
                                          "sort D -> D\n"
                                          "sort P_ph -> P_ph\n"
                                          "rel Pur -> Pur\n"
                                          "rel PuDo -> PuDo\n");
    std::string out = (scratch_dir() / "identity_blend.pml").string();
    std::string spec = data_path("purchase.pml");
    CliResult r = run_cli("blend " + spec + " " + spec + " " + spec + " " + identity_map + " " +
                          identity_map + " --out " + out +
                          " --check-bounds P_nl=1 --check-bounds Pr_R=1 --check-bounds Pr_M=1"
                          " --check-bounds D=1 --check-bounds T=0..0 --check-bounds P_ph=1");
    CHECK(r.code == 0);

    auto emitted = parse_spec(slurp(out));
    REQUIRE(emitted.ok());
    auto original = parse_spec(purchase_spec_text()).take();
    CHECK(emitted.value().signature.equivalent(original.signature));
    REQUIRE(emitted.value().axioms.size() == 1);
    CHECK(emitted.value().axioms[0].name == "SENT");
    CHECK(alpha_equal(emitted.value().axioms[0].formula, original.axioms[0].formula));
}

TEST_CASE("blend rejects invalid morphism files with diagnostics") {
    std::string swapped = "blend " + data_path("transfer.pml") + " " + data_path("purchase.pml") +
                          " " + data_path("movable_sale.pml") + " " +
                          data_path("transfer_to_movable_sale.map") + " " +
                          data_path("transfer_to_purchase.map") + " --out " +
                          (scratch_dir() / "never.pml").string();
    CliResult r = run_cli(swapped);
    CHECK(r.code == 2);
    CHECK(contains(r.err, "maps to unknown sort"));

    std::string bad_arity = write_temp("bad_arity.map",
                                       "sort Agent -> P_nl\n"
                                       "sort Thing -> Pr\n"
                                       "sort Time -> T\n"
                                       "rel Trans -> PuDo\n");
    CliResult arity = run_cli("blend " + data_path("transfer.pml") + " " +
                              data_path("purchase.pml") + " " + data_path("movable_sale.pml") +
                              " " + bad_arity + " " + data_path("transfer_to_movable_sale.map") +
                              " --out " + (scratch_dir() / "never.pml").string());
    CHECK(arity.code == 2);
    CHECK(contains(arity.err, "arity"));
}

TEST_CASE("scenarios list names every builtin scenario") {
    CliResult r = run_cli("scenarios list");
    CHECK(r.code == 0);
    for (const Scenario& s : builtin_scenarios()) {
        CHECK(contains(r.out, s.name));
        CHECK(contains(r.out, s.rationale));
    }

    CliResult json = run_cli("scenarios list --json");
    CHECK(json.code == 0);
    auto report = nlohmann::json::parse(json.out);
    CHECK(report.size() == builtin_scenarios().size());
    CHECK(report[0]["name"] == "villa_sale");
}

TEST_CASE("scenarios run passes the builtin suite") {
    CliResult r = run_cli("scenarios run");
    CHECK(r.code == 0);
    size_t pass_lines = 0;
    std::istringstream lines(r.out);
    std::string line;
    while (std::getline(lines, line))
        if (line.rfind("PASS ", 0) == 0) ++pass_lines;
    CHECK(pass_lines == builtin_scenarios().size());
    CHECK(!contains(r.out, "FAIL"));
    CHECK(!contains(r.out, "MALFORMED"));
}

TEST_CASE("scenarios run flags an injected failing scenario") {
    // The shipped sale facts make the axiom true, so expecting false fails.
    std::string failing = write_temp("flipped.facts",
                                     std::string("# expect SENT false\n") +
                                         villa_sale_facts_text());
    CliResult r = run_cli("scenarios run " + failing);
    CHECK(r.code == 1);
    CHECK(contains(r.out, "FAIL flipped"));
    CHECK(contains(r.out, "(expected false)"));

    std::string malformed = write_temp("garbled.facts", "model oops for purchase\n  elem\nend\n");
    CliResult m = run_cli("scenarios run " + malformed);
    CHECK(m.code == 2);
    CHECK(contains(m.out, "MALFORMED garbled"));

    // A correct extra file keeps the suite green.
    std::string passing = write_temp("extra.facts", villa_sale_facts_text());
    CliResult p = run_cli("scenarios run " + passing);
    CHECK(p.code == 0);
    CHECK(contains(p.out, "PASS extra"));
}

TEST_CASE("scenarios run --json reports one entry per scenario") {
    CliResult r = run_cli("scenarios run --json");
    CHECK(r.code == 0);
    auto report = nlohmann::json::parse(r.out);
    REQUIRE(report.size() == builtin_scenarios().size());
    for (const auto& entry : report) CHECK(entry["status"] == "pass");
    CliResult again = run_cli("scenarios run --json");
    CHECK(again.out == r.out);
}

} // TEST_SUITE("cli")
