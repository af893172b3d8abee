// Command-line front end: parse and sort-check specifications, evaluate fact
// files, search for bounded models, blend theories along a generic space, and
// run the statute scenario suite.
//
// Exit codes: 0 success / all true; 1 logical failure (false axiom, no model,
// failing scenario); 2 usage, parse, or sort errors; 3 resource limits.

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pml/blending.hpp"
#include "pml/modelfinder.hpp"
#include "pml/parser.hpp"
#include "pml/semantics.hpp"
#include "pml/statutes.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kLogicalFailure = 1;
constexpr int kUsageError = 2;
constexpr int kResourceLimit = 3;

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void print_diagnostics(const std::string& file, const std::vector<pml::ParseDiagnostic>& diags) {
    for (const pml::ParseDiagnostic& d : diags)
        std::cerr << file << ":" << d.line << ":" << d.column << ": " << d.severity << ": "
                  << d.message << "\n";
}

nlohmann::ordered_json diagnostics_json(const std::string& file,
                                        const std::vector<pml::ParseDiagnostic>& diags) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const pml::ParseDiagnostic& d : diags)
        arr.push_back({{"file", file},
                       {"line", d.line},
                       {"column", d.column},
                       {"severity", d.severity},
                       {"message", d.message}});
    return arr;
}

/// Loads and fully checks a specification; on failure prints diagnostics and
/// returns nothing.
std::optional<pml::SpecDocument> load_spec(const std::string& path) {
    auto text = read_file(path);
    if (!text) {
        std::cerr << "pml: cannot read '" << path << "'\n";
        return std::nullopt;
    }
    auto parsed = pml::parse_spec(*text);
    if (!parsed.ok()) {
        print_diagnostics(path, parsed.errors());
        return std::nullopt;
    }
    return parsed.take();
}

// --------------------------------------------------------------------------
// check

int cmd_check(const std::string& spec_path, bool json) {
    auto text = read_file(spec_path);
    if (!text) {
        std::cerr << "pml: cannot read '" << spec_path << "'\n";
        return kUsageError;
    }
    auto parsed = pml::parse_spec(*text);
    if (!parsed.ok()) {
        print_diagnostics(spec_path, parsed.errors());
        if (json) {
            nlohmann::ordered_json report{{"ok", false},
                                          {"diagnostics", diagnostics_json(spec_path,
                                                                           parsed.errors())}};
            std::cout << report.dump(2) << "\n";
        }
        return kUsageError;
    }
    const pml::SpecDocument& doc = parsed.value();
    int constants = int(doc.signature.constants().size());
    if (json) {
        nlohmann::ordered_json report{{"ok", true},
                                      {"name", doc.name},
                                      {"sorts", doc.signature.sorts().size()},
                                      {"relations", doc.signature.relations().size()},
                                      {"constants", constants},
                                      {"axioms", doc.axioms.size()},
                                      {"diagnostics", nlohmann::ordered_json::array()}};
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << doc.name << ": " << doc.signature.sorts().size() << " sorts, "
                  << doc.signature.relations().size() << " relations, " << constants
                  << " constants, " << doc.axioms.size() << " axioms\n";
    }
    return kOk;
}

// --------------------------------------------------------------------------
// eval

int cmd_eval(const std::string& spec_path, const std::string& facts_path,
             const std::string& axiom, bool enumerate_subsets, int cap, bool json) {
    auto spec = load_spec(spec_path);
    if (!spec) return kUsageError;
    auto facts_text = read_file(facts_path);
    if (!facts_text) {
        std::cerr << "pml: cannot read '" << facts_path << "'\n";
        return kUsageError;
    }
    auto facts = pml::parse_facts(*facts_text, *spec);
    if (!facts.ok()) {
        print_diagnostics(facts_path, facts.errors());
        return kUsageError;
    }
    auto built = pml::build_interpretation(spec->signature, facts.value());
    if (!built.ok()) {
        print_diagnostics(facts_path, built.errors());
        return kUsageError;
    }
    pml::Interpretation interp = built.take();

    if (enumerate_subsets) {
        std::set<std::string> bases;
        for (const pml::Sort& s : spec->signature.sorts())
            if (s.kind == pml::SortKind::Power) bases.insert(s.base);
        for (const std::string& base : bases) {
            auto widened = pml::enumerate_collections(interp, base, cap);
            if (!widened.ok()) {
                print_diagnostics(facts_path, widened.errors());
                return kResourceLimit;
            }
            interp = widened.take();
        }
    }

    pml::Theory theory = pml::to_theory(*spec);
    if (!axiom.empty()) {
        const pml::NamedAxiom* named = theory.find_axiom(axiom);
        if (!named) {
            std::cerr << "pml: unknown axiom '" << axiom << "' in " << spec_path << "\n";
            return kUsageError;
        }
        theory.axioms = {*named};
    }
    pml::Verdict verdict = pml::check_theory(interp, theory);
    if (json)
        std::cout << pml::render_verdict_json(verdict);
    else
        std::cout << pml::render_verdict_lines(verdict);
    return verdict.all_true() ? kOk : kLogicalFailure;
}

// --------------------------------------------------------------------------
// find-model

/// "SORT=4" picks a carrier size (collection count for power sorts);
/// "SORT=lo..hi" pins an ordered sort's range.
bool apply_bound(const pml::Signature& sig, const std::string& arg, pml::Bounds& bounds,
                 std::string& error) {
    auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size()) {
        error = "bound '" + arg + "' is not of the form SORT=K or SORT=lo..hi";
        return false;
    }
    std::string sort = arg.substr(0, eq);
    std::string value = arg.substr(eq + 1);
    const pml::Sort* s = sig.find_sort(sort);
    if (!s) {
        error = "unknown sort '" + sort + "' in bound '" + arg + "'";
        return false;
    }
    auto dots = value.find("..");
    try {
        if (dots != std::string::npos) {
            if (s->kind != pml::SortKind::Ordered) {
                error = "'" + sort + "' is not an ordered sort; ranges do not apply";
                return false;
            }
            long long lo = std::stoll(value.substr(0, dots));
            long long hi = std::stoll(value.substr(dots + 2));
            bounds.ranges[sort] = {lo, hi};
        } else {
            int k = std::stoi(value);
            if (s->kind == pml::SortKind::Power)
                bounds.collections[sort] = k;
            else
                bounds.sizes[sort] = k;
        }
    } catch (const std::exception&) {
        error = "bound '" + arg + "' has a malformed number";
        return false;
    }
    return true;
}

int cmd_find_model(const std::string& spec_path, const std::vector<std::string>& bound_args,
                   unsigned long long nodes, bool json) {
    auto spec = load_spec(spec_path);
    if (!spec) return kUsageError;
    pml::Bounds bounds;
    for (const std::string& arg : bound_args) {
        std::string error;
        if (!apply_bound(spec->signature, arg, bounds, error)) {
            std::cerr << "pml: " << error << "\n";
            return kUsageError;
        }
    }
    pml::Theory theory = pml::to_theory(*spec);
    auto universe = pml::universe_from_bounds(spec->signature, bounds);
    if (!universe.ok()) {
        print_diagnostics(spec_path, universe.errors());
        return kUsageError;
    }
    pml::SearchOutcome outcome = pml::find_model(theory, bounds, nodes);

    nlohmann::ordered_json report{{"status", ""}, {"nodes", outcome.nodes},
                                  {"model", nullptr}};
    int status = kOk;
    switch (outcome.status) {
    case pml::SearchStatus::Sat: {
        std::string model_text =
            pml::render_facts(pml::to_fact_document(*outcome.model, "found", spec->name));
        report["status"] = "sat";
        report["model"] = model_text;
        if (!json) std::cout << model_text;
        break;
    }
    case pml::SearchStatus::Unsat:
        report["status"] = "unsat";
        if (!json) std::cout << "UNSAT within bounds\n";
        status = kLogicalFailure;
        break;
    case pml::SearchStatus::ResourceLimit:
        report["status"] = "resource-limit";
        std::cerr << "pml: node limit exhausted after " << outcome.nodes << " nodes\n";
        status = kResourceLimit;
        break;
    }
    if (json) std::cout << report.dump(2) << "\n";
    return status;
}

// --------------------------------------------------------------------------
// blend

int cmd_blend(const std::string& generic_path, const std::string& left_path,
              const std::string& right_path, const std::string& left_map_path,
              const std::string& right_map_path, const std::string& out_path,
              const std::vector<std::string>& bound_args, unsigned long long nodes, bool json) {
    auto generic_doc = load_spec(generic_path);
    auto left_doc = load_spec(left_path);
    auto right_doc = load_spec(right_path);
    if (!generic_doc || !left_doc || !right_doc) return kUsageError;
    pml::Theory generic = pml::to_theory(*generic_doc);
    pml::Theory left = pml::to_theory(*left_doc);
    pml::Theory right = pml::to_theory(*right_doc);

    auto load_morphism = [&](const std::string& path, const pml::Theory& source,
                             const pml::Theory& target) -> std::optional<pml::Morphism> {
        auto text = read_file(path);
        if (!text) {
            std::cerr << "pml: cannot read '" << path << "'\n";
            return std::nullopt;
        }
        auto parsed = pml::parse_morphism(*text, source, target);
        if (!parsed.ok()) {
            print_diagnostics(path, parsed.errors());
            return std::nullopt;
        }
        pml::Morphism m = parsed.take();
        auto diags = pml::check_morphism(m);
        if (!diags.empty()) {
            print_diagnostics(path, diags);
            return std::nullopt;
        }
        return m;
    };
    auto into_left = load_morphism(left_map_path, generic, left);
    auto into_right = load_morphism(right_map_path, generic, right);
    if (!into_left || !into_right) return kUsageError;

    auto result = pml::pushout(generic, *into_left, *into_right);
    if (!result.ok()) {
        print_diagnostics(generic_path, result.errors());
        return kUsageError;
    }
    pml::BlendResult blend = result.take();
    std::string blend_text = pml::render_theory(blend.blend);
    {
        std::ofstream out(out_path, std::ios::binary);
        if (!out.good()) {
            std::cerr << "pml: cannot write '" << out_path << "'\n";
            return kUsageError;
        }
        out << blend_text;
    }

    pml::Bounds bounds;
    for (const std::string& arg : bound_args) {
        std::string error;
        if (!apply_bound(blend.blend.signature, arg, bounds, error)) {
            std::cerr << "pml: " << error << "\n";
            return kUsageError;
        }
    }
    auto universe = pml::universe_from_bounds(blend.blend.signature, bounds);
    if (!universe.ok()) {
        print_diagnostics(out_path, universe.errors());
        return kUsageError;
    }
    pml::SearchOutcome outcome = pml::check_consistency(blend.blend, bounds, nodes);

    const pml::Signature& sig = blend.blend.signature;
    nlohmann::ordered_json report{{"name", blend.blend.name},
                                  {"sorts", sig.sorts().size()},
                                  {"relations", sig.relations().size()},
                                  {"constants", sig.constants().size()},
                                  {"axioms", blend.blend.axioms.size()},
                                  {"out", out_path},
                                  {"status", ""},
                                  {"nodes", outcome.nodes}};
    int status = kOk;
    std::string consistency;
    switch (outcome.status) {
    case pml::SearchStatus::Sat:
        report["status"] = "sat";
        consistency = "consistent within bounds";
        break;
    case pml::SearchStatus::Unsat:
        report["status"] = "unsat";
        consistency = "UNSAT within bounds";
        status = kLogicalFailure;
        break;
    case pml::SearchStatus::ResourceLimit:
        report["status"] = "resource-limit";
        std::cerr << "pml: node limit exhausted after " << outcome.nodes << " nodes\n";
        status = kResourceLimit;
        break;
    }
    if (json) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::cout << blend.blend.name << ": " << sig.sorts().size() << " sorts, "
                  << sig.relations().size() << " relations, " << blend.blend.axioms.size()
                  << " axioms\n"
                  << "wrote " << out_path << "\n";
        if (!consistency.empty()) std::cout << consistency << "\n";
    }
    return status;
}

// --------------------------------------------------------------------------
// scenarios

/// Optional scenario directive in a fact file: `# expect AXIOM true|false`.
/// Without one, SENT is expected to hold.
void scan_expectation(const std::string& text, std::string& axiom, bool& expected,
                      std::string& error) {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        auto hash = line.find('#');
        if (hash == std::string::npos) continue;
        std::istringstream words(line.substr(hash + 1));
        std::string keyword, name, value;
        if (!(words >> keyword) || keyword != "expect") continue;
        if (!(words >> name >> value) || (value != "true" && value != "false")) {
            error = "malformed expect directive: '" + line + "'";
            return;
        }
        axiom = name;
        expected = value == "true";
        return;
    }
}

std::string scenario_name_from_path(const std::string& path) {
    auto slash = path.find_last_of('/');
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    auto dot = name.find_last_of('.');
    if (dot != std::string::npos && dot > 0) name = name.substr(0, dot);
    return name;
}

int cmd_scenarios(const std::string& mode, const std::vector<std::string>& files, bool json) {
    if (mode == "list") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const pml::Scenario& s : pml::builtin_scenarios()) {
            if (json)
                arr.push_back({{"name", s.name},
                               {"axiom", s.axiom},
                               {"expected", s.expected},
                               {"rationale", s.rationale}});
            else
                std::cout << s.name << " (expects " << s.axiom << " "
                          << (s.expected ? "true" : "false") << "): " << s.rationale << "\n";
        }
        if (json) std::cout << arr.dump(2) << "\n";
        return kOk;
    }

    std::vector<pml::Scenario> suite = pml::builtin_scenarios();
    for (const std::string& path : files) {
        auto text = read_file(path);
        if (!text) {
            std::cerr << "pml: cannot read '" << path << "'\n";
            return kUsageError;
        }
        pml::Scenario s;
        s.name = scenario_name_from_path(path);
        s.facts = *text;
        s.axiom = "SENT";
        s.expected = true;
        std::string error;
        scan_expectation(*text, s.axiom, s.expected, error);
        if (!error.empty()) {
            std::cerr << path << ":1:1: error: " << error << "\n";
            return kUsageError;
        }
        suite.push_back(std::move(s));
    }

    int status = kOk;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const pml::Scenario& s : suite) {
        pml::ScenarioReport report = pml::run_scenario(s);
        std::string state = report.malformed ? "MALFORMED" : report.passed ? "PASS" : "FAIL";
        if (json)
            arr.push_back({{"scenario", report.scenario},
                           {"status", report.malformed ? "malformed"
                                      : report.passed  ? "pass"
                                                       : "fail"},
                           {"expected", s.expected},
                           {"detail", report.detail}});
        else
            std::cout << state << " " << report.scenario << ": " << report.detail
                      << (report.passed || report.malformed
                              ? ""
                              : std::string(" (expected ") + (s.expected ? "true" : "false") +
                                    ")")
                      << "\n";
        if (report.malformed)
            status = std::max(status, kUsageError);
        else if (!report.passed)
            status = std::max(status, kLogicalFailure);
    }
    if (json) std::cout << arr.dump(2) << "\n";
    return status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"many-sorted first-order statutes: check, evaluate, search, blend"};
    app.require_subcommand(1);
    int status = kOk;

    // check
    std::string check_spec;
    bool check_json = false;
    CLI::App* check = app.add_subcommand("check", "parse and sort-check a specification");
    check->add_option("spec", check_spec, "specification file (.pml)")->required();
    check->add_flag("--json", check_json, "machine-readable report");
    check->callback([&] { status = cmd_check(check_spec, check_json); });

    // eval
    std::string eval_spec, eval_facts, eval_axiom;
    bool eval_enumerate = false, eval_json = false;
    int eval_cap = 12;
    CLI::App* eval = app.add_subcommand("eval", "evaluate a fact file against a specification");
    eval->add_option("spec", eval_spec, "specification file (.pml)")->required();
    eval->add_option("facts", eval_facts, "fact file (.facts)")->required();
    eval->add_option("--axiom", eval_axiom, "evaluate only the named axiom");
    eval->add_flag("--enumerate-subsets", eval_enumerate,
                   "quantify collections over every nonempty subset of the base carrier");
    eval->add_option("--cap", eval_cap, "largest base carrier for --enumerate-subsets")
        ->default_val(12);
    eval->add_flag("--json", eval_json, "machine-readable report");
    eval->callback([&] {
        status = cmd_eval(eval_spec, eval_facts, eval_axiom, eval_enumerate, eval_cap, eval_json);
    });

    // find-model
    std::string fm_spec;
    std::vector<std::string> fm_bounds;
    unsigned long long fm_nodes = 10'000'000;
    bool fm_json = false;
    CLI::App* fm = app.add_subcommand("find-model", "search for a bounded model");
    fm->add_option("spec", fm_spec, "specification file (.pml)")->required();
    fm->add_option("--bound", fm_bounds, "carrier bound, SORT=K or SORT=lo..hi (repeatable)");
    fm->add_option("--nodes", fm_nodes, "search node limit")->default_val(10'000'000);
    fm->add_flag("--json", fm_json, "machine-readable report");
    fm->callback([&] { status = cmd_find_model(fm_spec, fm_bounds, fm_nodes, fm_json); });

    // blend
    std::string bl_generic, bl_left, bl_right, bl_left_map, bl_right_map;
    std::string bl_out = "blend.pml";
    std::vector<std::string> bl_bounds;
    unsigned long long bl_nodes = 10'000'000;
    bool bl_json = false;
    CLI::App* blend =
        app.add_subcommand("blend", "pushout blend of two theories over a generic space");
    blend->add_option("generic", bl_generic, "generic theory (.pml)")->required();
    blend->add_option("left", bl_left, "left input theory (.pml)")->required();
    blend->add_option("right", bl_right, "right input theory (.pml)")->required();
    blend->add_option("left_map", bl_left_map, "morphism generic -> left (.map)")->required();
    blend->add_option("right_map", bl_right_map, "morphism generic -> right (.map)")->required();
    blend->add_option("--out", bl_out, "output file for the blended specification")
        ->default_val("blend.pml");
    blend->add_option("--check-bounds", bl_bounds,
                      "consistency-check bound, SORT=K or SORT=lo..hi (repeatable)");
    blend->add_option("--nodes", bl_nodes, "consistency search node limit")
        ->default_val(10'000'000);
    blend->add_flag("--json", bl_json, "machine-readable report");
    blend->callback([&] {
        status = cmd_blend(bl_generic, bl_left, bl_right, bl_left_map, bl_right_map, bl_out,
                           bl_bounds, bl_nodes, bl_json);
    });

    // scenarios
    std::vector<std::string> sc_files;
    bool sc_json = false;
    CLI::App* scenarios = app.add_subcommand("scenarios", "statute scenario suite");
    CLI::App* sc_list = scenarios->add_subcommand("list", "print scenario names and rationales");
    bool sc_list_json = false;
    sc_list->add_flag("--json", sc_list_json, "machine-readable report");
    sc_list->callback([&] { status = cmd_scenarios("list", {}, sc_list_json); });
    CLI::App* sc_run = scenarios->add_subcommand("run", "run builtin and extra scenarios");
    sc_run->add_option("files", sc_files, "extra scenario fact files");
    sc_run->add_flag("--json", sc_json, "machine-readable report");
    sc_run->callback([&] { status = cmd_scenarios("run", sc_files, sc_json); });
    scenarios->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }
    return status;
}
