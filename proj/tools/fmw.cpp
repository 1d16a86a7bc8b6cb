// fmw: a workbench for finite relational structures. Subcommands cover
// Gaifman machinery, homomorphism search, cores, first-order evaluation,
// pebble games, locality checks, the core model structure classifiers and
// exhaustive cross-check sweeps.
//
// Exit codes: 0 success / true verdict, 1 false verdict / proven absence,
// 2 cap or budget exhausted, 3 malformed input.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fmw/canonical.hpp"
#include "fmw/category.hpp"
#include "fmw/cores.hpp"
#include "fmw/enumerate.hpp"
#include "fmw/error.hpp"
#include "fmw/games.hpp"
#include "fmw/gaifman.hpp"
#include "fmw/homotopy.hpp"
#include "fmw/homsearch.hpp"
#include "fmw/logic.hpp"
#include "fmw/report.hpp"
#include "fmw/serialize.hpp"
#include "fmw/sweeps.hpp"

namespace {

using fmw::json;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitBudget = 2;
constexpr int kExitInput = 3;

struct Output {
    std::string format = "text";

    // Verdict-style command: human line or machine report.
    int verdict(fmw::Report report, double ms) const {
        report.timing_ms = ms;
        bool truthy = !report.verdict.is_boolean() || report.verdict.get<bool>();
        if (format == "machine")
            std::cout << fmw::machine_text(report);
        else
            std::cout << fmw::human_text(report);
        return truthy ? kExitTrue : kExitFalse;
    }

    // Document-producing command: raw canonical document in text mode.
    int document(fmw::Report report, const json& doc, double ms) const {
        report.witness = doc;
        report.timing_ms = ms;
        if (format == "machine")
            std::cout << fmw::machine_text(report);
        else
            std::cout << fmw::dump_canonical(doc);
        return kExitTrue;
    }
};

std::string resolve_input_path(const std::string& arg) {
    namespace fs = std::filesystem;
    if (fs::exists(arg)) return arg;
    const char* env = std::getenv("FMT_FIXTURES");
    std::string dir = env ? env : "fixtures";
    std::string joined = dir + "/" + arg;
    if (fs::exists(joined)) return joined;
    throw fmw::InputError("cannot find structure file: " + arg + " (also tried " + joined + ")");
}

fmw::Structure load(const std::string& arg) {
    return fmw::load_structure(resolve_input_path(arg));
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (!item.empty()) out.push_back(item);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::map<std::string, std::string> split_pairs(const std::string& text) {
    std::map<std::string, std::string> out;
    for (const auto& item : split_list(text)) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw fmw::InputError("expected name=value in: " + item);
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

std::set<std::string> split_set(const std::string& text) {
    auto list = split_list(text);
    return {list.begin(), list.end()};
}

std::vector<std::pair<std::string, fmw::Structure>> load_directory(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir))
        throw fmw::InputError("not a directory: " + dir);
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file()) files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    std::vector<std::pair<std::string, fmw::Structure>> out;
    for (const auto& path : files)
        out.emplace_back(fs::path(path).filename().string(), fmw::load_structure(path));
    if (out.empty())
        throw fmw::InputError("no structure files in directory: " + dir);
    return out;
}

json poset_to_json(const fmw::Poset& poset) {
    json classes = json::array();
    for (const auto& cls : poset.classes)
        classes.push_back(
            {{"members", cls.members}, {"representative", fmw::to_json(cls.representative)}});
    json hasse = json::array();
    for (auto [i, j] : poset.hasse_edges()) hasse.push_back(json::array({i, j}));
    json order = json::array();
    for (const auto& row : poset.leq) {
        json r = json::array();
        for (bool b : row) r.push_back(b);
        order.push_back(r);
    }
    return json{{"classes", classes}, {"hasse_edges", hasse}, {"order", order}};
}

json map_to_json(const std::map<std::string, std::string>& map) {
    json out = json::object();
    for (const auto& [k, v] : map) out[k] = v;
    return out;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

json sweep_bounds(const fmw::SweepOutcome& outcome) {
    json j = outcome.bounds;
    j["cases"] = outcome.cases;
    return j;
}

int run_sweep_outcome(const Output& output, const std::string& command,
                      const fmw::SweepOutcome& outcome, double ms) {
    fmw::Report report;
    report.command = command;
    report.verdict = outcome.passed();
    report.bounds = sweep_bounds(outcome);
    report.witness = json{{"counterexamples", outcome.counterexamples},
                          {"details", outcome.details}};
    if (output.format == "machine") {
        report.timing_ms = ms;
        std::cout << fmw::machine_text(report);
    } else {
        std::cout << outcome.check << ": " << (outcome.passed() ? "pass" : "FAIL") << " ("
                  << outcome.cases << " cases, " << outcome.counterexamples
                  << " counterexamples)\n";
        for (const auto& d : outcome.details) std::cout << "  " << d << "\n";
    }
    return outcome.passed() ? kExitTrue : kExitFalse;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-model workbench"};
    app.require_subcommand(1);

    Output output;
    app.add_option("--format", output.format, "report format")
        ->check(CLI::IsMember({"text", "machine"}))
        ->default_val("text");

    fmw::SearchBudget budget;
    app.add_option("--node-limit", budget.node_limit, "search/game node budget (0 = unlimited)")
        ->default_val(10'000'000);
    app.add_option("--time-limit-ms", budget.time_limit_ms, "wall-clock budget per search")
        ->default_val(0);

    // ---- structures / gaifman ------------------------------------------
    std::string arg_a, arg_b, arg_dir, arg_formula, arg_vocab;
    std::string arg_tuple, arg_tuple_b, arg_over, arg_pins, arg_assign, arg_onto, arg_equiv;
    int arg_k = 1, arg_d = 1, arg_radius = 1, arg_max_size = 3, arg_size_cap = 3,
        arg_pool_cap = 3, arg_k_max = 2;
    bool flag_all = false, flag_surjective = false, flag_strict = false;

    auto* cmd_validate = app.add_subcommand("validate", "check a structure file");
    cmd_validate->add_option("structure", arg_a)->required();

    auto* cmd_gaifman = app.add_subcommand("gaifman", "Gaifman graph of a structure");
    cmd_gaifman->add_option("structure", arg_a)->required();

    auto* cmd_neighborhood =
        app.add_subcommand("neighborhood", "r-neighborhood of a tuple, as an expanded structure");
    cmd_neighborhood->add_option("structure", arg_a)->required();
    cmd_neighborhood->add_option("--radius", arg_radius)->required();
    cmd_neighborhood->add_option("--tuple", arg_tuple, "comma-separated elements")->required();

    auto* cmd_treedepth = app.add_subcommand("treedepth", "exact tree-depth of the Gaifman graph");
    cmd_treedepth->add_option("structure", arg_a)->required();
    cmd_treedepth->add_option("--over", arg_over, "elements deleted first");

    // ---- homomorphism search -------------------------------------------
    auto* cmd_hom = app.add_subcommand("hom", "find a homomorphism A -> B");
    cmd_hom->add_option("A", arg_a)->required();
    cmd_hom->add_option("B", arg_b)->required();
    cmd_hom->add_option("--pin", arg_pins, "comma-separated a=b pins");
    cmd_hom->add_flag("--surjective", flag_surjective);
    cmd_hom->add_flag("--all", flag_all);

    auto* cmd_retract = app.add_subcommand("retract", "find a retraction onto a substructure");
    cmd_retract->add_option("A", arg_a)->required();
    cmd_retract->add_option("--onto", arg_onto, "elements of the substructure")->required();

    // ---- cores ----------------------------------------------------------
    auto* cmd_core = app.add_subcommand("core", "the core of a structure");
    cmd_core->add_option("A", arg_a)->required();
    cmd_core->add_option("--over", arg_over);

    auto* cmd_poset = app.add_subcommand("poset", "hom-order quotient of a directory of structures");
    cmd_poset->add_option("dir", arg_dir)->required();
    cmd_poset->add_option("--over", arg_over);

    // ---- logic ----------------------------------------------------------
    auto* cmd_eval = app.add_subcommand("eval", "evaluate a formula on a structure");
    cmd_eval->add_option("structure", arg_a)->required();
    cmd_eval->add_option("formula", arg_formula)->required();
    cmd_eval->add_option("--assign", arg_assign, "free-variable assignment x=a,...");

    auto* cmd_qr = app.add_subcommand("qr", "quantifier rank of a formula");
    cmd_qr->add_option("formula", arg_formula)->required();

    auto* cmd_classify = app.add_subcommand("classify", "pp / existential-positive / general");
    cmd_classify->add_option("formula", arg_formula)->required();

    auto* cmd_canonical_structure =
        app.add_subcommand("canonical-structure", "canonical structure of a pp sentence");
    cmd_canonical_structure->add_option("formula", arg_formula)->required();
    cmd_canonical_structure->add_option("--vocab", arg_vocab, "vocabulary spec, e.g. E/2,c_1");

    auto* cmd_canonical_sentence =
        app.add_subcommand("canonical-sentence", "pp sentence whose models are the hom-targets");
    cmd_canonical_sentence->add_option("C", arg_a)->required();
    cmd_canonical_sentence->add_option("--over", arg_over);

    // ---- games and locality ----------------------------------------------
    auto* cmd_ef = app.add_subcommand("ef", "k-round EF game verdict");
    cmd_ef->add_option("A", arg_a)->required();
    cmd_ef->add_option("B", arg_b)->required();
    cmd_ef->add_option("-k,--rounds", arg_k)->required();
    cmd_ef->add_option("--tuple-a", arg_tuple);
    cmd_ef->add_option("--tuple-b", arg_tuple_b);

    auto* cmd_khom = app.add_subcommand("khom", "k-homomorphism game verdict");
    cmd_khom->add_option("A", arg_a)->required();
    cmd_khom->add_option("B", arg_b)->required();
    cmd_khom->add_option("-k,--rounds", arg_k)->required();
    cmd_khom->add_option("--over", arg_over);

    auto* cmd_kcore = app.add_subcommand("kcore", "bounded k-core of a structure");
    cmd_kcore->add_option("A", arg_a)->required();
    cmd_kcore->add_option("-k,--rounds", arg_k)->required();
    cmd_kcore->add_option("--pool-cap", arg_pool_cap);

    auto* cmd_hanf = app.add_subcommand("hanf", "neighborhood-matching bijection");
    cmd_hanf->add_option("A", arg_a)->required();
    cmd_hanf->add_option("B", arg_b)->required();
    cmd_hanf->add_option("-d,--radius", arg_d)->required();
    cmd_hanf->add_option("--equiv", arg_equiv, "iso | ef:L | khom:L")->required();
    cmd_hanf->add_option("--tuple-a", arg_tuple);
    cmd_hanf->add_option("--tuple-b", arg_tuple_b);

    auto* cmd_gaifman_check = app.add_subcommand("gaifman-check", "Gaifman-locality premise");
    cmd_gaifman_check->add_option("A", arg_a)->required();
    cmd_gaifman_check->add_option("B", arg_b)->required();
    cmd_gaifman_check->add_option("-d,--radius", arg_d)->required();
    cmd_gaifman_check->add_option("--equiv", arg_equiv)->required();
    cmd_gaifman_check->add_option("--tuple-a", arg_tuple);
    cmd_gaifman_check->add_option("--tuple-b", arg_tuple_b);

    auto* cmd_weak_local = app.add_subcommand("weak-local", "weak-locality premise");
    cmd_weak_local->add_option("A", arg_a)->required();
    cmd_weak_local->add_option("--ta", arg_tuple)->required();
    cmd_weak_local->add_option("--tb", arg_tuple_b)->required();
    cmd_weak_local->add_option("-d,--radius", arg_d)->required();
    cmd_weak_local->add_option("--equiv", arg_equiv)->default_val("iso");

    auto* cmd_extendable = app.add_subcommand("extendable", "bounded k-extendability");
    cmd_extendable->add_option("A", arg_a)->required();
    cmd_extendable->add_option("-k,--rounds", arg_k)->required();
    cmd_extendable->add_option("--pool-cap", arg_pool_cap);
    cmd_extendable->add_flag("--strict-paper-reading", flag_strict,
                             "literal element-independent reading of extendability");

    auto* cmd_lemma29 = app.add_subcommand("lemma29", "extendability transfer check");
    cmd_lemma29->add_option("A", arg_a)->required();
    cmd_lemma29->add_option("B", arg_b)->required();
    cmd_lemma29->add_option("-k,--rounds", arg_k)->required();
    cmd_lemma29->add_option("--pool-cap", arg_pool_cap);

    // ---- homotopy ---------------------------------------------------------
    std::string arg_i, arg_p, arg_f, arg_g;
    auto* cmd_lift = app.add_subcommand("lift", "solve a lifting problem");
    cmd_lift->add_option("--i", arg_i, "morphism file A -> B")->required();
    cmd_lift->add_option("--p", arg_p, "morphism file X -> Y")->required();
    cmd_lift->add_option("--f", arg_f, "morphism file A -> X")->required();
    cmd_lift->add_option("--g", arg_g, "morphism file B -> Y")->required();

    auto* cmd_classify_morphism =
        app.add_subcommand("classify-morphism", "model-structure classes of a morphism");
    cmd_classify_morphism->add_option("F", arg_f)->required();

    auto* cmd_homotopy_category =
        app.add_subcommand("homotopy-category", "homotopy category of a directory of structures");
    cmd_homotopy_category->add_option("dir", arg_dir)->required();
    cmd_homotopy_category->add_option("--over", arg_over);

    auto* cmd_theorem3 = app.add_subcommand("theorem3", "game side vs pp-test side for a pair");
    cmd_theorem3->add_option("N1", arg_a)->required();
    cmd_theorem3->add_option("N2", arg_b)->required();
    cmd_theorem3->add_option("-k,--rounds", arg_k)->required();
    cmd_theorem3->add_option("--size-cap", arg_size_cap);

    auto* cmd_theorem3_sweep = app.add_subcommand("theorem3-sweep", "exhaustive theorem3 check");
    cmd_theorem3_sweep->add_option("--vocab", arg_vocab)->required();
    cmd_theorem3_sweep->add_option("--max-size", arg_max_size);
    cmd_theorem3_sweep->add_option("-k,--k-max", arg_k_max);
    cmd_theorem3_sweep->add_option("--size-cap", arg_size_cap);

    // ---- sweeps -----------------------------------------------------------
    std::string arg_check;
    auto* cmd_sweep = app.add_subcommand("sweep", "exhaustive cross-checks at desk scale");
    cmd_sweep->add_option("--check", arg_check)
        ->check(CLI::IsMember(
            {"lemma28", "theorem2", "theorem3", "lemma29", "universal-properties", "cores",
             "ef-sanity"}))
        ->required();
    cmd_sweep->add_option("--vocab", arg_vocab)->required();
    cmd_sweep->add_option("--max-size", arg_max_size);
    cmd_sweep->add_option("--k-max", arg_k_max);
    cmd_sweep->add_option("--size-cap", arg_size_cap);
    cmd_sweep->add_option("--pool-cap", arg_pool_cap);

    CLI11_PARSE(app, argc, argv);

    try {
        Timer timer;
        fmw::Report report;
        report.bounds = json{{"node_limit", budget.node_limit},
                             {"time_limit_ms", budget.time_limit_ms}};

        if (*cmd_validate) {
            report.command = "validate";
            fmw::Structure s = load(arg_a);
            report.verdict = true;
            report.bounds["elements"] = s.size();
            return output.verdict(report, timer.ms());
        }
        if (*cmd_gaifman) {
            report.command = "gaifman";
            fmw::Structure s = load(arg_a);
            fmw::Graph g = fmw::gaifman_graph(s);
            json edges = json::array();
            for (auto [i, j] : g.edges)
                edges.push_back(json::array({g.vertices[i], g.vertices[j]}));
            return output.document(report, json{{"vertices", g.vertices}, {"edges", edges}},
                                   timer.ms());
        }
        if (*cmd_neighborhood) {
            report.command = "neighborhood";
            fmw::Structure s = load(arg_a);
            auto result = fmw::neighborhood(s, split_list(arg_tuple), arg_radius);
            return output.document(report, fmw::to_json(result), timer.ms());
        }
        if (*cmd_treedepth) {
            report.command = "treedepth";
            fmw::Structure s = load(arg_a);
            int td = fmw::tree_depth_over(s, split_set(arg_over));
            report.verdict = td;
            return output.verdict(report, timer.ms());
        }
        if (*cmd_hom) {
            report.command = "hom";
            fmw::Structure a = load(arg_a);
            fmw::Structure b = load(arg_b);
            fmw::Pins pins = split_pairs(arg_pins);
            if (flag_all) {
                auto all = fmw::find_all_homomorphisms(a, b, pins);
                json list = json::array();
                for (const auto& m : all) {
                    json map = json::object();
                    for (int e = 0; e < a.size(); ++e) map[a.universe[e]] = b.universe[m.map[e]];
                    list.push_back(map);
                }
                report.verdict = !all.empty();
                report.witness = list;
                report.bounds["count"] = all.size();
                int code = output.verdict(report, timer.ms());
                return all.empty() ? kExitFalse : code;
            }
            fmw::SearchOptions options;
            options.pins = pins;
            options.surjective = flag_surjective;
            options.budget = budget;
            auto result = fmw::find_homomorphism_constrained(a, b, options);
            if (result.budget_exhausted()) {
                report.verdict = "budget-exhausted";
                output.verdict(report, timer.ms());
                return kExitBudget;
            }
            report.verdict = result.found();
            if (result.found()) {
                json map = json::object();
                for (int e = 0; e < a.size(); ++e)
                    map[a.universe[e]] = b.universe[result.morphism->map[e]];
                report.witness = map;
            }
            return output.verdict(report, timer.ms());
        }
        if (*cmd_retract) {
            report.command = "retract";
            fmw::Structure a = load(arg_a);
            auto result = fmw::find_retraction(a, split_list(arg_onto), budget);
            if (result.budget_exhausted()) {
                report.verdict = "budget-exhausted";
                output.verdict(report, timer.ms());
                return kExitBudget;
            }
            report.verdict = result.found();
            if (result.found()) {
                json map = json::object();
                for (int e = 0; e < a.size(); ++e)
                    map[a.universe[e]] = a.universe[result.morphism->map[e]];
                report.witness = map;
            }
            return output.verdict(report, timer.ms());
        }
        if (*cmd_core) {
            report.command = "core";
            fmw::Structure a = load(arg_a);
            fmw::Structure c = fmw::core(a, split_set(arg_over), budget);
            return output.document(report, fmw::to_json(c), timer.ms());
        }
        if (*cmd_poset) {
            report.command = "poset";
            auto collection = load_directory(arg_dir);
            fmw::Poset poset = fmw::quotient_poset(collection, split_set(arg_over), budget);
            return output.document(report, poset_to_json(poset), timer.ms());
        }
        if (*cmd_eval) {
            report.command = "eval";
            fmw::Structure a = load(arg_a);
            auto formula = fmw::parse_formula(arg_formula, a.vocab);
            report.verdict = fmw::evaluate(a, formula, split_pairs(arg_assign));
            return output.verdict(report, timer.ms());
        }
        if (*cmd_qr) {
            report.command = "qr";
            report.verdict = fmw::quantifier_rank(fmw::parse_formula(arg_formula));
            return output.verdict(report, timer.ms());
        }
        if (*cmd_classify) {
            report.command = "classify";
            report.verdict = fmw::to_string(fmw::classify(fmw::parse_formula(arg_formula)));
            return output.verdict(report, timer.ms());
        }
        if (*cmd_canonical_structure) {
            report.command = "canonical-structure";
            fmw::FormulaPtr formula;
            fmw::Vocabulary vocab;
            if (!arg_vocab.empty()) {
                vocab = fmw::parse_vocabulary_spec(arg_vocab);
                formula = fmw::parse_formula(arg_formula, vocab);
            } else {
                formula = fmw::parse_formula(arg_formula);
                // infer arities from use; no constants
                std::function<void(const fmw::FormulaPtr&)> walk =
                    [&](const fmw::FormulaPtr& f) {
                        if (f->kind == fmw::Formula::Kind::atom)
                            vocab.relations[f->relation] = static_cast<int>(f->terms.size());
                        for (const auto& child : f->children) walk(child);
                    };
                walk(formula);
            }
            auto result = fmw::canonical_structure(formula, vocab);
            return output.document(report, fmw::to_json(result), timer.ms());
        }
        if (*cmd_canonical_sentence) {
            report.command = "canonical-sentence";
            fmw::Structure c = load(arg_a);
            auto sentence = fmw::canonical_sentence(c, split_set(arg_over));
            json doc{{"formula", fmw::format_formula(sentence.formula)},
                     {"quantifier_rank", fmw::quantifier_rank(sentence.formula)},
                     {"pinned", map_to_json(sentence.pinned)}};
            return output.document(report, doc, timer.ms());
        }
        if (*cmd_ef) {
            report.command = "ef";
            fmw::Structure a = load(arg_a);
            fmw::Structure b = load(arg_b);
            report.verdict = fmw::ef_equivalent(a, split_list(arg_tuple), b,
                                                split_list(arg_tuple_b), arg_k, budget);
            report.bounds["k"] = arg_k;
            return output.verdict(report, timer.ms());
        }
        if (*cmd_khom) {
            report.command = "khom";
            fmw::Structure a = load(arg_a);
            fmw::Structure b = load(arg_b);
            report.verdict = fmw::k_hom(a, b, arg_k, split_set(arg_over), budget);
            report.bounds["k"] = arg_k;
            return output.verdict(report, timer.ms());
        }
        if (*cmd_kcore) {
            report.command = "kcore";
            fmw::Structure a = load(arg_a);
            auto pool = fmw::enumerate_pp_tests(a.vocab, arg_k, arg_pool_cap);
            fmw::Structure result = fmw::k_core(a, arg_k, pool, budget);
            report.bounds["k"] = arg_k;
            report.bounds["pool_cap"] = arg_pool_cap;
            report.bounds["pool_size"] = pool.size();
            return output.document(report, fmw::to_json(result), timer.ms());
        }
        if (*cmd_hanf) {
            report.command = "hanf";
            fmw::Structure a = load(arg_a);
            fmw::Structure b = load(arg_b);
            auto equiv = fmw::parse_equiv_spec(arg_equiv);
            auto result = fmw::hanf_check(a, split_list(arg_tuple), b, split_list(arg_tuple_b),
                                          arg_d, equiv, budget);
            report.verdict = result.has_value();
            report.bounds["d"] = arg_d;
            report.bounds["equiv"] = fmw::to_string(equiv);
            if (result) report.witness = map_to_json(*result);
            return output.verdict(report, timer.ms());
        }
        if (*cmd_gaifman_check) {
            report.command = "gaifman-check";
            fmw::Structure a = load(arg_a);
            fmw::Structure b = load(arg_b);
            auto equiv = fmw::parse_equiv_spec(arg_equiv);
            report.verdict = fmw::gaifman_check(a, split_list(arg_tuple), b,
                                                split_list(arg_tuple_b), arg_d, equiv, budget);
            report.bounds["d"] = arg_d;
            report.bounds["equiv"] = fmw::to_string(equiv);
            return output.verdict(report, timer.ms());
        }
        if (*cmd_weak_local) {
            report.command = "weak-local";
            fmw::Structure a = load(arg_a);
            auto equiv = fmw::parse_equiv_spec(arg_equiv);
            report.verdict = fmw::weakly_local_premise(a, split_list(arg_tuple),
                                                       split_list(arg_tuple_b), arg_d, equiv,
                                                       budget);
            report.bounds["d"] = arg_d;
            report.bounds["equiv"] = fmw::to_string(equiv);
            return output.verdict(report, timer.ms());
        }
        if (*cmd_extendable) {
            report.command = "extendable";
            fmw::Structure a = load(arg_a);
            auto pool = fmw::enumerate_structures(a.vocab, arg_pool_cap);
            report.verdict = fmw::k_extendable(a, arg_k, pool, flag_strict, budget);
            report.bounds["k"] = arg_k;
            report.bounds["pool_cap"] = arg_pool_cap;
            report.bounds["pool_size"] = pool.size();
            report.bounds["strict"] = flag_strict;
            return output.verdict(report, timer.ms());
        }
        if (*cmd_lemma29) {
            report.command = "lemma29";
            fmw::Structure a = load(arg_a);
            fmw::Structure b = load(arg_b);
            auto pool = fmw::enumerate_structures(a.vocab, arg_pool_cap);
            auto result = fmw::lemma29_check(a, b, arg_k, pool, budget);
            report.verdict = !result.counterexample;
            report.witness = json{{"a_extendable", result.a_extendable},
                                  {"b_extendable", result.b_extendable},
                                  {"k_hom_equivalent", result.k_hom_equivalent},
                                  {"premise", result.premise},
                                  {"ef_equivalent", result.ef_equivalent}};
            report.bounds["k"] = arg_k;
            report.bounds["pool_cap"] = arg_pool_cap;
            return output.verdict(report, timer.ms());
        }
        if (*cmd_lift) {
            report.command = "lift";
            auto lp = fmw::make_lifting_problem(
                fmw::load_morphism(resolve_input_path(arg_i)),
                fmw::load_morphism(resolve_input_path(arg_p)),
                fmw::load_morphism(resolve_input_path(arg_f)),
                fmw::load_morphism(resolve_input_path(arg_g)));
            auto result = fmw::find_lift(lp, budget);
            if (!result.lift && !result.complete) {
                report.verdict = "budget-exhausted";
                output.verdict(report, timer.ms());
                return kExitBudget;
            }
            report.verdict = result.lift.has_value();
            if (result.lift) report.witness = fmw::to_json(*result.lift);
            return output.verdict(report, timer.ms());
        }
        if (*cmd_classify_morphism) {
            report.command = "classify-morphism";
            fmw::Morphism f = fmw::load_morphism(resolve_input_path(arg_f));
            bool acyclic_fibration = fmw::is_acyclic_fibration(f, budget);
            report.verdict = json{{"weak_equivalence", fmw::is_weak_equivalence(f, budget)},
                                  {"acyclic_fibration", acyclic_fibration},
                                  {"retraction", acyclic_fibration},
                                  {"section", fmw::is_section(f, budget)}};
            int code = output.verdict(report, timer.ms());
            (void)code;
            return kExitTrue;
        }
        if (*cmd_homotopy_category) {
            report.command = "homotopy-category";
            auto collection = load_directory(arg_dir);
            fmw::Poset poset = fmw::homotopy_category(collection, split_set(arg_over), budget);
            return output.document(report, poset_to_json(poset), timer.ms());
        }
        if (*cmd_theorem3) {
            report.command = "theorem3";
            fmw::Structure n1 = load(arg_a);
            fmw::Structure n2 = load(arg_b);
            auto result = fmw::theorem3_verify(n1, n2, arg_k, arg_size_cap, budget);
            report.verdict = result.agree;
            report.witness = json{{"k_homotopic", result.lhs},
                                  {"pp_forward", result.rhs_forward},
                                  {"pp_backward", result.rhs_backward},
                                  {"pp_agreement", result.rhs}};
            if (result.separating_sentence)
                report.witness["separating_sentence"] = *result.separating_sentence;
            report.bounds["k"] = arg_k;
            report.bounds["size_cap"] = arg_size_cap;
            report.bounds["pp_side_bounded"] = true;
            return output.verdict(report, timer.ms());
        }
        if (*cmd_theorem3_sweep) {
            auto vocab = fmw::parse_vocabulary_spec(arg_vocab);
            auto outcome = fmw::sweep_theorem3(vocab, arg_max_size, arg_k_max, arg_size_cap,
                                               budget);
            return run_sweep_outcome(output, "theorem3-sweep", outcome, timer.ms());
        }
        if (*cmd_sweep) {
            auto vocab = fmw::parse_vocabulary_spec(arg_vocab);
            fmw::SweepOutcome outcome;
            if (arg_check == "lemma28")
                outcome = fmw::sweep_lemma28(vocab, arg_max_size, arg_k_max, arg_size_cap, budget);
            else if (arg_check == "theorem2")
                outcome = fmw::sweep_theorem2(vocab, arg_max_size, budget);
            else if (arg_check == "theorem3")
                outcome = fmw::sweep_theorem3(vocab, arg_max_size, arg_k_max, arg_size_cap,
                                              budget);
            else if (arg_check == "lemma29")
                outcome = fmw::sweep_lemma29(vocab, arg_max_size, arg_k_max, arg_pool_cap, budget);
            else if (arg_check == "universal-properties")
                outcome = fmw::sweep_universal_properties(vocab, arg_max_size, budget);
            else if (arg_check == "cores")
                outcome = fmw::sweep_core_correctness(vocab, arg_max_size, budget);
            else
                outcome = fmw::sweep_ef_sanity(vocab, arg_max_size, arg_k_max, budget);
            return run_sweep_outcome(output, "sweep", outcome, timer.ms());
        }
    } catch (const fmw::BudgetError& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kExitBudget;
    } catch (const fmw::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
