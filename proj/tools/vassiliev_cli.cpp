// vassiliev: knot invariants by configuration-space integrals and by signed
// tinkertoy counting, plus the exact combinatorial verification suites.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "vassiliev/configspace.hpp"
#include "vassiliev/integrate.hpp"
#include "vassiliev/knots.hpp"
#include "vassiliev/tinkertoy.hpp"
#include "vassiliev/trivalent_graph.hpp"
#include "vassiliev/weights.hpp"

using nlohmann::ordered_json;
using namespace vassiliev;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

void emit(const ordered_json& j, const std::string& out_path, const std::string& format,
          const Timer& timer) {
    std::string text;
    if (format == "csv") {
        std::ostringstream ss;
        ss << "key,value\n";
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it->is_primitive())
                ss << it.key() << "," << (it->is_string() ? it->get<std::string>()
                                                          : it->dump())
                   << "\n";
        }
        text = ss.str();
    } else {
        text = j.dump(2) + "\n";
    }
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        f << text;
    }
    std::cout << text;
    // kept out of the deterministic payload so identical runs byte-match
    std::cerr << "runtime_ms=" << timer.ms() << "\n";
}

std::string read_file_or_data(const std::string& path) {
    auto try_open = [](const std::string& p) -> std::string {
        std::ifstream in(p);
        if (!in) return {};
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    std::string text = try_open(path);
    if (text.empty()) {
        const char* dir = std::getenv("VASSILIEV_DATA_DIR");
        if (dir) text = try_open(std::string(dir) + "/" + path);
    }
    if (text.empty()) throw std::invalid_argument("cannot read file: " + path);
    return text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Vassiliev knot invariants: Monte Carlo configuration-space "
                 "integrals and exact tinkertoy counting"};
    app.require_subcommand(1);

    std::string knot_a, knot_b, knot_name, weights_path, out_path, format = "json",
                baseline;
    long long n = 0;
    unsigned long long seed = 0;
    int threads = 0, chords = 0, graphs = 0, max_internal = 4, segments = 96,
        trials = 5;
    bool have_seed = false;

    auto add_common = [&](CLI::App* c, bool stochastic) {
        c->add_option("--out", out_path, "Write the JSON/CSV payload to this file");
        c->add_option("--format", format, "Output format: json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        if (stochastic) {
            c->add_option("--seed", seed, "Random seed (required; no implicit entropy)")
                ->required();
            c->add_option("--threads", threads, "Worker threads (0 = all cores)");
        }
        return c;
    };

    auto* link = add_common(app.add_subcommand("link", "Gauss linking integral of two closed curves"), true);
    link->add_option("--a", knot_a, "First curve (name or JSON file)")->required();
    link->add_option("--b", knot_b, "Second curve (name or JSON file)")->required();
    link->add_option("--n", n, "Monte Carlo samples")->required();

    auto* v2cmd = add_common(app.add_subcommand("v2", "Degree-2 invariant by configuration-space integrals"), true);
    v2cmd->add_option("--knot", knot_name, "Knot (name or JSON file)")->required();
    v2cmd->add_option("--n", n, "Monte Carlo samples per graph")->required();
    v2cmd->add_option("--baseline", baseline, "Also compute this knot and report the difference");

    auto* inv = add_common(app.add_subcommand("invariant", "Invariant of a weight system given as JSON"), true);
    inv->add_option("--weights", weights_path, "Weight system JSON file")->required();
    inv->add_option("--knot", knot_name, "Knot (name or JSON file)")->required();
    inv->add_option("--n", n, "Monte Carlo samples per graph")->required();

    auto* tk = add_common(app.add_subcommand("tinkertoy", "Degree-2 invariant by exact signed counting"), true);
    tk->add_option("--knot", knot_name, "Knot (name or JSON file)")->required();
    tk->add_option("--segments", segments, "Polygonal approximation segments");
    tk->add_option("--trials", trials, "Independent direction sets to compare");
    tk->add_option("--baseline", baseline, "Also count this knot and report the difference");

    auto* en = add_common(app.add_subcommand("enumerate", "Chord diagram / trivalent graph censuses"), false);
    en->add_option("--chords", chords, "List canonical chord diagrams of this degree");
    en->add_option("--graphs", graphs, "Count trivalent graph classes of this degree");
    en->add_option("--max-internal", max_internal, "Internal vertex cap for --graphs");

    auto* ver = add_common(app.add_subcommand("verify", "Run the exact relation suites (4T, STU, IHX, orientation, faces)"), false);
    ver->add_option("--weights", weights_path, "Extra weight system JSON to verify");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Timer timer;
    try {
        if (link->parsed()) {
            ParametricKnot a = load_knot(knot_a), b = load_knot(knot_b);
            IntegralEstimate est = linking_integral(a, b, n, seed, threads);
            int comb = combinatorial_linking(a, b, {0.217, 0.119, 0.953});
            ordered_json j{{"command", "link"},
                           {"value", est.value},
                           {"std_error", est.std_error},
                           {"n_samples", est.n_samples},
                           {"seed", est.seed},
                           {"combinatorial_linking", comb}};
            emit(j, out_path, format, timer);
        } else if (v2cmd->parsed() || inv->parsed()) {
            WeightSystem w = inv->parsed()
                                 ? WeightSystem::from_json(read_file_or_data(weights_path))
                                 : c2_weight_system();
            ParametricKnot k = load_knot(knot_name);
            std::vector<std::string> warnings;
            IntegralEstimate est = invariant_from_weight(w, k, n, seed, threads, &warnings);
            ordered_json j{{"command", inv->parsed() ? "invariant" : "v2"},
                           {"knot", k.name},
                           {"degree", w.degree()},
                           {"value", est.value},
                           {"std_error", est.std_error},
                           {"n_samples", est.n_samples},
                           {"seed", est.seed}};
            if (!baseline.empty()) {
                ParametricKnot base = load_knot(baseline);
                IntegralEstimate b2 =
                    invariant_from_weight(w, base, n, seed ^ 0x5bd1e995ULL, threads, &warnings);
                j["baseline"] = base.name;
                j["baseline_value"] = b2.value;
                j["difference"] = est.value - b2.value;
                j["difference_std_error"] =
                    std::sqrt(est.std_error * est.std_error + b2.std_error * b2.std_error);
            }
            j["warnings"] = warnings;
            emit(j, out_path, format, timer);
        } else if (tk->parsed()) {
            ParametricKnot k = load_knot(knot_name);
            PolygonalKnot pk = polygonalize(k, segments);
            DirectionSet ds = random_direction_set(seed);
            Rational v = signed_count_v2(pk, ds, trials);
            ordered_json j{{"command", "tinkertoy"},
                           {"knot", k.name},
                           {"segments", segments},
                           {"trials", trials},
                           {"value", to_string(v)},
                           {"value_double", to_double(v)},
                           {"seed", seed}};
            if (!baseline.empty()) {
                PolygonalKnot pb = polygonalize(load_knot(baseline), segments);
                Rational vb = signed_count_v2(pb, ds, trials);
                j["baseline"] = baseline;
                j["baseline_value"] = to_string(vb);
                j["difference"] = to_string(v - vb);
            }
            emit(j, out_path, format, timer);
        } else if (en->parsed()) {
            if (chords <= 0 && graphs <= 0)
                throw std::invalid_argument("enumerate needs --chords or --graphs");
            ordered_json j{{"command", "enumerate"}};
            if (chords > 0) {
                auto ds = enumerate_chord_diagrams(chords);
                j["degree"] = chords;
                j["chord_diagrams"] = ordered_json::array();
                for (const auto& d : ds) j["chord_diagrams"].push_back(d.to_string());
                j["count"] = ds.size();
            }
            if (graphs > 0) {
                auto gs = enumerate_trivalent_graphs(graphs, max_internal);
                j["graph_degree"] = graphs;
                j["max_internal"] = max_internal;
                j["graph_count"] = gs.size();
            }
            emit(j, out_path, format, timer);
        } else if (ver->parsed()) {
            ordered_json j{{"command", "verify"}};
            bool all_ok = true;
            auto run_system = [&](const std::string& label, const WeightSystem& w) {
                auto t4 = check_4T(w);
                ExtendedWeightSystem ext(w);
                auto ihx = check_IHX(ext);
                bool ok = t4.empty() && ihx.empty();
                all_ok = all_ok && ok;
                j["systems"].push_back(ordered_json{{"name", label},
                                                    {"4T", t4.empty() ? "pass" : "fail"},
                                                    {"IHX", ihx.empty() ? "pass" : "fail"}});
                std::cerr << label << ": 4T " << (t4.empty() ? "pass" : "fail")
                          << ", IHX " << (ihx.empty() ? "pass" : "fail") << "\n";
            };
            j["systems"] = ordered_json::array();
            run_system("c2", c2_weight_system());
            run_system("deg3", deg3_weight_system());
            if (!weights_path.empty())
                run_system(weights_path,
                           WeightSystem::from_json(read_file_or_data(weights_path)));
            bool orient_ok = true;
            for (int kdeg = 1; kdeg <= 2; ++kdeg)
                for (const auto& g : enumerate_trivalent_graphs(kdeg, 4))
                    orient_ok = orient_ok && orientation_equivalence(g);
            j["orientation"] = orient_ok ? "pass" : "fail";
            int unresolved = 0, anomalous_tripod = -1;
            for (int kdeg = 1; kdeg <= 3; ++kdeg)
                for (const auto& g : enumerate_trivalent_graphs(kdeg, 4)) {
                    FaceCensus c = hidden_faces_all_vanish(g);
                    auto it = c.counts.find(FaceClass::Unresolved);
                    if (it != c.counts.end()) unresolved += it->second;
                    if (kdeg == 2 && g.n_internal == 1) {
                        auto an = c.counts.find(FaceClass::Anomalous);
                        anomalous_tripod = an == c.counts.end() ? 0 : an->second;
                    }
                }
            j["faces_unresolved"] = unresolved;
            j["tripod_anomalous_faces"] = anomalous_tripod;
            all_ok = all_ok && orient_ok && unresolved == 0;
            j["status"] = all_ok ? "pass" : "fail";
            emit(j, out_path, format, timer);
            if (!all_ok) return 3;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "diagnostic: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
