// Copyright 2026 The hookinj Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command line front end: circuit generation, sampling, sweeps, mechanism census, frontier,
// detection fraction and deadline arithmetic.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "hookinj/analysis/census.hpp"
#include "hookinj/analysis/dem.hpp"
#include "hookinj/builders/builders.hpp"
#include "hookinj/circuit/noise.hpp"
#include "hookinj/circuit/text_format.hpp"
#include "hookinj/circuit/transpile.hpp"
#include "hookinj/harness/experiment.hpp"
#include "hookinj/harness/report.hpp"
#include "hookinj/harness/stats.hpp"

using namespace hookinj;

namespace {

struct Common {
    std::string protocol = "hook";
    std::string state = "i";
    int d_inject = 5;
    int r_inject = 2;
    int d = 7;
    int r_hold = 7;
    double p = 0.001;
    uint64_t seed = 0;
    uint64_t max_shots = 1'000'000;
    uint64_t max_errors = 1000;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::string out;
    bool transversal_x = false;

    InjectionSpec spec() const {
        InjectionSpec s;
        s.protocol = parse_protocol(protocol);
        s.state = parse_state(state);
        s.d_inject = d_inject;
        s.r_inject = r_inject;
        s.d = d;
        s.r_hold = r_hold;
        s.final_check = transversal_x ? FinalCheck::TransversalX : FinalCheck::NoiselessStabilizer;
        s.validate();
        return s;
    }
    RunOptions run_options() const {
        RunOptions o;
        o.max_shots = max_shots;
        o.max_errors = max_errors;
        o.seed = seed;
        o.workers = workers;
        return o;
    }
};

void add_spec_flags(CLI::App *cmd, Common &c) {
    cmd->add_option("--protocol", c.protocol, "hook, hook_pregrown, li, zz, zz_tweaked or memory")->capture_default_str();
    cmd->add_option("--state", c.state, "plus or i")->capture_default_str();
    cmd->add_option("--dinject", c.d_inject, "patch distance while postselecting")->capture_default_str();
    cmd->add_option("--rinject", c.r_inject, "postselected rounds")->capture_default_str();
    cmd->add_option("--d", c.d, "final code distance")->capture_default_str();
    cmd->add_option("--rhold", c.r_hold, "idle rounds after growing")->capture_default_str();
    cmd->add_flag("--transversal-x", c.transversal_x, "check |+> with a noisy transversal X readout");
}

void add_run_flags(CLI::App *cmd, Common &c) {
    cmd->add_option("--p", c.p, "noise strength")->capture_default_str();
    cmd->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
    cmd->add_option("--max-shots", c.max_shots, "stop after this many shots")->capture_default_str();
    cmd->add_option("--max-errors", c.max_errors, "stop after this many undiscarded errors")->capture_default_str();
    cmd->add_option("--workers", c.workers, "threads")->capture_default_str();
}

/// Writes to --out when given, stdout otherwise.
class Output {
   public:
    explicit Output(const std::string &path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw std::runtime_error("cannot open " + path);
            }
        }
    }
    std::ostream &stream() {
        return file_ ? *file_ : std::cout;
    }

   private:
    std::unique_ptr<std::ofstream> file_;
};

std::vector<int> inclusive_range(int lo, int hi) {
    std::vector<int> out;
    for (int v = lo; v <= hi; v++) {
        out.push_back(v);
    }
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"hookinj: hook injection circuits, sampling and statistics"};
    app.require_subcommand(1);
    Common c;

    auto *gen = app.add_subcommand("gen", "print a circuit");
    add_spec_flags(gen, c);
    bool gen_cz = false;
    double gen_p = -1;
    gen->add_flag("--cz", gen_cz, "transpile to the CZ gate set");
    gen->add_option("--noise", gen_p, "transpile to CZ and add SI1000 noise of this strength");
    gen->add_option("--out", c.out, "output file");

    auto *sample = app.add_subcommand("sample", "run one experiment and print a CSV row");
    add_spec_flags(sample, c);
    add_run_flags(sample, c);
    bool sample_json = false;
    sample->add_flag("--json", sample_json, "print JSON instead of CSV");
    sample->add_option("--out", c.out, "output file");

    auto *sw = app.add_subcommand("sweep", "run a grid of variants and write CSV");
    add_run_flags(sw, c);
    std::vector<std::string> sw_protocols{"hook"};
    std::vector<std::string> sw_states{"i"};
    std::vector<double> sw_ps;
    int k_lo = 2, k_hi = 7, r_lo = 1, r_hi = 6;
    sw->add_option("--protocols", sw_protocols, "protocols to sweep")->capture_default_str();
    sw->add_option("--states", sw_states, "states to sweep")->capture_default_str();
    sw->add_option("--ps", sw_ps, "noise strengths (default: --p)");
    sw->add_option("--dinject-min", k_lo)->capture_default_str();
    sw->add_option("--dinject-max", k_hi)->capture_default_str();
    sw->add_option("--rinject-min", r_lo)->capture_default_str();
    sw->add_option("--rinject-max", r_hi)->capture_default_str();
    int pregrown_max = 11;
    sw->add_option("--pregrown-max", pregrown_max, "largest d_inject for hook_pregrown")->capture_default_str();
    sw->add_option("--d", c.d)->capture_default_str();
    sw->add_option("--rhold", c.r_hold)->capture_default_str();
    sw->add_option("--out", c.out, "output CSV");

    auto *en = app.add_subcommand("enumerate", "list undetected single mechanisms and count undetected pairs");
    add_spec_flags(en, c);
    en->add_option("--p", c.p, "noise strength")->capture_default_str();
    bool en_skip_pairs = false;
    std::string en_window = "anywhere";
    en->add_flag("--no-pairs", en_skip_pairs, "skip the pair census");
    en->add_option("--window", en_window, "pair window: anywhere or postselected")->capture_default_str();
    en->add_option("--out", c.out, "output JSON");

    auto *fr = app.add_subcommand("frontier", "Pareto frontier of a sweep CSV");
    std::string fr_in;
    uint64_t fr_min_errors = 0;
    fr->add_option("--in", fr_in, "sweep CSV")->required();
    fr->add_option("--min-errors", fr_min_errors, "drop rows with fewer errors")->capture_default_str();
    fr->add_option("--out", c.out, "output CSV");

    auto *df = app.add_subcommand("detfrac", "detection fraction of memory experiments");
    std::vector<int> df_ds{3, 5, 7, 9};
    std::vector<double> df_ps{0.0001, 0.0002, 0.0005, 0.001, 0.002, 0.005, 0.01};
    uint64_t df_shots = 10000;
    df->add_option("--ds", df_ds, "distances (rounds = d)")->capture_default_str();
    df->add_option("--ps", df_ps, "noise strengths")->capture_default_str();
    df->add_option("--shots", df_shots)->capture_default_str();
    df->add_option("--seed", c.seed)->capture_default_str();
    df->add_option("--workers", c.workers)->capture_default_str();
    df->add_option("--out", c.out, "output CSV");

    auto *dl = app.add_subcommand("deadline", "chance an injection loop finishes within a budget");
    double dl_cost = 0, dl_budget = 0, dl_discard = -1;
    dl->add_option("--cost", dl_cost, "expected qubit-rounds per success");
    dl->add_option("--discard", dl_discard, "discard rate; cost is derived from --dinject and --rinject");
    dl->add_option("--dinject", c.d_inject)->capture_default_str();
    dl->add_option("--rinject", c.r_inject)->capture_default_str();
    dl->add_option("--budget", dl_budget, "qubit-rounds available")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            Output out(c.out);
            Circuit circuit = build(c.spec()).circuit;
            if (gen_cz || gen_p >= 0) {
                circuit = transpile_to_cz(circuit);
            }
            if (gen_p >= 0) {
                circuit = apply_si1000(circuit, NoiseParams{gen_p});
            }
            out.stream() << serialize(circuit);
        } else if (sample->parsed()) {
            Output out(c.out);
            TrialStats st = run_experiment(c.spec(), c.p, c.run_options());
            if (sample_json) {
                out.stream() << to_json(st).dump(2) << "\n";
            } else {
                out.stream() << kCsvHeader << "\n" << csv_row(st) << "\n";
            }
        } else if (sw->parsed()) {
            Output out(c.out);
            SweepGrid grid;
            grid.protocols.clear();
            for (const auto &s : sw_protocols) {
                grid.protocols.push_back(parse_protocol(s));
            }
            grid.states.clear();
            for (const auto &s : sw_states) {
                grid.states.push_back(parse_state(s));
            }
            grid.ps = sw_ps.empty() ? std::vector<double>{c.p} : sw_ps;
            grid.d_inject = inclusive_range(k_lo, k_hi);
            grid.r_inject = inclusive_range(r_lo, r_hi);
            grid.pregrown_extra = inclusive_range(k_hi + 1, pregrown_max);
            grid.d = c.d;
            grid.r_hold = c.r_hold;
            out.stream() << kCsvHeader << "\n" << std::flush;
            sweep(grid, c.run_options(), [&](const TrialStats &st) { out.stream() << csv_row(st) << "\n" << std::flush; });
        } else if (en->parsed()) {
            Output out(c.out);
            InjectionSpec spec = c.spec();
            AnnotatedCircuit built = build(spec);
            Circuit noisy = apply_si1000(transpile_to_cz(built.circuit), NoiseParams{c.p});
            DetectorErrorModel dem = extract_dem(noisy);
            nlohmann::json j;
            j["protocol"] = protocol_name(spec.protocol);
            j["state"] = state_name(spec.state);
            j["p"] = c.p;
            j["d_inject"] = spec.d_inject;
            j["r_inject"] = spec.r_inject;
            j["d"] = spec.d;
            j["r_hold"] = spec.r_hold;
            j["num_mechanisms"] = dem.mechanisms.size();
            j["num_terms"] = dem.num_terms();
            auto d1 = find_distance1(dem, uint64_t{1} << built.observable_index);
            double d1_mass = 0;
            nlohmann::json list = nlohmann::json::array();
            for (const auto &t : d1) {
                list.push_back({{"description", t.describe()},
                                {"channel", std::string(gate_name(t.channel))},
                                {"layer", t.layer},
                                {"probability", t.probability}});
                d1_mass += t.probability;
            }
            j["distance1"] = {{"count", d1.size()}, {"mass", d1_mass}, {"coefficient", c.p > 0 ? d1_mass / c.p : 0.0},
                              {"terms", list}};
            if (!en_skip_pairs) {
                PairWindow w = en_window == "postselected" ? PairWindow::Postselected : PairWindow::Anywhere;
                auto d2 = find_distance2(dem, built.postselected, w, uint64_t{1} << built.observable_index);
                j["distance2"] = {{"window", en_window},
                                  {"pairs", d2.num_pairs},
                                  {"participating", d2.num_participating},
                                  {"mass", d2.pair_mass},
                                  {"coefficient", d2.coefficient(c.p)}};
            }
            j["analytic_limit"] = analytic_limit(spec.state, c.p);
            j["analytic_limit_swapped"] = analytic_limit_swapped(spec.state, c.p);
            out.stream() << j.dump(2) << "\n";
        } else if (fr->parsed()) {
            std::ifstream in(fr_in);
            if (!in) {
                throw std::runtime_error("cannot open " + fr_in);
            }
            Output out(c.out);
            auto rows = read_csv(in);
            // One frontier per (protocol, state, p, d, r_hold) group.
            std::map<std::string, std::vector<CostPoint>> groups;
            for (const auto &st : rows) {
                if (st.errors < fr_min_errors || st.kept() == 0) {
                    continue;
                }
                std::string key = protocol_name(st.spec.protocol) + "," + state_name(st.spec.state) + "," +
                                  detail::fmt_g(st.p) + "," + std::to_string(st.spec.d) + "," +
                                  std::to_string(st.spec.r_hold);
                groups[key].push_back(st.cost_point());
            }
            out.stream() << "protocol,state,p,d,r_hold,label,expected_cost_qubit_rounds,error_rate,err_lo,err_hi,"
                            "discard_rate\n";
            for (const auto &[key, pts] : groups) {
                for (const auto &pt : pareto_frontier(pts)) {
                    out.stream() << key << ",\"" << pt.label << "\"," << detail::fmt_g(pt.expected_cost) << ","
                                 << detail::fmt_g(pt.error_rate) << "," << detail::fmt_g(pt.err_lo) << ","
                                 << detail::fmt_g(pt.err_hi) << "," << detail::fmt_g(pt.discard_rate) << "\n";
                }
            }
        } else if (df->parsed()) {
            Output out(c.out);
            out.stream() << "d,rounds,p,shots,detection_fraction\n";
            for (int d : df_ds) {
                AnnotatedCircuit mem = build_memory(d, d, 'Z');
                for (double p : df_ps) {
                    double f = detection_fraction(mem.circuit, p, df_shots, c.seed, c.workers);
                    out.stream() << d << "," << d << "," << detail::fmt_g(p) << "," << df_shots << ","
                                 << detail::fmt_g(f) << "\n";
                }
            }
        } else if (dl->parsed()) {
            double cost = dl_cost;
            if (dl_discard >= 0) {
                cost = expected_cost(c.d_inject, c.r_inject, dl_discard);
            }
            if (!(cost > 0)) {
                throw std::invalid_argument("give --cost or --discard");
            }
            double half_life = 0.7 * cost;
            std::cout << "expected_cost=" << detail::fmt_g(cost) << " half_life=" << detail::fmt_g(half_life)
                      << " half_lives=" << detail::fmt_g(dl_budget / half_life)
                      << " success_probability=" << detail::fmt_g(deadline_success(cost, dl_budget)) << "\n";
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
