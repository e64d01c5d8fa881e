// SPDX-License-Identifier: Apache-2.0
//
// dfsim - bearing dispersion simulator for directional sources in multipath channels
// Copyright (C) 2026 dfsim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Command-line front end: profile analysis, single simulations, parameter
// sweeps, model-vs-data comparison, and bearing correction.
//
// Exit status: 0 success, 1 domain/validation error, 2 I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dfsim/dfsim.hpp"

namespace fs = std::filesystem;
using dfsim::io::json;

namespace {

struct ProfileArgs {
    std::string path;
    double prominence_db = 1.0;
    double min_sep_ns = 0.0;  // 0: one profile resolution step
    double noise_floor_db = 40.0;
};

void add_profile_options(CLI::App* cmd, ProfileArgs& args) {
    cmd->add_option("--profile", args.path, "Delay profile file (delay_ns, power)")->required();
    cmd->add_option("--prominence-db", args.prominence_db,
                    "Peak prominence threshold for cluster extraction");
    cmd->add_option("--min-sep-ns", args.min_sep_ns,
                    "Minimum cluster separation (default: profile resolution)");
}

struct LoadedProfile {
    dfsim::DelayProfile profile;
    dfsim::TrendLine trend;
    dfsim::ClusterSet clusters;
};

LoadedProfile load_profile(const ProfileArgs& args) {
    LoadedProfile loaded;
    loaded.profile = dfsim::parse_profile(args.path);
    loaded.trend = dfsim::fit_trend(loaded.profile, {args.noise_floor_db});
    loaded.clusters = dfsim::extract_clusters(loaded.profile, loaded.trend,
                                              {args.prominence_db, args.min_sep_ns});
    return loaded;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw dfsim::io_error("cannot write '" + path.string() + "'");
    return out;
}

void write_text_file(const fs::path& path, const std::function<void(std::ostream&)>& writer) {
    std::ofstream out = open_output(path);
    writer(out);
    if (!out) throw dfsim::io_error("write failed for '" + path.string() + "'");
}

int run_guarded(const std::function<void()>& body) {
    try {
        body();
        return 0;
    } catch (const dfsim::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

json analyze_document(const LoadedProfile& loaded, double distance_m) {
    json doc = dfsim::io::to_json(loaded.clusters);
    const dfsim::GeometryConfig geom{distance_m, 0.299792458};
    for (std::size_t i = 0; i < loaded.clusters.clusters.size(); ++i) {
        const dfsim::Ellipse el =
            ellipse_from_delay(geom, loaded.clusters.clusters[i].delay_ns, i + 1);
        doc["clusters"][i]["a_m"] = el.semi_major_m;
        doc["clusters"][i]["e"] = el.eccentricity;
    }
    doc["rms_delay_spread_ns"] = dfsim::rms_delay_spread(loaded.profile);
    doc["distance_m"] = distance_m;
    doc["trend_slope_db_per_ns"] = loaded.trend.slope_db_per_ns;
    doc["trend_intercept_db"] = loaded.trend.intercept_db;
    return doc;
}

dfsim::io::SweepMatrix sweep_matrix(const dfsim::SweepResult& sweep, const std::string& quantity,
                                    double dfsim::DispersionReport::*field) {
    dfsim::io::SweepMatrix matrix;
    matrix.quantity = quantity;
    matrix.alphas_deg = sweep.grid.alphas_deg;
    for (std::size_t hi = 0; hi < sweep.grid.patterns.size(); ++hi) {
        matrix.rows.push_back(sweep.grid.patterns[hi].label());
        std::vector<double> row;
        for (const dfsim::SweepCell& cell : sweep.cells[hi]) row.push_back(cell.report.*field);
        matrix.values.push_back(std::move(row));
    }
    return matrix;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bearing dispersion simulator for directional sources in multipath channels"};
    app.require_subcommand(1);

    // ---- analyze ----
    ProfileArgs analyze_args;
    double analyze_distance = 300.0;
    std::string analyze_out;
    CLI::App* analyze = app.add_subcommand("analyze", "Extract time-clusters from a delay profile");
    add_profile_options(analyze, analyze_args);
    analyze->add_option("--distance-m", analyze_distance, "Tx-Rx distance in meters");
    analyze->add_option("--out-dir", analyze_out, "Also write analyze.json to this directory");

    // ---- simulate ----
    ProfileArgs sim_args;
    dfsim::RunConfig sim_cfg;
    std::string sim_out = ".";
    CLI::App* simulate = app.add_subcommand("simulate", "Simulate the AOA pmf for one scenario");
    add_profile_options(simulate, sim_args);
    simulate->add_option("--distance-m", sim_cfg.distance_m, "Tx-Rx distance in meters");
    simulate->add_option("--hpbw", sim_cfg.hpbw_deg, "Transmit antenna half-power beamwidth (deg)");
    simulate->add_option("--alpha", sim_cfg.alpha_deg, "Boresight offset from Tx->Rx (deg)");
    simulate->add_flag("--omni", sim_cfg.omni, "Omnidirectional transmit antenna");
    simulate->add_option("--mu", sim_cfg.mu, "von Mises concentration of local scattering");
    simulate->add_option("--kappa", sim_cfg.kappa, "Rice factor (0 = NLOS)");
    simulate->add_option("--paths", sim_cfg.paths_per_cluster, "Paths per cluster M_i");
    simulate->add_option("--trials", sim_cfg.trials, "Independent trials to average");
    simulate->add_option("--seed", sim_cfg.seed, "Random seed");
    simulate->add_option("--bin-deg", sim_cfg.bin_deg, "Pmf bin width (deg)");
    simulate->add_option("--sigma0", sim_cfg.sigma0_deg, "Direction-finder RMS bearing spread (deg)");
    simulate->add_option("--out-dir", sim_out, "Output directory for pmf.txt and report.json");

    // ---- sweep ----
    ProfileArgs sweep_args;
    dfsim::RunConfig sweep_cfg;
    std::string sweep_out = ".";
    std::vector<std::string> sweep_hpbw;
    std::vector<double> sweep_alpha;
    CLI::App* sweep = app.add_subcommand("sweep", "Run a (HPBW x alpha) grid of simulations");
    add_profile_options(sweep, sweep_args);
    sweep->add_option("--distance-m", sweep_cfg.distance_m, "Tx-Rx distance in meters");
    sweep->add_option("--hpbw", sweep_hpbw, "HPBW list in degrees; the token 'omni' is allowed")
        ->required()
        ->delimiter(',');
    sweep->add_option("--alpha", sweep_alpha, "Boresight offset list in degrees")
        ->required()
        ->delimiter(',');
    sweep->add_option("--mu", sweep_cfg.mu, "von Mises concentration of local scattering");
    sweep->add_option("--kappa", sweep_cfg.kappa, "Rice factor (0 = NLOS)");
    sweep->add_option("--paths", sweep_cfg.paths_per_cluster, "Paths per cluster M_i");
    sweep->add_option("--trials", sweep_cfg.trials, "Independent trials per cell");
    sweep->add_option("--seed", sweep_cfg.seed, "Random seed (cells derive their own substreams)");
    sweep->add_option("--bin-deg", sweep_cfg.bin_deg, "Pmf bin width (deg)");
    sweep->add_option("--sigma0", sweep_cfg.sigma0_deg, "Direction-finder RMS bearing spread (deg)");
    sweep->add_option("--out-dir", sweep_out, "Output directory for the matrix files");

    // ---- correct ----
    std::string correct_pairs;
    double correct_phi_bar = 0.0;
    bool have_phi_bar = false;
    double correct_gradient = 0.21;
    double correct_limit = 15.0;
    CLI::App* correct = app.add_subcommand("correct", "Fit or apply the bearing correction");
    correct->add_option("--pairs", correct_pairs, "Pairs file (phi_bar_deg delta_phi_deg)");
    correct->add_option("--phi-bar", correct_phi_bar, "Apply the correction to one mean offset")
        ->each([&](const std::string&) { have_phi_bar = true; });
    correct->add_option("--gradient", correct_gradient, "Correction gradient g");
    correct->add_option("--limit-deg", correct_limit, "Validity limit for |phi_bar|");

    // ---- compare ----
    std::string compare_a, compare_b;
    CLI::App* compare = app.add_subcommand("compare", "Least square error between two pmf files");
    compare->add_option("pmf-a", compare_a, "First pmf file")->required();
    compare->add_option("pmf-b", compare_b, "Second pmf file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (*analyze) {
        return run_guarded([&] {
            LoadedProfile loaded = load_profile(analyze_args);
            json doc = analyze_document(loaded, analyze_distance);
            std::cout << doc.dump(2) << "\n";
            if (!analyze_out.empty()) {
                fs::create_directories(analyze_out);
                write_text_file(fs::path(analyze_out) / "analyze.json",
                                [&](std::ostream& out) { out << doc.dump(2) << "\n"; });
            }
        });
    }

    if (*simulate) {
        return run_guarded([&] {
            LoadedProfile loaded = load_profile(sim_args);
            dfsim::SimulationResult result = dfsim::run_simulation(loaded.clusters, sim_cfg);
            fs::create_directories(sim_out);
            write_text_file(fs::path(sim_out) / "pmf.txt",
                            [&](std::ostream& out) { dfsim::io::write_pmf(out, result.pmf); });
            json doc = dfsim::io::to_json(result.report);
            write_text_file(fs::path(sim_out) / "report.json",
                            [&](std::ostream& out) { out << doc.dump(2) << "\n"; });
            std::cout << doc.dump(2) << "\n";
        });
    }

    if (*sweep) {
        return run_guarded([&] {
            LoadedProfile loaded = load_profile(sweep_args);
            dfsim::SweepConfig grid;
            for (const std::string& token : sweep_hpbw) {
                if (token == "omni") {
                    grid.patterns.push_back({true, 0.0});
                } else {
                    char* end = nullptr;
                    double v = std::strtod(token.c_str(), &end);
                    if (end == token.c_str() || *end != '\0')
                        throw std::invalid_argument("bad --hpbw entry '" + token + "'");
                    grid.patterns.push_back({false, v});
                }
            }
            grid.alphas_deg = sweep_alpha;
            dfsim::SweepResult result = dfsim::run_sweep(loaded.clusters, sweep_cfg, grid);

            fs::create_directories(sweep_out);
            const std::pair<std::string, double dfsim::DispersionReport::*> quantities[] = {
                {"sigma_e_deg", &dfsim::DispersionReport::sigma_e_deg},
                {"phi_bar_deg", &dfsim::DispersionReport::phi_bar_deg},
                {"delta_phi_deg", &dfsim::DispersionReport::delta_phi_deg},
                {"sigma_total_deg", &dfsim::DispersionReport::sigma_total_deg},
                {"delta_percent", &dfsim::DispersionReport::delta_percent},
            };
            for (const auto& [name, field] : quantities) {
                write_text_file(fs::path(sweep_out) / (name + ".txt"), [&](std::ostream& out) {
                    dfsim::io::write_sweep_matrix(out, sweep_matrix(result, name, field));
                });
            }
            std::vector<std::pair<dfsim::OffsetPeakPair, std::string>> rows;
            for (std::size_t hi = 0; hi < result.cells.size(); ++hi) {
                for (const dfsim::SweepCell& cell : result.cells[hi]) {
                    char label[64];
                    std::snprintf(label, sizeof(label), "%s/%.9g",
                                  cell.pattern.label().c_str(), cell.alpha_deg);
                    rows.push_back(
                        {{cell.report.phi_bar_deg, cell.report.delta_phi_deg}, label});
                }
            }
            write_text_file(fs::path(sweep_out) / "pairs.txt",
                            [&](std::ostream& out) { dfsim::io::write_pairs(out, rows); });
            std::cout << "wrote sweep matrices to " << sweep_out << "\n";
        });
    }

    if (*correct) {
        return run_guarded([&] {
            if (!correct_pairs.empty()) {
                std::vector<dfsim::OffsetPeakPair> pairs = dfsim::io::read_pairs(correct_pairs);
                dfsim::RegressionResult fit = dfsim::fit_gradient(pairs);
                double before = 0.0, after = 0.0;
                for (const auto& p : pairs) {
                    before += std::abs(p.delta_phi_deg);
                    auto theta = dfsim::correction(p.phi_bar_deg, fit.gradient, correct_limit);
                    after += std::abs(p.delta_phi_deg + theta.value_or(0.0));
                }
                json doc = dfsim::io::to_json(fit);
                doc["limit_deg"] = correct_limit;
                doc["mean_abs_delta_phi_deg"] = before / static_cast<double>(pairs.size());
                doc["mean_abs_corrected_deg"] = after / static_cast<double>(pairs.size());
                std::cout << doc.dump(2) << "\n";
            } else if (have_phi_bar) {
                json doc;
                doc["phi_bar_deg"] = correct_phi_bar;
                doc["gradient"] = correct_gradient;
                doc["limit_deg"] = correct_limit;
                auto theta = dfsim::correction(correct_phi_bar, correct_gradient, correct_limit);
                doc["in_range"] = theta.has_value();
                if (theta)
                    doc["correction_deg"] = *theta;
                else
                    doc["message"] = "out of correction range";
                std::cout << doc.dump(2) << "\n";
            } else {
                throw std::invalid_argument("correct: need --pairs FILE or --phi-bar VALUE");
            }
        });
    }

    if (*compare) {
        return run_guarded([&] {
            dfsim::AngularPmf a = dfsim::io::read_pmf(compare_a);
            dfsim::AngularPmf b = dfsim::io::read_pmf(compare_b);
            std::printf("%.12e\n", dfsim::lse(a, b));
        });
    }

    return 0;
}
