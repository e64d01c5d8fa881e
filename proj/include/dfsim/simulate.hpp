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

#ifndef DFSIM_SIMULATE_HPP
#define DFSIM_SIMULATE_HPP

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "dfsim/antenna.hpp"
#include "dfsim/estimation.hpp"
#include "dfsim/geometry.hpp"
#include "dfsim/montecarlo.hpp"
#include "dfsim/profile.hpp"
#include "dfsim/rng.hpp"

namespace dfsim {

// Everything one simulation run needs besides the cluster set.
struct RunConfig {
    double distance_m = 300.0;
    double hpbw_deg = 64.8;
    double alpha_deg = 0.0;
    bool omni = false;
    double mu = 60.0;
    double kappa = 0.0;
    int paths_per_cluster = 60;
    int trials = 500;
    std::uint64_t seed = 1;
    double bin_deg = 1.0;
    double sigma0_deg = 0.2;

    GeometryConfig geometry() const { return {distance_m, 0.299792458}; }

    AntennaConfig antenna() const {
        return omni ? AntennaConfig::omnidirectional()
                    : AntennaConfig::directional(hpbw_deg, alpha_deg);
    }

    ScatteringConfig scattering() const {
        ScatteringConfig scat;
        scat.mu = mu;
        scat.kappa = kappa;
        scat.paths_per_cluster = paths_per_cluster;
        scat.trials = trials;
        scat.seed = seed;
        return scat;
    }
};

struct SimulationResult {
    AngularPmf pmf;
    DispersionReport report;
};

// Generate the configured number of independent trials. Trial t draws from
// the substream (seed, t) and lands in slot t, so the result is the same
// bits for any worker count or scheduling.
inline std::vector<PathSet> generate_trials(const ClusterSet& clusters, const RunConfig& config,
                                            unsigned workers = 0) {
    const GeometryConfig geom = config.geometry();
    const AntennaConfig ant = config.antenna();
    const ScatteringConfig scat = config.scattering();
    scat.validate();
    geom.validate();

    const int trials = scat.trials;
    std::vector<PathSet> sets(static_cast<std::size_t>(trials));
    auto run_range = [&](int begin, int end) {
        for (int t = begin; t < end; ++t) {
            RandomStream rng =
                RandomStream::derived(scat.seed, {static_cast<std::uint64_t>(t)});
            sets[static_cast<std::size_t>(t)] =
                generate_path_set(clusters, geom, ant, scat, rng);
        }
    };

    unsigned w = workers != 0 ? workers : std::thread::hardware_concurrency();
    w = std::max(1u, std::min<unsigned>(w, static_cast<unsigned>(trials)));
    if (w == 1) {
        run_range(0, trials);
        return sets;
    }
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (unsigned i = 0; i < w; ++i) {
        int begin = static_cast<int>(static_cast<std::int64_t>(trials) * i / w);
        int end = static_cast<int>(static_cast<std::int64_t>(trials) * (i + 1) / w);
        pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
    return sets;
}

inline SimulationResult run_simulation(const ClusterSet& clusters, const RunConfig& config,
                                       unsigned workers = 0) {
    const std::vector<PathSet> sets = generate_trials(clusters, config, workers);
    SimulationResult result;
    result.pmf = estimate_pmf(std::span<const PathSet>(sets.data(), sets.size()), config.bin_deg);
    result.report = make_dispersion_report(result.pmf, config.sigma0_deg);
    return result;
}

// One row of a sweep: a directional pattern of the given beamwidth, or omni.
struct PatternSpec {
    bool omni = false;
    double hpbw_deg = 0.0;

    std::string label() const {
        if (omni) return "omni";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.9g", hpbw_deg);
        return buf;
    }
};

struct SweepConfig {
    std::vector<PatternSpec> patterns;
    std::vector<double> alphas_deg;
};

struct SweepCell {
    PatternSpec pattern;
    double alpha_deg = 0.0;
    DispersionReport report;
};

struct SweepResult {
    SweepConfig grid;
    std::vector<std::vector<SweepCell>> cells;  // [pattern][alpha]
};

// Run the full (pattern x alpha) grid. Each cell gets its own substream
// (seed, pattern-index, alpha-index), so adding rows or columns never
// perturbs existing cells.
inline SweepResult run_sweep(const ClusterSet& clusters, const RunConfig& base,
                             const SweepConfig& grid, unsigned workers = 0) {
    if (grid.patterns.empty() || grid.alphas_deg.empty())
        throw std::invalid_argument("run_sweep: empty pattern or alpha list");
    SweepResult result;
    result.grid = grid;
    result.cells.resize(grid.patterns.size());
    for (std::size_t hi = 0; hi < grid.patterns.size(); ++hi) {
        for (std::size_t ai = 0; ai < grid.alphas_deg.size(); ++ai) {
            RunConfig cell = base;
            cell.omni = grid.patterns[hi].omni;
            if (!cell.omni) cell.hpbw_deg = grid.patterns[hi].hpbw_deg;
            cell.alpha_deg = grid.alphas_deg[ai];
            cell.seed = derive_seed(base.seed, {hi, ai});
            SimulationResult sim = run_simulation(clusters, cell, workers);
            result.cells[hi].push_back({grid.patterns[hi], cell.alpha_deg, sim.report});
        }
    }
    return result;
}

}  // namespace dfsim

#endif  // DFSIM_SIMULATE_HPP
