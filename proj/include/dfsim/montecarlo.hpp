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

#ifndef DFSIM_MONTECARLO_HPP
#define DFSIM_MONTECARLO_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dfsim/angles.hpp"
#include "dfsim/antenna.hpp"
#include "dfsim/geometry.hpp"
#include "dfsim/profile.hpp"
#include "dfsim/rng.hpp"

namespace dfsim {

// Knobs of the stochastic path generator.
struct ScatteringConfig {
    double mu = 60.0;            // von Mises concentration of local scattering
    double kappa = 0.0;          // Rice factor; 0 = pure NLOS, no direct atom
    int paths_per_cluster = 60;  // M_i, applied to every cluster index incl. 0
    int trials = 500;            // independent repetitions to average
    std::uint64_t seed = 1;

    void validate() const {
        if (!(mu >= 0.0)) throw std::invalid_argument("ScatteringConfig: mu must be >= 0");
        if (!(kappa >= 0.0)) throw std::invalid_argument("ScatteringConfig: kappa must be >= 0");
        if (paths_per_cluster < 1)
            throw std::invalid_argument("ScatteringConfig: paths_per_cluster must be >= 1");
        if (trials < 1) throw std::invalid_argument("ScatteringConfig: trials must be >= 1");
    }
};

// One propagation path at the receiver.
struct Path {
    std::size_t cluster = 0;  // 0 = local scattering
    double aoa_rad = 0.0;     // in (-pi, pi]
    double power = 0.0;       // linear, >= 0
    bool direct = false;      // the deterministic direct-path atom
};

// Generated path-parameter set: per-cluster paths plus, for kappa > 0, one
// direct atom at aoa 0 carrying kappa/(kappa+1) of the local power.
struct PathSet {
    std::vector<Path> paths;
    std::vector<int> per_cluster_counts;  // index 0..N, excludes the direct atom
    bool has_direct = false;

    double total_power() const {
        double sum = 0.0;
        for (const auto& p : paths) sum += p.power;
        return sum;
    }
};

// Local-scattering AOA: von Mises with mean direction 0 (the Tx->Rx line)
// and concentration mu, density exp(mu cos phi) / (2 pi I0(mu)). Sampled
// with the Best-Fisher wrapped-Cauchy rejection envelope; mu = 0 falls back
// to the uniform circle.
inline double sample_local_aoa(RandomStream& rng, double mu) {
    if (!(mu >= 0.0)) throw std::domain_error("sample_local_aoa: mu must be >= 0");
    if (mu == 0.0) return rng.uniform_angle();
    const double tau = 1.0 + std::sqrt(1.0 + 4.0 * mu * mu);
    const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * mu);
    const double r = (1.0 + rho * rho) / (2.0 * rho);
    for (;;) {
        double z = std::cos(pi * rng.uniform01());
        double f = (1.0 + r * z) / (r + z);
        double c = mu * (r - f);
        double u2 = rng.uniform01();
        if (c * (2.0 - c) - u2 > 0.0 || (u2 > 0.0 && std::log(c / u2) + 1.0 - c >= 0.0)) {
            double angle = std::acos(f);
            return wrap_pi(rng.uniform01() < 0.5 ? -angle : angle);
        }
    }
}

// Per-path power of a delayed cluster: uniform on [0, 2 P_i / M_i], so the
// expectation over M_i paths reproduces the cluster power P_i.
inline double sample_cluster_power(RandomStream& rng, double cluster_power, int paths_per_cluster) {
    if (!(cluster_power >= 0.0))
        throw std::domain_error("sample_cluster_power: cluster power must be >= 0");
    if (paths_per_cluster < 1)
        throw std::domain_error("sample_cluster_power: paths_per_cluster must be >= 1");
    return rng.uniform_below(2.0 * cluster_power / paths_per_cluster);
}

// Per-path power of local scattering: uniform on [0, 2 P_0 / ((kappa+1) M_0)].
// The Rice factor diverts the remaining kappa/(kappa+1) share to the direct atom.
inline double sample_local_power(RandomStream& rng, double local_power, int paths_per_cluster,
                                 double kappa) {
    if (!(local_power >= 0.0))
        throw std::domain_error("sample_local_power: local power must be >= 0");
    if (paths_per_cluster < 1)
        throw std::domain_error("sample_local_power: paths_per_cluster must be >= 1");
    if (!(kappa >= 0.0)) throw std::domain_error("sample_local_power: kappa must be >= 0");
    return rng.uniform_below(2.0 * local_power / ((kappa + 1.0) * paths_per_cluster));
}

// Generate one path set: for every delayed cluster, M_i AODs drawn from the
// antenna density and mapped to AOAs on the cluster ellipse; M_0 local
// paths from the von Mises law; and for kappa > 0 the direct atom at 0.
// Identical (seed, configs) give a bit-identical PathSet.
inline PathSet generate_path_set(const ClusterSet& clusters, const GeometryConfig& geom,
                                 const AntennaConfig& ant, const ScatteringConfig& scat,
                                 RandomStream& rng) {
    scat.validate();
    geom.validate();
    const int m = scat.paths_per_cluster;

    PathSet set;
    set.per_cluster_counts.assign(clusters.delayed_count() + 1, m);
    set.paths.reserve(static_cast<std::size_t>(m) * (clusters.delayed_count() + 1) + 1);

    for (const Cluster& cluster : clusters.clusters) {
        const Ellipse el = ellipse_from_delay(geom, cluster.delay_ns, cluster.index);
        for (int j = 0; j < m; ++j) {
            double phi_t = sample_aod(rng, ant);
            double phi_r = aoa_from_aod(phi_t, el);
            double p = sample_cluster_power(rng, cluster.power, m);
            set.paths.push_back({cluster.index, phi_r, p, false});
        }
    }
    for (int j = 0; j < m; ++j) {
        double phi_r = sample_local_aoa(rng, scat.mu);
        double p = sample_local_power(rng, clusters.local_power, m, scat.kappa);
        set.paths.push_back({0, phi_r, p, false});
    }
    if (scat.kappa > 0.0) {
        set.has_direct = true;
        set.paths.push_back(
            {0, 0.0, scat.kappa * clusters.local_power / (scat.kappa + 1.0), true});
    }
    return set;
}

}  // namespace dfsim

#endif  // DFSIM_MONTECARLO_HPP
