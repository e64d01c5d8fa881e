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

#ifndef DFSIM_ANTENNA_HPP
#define DFSIM_ANTENNA_HPP

#include <cmath>
#include <stdexcept>

#include "dfsim/angles.hpp"
#include "dfsim/rng.hpp"

namespace dfsim {

// Gaussian-lobe standard deviation from the half-power beamwidth,
// sigma_T = HPBW / (2 sqrt(ln 2)), returned in radians.
inline double sigma_from_hpbw(double hpbw_deg) {
    if (!(hpbw_deg > 0.0)) throw std::domain_error("sigma_from_hpbw: hpbw must be > 0");
    return deg2rad(hpbw_deg) / (2.0 * std::sqrt(std::numbers::ln2));
}

// Transmit power pattern in azimuth: a Gaussian main lobe of width sigma_T
// steered alpha degrees off the Tx->Rx direction, or an omni pattern.
struct AntennaConfig {
    double hpbw_deg = 0.0;
    double alpha_deg = 0.0;    // boresight offset from the Tx->Rx direction
    double sigma_t_rad = 0.0;  // derived; unused when omni
    bool omni = false;

    static AntennaConfig directional(double hpbw_deg, double alpha_deg = 0.0) {
        AntennaConfig cfg;
        cfg.hpbw_deg = hpbw_deg;
        cfg.alpha_deg = alpha_deg;
        cfg.sigma_t_rad = sigma_from_hpbw(hpbw_deg);
        return cfg;
    }

    static AntennaConfig omnidirectional() {
        AntennaConfig cfg;
        cfg.omni = true;
        return cfg;
    }
};

// Normalizer of the truncated Gaussian AOD density over (-pi, pi]:
// C(sigma) = (sqrt(pi) * sigma * erf(pi / sigma))^-1.
inline double aod_normalization(double sigma_t_rad) {
    return 1.0 / (std::sqrt(pi) * sigma_t_rad * std::erf(pi / sigma_t_rad));
}

// AOD density at phi (rad). Integrates to 1 over (-pi, pi] for any
// (HPBW, alpha); the omni pattern is the uniform density 1/(2 pi).
inline double aod_pdf(double phi_rad, const AntennaConfig& ant) {
    if (ant.omni) return 1.0 / two_pi;
    double x = wrap_pi(phi_rad - deg2rad(ant.alpha_deg));
    return aod_normalization(ant.sigma_t_rad) *
           std::exp(-(x * x) / (ant.sigma_t_rad * ant.sigma_t_rad));
}

// Draw one angle of departure. The power density exp(-phi^2 / sigma_T^2) is
// a Gaussian of standard deviation sigma_T/sqrt(2); draws outside (-pi, pi]
// are rejected before the boresight shift, so no mass piles up at the
// interval ends.
inline double sample_aod(RandomStream& rng, const AntennaConfig& ant) {
    if (ant.omni) return rng.uniform_angle();
    const double stddev = ant.sigma_t_rad / std::sqrt(2.0);
    double x;
    do {
        x = rng.normal(0.0, stddev);
    } while (!(x > -pi && x <= pi));
    return wrap_pi(x + deg2rad(ant.alpha_deg));
}

}  // namespace dfsim

#endif  // DFSIM_ANTENNA_HPP
