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

#ifndef DFSIM_GEOMETRY_HPP
#define DFSIM_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "dfsim/angles.hpp"

namespace dfsim {

// Tx-Rx link geometry. Scatterer ellipses are confocal with foci at Tx and
// Rx, so only the separation and the wave speed enter the math; coordinate
// positions reduce to the Tx->Rx reference direction.
struct GeometryConfig {
    double distance_m = 300.0;
    double wave_speed_m_per_ns = 0.299792458;  // free space

    void validate() const {
        if (!(distance_m > 0.0))
            throw std::invalid_argument("GeometryConfig: distance_m must be > 0");
        if (!(wave_speed_m_per_ns > 0.0))
            throw std::invalid_argument("GeometryConfig: wave_speed_m_per_ns must be > 0");
    }
};

// Scatterer ellipse of one time-cluster. 2a > D always holds, so 0 < e < 1.
struct Ellipse {
    double semi_major_m = 0.0;
    double eccentricity = 0.0;
    std::size_t cluster_index = 0;
};

// Ellipse whose total path length exceeds the direct distance by c*tau.
inline Ellipse ellipse_from_delay(const GeometryConfig& geom, double tau_ns,
                                  std::size_t cluster_index) {
    geom.validate();
    if (!(tau_ns > 0.0))
        throw std::domain_error(
            "ellipse_from_delay: tau_ns must be > 0 (the zero-delay cluster is local scattering)");
    Ellipse el;
    el.semi_major_m = 0.5 * (geom.distance_m + geom.wave_speed_m_per_ns * tau_ns);
    el.eccentricity = geom.distance_m / (2.0 * el.semi_major_m);
    el.cluster_index = cluster_index;
    return el;
}

// Angle of arrival at Rx for a departure angle phi_t on an ellipse of
// eccentricity e. Half-angle form of the ellipse reflection identity:
//
//   phi_r = 2 atan( (1-e)/(1+e) * tan(phi_t/2) )
//
// algebraically equal to sign(phi_t) * acos((2e + cos(phi_t)(1+e^2)) /
// (1+e^2+2e cos(phi_t))) but free of the cancellation near phi_t = 0.
// sign(0) is taken as +1; both conventions give phi_r(0) = 0.
inline double aoa_from_aod(double phi_t_rad, double eccentricity) {
    if (!(eccentricity >= 0.0 && eccentricity < 1.0))
        throw std::domain_error("aoa_from_aod: eccentricity must lie in [0, 1)");
    double phi = wrap_pi(phi_t_rad);
    if (eccentricity == 0.0) return phi;  // coincident foci, identity map
    double shrink = (1.0 - eccentricity) / (1.0 + eccentricity);
    return 2.0 * std::atan(shrink * std::tan(0.5 * phi));
}

inline double aoa_from_aod(double phi_t_rad, const Ellipse& el) {
    return aoa_from_aod(phi_t_rad, el.eccentricity);
}

}  // namespace dfsim

#endif  // DFSIM_GEOMETRY_HPP
