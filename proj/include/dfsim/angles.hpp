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

#ifndef DFSIM_ANGLES_HPP
#define DFSIM_ANGLES_HPP

#include <cmath>
#include <numbers>

namespace dfsim {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline double deg2rad(double deg) { return deg * (pi / 180.0); }
inline double rad2deg(double rad) { return rad * (180.0 / pi); }

// Wrap to the half-open interval (-pi, pi]. All internal angles use this
// convention; degrees appear only at I/O boundaries.
inline double wrap_pi(double angle_rad) {
    double r = std::remainder(angle_rad, two_pi);
    return r <= -pi ? r + two_pi : r;
}

// Degree counterpart, (-180, 180].
inline double wrap_deg(double angle_deg) {
    double r = std::remainder(angle_deg, 360.0);
    return r <= -180.0 ? r + 360.0 : r;
}

}  // namespace dfsim

#endif  // DFSIM_ANGLES_HPP
