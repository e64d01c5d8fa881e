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

#ifndef DFSIM_ESTIMATION_HPP
#define DFSIM_ESTIMATION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "dfsim/angles.hpp"
#include "dfsim/montecarlo.hpp"

namespace dfsim {

// Power-normalized probability masses over a regular azimuth grid covering
// (-180, 180]. Bin j is centered at -180 + (j+1)*w and covers the half-open
// interval (center - w/2, center + w/2]; the last bin wraps across +/-180.
struct AngularPmf {
    double bin_width_deg = 1.0;
    std::vector<double> mass;

    std::size_t bins() const { return mass.size(); }

    double center_deg(std::size_t j) const {
        return -180.0 + (static_cast<double>(j) + 1.0) * bin_width_deg;
    }

    std::size_t bin_index(double phi_deg) const {
        const auto k_count = static_cast<long>(bins());
        const double t = (wrap_deg(phi_deg) + 180.0) / bin_width_deg;  // in (0, K]
        long r = static_cast<long>(std::ceil(t - 0.5));
        if (r <= 0) r = k_count;  // (-180, -180 + w/2] wraps onto the +180 bin
        if (r > k_count) r = k_count;
        return static_cast<std::size_t>(r - 1);
    }

    double total_mass() const {
        double sum = 0.0;
        for (double m : mass) sum += m;
        return sum;
    }
};

namespace detail {

inline std::size_t checked_bin_count(double bin_width_deg) {
    if (!(bin_width_deg > 0.0))
        throw std::invalid_argument("AngularPmf: bin width must be > 0");
    const auto k = static_cast<std::size_t>(std::llround(360.0 / bin_width_deg));
    if (k < 1 || std::abs(static_cast<double>(k) * bin_width_deg - 360.0) > 1e-9)
        throw std::invalid_argument("AngularPmf: bin width must divide 360");
    return k;
}

}  // namespace detail

// Power-weighted histogram of AOA over one or more path sets (trials).
// Every path adds its power to the bin containing its arrival angle; each
// trial is normalized by its own total power and trials are averaged with
// equal weight.
inline AngularPmf estimate_pmf(std::span<const PathSet> trials, double bin_width_deg) {
    if (trials.empty()) throw std::invalid_argument("estimate_pmf: no path sets");
    const std::size_t k_bins = detail::checked_bin_count(bin_width_deg);

    AngularPmf pmf;
    pmf.bin_width_deg = bin_width_deg;
    pmf.mass.assign(k_bins, 0.0);

    std::vector<double> trial_mass(k_bins);
    for (const PathSet& set : trials) {
        std::fill(trial_mass.begin(), trial_mass.end(), 0.0);
        double total = 0.0;
        for (const Path& path : set.paths) {
            trial_mass[pmf.bin_index(rad2deg(path.aoa_rad))] += path.power;
            total += path.power;
        }
        if (!(total > 0.0)) throw std::invalid_argument("estimate_pmf: zero total power");
        for (std::size_t j = 0; j < k_bins; ++j) pmf.mass[j] += trial_mass[j] / total;
    }
    for (double& m : pmf.mass) m /= static_cast<double>(trials.size());
    return pmf;
}

inline AngularPmf estimate_pmf(const PathSet& set, double bin_width_deg) {
    return estimate_pmf(std::span<const PathSet>(&set, 1), bin_width_deg);
}

// First moment of the AOA distribution in signed degrees: the
// environment-induced bearing bias.
inline double mean_offset(const AngularPmf& pmf) {
    double m1 = 0.0;
    for (std::size_t j = 0; j < pmf.bins(); ++j) m1 += pmf.center_deg(j) * pmf.mass[j];
    return m1;
}

// RMS angle spread in degrees, on signed angles relative to the Tx->Rx
// direction. Linear (not circular) moments; all modelled scenarios keep the
// mass well away from the +/-180 wrap.
inline double angle_spread(const AngularPmf& pmf) {
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j < pmf.bins(); ++j) {
        const double c = pmf.center_deg(j);
        m1 += c * pmf.mass[j];
        m2 += c * c * pmf.mass[j];
    }
    return std::sqrt(std::max(0.0, m2 - m1 * m1));
}

// Center of the maximal-mass bin. Since the true direction is 0 by
// convention, this is the bearing-line error delta-phi. Exact mass ties go
// to the smallest |center|, then to the positive sign.
inline double peak_direction(const AngularPmf& pmf) {
    if (pmf.mass.empty()) throw std::invalid_argument("peak_direction: empty pmf");
    std::size_t best = 0;
    for (std::size_t j = 1; j < pmf.bins(); ++j) {
        if (pmf.mass[j] > pmf.mass[best]) {
            best = j;
            continue;
        }
        if (pmf.mass[j] == pmf.mass[best]) {
            const double c = pmf.center_deg(j), b = pmf.center_deg(best);
            if (std::abs(c) < std::abs(b) || (std::abs(c) == std::abs(b) && c > b)) best = j;
        }
    }
    return pmf.center_deg(best);
}

// Resulting direction-finding error: instrument spread plus the
// environment's mean offset magnitude and angle spread.
inline double resulting_error(double sigma0_deg, double phi_bar_deg, double sigma_e_deg) {
    if (!(sigma0_deg >= 0.0)) throw std::domain_error("resulting_error: sigma0 must be >= 0");
    return sigma0_deg + std::abs(phi_bar_deg) + sigma_e_deg;
}

// Percentage share of the resulting error caused by the environment.
inline double environment_share(double sigma0_deg, double phi_bar_deg, double sigma_e_deg) {
    const double total = resulting_error(sigma0_deg, phi_bar_deg, sigma_e_deg);
    if (!(total > 0.0)) throw std::domain_error("environment_share: resulting error is zero");
    return (std::abs(phi_bar_deg) + sigma_e_deg) / total * 100.0;
}

// Mean squared difference between two pmfs on the same grid.
inline double lse(const AngularPmf& a, const AngularPmf& b) {
    if (a.bins() != b.bins() || a.bin_width_deg != b.bin_width_deg)
        throw std::invalid_argument("lse: mismatched bin grids");
    double sum = 0.0;
    for (std::size_t j = 0; j < a.bins(); ++j) {
        const double d = a.mass[j] - b.mass[j];
        sum += d * d;
    }
    return sum / static_cast<double>(a.bins());
}

// Uncentered correlation sum(x y) / sqrt(sum(x^2) sum(y^2)).
inline double uncentered_correlation(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("uncentered_correlation: need equal lengths >= 2");
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxy += xs[k] * ys[k];
        sxx += xs[k] * xs[k];
        syy += ys[k] * ys[k];
    }
    const double denom = std::sqrt(sxx * syy);
    if (!(denom > 0.0)) throw std::domain_error("uncentered_correlation: zero denominator");
    return sxy / denom;
}

// One (mean offset, bearing-line error) observation from a sweep cell.
struct OffsetPeakPair {
    double phi_bar_deg = 0.0;
    double delta_phi_deg = 0.0;
};

struct RegressionResult {
    double gradient = 0.0;
    double rho = 0.0;
    std::size_t pairs_used = 0;
};

// Least-squares line through the origin for delta-phi vs phi-bar, with the
// uncentered correlation of the same pairs. Callers restrict the pairs to
// the pre-extremum range of the mean offset.
inline RegressionResult fit_gradient(std::span<const OffsetPeakPair> pairs) {
    if (pairs.size() < 2) throw std::invalid_argument("fit_gradient: need at least 2 pairs");
    std::vector<double> xs(pairs.size()), ys(pairs.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        xs[k] = pairs[k].phi_bar_deg;
        ys[k] = pairs[k].delta_phi_deg;
        sxy += xs[k] * ys[k];
        sxx += xs[k] * xs[k];
    }
    if (!(sxx > 0.0)) throw std::domain_error("fit_gradient: all mean offsets are zero");
    RegressionResult result;
    result.gradient = sxy / sxx;
    result.rho = uncentered_correlation(xs, ys);
    result.pairs_used = pairs.size();
    return result;
}

// Bearing correction -g * phi_bar, defined only while |phi_bar| stays below
// the validity limit; outside it there is no correction (not an error).
inline std::optional<double> correction(double phi_bar_deg, double gradient = 0.21,
                                        double limit_deg = 15.0) {
    if (std::abs(phi_bar_deg) >= limit_deg) return std::nullopt;
    return -gradient * phi_bar_deg;
}

// The dispersion metrics of one simulated scenario.
struct DispersionReport {
    double sigma_e_deg = 0.0;      // RMS angle spread
    double phi_bar_deg = 0.0;      // mean offset of the reception angle
    double delta_phi_deg = 0.0;    // bearing-line error (pmf peak)
    double sigma_total_deg = 0.0;  // resulting error incl. instrument spread
    double delta_percent = 0.0;    // environment share of the resulting error
    double sigma0_deg = 0.0;       // instrument RMS bearing spread (input)
};

inline DispersionReport make_dispersion_report(const AngularPmf& pmf, double sigma0_deg) {
    DispersionReport report;
    report.sigma0_deg = sigma0_deg;
    report.sigma_e_deg = angle_spread(pmf);
    report.phi_bar_deg = mean_offset(pmf);
    report.delta_phi_deg = peak_direction(pmf);
    report.sigma_total_deg = resulting_error(sigma0_deg, report.phi_bar_deg, report.sigma_e_deg);
    report.delta_percent = environment_share(sigma0_deg, report.phi_bar_deg, report.sigma_e_deg);
    return report;
}

}  // namespace dfsim

#endif  // DFSIM_ESTIMATION_HPP
