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

#ifndef DFSIM_PROFILE_HPP
#define DFSIM_PROFILE_HPP

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "dfsim/errors.hpp"

namespace dfsim {

struct ProfileSample {
    double delay_ns = 0.0;
    double power = 0.0;  // linear, arbitrary units
};

// Sampled power-vs-delay characteristic (PDP or PDS). Delays are strictly
// increasing and start at 0; powers are linear and at least one is positive.
struct DelayProfile {
    std::vector<ProfileSample> samples;
    double resolution_ns = 0.0;  // smallest sample spacing, 0 for a single sample

    double total_power() const {
        double sum = 0.0;
        for (const auto& s : samples) sum += s.power;
        return sum;
    }

    double max_power() const {
        double m = 0.0;
        for (const auto& s : samples) m = std::max(m, s.power);
        return m;
    }

    void validate() const {
        if (samples.empty()) throw std::invalid_argument("DelayProfile: empty profile");
        if (samples.front().delay_ns != 0.0)
            throw std::invalid_argument("DelayProfile: first delay must be 0 ns");
        double any_positive = false;
        for (std::size_t k = 0; k < samples.size(); ++k) {
            const auto& s = samples[k];
            if (!std::isfinite(s.delay_ns) || !std::isfinite(s.power))
                throw std::invalid_argument("DelayProfile: non-finite sample");
            if (s.power < 0.0) throw std::invalid_argument("DelayProfile: negative power");
            if (k > 0 && !(s.delay_ns > samples[k - 1].delay_ns))
                throw std::invalid_argument("DelayProfile: non-monotone delays");
            if (s.power > 0.0) any_positive = true;
        }
        if (!any_positive) throw std::invalid_argument("DelayProfile: all-zero profile");
    }
};

namespace detail {

inline double power_db(double power_linear) {
    // Finite stand-in for -inf keeps the peak walk free of NaN arithmetic.
    return power_linear > 0.0 ? 10.0 * std::log10(power_linear) : -1.0e9;
}

inline bool parse_two_columns(const std::string& line, double& a, double& b) {
    std::string buf = line;
    std::replace(buf.begin(), buf.end(), ',', ' ');
    const char* p = buf.c_str();
    char* end = nullptr;
    a = std::strtod(p, &end);
    if (end == p) return false;
    p = end;
    b = std::strtod(p, &end);
    if (end == p) return false;
    for (p = end; *p != '\0'; ++p)
        if (!std::isspace(static_cast<unsigned char>(*p))) return false;
    return true;
}

inline std::string lowercase(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace detail

// Read a two-column (delay_ns, power) profile. Lines whose first non-blank
// character is '#' are directives or comments; `# units: db` switches the
// power column to dB, converted to linear on load. One leading column-name
// row is tolerated. Malformed records raise parse_error with the line
// number; the result satisfies the DelayProfile invariants.
inline DelayProfile parse_profile(std::istream& in) {
    bool db_units = false;
    bool seen_data = false;
    bool header_skipped = false;
    std::vector<ProfileSample> samples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r\n");
        if (start == std::string::npos) continue;
        if (line[start] == '#') {
            std::string lowered = detail::lowercase(line.substr(start + 1));
            std::size_t pos = lowered.find("units:");
            if (pos != std::string::npos) {
                std::string value = lowered.substr(pos + 6);
                std::size_t v = value.find_first_not_of(" \t");
                if (v != std::string::npos) {
                    value = value.substr(v);
                    value = value.substr(0, value.find_last_not_of(" \t\r\n") + 1);
                    if (value == "db")
                        db_units = true;
                    else if (value == "linear")
                        db_units = false;
                    else
                        throw parse_error("unknown units directive '" + value + "'", line_no);
                }
            }
            continue;
        }
        double delay = 0.0, power = 0.0;
        if (!detail::parse_two_columns(line.substr(start), delay, power)) {
            if (!seen_data && !header_skipped) {  // optional column-name header row
                header_skipped = true;
                continue;
            }
            throw parse_error("malformed record '" + line + "'", line_no);
        }
        seen_data = true;
        samples.push_back({delay, db_units ? std::pow(10.0, power / 10.0) : power});
    }
    if (samples.empty()) throw std::invalid_argument("parse_profile: no samples");

    DelayProfile profile;
    profile.samples = std::move(samples);
    double step = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < profile.samples.size(); ++k)
        step = std::min(step, profile.samples[k].delay_ns - profile.samples[k - 1].delay_ns);
    profile.resolution_ns = std::isfinite(step) ? step : 0.0;
    profile.validate();
    return profile;
}

inline DelayProfile parse_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open profile file '" + path + "'");
    return parse_profile(in);
}

// Affine trend of the profile in the dB domain.
struct TrendLine {
    double slope_db_per_ns = 0.0;
    double intercept_db = 0.0;

    double db_at(double delay_ns) const { return intercept_db + slope_db_per_ns * delay_ns; }
};

struct TrendOptions {
    double noise_floor_db = 40.0;  // fit window below the profile maximum
};

// Least-squares affine fit of 10 log10(power) vs delay over samples above
// the noise floor. Exact (zero residual) on affine-in-dB inputs.
inline TrendLine fit_trend(const DelayProfile& profile, const TrendOptions& opt = {}) {
    profile.validate();
    const double floor_db = detail::power_db(profile.max_power()) - opt.noise_floor_db;
    std::vector<double> ts, ys;
    for (const auto& s : profile.samples) {
        if (s.power <= 0.0) continue;
        double db = detail::power_db(s.power);
        if (db < floor_db) continue;
        ts.push_back(s.delay_ns);
        ys.push_back(db);
    }
    if (ts.size() < 2)
        throw std::invalid_argument("fit_trend: fewer than 2 usable samples above the noise floor");

    double t_mean = 0.0, y_mean = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        t_mean += ts[k];
        y_mean += ys[k];
    }
    t_mean /= static_cast<double>(ts.size());
    y_mean /= static_cast<double>(ts.size());
    double stt = 0.0, sty = 0.0;
    for (std::size_t k = 0; k < ts.size(); ++k) {
        stt += (ts[k] - t_mean) * (ts[k] - t_mean);
        sty += (ts[k] - t_mean) * (ys[k] - y_mean);
    }
    TrendLine trend;
    trend.slope_db_per_ns = sty / stt;
    trend.intercept_db = y_mean - trend.slope_db_per_ns * t_mean;
    return trend;
}

// One extracted time-cluster: the delay of the residual maximum and the
// profile power integrated over the cluster's segment.
struct Cluster {
    std::size_t index = 0;  // 1-based
    double delay_ns = 0.0;  // tau_i
    double power = 0.0;     // P_i
};

// Time-cluster decomposition of a profile: N delayed clusters plus the
// local-scattering power P_0 near zero delay. P_0 + sum(P_i) equals the
// total profile power exactly, since segments partition the samples.
struct ClusterSet {
    std::vector<Cluster> clusters;  // ascending delay
    double local_power = 0.0;       // P_0
    double total_power = 0.0;       // P

    std::size_t delayed_count() const { return clusters.size(); }
};

struct ClusterOptions {
    double prominence_db = 1.0;
    double min_separation_ns = 0.0;  // 0: use the profile resolution
};

namespace detail {

// Prominence of a strict local maximum: height above the higher of the two
// base minima, walking outward until a taller sample or the signal end.
inline double peak_prominence(const std::vector<double>& r, std::size_t k) {
    double left_min = r[k];
    for (std::size_t j = k; j-- > 0;) {
        if (r[j] > r[k]) break;
        left_min = std::min(left_min, r[j]);
    }
    double right_min = r[k];
    for (std::size_t j = k + 1; j < r.size(); ++j) {
        if (r[j] > r[k]) break;
        right_min = std::min(right_min, r[j]);
    }
    return r[k] - std::max(left_min, right_min);
}

}  // namespace detail

// Locate time-clusters as local maxima of (profile_dB - trend_dB) with the
// required prominence and pairwise separation, for tau > 0, and integrate
// the profile power between the residual minima that bound each maximum.
// The segment from tau = 0 up to the first such minimum is the
// local-scattering power P_0. No detectable maxima is not an error: the
// result has N = 0 and all power in P_0.
inline ClusterSet extract_clusters(const DelayProfile& profile, const TrendLine& trend,
                                   const ClusterOptions& opt = {}) {
    profile.validate();
    if (!(opt.prominence_db >= 0.0))
        throw std::invalid_argument("extract_clusters: prominence_db must be >= 0");
    const double min_sep =
        opt.min_separation_ns > 0.0 ? opt.min_separation_ns : profile.resolution_ns;

    const std::size_t n = profile.samples.size();
    std::vector<double> residual(n);
    for (std::size_t k = 0; k < n; ++k)
        residual[k] =
            detail::power_db(profile.samples[k].power) - trend.db_at(profile.samples[k].delay_ns);

    // Strict interior maxima at tau > 0 with positive power.
    std::vector<std::size_t> candidates;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (profile.samples[k].power <= 0.0) continue;
        if (residual[k] > residual[k - 1] && residual[k] > residual[k + 1] &&
            detail::peak_prominence(residual, k) >= opt.prominence_db)
            candidates.push_back(k);
    }

    // Enforce minimum separation, keeping taller residuals first.
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
        if (residual[a] != residual[b]) return residual[a] > residual[b];
        return a < b;
    });
    std::vector<std::size_t> peaks;
    for (std::size_t k : candidates) {
        bool clear = true;
        for (std::size_t kept : peaks) {
            double gap = std::abs(profile.samples[k].delay_ns - profile.samples[kept].delay_ns);
            if (gap < min_sep) {
                clear = false;
                break;
            }
        }
        if (clear) peaks.push_back(k);
    }
    std::sort(peaks.begin(), peaks.end());

    ClusterSet set;
    set.total_power = profile.total_power();
    if (peaks.empty()) {
        set.local_power = set.total_power;
        return set;
    }

    // Segment boundaries: the residual minimum between consecutive peaks
    // (and between the start and the first peak). The boundary sample
    // belongs to the right-hand segment; index 0 always stays in P_0.
    std::vector<std::size_t> bounds(peaks.size());
    for (std::size_t i = 0; i < peaks.size(); ++i) {
        std::size_t lo = (i == 0) ? 1 : peaks[i - 1] + 1;
        std::size_t hi = peaks[i];  // exclusive
        std::size_t arg = hi;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = lo; j < hi; ++j) {
            if (residual[j] < best) {
                best = residual[j];
                arg = j;
            }
        }
        bounds[i] = arg;
    }

    for (std::size_t k = 0; k < bounds[0]; ++k) set.local_power += profile.samples[k].power;
    for (std::size_t i = 0; i < peaks.size(); ++i) {
        std::size_t seg_end = (i + 1 < peaks.size()) ? bounds[i + 1] : n;
        Cluster c;
        c.index = i + 1;
        c.delay_ns = profile.samples[peaks[i]].delay_ns;
        for (std::size_t k = bounds[i]; k < seg_end; ++k) c.power += profile.samples[k].power;
        set.clusters.push_back(c);
    }
    return set;
}

// Power-weighted standard deviation of delay, in ns.
inline double rms_delay_spread(const DelayProfile& profile) {
    profile.validate();
    const double total = profile.total_power();
    if (!(total > 0.0)) throw std::invalid_argument("rms_delay_spread: zero total power");
    double m1 = 0.0, m2 = 0.0;
    for (const auto& s : profile.samples) {
        double w = s.power / total;
        m1 += s.delay_ns * w;
        m2 += s.delay_ns * s.delay_ns * w;
    }
    return std::sqrt(std::max(0.0, m2 - m1 * m1));
}

}  // namespace dfsim

#endif  // DFSIM_PROFILE_HPP
