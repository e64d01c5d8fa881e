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

#ifndef DFSIM_IO_HPP
#define DFSIM_IO_HPP

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dfsim/errors.hpp"
#include "dfsim/estimation.hpp"
#include "dfsim/montecarlo.hpp"
#include "dfsim/profile.hpp"

namespace dfsim::io {

using json = nlohmann::ordered_json;

namespace detail {

inline std::string fmt(const char* spec, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, value);
    return buf;
}

}  // namespace detail

// ---- angular pmf: two-column text, header names the units ----

inline void write_pmf(std::ostream& out, const AngularPmf& pmf) {
    out << "# angular pmf\n";
    out << "# bin_deg " << detail::fmt("%.9g", pmf.bin_width_deg) << "\n";
    out << "# columns: phi_deg mass\n";
    for (std::size_t j = 0; j < pmf.bins(); ++j)
        out << detail::fmt("%.4f", pmf.center_deg(j)) << " " << detail::fmt("%.12e", pmf.mass[j])
            << "\n";
}

inline AngularPmf read_pmf(std::istream& in) {
    AngularPmf pmf;
    std::vector<double> centers, masses;
    std::string line;
    std::size_t line_no = 0;
    double bin_deg = 0.0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r\n");
        if (start == std::string::npos) continue;
        if (line[start] == '#') {
            std::size_t pos = line.find("bin_deg");
            if (pos != std::string::npos) bin_deg = std::strtod(line.c_str() + pos + 7, nullptr);
            continue;
        }
        double c = 0.0, m = 0.0;
        if (!dfsim::detail::parse_two_columns(line.substr(start), c, m))
            throw parse_error("malformed pmf record '" + line + "'", line_no);
        centers.push_back(c);
        masses.push_back(m);
    }
    if (masses.empty()) throw std::invalid_argument("read_pmf: no bins");
    if (bin_deg <= 0.0 && centers.size() > 1) bin_deg = centers[1] - centers[0];
    pmf.bin_width_deg = bin_deg;
    pmf.mass = masses;
    if (pmf.bins() != dfsim::detail::checked_bin_count(pmf.bin_width_deg))
        throw std::invalid_argument("read_pmf: bin count does not cover 360 degrees");
    for (std::size_t j = 0; j < pmf.bins(); ++j) {
        if (std::abs(centers[j] - pmf.center_deg(j)) > 1e-6)
            throw std::invalid_argument("read_pmf: irregular bin grid");
        if (masses[j] < 0.0) throw std::invalid_argument("read_pmf: negative mass");
    }
    if (std::abs(pmf.total_mass() - 1.0) > 1e-6)
        throw std::invalid_argument("read_pmf: masses do not sum to 1");
    return pmf;
}

inline AngularPmf read_pmf(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open pmf file '" + path + "'");
    return read_pmf(in);
}

// ---- path set: JSON lines, one record per path ----

inline void write_path_set_jsonl(std::ostream& out, const PathSet& set) {
    for (const Path& p : set.paths) {
        json record;
        record["i"] = p.cluster;
        record["phi_deg"] = rad2deg(p.aoa_rad);
        record["p"] = p.power;
        record["direct"] = p.direct;
        out << record.dump() << "\n";
    }
}

// ---- cluster set and reports as JSON documents ----

inline json to_json(const ClusterSet& set) {
    json doc;
    doc["N"] = set.delayed_count();
    doc["clusters"] = json::array();
    for (const Cluster& c : set.clusters) {
        json entry;
        entry["tau_ns"] = c.delay_ns;
        entry["power"] = c.power;
        doc["clusters"].push_back(entry);
    }
    doc["p0"] = set.local_power;
    doc["total"] = set.total_power;
    return doc;
}

inline json to_json(const DispersionReport& report) {
    json doc;
    doc["sigma_e_deg"] = report.sigma_e_deg;
    doc["phi_bar_deg"] = report.phi_bar_deg;
    doc["delta_phi_deg"] = report.delta_phi_deg;
    doc["sigma_total_deg"] = report.sigma_total_deg;
    doc["delta_percent"] = report.delta_percent;
    doc["sigma0_deg"] = report.sigma0_deg;
    return doc;
}

inline json to_json(const RegressionResult& result) {
    json doc;
    doc["gradient"] = result.gradient;
    doc["rho"] = result.rho;
    doc["pairs_used"] = result.pairs_used;
    return doc;
}

// ---- (phi_bar, delta_phi) pairs file for the correction regression ----

inline void write_pairs(std::ostream& out,
                        const std::vector<std::pair<OffsetPeakPair, std::string>>& rows) {
    out << "# columns: phi_bar_deg delta_phi_deg cell\n";
    for (const auto& [pair, label] : rows)
        out << detail::fmt("%.9g", pair.phi_bar_deg) << " "
            << detail::fmt("%.9g", pair.delta_phi_deg) << " " << label << "\n";
}

// Reads the first two columns; anything after them is a cell label.
inline std::vector<OffsetPeakPair> read_pairs(std::istream& in) {
    std::vector<OffsetPeakPair> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r\n");
        if (start == std::string::npos || line[start] == '#') continue;
        char* end = nullptr;
        const char* p = line.c_str() + start;
        double x = std::strtod(p, &end);
        if (end == p) throw parse_error("malformed pairs record '" + line + "'", line_no);
        p = end;
        double y = std::strtod(p, &end);
        if (end == p) throw parse_error("malformed pairs record '" + line + "'", line_no);
        pairs.push_back({x, y});
    }
    return pairs;
}

inline std::vector<OffsetPeakPair> read_pairs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open pairs file '" + path + "'");
    return read_pairs(in);
}

// ---- sweep matrices: rows = pattern, columns = alpha ----

struct SweepMatrix {
    std::string quantity;             // e.g. "sigma_e_deg"
    std::vector<std::string> rows;    // pattern labels ("30", "omni", ...)
    std::vector<double> alphas_deg;   // column headers
    std::vector<std::vector<double>> values;  // [row][col]
};

inline void write_sweep_matrix(std::ostream& out, const SweepMatrix& matrix) {
    out << "# " << matrix.quantity << "\n";
    out << "# rows: hpbw_deg (or omni); columns: alpha_deg\n";
    out << "# alpha_deg:";
    for (double a : matrix.alphas_deg) out << " " << detail::fmt("%.9g", a);
    out << "\n";
    for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
        out << matrix.rows[r];
        for (double v : matrix.values[r]) out << " " << detail::fmt("%.6f", v);
        out << "\n";
    }
}

}  // namespace dfsim::io

#endif  // DFSIM_IO_HPP
