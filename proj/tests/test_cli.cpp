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

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const char* kCli = DFSIM_CLI_PATH;
const std::string kFixture = std::string(DFSIM_DATA_DIR) + "/canonical_pds.txt";

struct RunResult {
    int status = -1;
    std::string out;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "dfsim_cli_tests";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::path capture = scratch_dir() / ("stdout_" + std::to_string(counter++) + ".txt");
    std::string cmd = std::string(kCli) + " " + args + " > " + capture.string() + " 2>/dev/null";
    int raw = std::system(cmd.c_str());
    RunResult result;
    result.status = WEXITSTATUS(raw);
    std::ifstream in(capture);
    std::stringstream buf;
    buf << in.rdbuf();
    result.out = buf.str();
    return result;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("analyze reports the fixture clusters", "[cli]") {
    RunResult r = run_cli("analyze --profile " + kFixture + " --distance-m 300");
    REQUIRE(r.status == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["N"] == 13);
    CHECK(doc["clusters"].size() == 13);
    CHECK(doc["clusters"][0].contains("tau_ns"));
    CHECK(doc["clusters"][0].contains("a_m"));
    CHECK(doc["clusters"][0]["e"].get<double>() > 0.9);
    CHECK(doc["rms_delay_spread_ns"].get<double>() == Catch::Approx(104.3).epsilon(0.10));
    CHECK(doc["p0"].get<double>() > 0.0);
}

TEST_CASE("analyze on a pure exponential finds no clusters", "[cli]") {
    fs::path profile = scratch_dir() / "pure_exp.txt";
    {
        std::ofstream out(profile);
        out << "# units: db\n";
        for (int t = 0; t <= 1500; t += 5) out << t << " " << -0.04 * t << "\n";
    }
    RunResult r = run_cli("analyze --profile " + profile.string());
    REQUIRE(r.status == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["N"] == 0);
    CHECK(doc["p0"].get<double>() == Catch::Approx(doc["total"].get<double>()));
}

TEST_CASE("analyze missing file exits 2", "[cli]") {
    RunResult r = run_cli("analyze --profile /nonexistent/file.txt");
    CHECK(r.status == 2);
}

TEST_CASE("malformed profile exits 1", "[cli]") {
    fs::path profile = scratch_dir() / "bad.txt";
    {
        std::ofstream out(profile);
        out << "0 1.0\n50 2.0\n40 3.0\n";  // non-monotone
    }
    RunResult r = run_cli("analyze --profile " + profile.string());
    CHECK(r.status == 1);
}

TEST_CASE("simulate is deterministic and symmetric at alpha 0", "[cli]") {
    fs::path out1 = scratch_dir() / "sim1";
    fs::path out2 = scratch_dir() / "sim2";
    std::string common = "simulate --profile " + kFixture +
                         " --hpbw 30 --alpha 0 --trials 100 --seed 7 --out-dir ";
    RunResult r1 = run_cli(common + out1.string());
    RunResult r2 = run_cli(common + out2.string());
    REQUIRE(r1.status == 0);
    REQUIRE(r2.status == 0);
    CHECK(slurp(out1 / "pmf.txt") == slurp(out2 / "pmf.txt"));
    CHECK(slurp(out1 / "report.json") == slurp(out2 / "report.json"));

    auto doc = nlohmann::json::parse(slurp(out1 / "report.json"));
    CHECK(std::abs(doc["phi_bar_deg"].get<double>()) <= 0.5);
    CHECK(doc["sigma_e_deg"].get<double>() > 0.0);
}

TEST_CASE("simulate omni spreads more than hpbw 30", "[cli]") {
    fs::path narrow = scratch_dir() / "narrow";
    fs::path omni = scratch_dir() / "omni";
    RunResult r1 = run_cli("simulate --profile " + kFixture +
                           " --hpbw 30 --alpha 0 --trials 60 --seed 5 --out-dir " +
                           narrow.string());
    RunResult r2 = run_cli("simulate --profile " + kFixture +
                           " --omni --trials 60 --seed 5 --out-dir " + omni.string());
    REQUIRE(r1.status == 0);
    REQUIRE(r2.status == 0);
    auto a = nlohmann::json::parse(slurp(narrow / "report.json"));
    auto b = nlohmann::json::parse(slurp(omni / "report.json"));
    CHECK(b["sigma_e_deg"].get<double>() > a["sigma_e_deg"].get<double>());
}

TEST_CASE("compare of a pmf with itself is zero", "[cli]") {
    fs::path out = scratch_dir() / "cmp";
    REQUIRE(run_cli("simulate --profile " + kFixture +
                    " --hpbw 64.8 --alpha 60 --trials 30 --seed 3 --out-dir " + out.string())
                .status == 0);
    fs::path pmf = out / "pmf.txt";
    RunResult r = run_cli("compare " + pmf.string() + " " + pmf.string());
    REQUIRE(r.status == 0);
    CHECK(std::strtod(r.out.c_str(), nullptr) == 0.0);
}

TEST_CASE("compare rejects mismatched grids", "[cli]") {
    fs::path out1 = scratch_dir() / "grid1";
    fs::path out2 = scratch_dir() / "grid2";
    REQUIRE(run_cli("simulate --profile " + kFixture +
                    " --trials 20 --seed 3 --bin-deg 1 --out-dir " + out1.string())
                .status == 0);
    REQUIRE(run_cli("simulate --profile " + kFixture +
                    " --trials 20 --seed 3 --bin-deg 2 --out-dir " + out2.string())
                .status == 0);
    RunResult r = run_cli("compare " + (out1 / "pmf.txt").string() + " " +
                          (out2 / "pmf.txt").string());
    CHECK(r.status == 1);
}

TEST_CASE("correct applies the default gradient", "[cli]") {
    RunResult r = run_cli("correct --phi-bar 10");
    REQUIRE(r.status == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["in_range"] == true);
    CHECK(doc["correction_deg"].get<double>() == Catch::Approx(-2.1));

    RunResult out_of_range = run_cli("correct --phi-bar 20");
    REQUIRE(out_of_range.status == 0);
    auto doc2 = nlohmann::json::parse(out_of_range.out);
    CHECK(doc2["in_range"] == false);
    CHECK(doc2["message"].get<std::string>().find("out of correction range") !=
          std::string::npos);
}

TEST_CASE("correct fits an exact line from a pairs file", "[cli]") {
    fs::path pairs = scratch_dir() / "pairs.txt";
    {
        std::ofstream out(pairs);
        out << "# columns: phi_bar_deg delta_phi_deg\n";
        for (double x : {1.0, 2.0, 4.0, 8.0}) out << x << " " << 0.21 * x << "\n";
    }
    RunResult r = run_cli("correct --pairs " + pairs.string());
    REQUIRE(r.status == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["gradient"].get<double>() == Catch::Approx(0.21));
    CHECK(doc["rho"].get<double>() == Catch::Approx(1.0));
    CHECK(doc["pairs_used"] == 4);
    CHECK(doc["mean_abs_corrected_deg"].get<double>() <
          doc["mean_abs_delta_phi_deg"].get<double>());
}

TEST_CASE("sweep writes the matrix files and matches simulate", "[cli]") {
    fs::path out = scratch_dir() / "sweep";
    RunResult r = run_cli("sweep --profile " + kFixture +
                          " --hpbw 30,omni --alpha 0,60 --trials 25 --seed 11 --out-dir " +
                          out.string());
    REQUIRE(r.status == 0);
    for (const char* name : {"sigma_e_deg.txt", "phi_bar_deg.txt", "delta_phi_deg.txt",
                             "sigma_total_deg.txt", "delta_percent.txt", "pairs.txt"}) {
        INFO(name);
        CHECK(fs::exists(out / name));
    }
    std::string sigma = slurp(out / "sigma_e_deg.txt");
    CHECK(sigma.find("# alpha_deg: 0 60") != std::string::npos);
    CHECK(sigma.find("omni ") != std::string::npos);

    // repeated run is byte-identical
    fs::path out2 = scratch_dir() / "sweep2";
    REQUIRE(run_cli("sweep --profile " + kFixture +
                    " --hpbw 30,omni --alpha 0,60 --trials 25 --seed 11 --out-dir " +
                    out2.string())
                .status == 0);
    CHECK(slurp(out / "sigma_e_deg.txt") == slurp(out2 / "sigma_e_deg.txt"));
    CHECK(slurp(out / "pairs.txt") == slurp(out2 / "pairs.txt"));
}

TEST_CASE("usage errors exit 1", "[cli]") {
    CHECK(run_cli("simulate").status == 1);                 // missing --profile
    CHECK(run_cli("frobnicate").status == 1);               // unknown subcommand
    CHECK(run_cli("correct").status == 1);                  // neither --pairs nor --phi-bar
    CHECK(run_cli("sweep --profile " + kFixture + " --hpbw nope --alpha 0").status == 1);
}
