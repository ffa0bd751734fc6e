// Copyright 2026 Elevator Codes Contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "elevator/cli/dispatch.h"

namespace elevator {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct CliRun {
    int rc;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int rc = dispatch(args, out, err);
    return {rc, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("elevator_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }
    std::string path(const std::string &name) const {
        return (dir_ / name).string();
    }
    fs::path dir_;
};

TEST_F(CliTest, CodeInfo) {
    CliRun r = run({"code", "info", "code_15_9_3"});
    ASSERT_EQ(r.rc, kExitOk) << r.err;
    json j = json::parse(r.out);
    EXPECT_EQ(j["n"], 15);
    EXPECT_EQ(j["k"], 9);
    EXPECT_EQ(j["d"], 3);
    EXPECT_EQ(j["matchable"], true);

    std::ofstream(path("h.txt")) << "2 3\n110\n011\n";
    CliRun f = run({"code", "info", path("h.txt"), "--dz", "3"});
    ASSERT_EQ(f.rc, kExitOk) << f.err;
    json jf = json::parse(f.out);
    EXPECT_EQ(jf["k"], 1);
    EXPECT_EQ(jf["d"], 3);
    EXPECT_EQ(jf["combined"]["css_commutes"], true);
}

TEST_F(CliTest, NoiselessSampleIsAllZero) {
    CliRun b = run({"circuit", "build", "--outer", "code_15_9_3", "--dz", "3", "--rounds", "1", "--basis", "z", "-o",
                 path("c.txt")});
    ASSERT_EQ(b.rc, kExitOk) << b.err;
    CliRun s = run({"sample", "--circuit", path("c.txt"), "--shots", "10", "--format", "01", "-o", path("d.01")});
    ASSERT_EQ(s.rc, kExitOk) << s.err;
    json j = json::parse(s.out);
    EXPECT_EQ(j["shots"], 10);
    EXPECT_EQ(j["shots_with_detection_events"], 0);
    std::istringstream lines(slurp(path("d.01")));
    size_t n = 0;
    for (std::string line; std::getline(lines, line); n++) {
        EXPECT_EQ(line.find('1'), std::string::npos);
    }
    EXPECT_EQ(n, 10u);
}

TEST_F(CliTest, CircuitBuildToStdout) {
    CliRun r = run({"circuit", "build", "--outer", "repetition", "--dz", "3", "--rounds", "1", "--basis", "x"});
    ASSERT_EQ(r.rc, kExitOk) << r.err;
    EXPECT_NE(r.out.find("CNOT"), std::string::npos);
    EXPECT_NE(r.out.find("DETECTOR"), std::string::npos);
}

TEST_F(CliTest, PipelineSampleDemDecode) {
    ASSERT_EQ(run({"circuit", "build", "--outer", "repetition", "--dz", "5", "--rounds", "5", "--basis", "x",
                   "--noise", "0,2e-2", "-o", path("c.txt")})
                  .rc,
              kExitOk);
    ASSERT_EQ(run({"--seed", "3", "sample", "--circuit", path("c.txt"), "--shots", "500", "-o", path("d.b8"),
                   "--obs-out", path("o.b8")})
                  .rc,
              kExitOk);
    CliRun dem = run({"dem", "--circuit", path("c.txt"), "-o", path("dem.txt")});
    ASSERT_EQ(dem.rc, kExitOk) << dem.err;
    EXPECT_EQ(json::parse(dem.out)["hyperedges"], 0);
    CliRun dec = run({"decode", "--dem", path("dem.txt"), "--syndromes", path("d.b8"), "--observables", path("o.b8"),
                   "-o", path("p.b8")});
    ASSERT_EQ(dec.rc, kExitOk) << dec.err;
    json j = json::parse(dec.out);
    EXPECT_EQ(j["shots"], 500);
    EXPECT_LT(j["failures"].get<int>(), 100);
    EXPECT_EQ(fs::file_size(path("p.b8")), 500u);
}

TEST_F(CliTest, ExitCodes) {
    CliRun unknown = run({"--no-such-flag"});
    EXPECT_EQ(unknown.rc, kExitUsage);
    EXPECT_NE(unknown.err.find("Usage"), std::string::npos);
    EXPECT_EQ(run({"code", "info"}).rc, kExitUsage);
    EXPECT_EQ(run({"code", "info", "no_such_code"}).rc, kExitUsage);
    EXPECT_EQ(run({"sample", "--circuit", path("missing.txt")}).rc, kExitUsage);

    ASSERT_EQ(run({"circuit", "build", "--outer", "code_15_9_3", "--dz", "3", "--basis", "x", "--noise", "0,1e-2",
                   "-o", path("c.txt")})
                  .rc,
              kExitOk);
    ASSERT_EQ(run({"dem", "--circuit", path("c.txt"), "-o", path("dem.txt")}).rc, kExitOk);
    ASSERT_EQ(run({"sample", "--circuit", path("c.txt"), "--shots", "4", "-o", path("d.b8")}).rc, kExitOk);
    CliRun ml = run({"decode", "--dem", path("dem.txt"), "--syndromes", path("d.b8"), "--ml"});
    EXPECT_EQ(ml.rc, kExitInfeasible);
    EXPECT_NE(ml.err.find("64 mechanisms"), std::string::npos);

    std::ofstream(path("bad.dem")) << "detectors 2\nobservables 0\nerror 0.1 D0\n";
    std::ofstream(path("bad.01")) << "01\n";
    CliRun inv = run({"decode", "--dem", path("bad.dem"), "--syndromes", path("bad.01"), "--format", "01"});
    EXPECT_EQ(inv.rc, kExitInvariant);
}

TEST_F(CliTest, ExperimentCsvIsReproducible) {
    std::vector<std::string> args{"--seed", "9", "experiment", "memory", "--family", "repetition", "--dz", "3,5",
                                  "--pz", "1e-2,2e-2", "--shots", "2000", "--csv"};
    auto a = args;
    a.push_back(path("a.csv"));
    auto b = args;
    b.push_back(path("b.csv"));
    b.insert(b.begin(), {"--threads", "2"});
    CliRun ra = run(a);
    ASSERT_EQ(ra.rc, kExitOk) << ra.err;
    ASSERT_EQ(run(b).rc, kExitOk);
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));

    std::istringstream lines(ra.out);
    size_t n = 0;
    for (std::string line; std::getline(lines, line); n++) {
        json j = json::parse(line);
        EXPECT_EQ(j["family"], "repetition");
    }
    EXPECT_EQ(n, 4u);

    // Appending keeps a single header.
    ASSERT_EQ(run(a).rc, kExitOk);
    std::string csv = slurp(path("a.csv"));
    EXPECT_EQ(csv.find("family,"), 0u);
    EXPECT_EQ(csv.find("family,", 1), std::string::npos);

    CliRun fit = run({"fit", "--csv", path("a.csv"), "--family", "rep_z"});
    ASSERT_EQ(fit.rc, kExitOk) << fit.err;
    json jf = json::parse(fit.out);
    EXPECT_EQ(jf["family"], "rep_z");
    EXPECT_GT(jf["b"].get<double>(), 0);
}

TEST_F(CliTest, ConfigFileFlagsWin) {
    std::ofstream(path("cfg.ini")) << "[overhead]\npz=1e-2\neta=1e6\ntarget=1e-9\nfamily=concat\n";
    CliRun r = run({"overhead", "--config", path("cfg.ini")});
    ASSERT_EQ(r.rc, kExitOk) << r.err;
    json j = json::parse(r.out);
    EXPECT_DOUBLE_EQ(j["points"][0]["p_z"].get<double>(), 1e-2);
    EXPECT_EQ(j["points"][0]["d_z"], 37);

    CliRun f = run({"overhead", "--config", path("cfg.ini"), "--pz", "1e-3"});
    ASSERT_EQ(f.rc, kExitOk) << f.err;
    EXPECT_DOUBLE_EQ(json::parse(f.out)["points"][0]["p_z"].get<double>(), 1e-3);
}

TEST_F(CliTest, OverheadSweepCsv) {
    CliRun r = run({"overhead", "--target", "1e-12", "--pz", "1e-3", "--eta-sweep", "1e4:1e7"});
    ASSERT_EQ(r.rc, kExitOk) << r.err;
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    EXPECT_EQ(header, "eta,repetition,concat,surface,xzzx,concat_config");
    size_t n = 0;
    for (std::string line; std::getline(lines, line);) {
        n++;
    }
    EXPECT_EQ(n, 31u);
}

double cell(const std::string &s) {
    return s == "inf" ? std::numeric_limits<double>::infinity() : std::stod(s);
}

TEST_F(CliTest, ReproduceFig1DeskScaleIsMonotoneInEta) {
    CliRun r = run({"--seed", "1", "reproduce", "fig1", "--desk-scale", "-o", path("fig1.csv")});
    ASSERT_EQ(r.rc, kExitOk) << r.err;
    std::istringstream lines(slurp(path("fig1.csv")));
    std::string line;
    std::getline(lines, line);
    ASSERT_EQ(line, "eta,repetition,concat,surface,xzzx,concat_config");
    std::vector<double> prev(4, std::numeric_limits<double>::infinity());
    size_t rows = 0;
    while (std::getline(lines, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');) {
            cells.push_back(c);
        }
        ASSERT_EQ(cells.size(), 6u);
        for (size_t f = 0; f < 4; f++) {
            double v = cell(cells[1 + f]);
            EXPECT_LE(v, prev[f]) << "row " << rows << " column " << f;
            prev[f] = v;
        }
        rows++;
    }
    EXPECT_GT(rows, 10u);

    CliRun again = run({"--seed", "1", "reproduce", "fig1", "--desk-scale", "-o", path("fig1b.csv")});
    ASSERT_EQ(again.rc, kExitOk);
    EXPECT_EQ(slurp(path("fig1.csv")), slurp(path("fig1b.csv")));
}

TEST_F(CliTest, ReproduceFig3) {
    for (std::string fig : {"fig3a", "fig3b"}) {
        CliRun r = run({"reproduce", fig});
        ASSERT_EQ(r.rc, kExitOk) << r.err;
        EXPECT_EQ(r.out.rfind("target,repetition,concat,surface,xzzx,concat_config\n", 0), 0u);
    }
}

}  // namespace
}  // namespace elevator
