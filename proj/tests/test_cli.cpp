// Copyright (C) 2026 The wiretap authors
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

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "wiretap/cli.hpp"
#include "wiretap/closedform.hpp"
#include "wiretap/oracle.hpp"

using namespace wiretap;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

double first_number(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
}

std::string value_after(const std::string& text, const std::string& key) {
    const auto at = text.find(key);
    REQUIRE(at != std::string::npos);
    const auto begin = at + key.size();
    return text.substr(begin, text.find_first_of(" \n", begin) - begin);
}

}  // namespace

TEST_CASE("capacity prints a value and diagnostics") {
    const auto r = run({"capacity", "--snr-db", "10", "--rho", "0"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("nats") != std::string::npos);
    CHECK(r.err.find("terms_used=") != std::string::npos);
    CHECK(r.err.find("last_term_ratio=") != std::string::npos);
    const double v = first_number(r.out);
    CHECK(std::abs(v - oracle::capacity_by_quadrature(ChannelParams(10, 10, 0))) / v < 1e-7);

    const auto bits = run({"capacity", "--snr-db", "10", "--rho", "0", "--units", "bits"});
    CHECK(bits.code == cli::kOk);
    CHECK(bits.out.find("bits") != std::string::npos);
    CHECK(first_number(bits.out) == doctest::Approx(v / std::numbers::ln2).epsilon(1e-15));
}

TEST_CASE("linear means override the dB shortcut per channel") {
    const auto r = run({"capacity", "--lambda1", "2", "--lambda2", "1", "--rho", "0.5"});
    CHECK(r.code == cli::kOk);
    CHECK(first_number(r.out) == closedform::average_secrecy_capacity(ChannelParams(2, 1, 0.5)).value);
}

TEST_CASE("invalid input exits 2 and names the problem") {
    auto r = run({"capacity", "--lambda1", "0", "--lambda2", "1"});
    CHECK(r.code == cli::kInvalidInput);
    CHECK(r.err.find("lambda1") != std::string::npos);
    CHECK(r.out.empty());

    CHECK(run({"capacity", "--rho", "0.995"}).code == cli::kInvalidInput);
    CHECK(run({"capacity", "--units", "furlongs"}).code == cli::kInvalidInput);
    CHECK(run({"capacity", "--tol", "0.1"}).code == cli::kInvalidInput);
    CHECK(run({"capacity", "--bogus"}).code == cli::kInvalidInput);
    CHECK(run({"outage", "--rate", "-1"}).code == cli::kInvalidInput);
    CHECK(run({}).code == cli::kInvalidInput);
    CHECK(run({"frobnicate"}).code == cli::kInvalidInput);
    CHECK(run({"capacity", "--help"}).code == cli::kOk);
}

TEST_CASE("non-convergence exits 3 with the partial sum") {
    const auto r = run({"capacity", "--snr-db", "10", "--rho", "0.9", "--kmax", "10"});
    CHECK(r.code == cli::kNoConvergence);
    CHECK(r.err.find("partial=") != std::string::npos);
    CHECK(run({"outage", "--snr-db", "10", "--rho", "0.9", "--rate", "1", "--kmax", "10"}).code ==
          cli::kNoConvergence);
}

TEST_CASE("outage values") {
    CHECK(first_number(run({"outage", "--snr-db", "0", "--rho", "0", "--rate", "0"}).out) ==
          doctest::Approx(0.5).epsilon(1e-14));
    CHECK(first_number(run({"outage", "--snr-db", "3", "--rho", "0.5", "--rate", "30"}).out) >= 1.0 - 1e-6);
    const auto r = run({"outage", "--lambda1", "2", "--lambda2", "1", "--rho", "0", "--rate", "0"});
    CHECK(r.code == cli::kOk);
    CHECK(std::abs(first_number(r.out) - 1.0 / 3.0) < 1e-12);
    CHECK(r.err.find("mu=") != std::string::npos);
}

TEST_CASE("sweep writes CSV and overwrites in place") {
    const auto path = testing::temp_path("sweep");
    write_text(path, std::string(100000, 'x'));
    const std::vector<std::string> args{"sweep", "--snr-db-start", "0", "--snr-db-stop", "10",
                                        "--rho-list", "0,0.5", "--units", "bits", "--out", path};
    REQUIRE(run(args).code == cli::kOk);
    const auto first = testing::read_file(path);
    const auto rows = testing::read_csv(path);
    REQUIRE(rows.size() == 1 + 3 * 2);
    CHECK(rows[0][2] == "cs_nats");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double nats = std::strtod(rows[i][2].c_str(), nullptr);
        CHECK(std::strtod(rows[i][3].c_str(), nullptr) == nats / std::numbers::ln2);
        const double snr = std::strtod(rows[i][0].c_str(), nullptr);
        const double rho = std::strtod(rows[i][1].c_str(), nullptr);
        CHECK(nats == closedform::average_secrecy_capacity(ChannelParams(std::pow(10.0, snr / 10), std::pow(10.0, snr / 10), rho)).value);
    }
    REQUIRE(run(args).code == cli::kOk);
    CHECK(testing::read_file(path) == first);
    std::remove(path.c_str());

    const auto to_stdout = run({"sweep", "--snr-db-stop", "0", "--rho-list", "0.3"});
    CHECK(to_stdout.out.rfind("snr_db,rho,cs_nats", 0) == 0);
}

TEST_CASE("sweep input and I/O failures") {
    CHECK(run({"sweep", "--rho-list", ""}).code == cli::kInvalidInput);
    CHECK(run({"sweep", "--rho-list", "0.1,abc"}).code == cli::kInvalidInput);
    CHECK(run({"sweep", "--snr-db-step", "0"}).code == cli::kInvalidInput);
    const auto r = run({"sweep", "--snr-db-stop", "0", "--out", "/nonexistent-dir/x/y.csv"});
    CHECK(r.code == cli::kIoFailure);
    CHECK(r.err.find("/nonexistent-dir/x/y.csv") != std::string::npos);
}

TEST_CASE("compare is reproducible from the announced seed") {
    const auto a = testing::temp_path("cmp");
    const auto b = testing::temp_path("cmp");
    const std::vector<std::string> grid{"--snr-db-start", "0", "--snr-db-stop", "10", "--snr-db-step", "10",
                                        "--rho-list", "0,0.6", "--mc-samples", "20000", "--workers", "2"};
    auto args = grid;
    args.insert(args.begin(), "compare");
    args.insert(args.end(), {"--out", a});
    const auto first = run(args);
    REQUIRE(first.code == cli::kOk);
    const auto seed = value_after(first.out, "seed=");

    args.back() = b;
    args.insert(args.end(), {"--seed", seed});
    REQUIRE(run(args).code == cli::kOk);
    CHECK(testing::read_file(a) == testing::read_file(b));
    const auto rows = testing::read_csv(a);
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::strtod(rows[i][6].c_str(), nullptr) <= 1e-6);
    std::remove(a.c_str());
    std::remove(b.c_str());

    // CSV on stdout stays clean; the seed goes to stderr.
    auto piped = grid;
    piped.insert(piped.begin(), "compare");
    const auto r = run(piped);
    CHECK(r.out.rfind("snr_db,rho,cs_closed", 0) == 0);
    CHECK(r.err.find("seed=") != std::string::npos);

    piped.insert(piped.end(), {"--mc-samples", "100"});
    CHECK(run(piped).code == cli::kInvalidInput);
}

TEST_CASE("config file sits below explicit flags") {
    const auto cfg = testing::temp_path("conf");
    write_text(cfg, "# grid\nsnr-db = 10\nrho=0.5\n\nunits = bits  # trailing comment\n");
    const auto from_file = run({"capacity", "--config", cfg});
    REQUIRE(from_file.code == cli::kOk);
    const double expect = closedform::average_secrecy_capacity(ChannelParams(10, 10, 0.5)).value;
    CHECK(first_number(from_file.out) == doctest::Approx(expect / std::numbers::ln2).epsilon(1e-15));

    const auto overridden = run({"capacity", "--rho", "0.2", "--config", cfg, "--units", "nats"});
    REQUIRE(overridden.code == cli::kOk);
    CHECK(first_number(overridden.out) == closedform::average_secrecy_capacity(ChannelParams(10, 10, 0.2)).value);

    write_text(cfg, "rho 0.5\n");
    CHECK(run({"capacity", "--config", cfg}).code == cli::kInvalidInput);
    std::remove(cfg.c_str());
    CHECK(run({"capacity", "--config", cfg}).code == cli::kIoFailure);
}

TEST_CASE("simulate") {
    const std::vector<std::string> args{"simulate", "--snr-db", "10", "--rho", "0.5", "--mc-samples", "20000",
                                        "--seed", "77", "--rate", "1"};
    const auto a = run(args);
    REQUIRE(a.code == cli::kOk);
    CHECK(a.out == run(args).out);
    CHECK(a.out.find("capacity_mean=") != std::string::npos);
    CHECK(a.out.find("outage_mean=") != std::string::npos);

    const auto auto_seed = run({"simulate", "--mc-samples", "2000"});
    REQUIRE(auto_seed.code == cli::kOk);
    const auto once = auto_seed.out.find("seed=");
    CHECK(once != std::string::npos);
    CHECK(auto_seed.out.find("seed=", once + 1) == std::string::npos);
    CHECK(run({"simulate", "--mc-samples", "10"}).code == cli::kInvalidInput);
}

TEST_CASE("pdf table") {
    const auto r = run({"pdf", "--lambda1", "2", "--lambda2", "1", "--rho", "0.5", "--points", "5"});
    REQUIRE(r.code == cli::kOk);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "alpha,beta,pdf_bessel,pdf_series\r");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(ss, cell, ',')) v.push_back(std::strtod(cell.c_str(), nullptr));
        REQUIRE(v.size() == 4);
        CHECK(std::abs(v[2] - v[3]) <= 1e-10 * v[2]);
    }
    CHECK(rows == 25);
    CHECK(run({"pdf", "--points", "1"}).code == cli::kInvalidInput);
}
