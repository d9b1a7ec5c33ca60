// Copyright 2026 The uimpl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end tests driving the installed binary through a shell, the same way
// a user would. UIMPL_CLI_PATH and UIMPL_TEST_TMP are injected by the build.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

// Baked in by the build; the environment can override for manual runs.
fs::path cli_path() {
    const char* p = std::getenv("UIMPL_CLI_PATH");
    return fs::path(p ? p : UIMPL_CLI_PATH);
}

fs::path tmp_dir() {
    const char* p = std::getenv("UIMPL_TEST_TMP");
    fs::path dir = fs::path(p ? p : UIMPL_TEST_TMP) / "cli_scratch";
    fs::create_directories(dir);
    return dir;
}

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run_cli(const std::string& args) {
    const fs::path out = tmp_dir() / "stdout.txt";
    const fs::path err = tmp_dir() / "stderr.txt";
    const std::string cmd = "'" + cli_path().string() + "' " + args + " > '" + out.string() +
                            "' 2> '" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return RunResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

fs::path write_file(const char* name, const std::string& text) {
    const fs::path p = tmp_dir() / name;
    std::ofstream out(p);
    out << text;
    return p;
}

std::string cavity_model_json() {
    nlohmann::json j;
    j["model"] = "jaynes_cummings";
    j["epsilon"] = 10.0;
    j["alpha"] = 4.0;
    j["lambda"] = std::numbers::pi / 8.0;
    j["tau"] = 1.0;
    j["fock_dim"] = "auto";
    return j.dump();
}

nlohmann::json matrix_json(int dim, const std::vector<double>& diag) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < dim; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < dim; ++c)
            row.push_back({r == c ? diag[static_cast<std::size_t>(r)] : 0.0, 0.0});
        rows.push_back(row);
    }
    return rows;
}

// 2 (x) 2, no interaction, target = exp(-i H_S), all matrices diagonal.
std::string decoupled_model_json() {
    nlohmann::json j;
    j["model"] = "generic";
    j["dim_s"] = 2;
    j["dim_e"] = 2;
    j["h_s"] = matrix_json(2, {1.0, -1.0});
    j["h_e"] = matrix_json(2, {0.0, 2.0});
    j["h_se"] = matrix_json(4, {0.0, 0.0, 0.0, 0.0});
    j["sigma_e"] = matrix_json(2, {1.0, 0.0});
    j["tau"] = 1.0;
    nlohmann::json u = nlohmann::json::array();
    u.push_back({nlohmann::json::array({std::cos(1.0), -std::sin(1.0)}),
                 nlohmann::json::array({0.0, 0.0})});
    u.push_back({nlohmann::json::array({0.0, 0.0}),
                 nlohmann::json::array({std::cos(1.0), std::sin(1.0)})});
    j["u_target"] = u;
    return j.dump();
}

std::string scrub_timestamp(std::string text) {
    static const std::regex ts("\"timestamp\": \"[^\"]*\"");
    return std::regex_replace(text, ts, "\"timestamp\": \"\"");
}

}  // namespace

TEST_CASE("verify emits a full report for the cavity model") {
    const fs::path model = write_file("jc.json", cavity_model_json());
    const fs::path report = tmp_dir() / "report.json";
    const RunResult r = run_cli("verify -m '" + model.string() + "' -o '" + report.string() +
                                "' --samples 500 --seed 9 --threads 1");
    CHECK(r.exit_code == 0);
    CHECK(r.err.find("tradeoff1:") != std::string::npos);

    const nlohmann::json j = nlohmann::json::parse(slurp(report));
    REQUIRE(j.contains("metrics"));
    REQUIRE(j.contains("checks"));
    REQUIRE(j.contains("model"));
    REQUIRE(j.contains("provenance"));

    CHECK(j["metrics"]["delta_e"].get<double>() == doctest::Approx(80.0).epsilon(1e-8));
    CHECK(j["metrics"]["comm_norm"].get<double>() == doctest::Approx(20.0).epsilon(1e-10));
    CHECK(j["metrics"]["conserving"].get<bool>());
    CHECK(j["metrics"]["delta_ue"].is_number());
    CHECK(j["model"]["kind"] == "jaynes_cummings");
    CHECK(j["model"]["alpha"].get<double>() == 4.0);
    CHECK(j["provenance"]["seed"].get<std::uint64_t>() == 9);
    CHECK(j["provenance"]["threads"].get<int>() == 1);
    CHECK_FALSE(j["provenance"]["timestamp"].get<std::string>().empty());

    REQUIRE(j["checks"].size() == 11);
    CHECK(j["checks"][0]["name"] == "tradeoff1");
    for (const auto& c : j["checks"]) {
        const std::string status = c["status"].get<std::string>();
        CHECK((status == "satisfied" || status == "not-applicable" || status == "vacuous"));
    }
}

TEST_CASE("verify reports are reproducible") {
    const fs::path model = write_file("jc2.json", cavity_model_json());
    const fs::path r1 = tmp_dir() / "rep1.json";
    const fs::path r2 = tmp_dir() / "rep2.json";
    const fs::path r4 = tmp_dir() / "rep4.json";
    const std::string base = "verify -m '" + model.string() + "' --samples 300 --seed 21 ";
    CHECK(run_cli(base + "--threads 1 -o '" + r1.string() + "'").exit_code == 0);
    CHECK(run_cli(base + "--threads 1 -o '" + r2.string() + "'").exit_code == 0);
    CHECK(run_cli(base + "--threads 4 -o '" + r4.string() + "'").exit_code == 0);

    // identical invocations differ only in the wall-clock stamp
    CHECK(scrub_timestamp(slurp(r1)) == scrub_timestamp(slurp(r2)));

    // the thread count is bookkeeping, not part of the computation
    nlohmann::json a = nlohmann::json::parse(slurp(r1));
    nlohmann::json b = nlohmann::json::parse(slurp(r4));
    CHECK(a["provenance"]["threads"] != b["provenance"]["threads"]);
    CHECK(a["metrics"] == b["metrics"]);
    CHECK(a["checks"] == b["checks"]);
}

TEST_CASE("verify writes to stdout when asked") {
    const fs::path model = write_file("jc3.json", cavity_model_json());
    const RunResult r =
        run_cli("verify -m '" + model.string() + "' -o - --samples 300 --seed 4 --threads 1");
    CHECK(r.exit_code == 0);
    REQUIRE_FALSE(r.out.empty());
    CHECK(r.out.front() == '{');
    CHECK(r.out.find("\"metrics\"") != std::string::npos);
}

TEST_CASE("verify exit codes distinguish bad input from violations") {
    const fs::path broken = write_file("broken.json", "{ this is not json");
    RunResult r = run_cli("verify -m '" + broken.string() + "' --threads 1");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("parse error") != std::string::npos);

    nlohmann::json bad = nlohmann::json::parse(decoupled_model_json());
    bad["h_e"][0][1] = {0.5, 0.0};  // not Hermitian
    const fs::path nonherm = write_file("nonherm.json", bad.dump());
    r = run_cli("verify -m '" + nonherm.string() + "' --threads 1");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("error") != std::string::npos);

    r = run_cli("verify -m '" + (tmp_dir() / "missing.json").string() + "' --threads 1");
    CHECK(r.exit_code == 2);
}

TEST_CASE("generic decoupled model verifies as an exact gate") {
    const fs::path model = write_file("decoupled.json", decoupled_model_json());
    const fs::path report = tmp_dir() / "decoupled_report.json";
    const RunResult r = run_cli("verify -m '" + model.string() + "' -o '" + report.string() +
                                "' --samples 300 --seed 2 --threads 1");
    CHECK(r.exit_code == 0);
    const nlohmann::json j = nlohmann::json::parse(slurp(report));
    CHECK(j["metrics"]["delta_u"].get<double>() < 1e-3);
    CHECK(j["metrics"]["chi"].get<double>() < 1e-12);
    // target commutes with h_s, so the conservation gate (chi <= tol * comm) is
    // vacuously unmet even though chi itself vanishes
    CHECK(j["metrics"]["comm_norm"].get<double>() == 0.0);
    CHECK_FALSE(j["metrics"]["conserving"].get<bool>());
    CHECK(j["model"]["kind"] == "generic");
}

TEST_CASE("sweep writes the scan table and plot script") {
    const fs::path csv = tmp_dir() / "scan.csv";
    const RunResult r = run_cli(
        "sweep --alpha-min 2 --alpha-max 4 --steps 3 --epsilon 10 --tau 1 --samples 400 "
        "--seed 7 --threads 1 -o '" +
        csv.string() + "'");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("alpha=") != std::string::npos);
    CHECK(r.out.find("wrote") != std::string::npos);

    std::ifstream in(csv);
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header == "alpha,lambda,fock_dim,delta_u,delta_e,product,bound,in_regime,seed");

    const double alphas[] = {2.0, 3.0, 4.0};
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        REQUIRE(rows < 3);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        double alpha, lambda, delta_u, delta_e, product, bound;
        int fock_dim, in_regime;
        unsigned long long seed;
        REQUIRE((fields >> alpha >> lambda >> fock_dim >> delta_u >> delta_e >> product >>
                 bound >> in_regime >> seed));
        CHECK(alpha == doctest::Approx(alphas[rows]).epsilon(1e-12));
        CHECK(delta_e == doctest::Approx(20.0 * alpha).epsilon(1e-9));
        CHECK(lambda == doctest::Approx(std::numbers::pi / (2.0 * alpha)).epsilon(1e-12));
        CHECK(fock_dim > alpha * alpha);
        CHECK(product == doctest::Approx(delta_e * delta_u).epsilon(1e-12));
        CHECK(bound == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(product >= bound - 1e-12);
        CHECK(in_regime == 0);  // desk-size amplitudes sit far above gate quality
        ++rows;
    }
    CHECK(rows == 3);

    const std::string gp = slurp(fs::path(csv).replace_extension(".gp"));
    CHECK(gp.find("gnuplot") != std::string::npos);
    CHECK(gp.find("scan.csv") != std::string::npos);
}

TEST_CASE("props runs every suite and reports one line each") {
    RunResult r = run_cli("props --trials 0");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("no trials requested") != std::string::npos);

    r = run_cli("props --trials 8 --dim-max 4 --seed 5 --samples 200 --threads 1");
    CHECK(r.exit_code == 0);
    for (const char* suite :
         {"suite lemma1:", "suite theorem_unify:", "suite covariance_fact:",
          "suite models_conserving:", "suite models_nonconserving:", "suite delta_eq_agreement:",
          "suite entanglement_tradeoff:", "suite entanglement_designed:"})
        CHECK(r.out.find(suite) != std::string::npos);
    CHECK(r.out.find("\nPASS\n") != std::string::npos);
    CHECK(r.out.find("FAILURE") == std::string::npos);
}

TEST_CASE("props negate self-test proves failures surface") {
    const RunResult r =
        run_cli("props --trials 5 --dim-max 4 --seed 6 --samples 200 --threads 1 "
                "--negate-self-test");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("FAILURE lemma1 seed=") != std::string::npos);
    CHECK(r.out.find("\nFAIL\n") != std::string::npos);
}
