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

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "uimpl/report.hpp"
#include "uimpl/sweep.hpp"

namespace {

int resolve_threads(int flag) {
    if (flag > 0) return flag;
    if (const char* env = std::getenv("UIMPL_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void print_suite(const uimpl::SuiteReport& rep) {
    std::cout << "suite " << rep.name << ": " << rep.trials << " trials, " << rep.evaluated
              << " checks (" << rep.satisfied_count << " satisfied, " << rep.violated_count
              << " violated, " << rep.not_applicable_count << " not-applicable, "
              << rep.vacuous_count << " vacuous)";
    if (std::isfinite(rep.min_slack)) std::cout << ", min slack " << rep.min_slack;
    std::cout << '\n';
    for (const uimpl::TrialFailure& f : rep.failures)
        std::cout << "  FAILURE " << f.check << " seed=" << f.seed << " lhs=" << f.lhs
                  << " rhs=" << f.rhs << '\n';
}

int cmd_verify(const std::string& model_path, const std::string& out_path, long samples,
               std::uint64_t seed, int threads) {
    uimpl::ModelSpec spec = uimpl::load_model(model_path);
    uimpl::SamplerBudget budget;
    budget.samples = samples;
    budget.seed = seed;
    budget.threads = threads;
    const uimpl::ModelMetrics metrics = uimpl::compute_metrics(spec, budget, true);
    const std::vector<uimpl::CheckResult> checks = uimpl::run_all_checks(metrics);

    uimpl::ReportProvenance prov;
    prov.seed = seed;
    prov.samples = samples;
    prov.threads = threads;
    prov.timestamp = utc_timestamp();
    const std::string report = uimpl::report_to_json(metrics, checks, prov);
    if (out_path.empty() || out_path == "-") {
        std::cout << report;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << '\n';
            return 2;
        }
        out << report;
    }

    bool violated = false;
    for (const uimpl::CheckResult& c : checks) {
        std::cerr << c.name << ": " << uimpl::to_string(c.status) << " (lhs=" << c.lhs
                  << ", rhs=" << c.rhs << ")\n";
        if (c.status == uimpl::CheckStatus::violated) violated = true;
    }
    return violated ? 1 : 0;
}

int cmd_sweep(const uimpl::SweepParams& params, const std::string& out_path, long samples,
              std::uint64_t seed, int threads) {
    uimpl::SamplerBudget budget;
    budget.samples = samples;
    budget.seed = seed;
    budget.threads = threads;
    const std::vector<uimpl::SweepRow> rows = uimpl::run_sweep(params, budget);
    uimpl::write_sweep_outputs(out_path, rows);
    bool violated = false;
    for (const uimpl::SweepRow& r : rows) {
        std::cout << "alpha=" << r.alpha << " delta_u=" << r.delta_u << " delta_e=" << r.delta_e
                  << " product=" << r.product << " bound=" << r.bound
                  << (r.in_regime ? " [in regime]" : "") << '\n';
        if (r.product < r.bound - uimpl::tol::check_slack) violated = true;
    }
    std::cout << "wrote " << out_path << '\n';
    if (violated) std::cout << "bound violated at one or more points\n";
    return violated ? 1 : 0;
}

int cmd_props(int trials, Eigen::Index dim_max, std::uint64_t seed, long samples, int threads,
              bool negate_self_test) {
    if (trials == 0) {
        std::cout << "no trials requested\n";
        return 0;
    }
    uimpl::SamplerBudget model_budget;
    model_budget.samples = samples;
    model_budget.threads = threads;
    model_budget.bloch_theta = 40;
    model_budget.bloch_phi = 80;

    const int model_trials = std::max(1, trials / 10);
    const int eq_trials = std::max(1, trials / 5);
    const int ent_trials = std::max(1, trials / 40);
    // Each designed trial diagonalizes a ~1300-dimensional composite; keep
    // the count low and let the seed vary the instance instead.
    const int designed_trials = std::max(1, trials / 500);

    std::vector<uimpl::SuiteReport> reports;
    reports.push_back(uimpl::run_lemma1_suite(trials, dim_max, seed, negate_self_test));
    reports.push_back(uimpl::run_unify_suite(trials, seed + 1));
    reports.push_back(uimpl::run_covariance_suite(trials, dim_max, seed + 2));
    reports.push_back(uimpl::run_model_suite(model_trials, seed + 3, true, model_budget));
    reports.push_back(uimpl::run_model_suite(model_trials, seed + 4, false, model_budget));
    reports.push_back(uimpl::run_delta_eq_suite(eq_trials, seed + 5));
    reports.push_back(uimpl::run_entanglement_suite(ent_trials, seed + 6, model_budget));
    reports.push_back(uimpl::run_entanglement_designed_suite(designed_trials, seed + 7, model_budget));

    bool failed = false;
    for (const uimpl::SuiteReport& rep : reports) {
        print_suite(rep);
        if (!rep.passed()) failed = true;
    }
    std::cout << (failed ? "FAIL" : "PASS") << '\n';
    return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for energy-constrained gate implementations"};
    app.require_subcommand(1);

    std::string model_path;
    std::string out_path;
    long samples = 20000;
    std::uint64_t seed = 42;
    int threads_flag = 0;

    CLI::App* verify = app.add_subcommand("verify", "compute metrics and check bundle for a model");
    verify->add_option("-m,--model", model_path, "model JSON file")->required();
    verify->add_option("-o,--out", out_path, "report path ('-' for stdout)");
    verify->add_option("--samples", samples, "sampling budget for the error estimators");
    verify->add_option("--seed", seed, "base RNG seed");
    verify->add_option("--threads", threads_flag, "worker threads (0 = auto)");

    uimpl::SweepParams sweep_params;
    std::string sweep_out = "sweep.csv";
    long sweep_samples = 20000;
    std::uint64_t sweep_seed = 42;
    int sweep_threads = 0;
    CLI::App* sweep = app.add_subcommand("sweep", "coherent-amplitude scan of the cavity model");
    sweep->add_option("--alpha-min", sweep_params.alpha_min, "smallest coherent amplitude");
    sweep->add_option("--alpha-max", sweep_params.alpha_max, "largest coherent amplitude");
    sweep->add_option("--steps", sweep_params.steps, "number of points");
    sweep->add_option("--epsilon", sweep_params.epsilon, "qubit level splitting / 2");
    sweep->add_option("--tau", sweep_params.tau, "interaction time");
    sweep->add_option("-o,--out", sweep_out, "CSV output path");
    sweep->add_option("--samples", sweep_samples, "sampling budget per point");
    sweep->add_option("--seed", sweep_seed, "base RNG seed");
    sweep->add_option("--threads", sweep_threads, "worker threads (0 = auto)");

    int props_trials = 1000;
    Eigen::Index props_dim_max = 8;
    std::uint64_t props_seed = 42;
    long props_samples = 1000;
    int props_threads = 0;
    bool negate_self_test = false;
    CLI::App* props = app.add_subcommand("props", "randomized certification suites");
    props->add_option("--trials", props_trials, "trials for the light suites");
    props->add_option("--dim-max", props_dim_max, "largest single-system dimension");
    props->add_option("--seed", props_seed, "base RNG seed");
    props->add_option("--samples", props_samples, "per-model sampling budget");
    props->add_option("--threads", props_threads, "worker threads (0 = auto)");
    props->add_flag("--negate-self-test", negate_self_test,
                    "flip one suite's verdicts to prove failures are reported")
        ->group("");  // hidden

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed())
            return cmd_verify(model_path, out_path, samples, seed, resolve_threads(threads_flag));
        if (sweep->parsed())
            return cmd_sweep(sweep_params, sweep_out, sweep_samples, sweep_seed,
                             resolve_threads(sweep_threads));
        if (props->parsed())
            return cmd_props(props_trials, props_dim_max, props_seed, props_samples,
                             resolve_threads(props_threads), negate_self_test);
    } catch (const uimpl::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const uimpl::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
