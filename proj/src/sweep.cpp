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

#include "uimpl/sweep.hpp"

#include <cstdio>
#include <fstream>
#include <numbers>

#include "uimpl/models.hpp"

namespace uimpl {

std::vector<SweepRow> run_sweep(const SweepParams& p, const SamplerBudget& budget) {
    if (p.steps < 1) throw ValidationError("run_sweep: steps must be >= 1");
    if (!(p.alpha_min > 0.0) || p.alpha_max < p.alpha_min)
        throw ValidationError("run_sweep: need 0 < alpha_min <= alpha_max");
    if (!(p.tau > 0.0)) throw ValidationError("run_sweep: tau must be positive");
    const SeedStream root(budget.seed);
    std::vector<SweepRow> rows;
    rows.reserve(p.steps);
    for (int i = 0; i < p.steps; ++i) {
        const double alpha =
            (p.steps == 1)
                ? p.alpha_min
                : p.alpha_min + (p.alpha_max - p.alpha_min) * i / double(p.steps - 1);
        JCParams jc;
        jc.epsilon = p.epsilon;
        jc.alpha = alpha;
        jc.tau = p.tau;
        jc.lambda = std::numbers::pi / (2.0 * alpha * p.tau);
        jc.fock_dim = JCParams::kAutoFock;

        const JCModel model = build_jc(jc);
        const CMat u_target = jc_target_unitary(jc);
        const QuantumChannel ch = induced_channel(model.h_s, model.impl);

        SamplerBudget row_budget = budget;
        row_budget.seed = root.child(i).state();
        const DeltaUEstimate du = delta_U(ch, u_target, row_budget);
        const double de = delta_E(model.impl.sigma_e, model.impl.h_e);
        const double comm = commutator_norm(model.h_s, u_target);
        const double h_norm = spectral_norm(model.h_s);

        SweepRow row;
        row.alpha = alpha;
        row.lambda = jc.lambda;
        row.fock_dim = model.fock_dim;
        row.delta_u = du.value;
        row.delta_e = de;
        row.product = de * du.value;
        row.bound = comm / 40.0;
        row.in_regime = h_norm > 0.0 && du.value < comm / (40.0 * h_norm);
        row.seed = row_budget.seed;
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "alpha,lambda,fock_dim,delta_u,delta_e,product,bound,in_regime,seed\n";
    char buf[320];
    for (const SweepRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%d,%.17g,%.17g,%.17g,%.17g,%d,%llu\n",
                      r.alpha, r.lambda, r.fock_dim, r.delta_u, r.delta_e, r.product, r.bound,
                      r.in_regime ? 1 : 0, static_cast<unsigned long long>(r.seed));
        out += buf;
    }
    return out;
}

void write_sweep_outputs(const std::filesystem::path& csv_path,
                         const std::vector<SweepRow>& rows) {
    {
        std::ofstream out(csv_path);
        if (!out) throw Error("cannot write " + csv_path.string());
        out << sweep_csv(rows);
    }
    std::filesystem::path gp_path = csv_path;
    gp_path.replace_extension(".gp");
    std::ofstream gp(gp_path);
    if (!gp) throw Error("cannot write " + gp_path.string());
    gp << "# gnuplot script for the coherent-amplitude scan\n"
       << "set datafile separator ','\n"
       << "set terminal pngcairo size 900,700\n"
       << "set output '" << csv_path.stem().string() << ".png'\n"
       << "set multiplot layout 2,1\n"
       << "set key top right\n"
       << "set xlabel 'alpha'\n"
       << "set ylabel 'delta_E * delta_U'\n"
       << "plot '" << csv_path.filename().string()
       << "' skip 1 using 1:6 with linespoints title 'product', \\\n"
       << "     '' skip 1 using 1:7 with lines title 'bound'\n"
       << "set ylabel 'delta_U'\n"
       << "plot '" << csv_path.filename().string()
       << "' skip 1 using 1:4 with linespoints title 'delta_U'\n"
       << "unset multiplot\n";
}

}  // namespace uimpl
