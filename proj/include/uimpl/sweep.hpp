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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "uimpl/metrics.hpp"

namespace uimpl {

// One coherent-amplitude point of the classical-limit scan. The coupling is
// tied to the amplitude by lambda = pi / (2 alpha tau), which pins the target
// gate while the bath grows more classical as alpha increases.
struct SweepRow {
    double alpha;
    double lambda;
    int fock_dim;
    double delta_u;
    double delta_e;
    double product;    // delta_e * delta_u
    double bound;      // ||[H_S, U_S]|| / 40
    bool in_regime;    // delta_u < ||[H_S, U_S]|| / (40 ||H_S||)
    std::uint64_t seed;
};

struct SweepParams {
    double alpha_min = 2.0;
    double alpha_max = 20.0;
    int steps = 10;
    double epsilon = 10.0;
    double tau = 1.0;
};

std::vector<SweepRow> run_sweep(const SweepParams& p, const SamplerBudget& budget);

// CSV with a fixed header; floats carry 17 significant digits so the file
// round-trips exactly.
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Writes the CSV and a gnuplot companion script (same stem, .gp extension)
// with the product-vs-bound panel and the gate-error inset.
void write_sweep_outputs(const std::filesystem::path& csv_path,
                         const std::vector<SweepRow>& rows);

}  // namespace uimpl
