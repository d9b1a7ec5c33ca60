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

#include <vector>

#include "uimpl/states.hpp"

namespace uimpl {

// External-system data realizing a target gate: dimension, bath Hamiltonian,
// initial bath state, interaction term on S (x) E, and interaction time.
// truncation_tail records probability mass lost to a finite cutoff when the
// bath was truncated (zero for exact models).
struct ImplementationSet {
    Eigen::Index dim_e;
    CMat h_e;
    DensityMatrix sigma_e;
    CMat h_se;
    double tau = 0.0;
    double truncation_tail = 0.0;
};

// Completely positive trace-preserving map in Kraus form.
struct QuantumChannel {
    Eigen::Index dim_in = 0;
    Eigen::Index dim_out = 0;
    std::vector<CMat> kraus;
};

// Checks dimensional consistency and Hermiticity of both Hamiltonian pieces.
void validate_implementation(const CMat& h_s, const ImplementationSet& impl);

// H = H_S (x) 1 + H_SE + 1 (x) H_E on S (x) E.
CMat composite_hamiltonian(const CMat& h_s, const ImplementationSet& impl);

// Reduced dynamics rho -> Tr_E[ U (rho (x) sigma_E) U^dag ] with
// U = exp(-i H tau). Kraus operators are indexed by (bath basis out, bath
// eigenvector in); eigenvalues of sigma_E below tol::kraus_drop are dropped.
QuantumChannel induced_channel(const CMat& h_s, const ImplementationSet& impl);

// Throws ValidationError unless sum_i K_i^dag K_i = 1 within tolerance.
void require_trace_preserving(const QuantumChannel& ch, double tolerance = tol::kraus_complete);

DensityMatrix apply_channel(const QuantumChannel& ch, const DensityMatrix& rho);
CMat apply_channel_raw(const QuantumChannel& ch, const CMat& rho);

// (d^2 x d^2) matrix S with S vec(rho) = vec(channel(rho)) in column-major
// vec convention; used by samplers to make the per-candidate cost O(d^4).
CMat channel_superoperator(const QuantumChannel& ch);

}  // namespace uimpl
