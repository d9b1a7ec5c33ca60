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

#include <cstdint>
#include <string>

#include "uimpl/channel.hpp"

namespace uimpl {

// Sampling and refinement budget shared by the gate-error estimators.
// Candidate i is seeded from child(seed, i), so enlarging `samples` extends
// the candidate set without disturbing earlier candidates; together with
// per-candidate hill climbing this makes estimates monotone in the budget.
struct SamplerBudget {
    long samples = 20000;
    std::uint64_t seed = 42;
    int refine_sweeps = 20;
    double refine_step = 0.1;   // initial coordinate step, radians
    double refine_decay = 0.6;  // geometric step decay per sweep
    int bloch_theta = 120;      // deterministic qubit grid, unioned with samples
    int bloch_phi = 240;
    int threads = 1;            // <= 0 means single-threaded
};

// Lower-bound estimate of the worst-case gate error. `value` is
// [max_rho sqrt(1 - F)]^(1/2); the fourth power of `value` plus the fidelity
// at `argmax_state` reconstructs 1.
struct DeltaUEstimate {
    double value;
    PureState argmax_state;
    long samples_used;
    bool refined;
};

// Energy spread (standard deviation) of H_E in the bath state.
double delta_E(const DensityMatrix& sigma_e, const CMat& h_e);

// Worst-case implementation error of u_s by the channel, restricted to pure
// inputs (joint concavity of fidelity makes that restriction lossless).
DeltaUEstimate delta_U(const QuantumChannel& ch, const CMat& u_s, const SamplerBudget& budget);

// ||H_S - U_S^dag H_S U_S||, the size of the commutator [H_S, U_S].
double commutator_norm(const CMat& h_s, const CMat& u_s);

// Eigenstates of D = H_S - U_S^dag H_S U_S with the largest and smallest
// energy gain under the gate. D is traceless, so gain_max >= 0 >= gain_min.
struct ExtremalPair {
    PureState rho_max;
    PureState rho_min;
    double gain_max;
    double gain_min;
    std::string tie_note;  // non-empty when the extremal eigenvalue is degenerate
};
ExtremalPair extremal_states(const CMat& h_s, const CMat& u_s);

// Decomposition-minimized energy spread: the minimum over pure-state
// decompositions {p_j, phi_j} of sigma_E of sqrt(sum_j p_j Var_phi_j(H_E)).
// Closed form: the quantum Fisher information of (sigma_E, H_E) over 4,
// square-rooted. Reduces to delta_E on pure states and vanishes on mixtures
// of H_E eigenstates.
double delta_EQ(const DensityMatrix& sigma_e, const CMat& h_e);

// Independent estimate of the same minimum by direct search over
// decompositions (isometry parameterization, multi-start hill climbing).
// Any decomposition upper-bounds the minimum, so the result is always >= the
// closed form up to numerics. Guarded to small instances: rank <= 4, dim <= 6.
// ensemble_size <= 0 searches sizes rank..rank+2 and keeps the best.
double delta_EQ_oracle(const DensityMatrix& sigma_e, const CMat& h_e, int ensemble_size = 0,
                       std::uint64_t seed = 7, int starts = 64);

// ||A - U^dag A U|| for A = H_S (x) 1 + 1 (x) H_E and the joint propagator;
// zero exactly when the interaction conserves bare energy.
double chi(const CMat& h_s, const CMat& h_e, const CMat& u_total);

// Bath-side energy bookkeeping after feeding the extremal gain states
// through the joint dynamics.
struct EnergyShiftGap {
    double delta;          // |Tr[H_E (sigma'_max - sigma'_min)]|
    double tilde_delta_e;  // larger of the two final bath energy spreads
    CMat sigma_out_max;    // Tr_S of the evolved joint state, max-gain input
    CMat sigma_out_min;
    ExtremalPair inputs;
};
EnergyShiftGap energy_shift_gap(const CMat& h_s, const ImplementationSet& impl, const CMat& u_s,
                                const CMat* u_total = nullptr);

// sqrt(sum_i |Tr(rho U_S^dag K_i)|^2): how well the channel preserves
// entanglement with a reference purifying rho, relative to the target gate.
double entanglement_fidelity(const QuantumChannel& ch, const CMat& u_s, const CMat& rho);

// Worst-case entanglement error max_rho arccos F_e(rho). The objective is
// minimized over a convex set where the optimum may be an interior (mixed)
// state, so mixed candidates join the pure samples and the maximally mixed
// state. Lower-bound estimate with the same monotonicity contract as delta_U.
double delta_Ue(const QuantumChannel& ch, const CMat& u_s, const SamplerBudget& budget);

}  // namespace uimpl
