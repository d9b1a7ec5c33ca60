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

namespace uimpl::tol {

// Project-wide default tolerances. Operations that accept an explicit
// tolerance parameter use these as defaults; everything else reads them
// directly so a single change propagates.

// ||A - A^dag||_max relative to max(1, ||A||_max).
inline constexpr double hermitian_sym = 1e-9;

// ||V L V^dag - A||_max relative to max(1, ||A||_max).
inline constexpr double eig_reconstruct = 1e-10;

// Eigenvalues in [-psd_reject, 0) are clamped to 0 before sqrt; anything
// below -psd_reject is rejected as not positive semidefinite.
inline constexpr double psd_clamp = 1e-10;
inline constexpr double psd_reject = 1e-8;

inline constexpr double unitarity = 1e-9;

// Density-matrix admission: trace and minimum-eigenvalue slack.
inline constexpr double state_trace = 1e-9;
inline constexpr double state_psd = 1e-9;
inline constexpr double pure_norm = 1e-10;

// External-state eigenvalues below this are dropped from the Kraus set.
inline constexpr double kraus_drop = 1e-12;

// sum_i K_i^dag K_i must equal the identity to this, entrywise.
inline constexpr double kraus_complete = 1e-8;

// Truncated coherent states: hard cap without the caller's opt-in, and the
// tail target used when the cutoff dimension is chosen automatically.
inline constexpr double coherent_tail_cap = 1e-6;
inline constexpr double coherent_tail_auto = 1e-10;

// Slack applied to every inequality verdict so ties don't flap.
inline constexpr double check_slack = 1e-12;

// A model counts as energy conserving when chi <= gate * ||[H_S, U_S]||.
inline constexpr double conservation_gate = 1e-6;

// Eigenvalue pairs with lambda_k + lambda_l below this are skipped in the
// quantum spread closed form.
inline constexpr double qfi_pair_cutoff = 1e-12;

}  // namespace uimpl::tol
