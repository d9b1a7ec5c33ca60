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

#include "uimpl/linalg.hpp"
#include "uimpl/rng.hpp"

namespace uimpl {

// Normalized state vector.
class PureState {
public:
    // Validates the norm to tol::pure_norm.
    explicit PureState(CVec amplitudes);

    // Rescales to unit norm first; rejects the zero vector.
    static PureState normalized(CVec amplitudes);

    const CVec& amplitudes() const { return amp_; }
    Eigen::Index dim() const { return amp_.size(); }
    CMat projector() const { return amp_ * amp_.adjoint(); }

private:
    CVec amp_;
};

// Unit-trace positive semidefinite Hermitian operator.
class DensityMatrix {
public:
    // Validates Hermiticity, unit trace, and positivity (eigenvalues down to
    // -tol::state_psd are accepted).
    explicit DensityMatrix(CMat m);

    static DensityMatrix pure(const PureState& psi);

    const CMat& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }

private:
    CMat m_;
};

// Uhlmann fidelity Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)), clamped to [0, 1].
double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

// sqrt(1 - F). This is the distance used throughout; note it is the Bures
// length over sqrt(2), so the triangle inequality survives the rescaling.
double bures_distance(const DensityMatrix& rho1, const DensityMatrix& rho2);

// Raw-matrix variants for hot paths; inputs are trusted density matrices.
double fidelity_raw(const CMat& rho1, const CMat& rho2);
double bures_raw(const CMat& rho1, const CMat& rho2);

// <A^2> - <A>^2 for Hermitian A, clamped at zero.
double variance(const DensityMatrix& rho, const CMat& a);
double variance_raw(const CMat& rho, const CMat& a);

// Haar-uniform pure state.
PureState random_pure_state(Eigen::Index dim, SeedStream stream);

// Hilbert-Schmidt ensemble: G G^dag / Tr for a square Ginibre G.
DensityMatrix random_density_matrix(Eigen::Index dim, SeedStream stream);

}  // namespace uimpl
