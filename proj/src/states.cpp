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

#include "uimpl/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace uimpl {

PureState::PureState(CVec amplitudes) : amp_(std::move(amplitudes)) {
    if (amp_.size() == 0) throw DimMismatch("PureState: empty amplitude vector");
    for (Eigen::Index i = 0; i < amp_.size(); ++i) {
        const Cplx& z = amp_[i];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw NonFinite("PureState: amplitudes must be finite");
    }
    const double n = amp_.norm();
    if (std::abs(n - 1.0) > tol::pure_norm)
        throw ValidationError("PureState: norm " + std::to_string(n) + " deviates from 1");
}

PureState PureState::normalized(CVec amplitudes) {
    const double n = amplitudes.norm();
    if (!(n > 0.0) || !std::isfinite(n))
        throw ValidationError("PureState::normalized: vector has no usable norm");
    return PureState(amplitudes / n);
}

DensityMatrix::DensityMatrix(CMat m) : m_(std::move(m)) {
    require_hermitian(m_, "DensityMatrix", tol::hermitian_sym);
    const double tr = m_.trace().real();
    if (std::abs(tr - 1.0) > tol::state_trace)
        throw ValidationError("DensityMatrix: trace " + std::to_string(tr) + " deviates from 1");
    const HermitianEig eig = herm_eig(m_);
    const double lo = eig.eigenvalues.minCoeff();
    if (lo < -tol::state_psd)
        throw NotPSD("DensityMatrix: eigenvalue " + std::to_string(lo) +
                     " below positivity tolerance");
}

DensityMatrix DensityMatrix::pure(const PureState& psi) { return DensityMatrix(psi.projector()); }

double fidelity_raw(const CMat& rho1, const CMat& rho2) {
    const CMat root = mat_sqrt_psd(rho1);
    const CMat inner = root * rho2 * root;
    // inner is PSD; its trace-of-sqrt is the sum of sqrt-eigenvalues.
    const HermitianEig eig = herm_eig(inner);
    double f = 0.0;
    for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k)
        f += std::sqrt(std::max(0.0, eig.eigenvalues[k]));
    return std::clamp(f, 0.0, 1.0);
}

double bures_raw(const CMat& rho1, const CMat& rho2) {
    return std::sqrt(std::max(0.0, 1.0 - fidelity_raw(rho1, rho2)));
}

double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    if (rho1.dim() != rho2.dim()) throw DimMismatch("fidelity: state dimensions differ");
    return fidelity_raw(rho1.matrix(), rho2.matrix());
}

double bures_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    return std::sqrt(std::max(0.0, 1.0 - fidelity(rho1, rho2)));
}

double variance_raw(const CMat& rho, const CMat& a) {
    const double mean = (a * rho).trace().real();
    const double second = (a * a * rho).trace().real();
    return std::max(0.0, second - mean * mean);
}

double variance(const DensityMatrix& rho, const CMat& a) {
    require_hermitian(a, "variance: observable");
    if (a.rows() != rho.dim()) throw DimMismatch("variance: observable dimension mismatch");
    return variance_raw(rho.matrix(), a);
}

PureState random_pure_state(Eigen::Index dim, SeedStream stream) {
    if (dim <= 0) throw DimMismatch("random_pure_state: dim must be positive");
    const CVec g = gaussian_cvec(dim, stream);
    return PureState::normalized(g);
}

DensityMatrix random_density_matrix(Eigen::Index dim, SeedStream stream) {
    if (dim <= 0) throw DimMismatch("random_density_matrix: dim must be positive");
    const CMat g = gaussian_cmat(dim, dim, stream);
    CMat rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(rho);
}

}  // namespace uimpl
