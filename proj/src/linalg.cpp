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

#include "uimpl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace uimpl {

double max_abs(const CMat& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().maxCoeff();
}

bool all_finite(const CMat& a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            const Cplx& z = a(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
    }
    return true;
}

void require_finite(const CMat& a, const char* what) {
    if (!all_finite(a)) throw NonFinite(std::string(what) + ": entries must be finite");
}

void require_square(const CMat& a, const char* what) {
    if (a.rows() != a.cols())
        throw DimMismatch(std::string(what) + ": expected square matrix, got " +
                          std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

void require_hermitian(const CMat& a, const char* what, double tolerance) {
    require_square(a, what);
    require_finite(a, what);
    const double dev = max_abs(a - a.adjoint());
    const double scale = std::max(1.0, max_abs(a));
    if (dev > tolerance * scale)
        throw NonHermitian(std::string(what) + ": ||A - A^dag||_max = " + std::to_string(dev) +
                           " exceeds tolerance");
}

void require_unitary(const CMat& u, const char* what, double tolerance) {
    require_square(u, what);
    require_finite(u, what);
    const CMat g = u.adjoint() * u;
    const double dev = max_abs(g - CMat::Identity(u.rows(), u.cols()));
    if (dev > tolerance)
        throw ValidationError(std::string(what) + ": ||U^dag U - 1||_max = " +
                              std::to_string(dev) + " exceeds unitarity tolerance");
}

HermitianEig herm_eig(const CMat& a) {
    require_hermitian(a, "herm_eig");
    // The input may deviate from exact Hermiticity within tolerance; solve on
    // the symmetrized matrix so eigenvalues are real by construction.
    const CMat sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> solver(sym);
    if (solver.info() != Eigen::Success) throw Error("herm_eig: eigensolver failed to converge");
    return HermitianEig{solver.eigenvalues(), solver.eigenvectors()};
}

CMat mat_exp_herm(const CMat& h, double t, int sign) {
    if (sign != 1 && sign != -1) throw ValidationError("mat_exp_herm: sign must be +1 or -1");
    if (!std::isfinite(t)) throw NonFinite("mat_exp_herm: t must be finite");
    const HermitianEig eig = herm_eig(h);
    const Eigen::Index n = h.rows();
    CVec phases(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double angle = static_cast<double>(sign) * t * eig.eigenvalues[k];
        phases[k] = Cplx(std::cos(angle), std::sin(angle));
    }
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

CMat mat_sqrt_psd(const CMat& a) {
    const HermitianEig eig = herm_eig(a);
    const double scale = std::max(1.0, eig.eigenvalues.cwiseAbs().maxCoeff());
    RVec roots(eig.eigenvalues.size());
    for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
        double v = eig.eigenvalues[k];
        if (v < -tol::psd_reject * scale)
            throw NotPSD("mat_sqrt_psd: eigenvalue " + std::to_string(v) +
                         " below positivity tolerance");
        roots[k] = std::sqrt(std::max(0.0, v));
    }
    return eig.eigenvectors * roots.asDiagonal() * eig.eigenvectors.adjoint();
}

CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMat partial_trace(const CMat& m, Eigen::Index dim_s, Eigen::Index dim_e, Keep keep) {
    require_square(m, "partial_trace");
    if (dim_s <= 0 || dim_e <= 0 || m.rows() != dim_s * dim_e)
        throw DimMismatch("partial_trace: matrix dimension " + std::to_string(m.rows()) +
                          " is not dim_s * dim_e = " + std::to_string(dim_s * dim_e));
    if (keep == Keep::S) {
        CMat out = CMat::Zero(dim_s, dim_s);
        for (Eigen::Index i = 0; i < dim_s; ++i)
            for (Eigen::Index j = 0; j < dim_s; ++j)
                for (Eigen::Index k = 0; k < dim_e; ++k) out(i, j) += m(i * dim_e + k, j * dim_e + k);
        return out;
    }
    CMat out = CMat::Zero(dim_e, dim_e);
    for (Eigen::Index i = 0; i < dim_e; ++i)
        for (Eigen::Index j = 0; j < dim_e; ++j)
            for (Eigen::Index k = 0; k < dim_s; ++k) out(i, j) += m(k * dim_e + i, k * dim_e + j);
    return out;
}

double spectral_norm(const CMat& a) {
    require_finite(a, "spectral_norm");
    if (a.size() == 0) return 0.0;
    // Largest eigenvalue of A^dag A; one Hermitian kernel serves every norm.
    const CMat g = a.adjoint() * a;
    const HermitianEig eig = herm_eig(g);
    return std::sqrt(std::max(0.0, eig.eigenvalues.maxCoeff()));
}

double trace_norm(const CMat& a) {
    require_finite(a, "trace_norm");
    if (a.size() == 0) return 0.0;
    const CMat g = a.adjoint() * a;
    const HermitianEig eig = herm_eig(g);
    double sum = 0.0;
    for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k)
        sum += std::sqrt(std::max(0.0, eig.eigenvalues[k]));
    return sum;
}

}  // namespace uimpl
