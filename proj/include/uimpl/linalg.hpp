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

#include <Eigen/Dense>
#include <complex>

#include "uimpl/errors.hpp"
#include "uimpl/tolerances.hpp"

namespace uimpl {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Hermitian eigendecomposition, eigenvalues ascending; column k of
// eigenvectors pairs with eigenvalues[k] and the matrix is unitary.
struct HermitianEig {
    RVec eigenvalues;
    CMat eigenvectors;
};

double max_abs(const CMat& a);
bool all_finite(const CMat& a);
void require_finite(const CMat& a, const char* what);
void require_square(const CMat& a, const char* what);
void require_hermitian(const CMat& a, const char* what, double tolerance = tol::hermitian_sym);
void require_unitary(const CMat& u, const char* what, double tolerance = tol::unitarity);

HermitianEig herm_eig(const CMat& a);

// exp(sign * i * t * H) for Hermitian H; the default sign -1 gives forward
// time evolution exp(-iHt).
CMat mat_exp_herm(const CMat& h, double t, int sign = -1);

// Principal square root of a positive semidefinite Hermitian matrix.
// Eigenvalues in [-tol::psd_reject, 0) are clamped to zero.
CMat mat_sqrt_psd(const CMat& a);

// Kronecker product with the project-wide subsystem order: the left factor
// carries the slow (outer) index, so kron(A_S, B_E) acts on S (x) E.
CMat kron(const CMat& a, const CMat& b);

enum class Keep { S, E };

// Partial trace of an operator on S (x) E with dims (dim_s, dim_e).
CMat partial_trace(const CMat& m, Eigen::Index dim_s, Eigen::Index dim_e, Keep keep);

// Largest singular value.
double spectral_norm(const CMat& a);

// Sum of singular values.
double trace_norm(const CMat& a);

}  // namespace uimpl
