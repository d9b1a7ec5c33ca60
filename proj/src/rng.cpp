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

#include "uimpl/rng.hpp"

#include <cmath>
#include <numbers>

namespace uimpl {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

SeedStream SeedStream::child(std::uint64_t index) const {
    // Two mixing rounds decorrelate the child from both the parent state and
    // neighboring indices.
    return SeedStream(mix64(mix64(state_ + kGolden * (index + 1)) + kGolden));
}

std::uint64_t SeedStream::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double SeedStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeedStream::gaussian() {
    double u1 = uniform();
    const double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

CVec gaussian_cvec(Eigen::Index n, SeedStream& stream) {
    CVec v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double re = stream.gaussian();
        const double im = stream.gaussian();
        v[i] = Cplx(re, im);
    }
    return v;
}

CMat gaussian_cmat(Eigen::Index rows, Eigen::Index cols, SeedStream& stream) {
    CMat m(rows, cols);
    // Column-major fill keeps draw order independent of how the caller
    // iterates afterwards.
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = stream.gaussian();
            const double im = stream.gaussian();
            m(i, j) = Cplx(re, im);
        }
    return m;
}

CMat random_unitary(Eigen::Index dim, SeedStream stream) {
    const CMat g = gaussian_cmat(dim, dim, stream);
    Eigen::HouseholderQR<CMat> qr(g);
    CMat q = qr.householderQ() * CMat::Identity(dim, dim);
    const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase freedom of QR by the sign of diag(R); this is what makes
    // the output Haar rather than merely unitary.
    for (Eigen::Index k = 0; k < dim; ++k) {
        const Cplx d = r(k, k);
        const double a = std::abs(d);
        q.col(k) *= (a > 0.0) ? d / a : Cplx(1.0, 0.0);
    }
    return q;
}

CMat random_hermitian(Eigen::Index dim, SeedStream stream) {
    const CMat g = gaussian_cmat(dim, dim, stream);
    return 0.5 * (g + g.adjoint());
}

}  // namespace uimpl
