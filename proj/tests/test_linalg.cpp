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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <limits>
#include <numbers>

#include "oracles.hpp"
#include "uimpl/linalg.hpp"
#include "uimpl/rng.hpp"

using namespace uimpl;

namespace {

const Cplx kI(0.0, 1.0);

CMat sigma_x() {
    CMat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

CMat sigma_z() {
    CMat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

}  // namespace

TEST_CASE("herm_eig on fixed matrices") {
    const HermitianEig id3 = herm_eig(CMat::Identity(3, 3));
    for (int k = 0; k < 3; ++k) CHECK(id3.eigenvalues[k] == doctest::Approx(1.0).epsilon(1e-14));

    const HermitianEig z = herm_eig(sigma_z());
    CHECK(z.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(z.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
    // ascending order puts the -1 eigenvector (|1>) first
    CHECK(std::abs(z.eigenvectors(1, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(z.eigenvectors(0, 1)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("herm_eig matches the Jacobi oracle on a random 6x6") {
    SeedStream s(101);
    const CMat h = random_hermitian(6, s);
    const HermitianEig fast = herm_eig(h);
    const auto [ref_vals, ref_vecs] = oracles::jacobi_eig(h);
    REQUIRE(fast.eigenvalues.size() == 6);
    for (int k = 0; k < 6; ++k)
        CHECK(fast.eigenvalues[k] == doctest::Approx(ref_vals[k]).epsilon(1e-8));

    // reconstruction and orthonormality
    CMat recon = CMat::Zero(6, 6);
    for (int k = 0; k < 6; ++k)
        recon += fast.eigenvalues[k] * fast.eigenvectors.col(k) * fast.eigenvectors.col(k).adjoint();
    CHECK(max_abs(recon - h) < 1e-10);
    CHECK(max_abs(fast.eigenvectors.adjoint() * fast.eigenvectors - CMat::Identity(6, 6)) < 1e-10);
}

TEST_CASE("herm_eig rejects bad input") {
    CMat notherm(2, 2);
    notherm << 0, 1, 0, 0;
    CHECK_THROWS_AS(herm_eig(notherm), NonHermitian);
    CHECK_THROWS_AS(herm_eig(CMat::Zero(2, 3)), DimMismatch);
    CMat inf2 = CMat::Zero(2, 2);
    inf2(0, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(herm_eig(inf2), NonFinite);
    // the validation hierarchy lets callers catch all of these at once
    CHECK_THROWS_AS(herm_eig(notherm), ValidationError);
}

TEST_CASE("mat_exp_herm special values") {
    const CMat h = sigma_x();
    CHECK(max_abs(mat_exp_herm(h, 0.0) - CMat::Identity(2, 2)) < 1e-15);

    // exp(-i sigma_x pi/2) = -i sigma_x
    const CMat u = mat_exp_herm(h, std::numbers::pi / 2.0);
    CHECK(max_abs(u - (-kI) * h) < 1e-13);

    // integer phases wrap: exp(-i pi diag(0, 2)) = 1
    CMat d(2, 2);
    d << 0, 0, 0, 2;
    CHECK(max_abs(mat_exp_herm(d, std::numbers::pi) - CMat::Identity(2, 2)) < 1e-13);

    // sign flag conjugates
    const CMat fwd = mat_exp_herm(h, 0.7, -1);
    const CMat bwd = mat_exp_herm(h, 0.7, +1);
    CHECK(max_abs(fwd * bwd - CMat::Identity(2, 2)) < 1e-13);
}

TEST_CASE("mat_exp_herm matches Taylor series and stays unitary") {
    SeedStream s(7);
    const CMat h = random_hermitian(5, s);
    const double t = 1.37;
    const CMat u = mat_exp_herm(h, t);
    const CMat ref = oracles::expm_taylor(-kI * t * h);
    CHECK(max_abs(u - ref) < 1e-10);
    CHECK(max_abs(u.adjoint() * u - CMat::Identity(5, 5)) < 1e-9);
    CHECK_THROWS_AS(mat_exp_herm(h, 1.0, 3), ValidationError);
}

TEST_CASE("mat_sqrt_psd") {
    CHECK(max_abs(mat_sqrt_psd(CMat::Identity(4, 4)) - CMat::Identity(4, 4)) < 1e-12);

    CMat d(2, 2);
    d << 4, 0, 0, 9;
    CMat expect(2, 2);
    expect << 2, 0, 0, 3;
    CHECK(max_abs(mat_sqrt_psd(d) - expect) < 1e-12);

    SeedStream s(12);
    const CMat g = gaussian_cmat(4, 4, s);
    const CMat psd = g * g.adjoint();
    const CMat root = mat_sqrt_psd(psd);
    CHECK(max_abs(root * root - psd) < 1e-8);

    // slightly negative eigenvalues are clamped, genuinely negative rejected
    CMat tiny(2, 2);
    tiny << 1, 0, 0, -1e-9;
    CHECK(max_abs(mat_sqrt_psd(tiny).col(1)) < 1e-4);
    CMat bad(2, 2);
    bad << 1, 0, 0, -1e-6;
    CHECK_THROWS_AS(mat_sqrt_psd(bad), NotPSD);
}

TEST_CASE("kron ordering and oracle agreement") {
    CHECK(max_abs(kron(CMat::Identity(2, 2), CMat::Identity(3, 3)) - CMat::Identity(6, 6)) == 0.0);

    // left factor on the slow index: sigma_z (x) 1 = diag(1, 1, -1, -1)
    const CMat zi = kron(sigma_z(), CMat::Identity(2, 2));
    CHECK(zi(0, 0) == Cplx(1, 0));
    CHECK(zi(1, 1) == Cplx(1, 0));
    CHECK(zi(2, 2) == Cplx(-1, 0));
    CHECK(zi(3, 3) == Cplx(-1, 0));

    SeedStream s(3);
    const CMat a = gaussian_cmat(3, 2, s);
    const CMat b = gaussian_cmat(2, 4, s);
    CHECK(max_abs(kron(a, b) - oracles::kron_naive(a, b)) < 1e-14);
}

TEST_CASE("partial_trace on product and entangled states") {
    SeedStream s(4);
    const CMat a = random_hermitian(2, s.child(0));
    const CMat b = random_hermitian(3, s.child(1));
    const CMat ab = kron(a, b);
    CHECK(max_abs(partial_trace(ab, 2, 3, Keep::S) - a * b.trace()) < 1e-12);
    CHECK(max_abs(partial_trace(ab, 2, 3, Keep::E) - b * a.trace()) < 1e-12);

    // Bell state reduces to the maximally mixed state on either side
    CVec bell(4);
    bell << 1, 0, 0, 1;
    bell /= std::sqrt(2.0);
    const CMat proj = bell * bell.adjoint();
    CHECK(max_abs(partial_trace(proj, 2, 2, Keep::S) - 0.5 * CMat::Identity(2, 2)) < 1e-14);
    CHECK(max_abs(partial_trace(proj, 2, 2, Keep::E) - 0.5 * CMat::Identity(2, 2)) < 1e-14);

    const CMat m = gaussian_cmat(6, 6, s);
    CHECK(std::abs(partial_trace(m, 2, 3, Keep::S).trace() - m.trace()) < 1e-12);
    // duality against the lifted observable: Tr[Tr_E(M) A] = Tr[M (A (x) 1)]
    const CMat obs = random_hermitian(2, s.child(2));
    const Cplx lhs = (partial_trace(m, 2, 3, Keep::S) * obs).trace();
    const Cplx rhs = (m * kron(obs, CMat::Identity(3, 3))).trace();
    CHECK(std::abs(lhs - rhs) < 1e-10);

    CHECK_THROWS_AS(partial_trace(m, 4, 2, Keep::S), DimMismatch);
}

TEST_CASE("spectral_norm and trace_norm") {
    CHECK(spectral_norm(CMat::Identity(3, 3)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(spectral_norm(sigma_x()) == doctest::Approx(1.0).epsilon(1e-12));

    SeedStream s(9);
    const CMat m = gaussian_cmat(5, 5, s);
    CHECK(spectral_norm(m) == doctest::Approx(oracles::spectral_norm_power(m)).epsilon(1e-8));

    // unitary invariance
    const CMat u = random_unitary(5, s.child(1));
    CHECK(spectral_norm(u * m) == doctest::Approx(spectral_norm(m)).epsilon(1e-9));

    CMat d(2, 2);
    d << 1, 0, 0, -2;
    CHECK(trace_norm(d) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(trace_norm(m) >= spectral_norm(m) - 1e-12);
}

TEST_CASE("validators") {
    CHECK(all_finite(CMat::Zero(2, 2)));
    CMat nan2 = CMat::Zero(2, 2);
    nan2(1, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK(!all_finite(nan2));
    CHECK_THROWS_AS(require_finite(nan2, "test"), NonFinite);
    CHECK_THROWS_AS(require_unitary(2.0 * CMat::Identity(2, 2), "test"), ValidationError);
    CHECK_NOTHROW(require_unitary((-kI) * sigma_x(), "test"));
    CHECK(max_abs(sigma_x()) == 1.0);
}
