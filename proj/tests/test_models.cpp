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

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include "json.hpp"
#include "oracles.hpp"
#include "uimpl/metrics.hpp"
#include "uimpl/models.hpp"

using namespace uimpl;

namespace {

const Cplx kI(0.0, 1.0);

double mean_photon(const PureState& psi) {
    double acc = 0.0;
    for (Eigen::Index n = 0; n < psi.dim(); ++n)
        acc += static_cast<double>(n) * std::norm(psi.amplitudes()[n]);
    return acc;
}

double photon_variance(const PureState& psi) {
    const double m = mean_photon(psi);
    double acc = 0.0;
    for (Eigen::Index n = 0; n < psi.dim(); ++n)
        acc += static_cast<double>(n * n) * std::norm(psi.amplitudes()[n]);
    return acc - m * m;
}

nlohmann::json matrix_json(const CMat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(row);
    }
    return rows;
}

// Minimal well-formed generic model; tests mutate single fields to probe the
// parser's error paths.
nlohmann::json generic_template() {
    CMat h_s(2, 2);
    h_s << 1, 0, 0, -1;
    CMat h_e(2, 2);
    h_e << 0, 0, 0, 2;
    CMat sigma_e(2, 2);
    sigma_e << 1, 0, 0, 0;
    const double tau = 1.0;
    const CMat u_target = mat_exp_herm(h_s, tau);
    nlohmann::json j;
    j["model"] = "generic";
    j["dim_s"] = 2;
    j["dim_e"] = 2;
    j["h_s"] = matrix_json(h_s);
    j["h_e"] = matrix_json(h_e);
    j["h_se"] = matrix_json(CMat::Zero(4, 4));
    j["sigma_e"] = matrix_json(sigma_e);
    j["u_target"] = matrix_json(u_target);
    j["tau"] = tau;
    return j;
}

}  // namespace

TEST_CASE("coherent state moments match the Poisson law") {
    const CoherentState vac = coherent_state(0.0, 5);
    CHECK(std::abs(vac.state.amplitudes()[0] - Cplx(1, 0)) < 1e-15);
    CHECK(vac.state.amplitudes().tail(4).norm() == 0.0);
    CHECK(vac.tail_mass == 0.0);

    const CoherentState one = coherent_state(1.0, auto_fock_dim(1.0));
    CHECK(mean_photon(one.state) == doctest::Approx(1.0).epsilon(1e-10));

    const CoherentState three = coherent_state(3.0, auto_fock_dim(3.0));
    CHECK(mean_photon(three.state) == doctest::Approx(9.0).epsilon(1e-9));
    CHECK(photon_variance(three.state) == doctest::Approx(9.0).epsilon(1e-8));
}

TEST_CASE("coherent state truncation guard") {
    // Poisson mean 16 against a cutoff of 10 leaves most of the mass outside
    CHECK_THROWS_AS(coherent_state(4.0, 10), TailMassTooLarge);
    const CoherentState forced = coherent_state(4.0, 10, true);
    CHECK(forced.tail_mass > 0.5);
    CHECK(forced.state.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(coherent_state(-1.0, 10), ValidationError);
    CHECK_THROWS_AS(coherent_state(2.0, 0), ValidationError);
}

TEST_CASE("auto_fock_dim keeps the tail below target") {
    CHECK(auto_fock_dim(10.0) >= 220);
    CHECK(auto_fock_dim(0.0) == 20);
    CHECK(coherent_state(10.0, auto_fock_dim(10.0)).tail_mass <= 1e-10);
    CHECK_THROWS_AS(auto_fock_dim(-2.0), ValidationError);
}

TEST_CASE("boson_annihilation ladder entries") {
    const CMat b = boson_annihilation(5);
    for (int n = 1; n < 5; ++n) CHECK(b(n - 1, n) == Cplx(std::sqrt(double(n)), 0));
    CHECK(b.cwiseAbs().sum() == doctest::Approx(b.diagonal(1).cwiseAbs().sum()));
    const CMat num = b.adjoint() * b;
    for (int n = 0; n < 5; ++n) CHECK(num(n, n).real() == doctest::Approx(double(n)));
    CHECK_THROWS_AS(boson_annihilation(0), ValidationError);
}

TEST_CASE("build_jc assembles the ladder model") {
    JCParams p;
    p.epsilon = 2.5;
    p.lambda = 0.7;
    p.alpha = 2.0;
    p.tau = 0.9;
    const JCModel m = build_jc(p);
    const int n = m.fock_dim;
    CHECK(n == auto_fock_dim(p.alpha));
    CHECK(m.impl.dim_e == n);
    CHECK(m.impl.tau == p.tau);

    CHECK(m.h_s(0, 0) == Cplx(5.0, 0));
    CHECK(m.h_s(1, 1) == Cplx(0, 0));
    CHECK(max_abs(m.h_s - m.h_s.diagonal().asDiagonal().toDenseMatrix()) == 0.0);

    for (int k = 0; k < n; ++k)
        CHECK(m.impl.h_e(k, k).real() == doctest::Approx(5.0 * k).epsilon(1e-14));

    // interaction couples the excited row to one fewer photon and vice versa
    const CMat b = boson_annihilation(n);
    CHECK(max_abs(m.impl.h_se.block(0, n, n, n) - p.lambda * b) < 1e-14);
    CHECK(max_abs(m.impl.h_se.block(n, 0, n, n) - p.lambda * b.adjoint()) < 1e-14);
    CHECK(max_abs(m.impl.h_se.block(0, 0, n, n)) == 0.0);
    CHECK(max_abs(m.impl.h_se.block(n, n, n, n)) == 0.0);

    const CoherentState coh = coherent_state(p.alpha, n);
    CHECK(max_abs(m.impl.sigma_e.matrix() - coh.state.projector()) < 1e-15);
    CHECK(m.impl.truncation_tail == coh.tail_mass);
    CHECK_NOTHROW(validate_implementation(m.h_s, m.impl));

    JCParams bad = p;
    bad.epsilon = 0.0;
    CHECK_THROWS_AS(build_jc(bad), ValidationError);
    bad = p;
    bad.fock_dim = 0;
    CHECK_THROWS_AS(build_jc(bad), ValidationError);
    bad = p;
    bad.alpha = 4.0;
    bad.fock_dim = 10;
    CHECK_THROWS_AS(build_jc(bad), TailMassTooLarge);
}

TEST_CASE("jc_target_unitary") {
    JCParams p;
    p.epsilon = 10.0;
    p.tau = 1.0;
    p.alpha = 4.0;
    p.lambda = std::numbers::pi / 8.0;  // alpha * lambda = pi / 2
    const CMat u = jc_target_unitary(p);
    CHECK_NOTHROW(require_unitary(u, "target"));

    // z rotation times a quarter-turn about x: offdiagonal -i e^{ -+ i eps }
    CHECK(std::abs(u(0, 0)) < 1e-12);
    CHECK(std::abs(u(1, 1)) < 1e-12);
    CHECK(std::abs(u(0, 1) - (-kI) * std::exp(-kI * 10.0)) < 1e-12);
    CHECK(std::abs(u(1, 0) - (-kI) * std::exp(kI * 10.0)) < 1e-12);

    p.epsilon = 1.7;
    p.lambda = 0.3;
    CMat sz(2, 2), sx(2, 2);
    sz << 1, 0, 0, -1;
    sx << 0, 1, 1, 0;
    const CMat ref = oracles::expm_taylor(-kI * p.tau * p.epsilon * sz) *
                     oracles::expm_taylor(-kI * p.tau * p.alpha * p.lambda * sx);
    CHECK(max_abs(jc_target_unitary(p) - ref) < 1e-12);
}

TEST_CASE("decoupled model implements its target exactly") {
    JCParams p;
    p.epsilon = 1.3;
    p.lambda = 0.0;
    p.alpha = 2.0;
    p.tau = 1.0;
    const ModelSpec spec = make_jc_spec(p);
    CHECK(spec.kind == "jaynes_cummings");
    REQUIRE(spec.jc.has_value());
    CHECK(spec.jc->alpha == p.alpha);

    // free evolution differs from the target only by a global phase
    const QuantumChannel ch = induced_channel(spec.h_s, spec.impl);
    SamplerBudget budget;
    budget.samples = 200;
    budget.seed = 5;
    CHECK(delta_U(ch, spec.u_target, budget).value < 1e-3);  // fourth root of F noise

    const CMat u_total = mat_exp_herm(composite_hamiltonian(spec.h_s, spec.impl), spec.impl.tau);
    CHECK(chi(spec.h_s, spec.impl.h_e, u_total) < 1e-10);
}

TEST_CASE("ladder interaction conserves bare energy") {
    for (double alpha : {3.0, 6.0}) {
        JCParams p;
        p.epsilon = 1.0;
        p.alpha = alpha;
        p.tau = 1.0;
        p.lambda = std::numbers::pi / (2.0 * alpha * p.tau);
        const ModelSpec spec = make_jc_spec(p);
        const CMat u_total =
            mat_exp_herm(composite_hamiltonian(spec.h_s, spec.impl), spec.impl.tau);
        CHECK(chi(spec.h_s, spec.impl.h_e, u_total) <= 1e-8 * p.epsilon);
    }
}

TEST_CASE("json ladder model matches the builder") {
    JCParams p;
    p.epsilon = 10.0;
    p.alpha = 2.0;
    p.tau = 1.0;
    p.lambda = std::numbers::pi / (2.0 * p.alpha * p.tau);
    p.fock_dim = 40;
    nlohmann::json j;
    j["model"] = "jaynes_cummings";
    j["epsilon"] = p.epsilon;
    j["alpha"] = p.alpha;
    j["lambda"] = p.lambda;
    j["tau"] = p.tau;
    j["fock_dim"] = 40;

    const ModelSpec parsed = model_from_json_text(j.dump());
    const ModelSpec built = make_jc_spec(p);
    CHECK(parsed.kind == built.kind);
    CHECK(parsed.impl.dim_e == 40);
    CHECK(max_abs(parsed.h_s - built.h_s) < 1e-15);
    CHECK(max_abs(parsed.impl.h_se - built.impl.h_se) < 1e-15);
    CHECK(max_abs(parsed.impl.sigma_e.matrix() - built.impl.sigma_e.matrix()) < 1e-15);
    CHECK(max_abs(parsed.u_target - built.u_target) < 1e-15);

    j["fock_dim"] = "auto";
    CHECK(model_from_json_text(j.dump()).impl.dim_e == auto_fock_dim(p.alpha));
}

TEST_CASE("json generic model loads and runs") {
    const nlohmann::json j = generic_template();
    const ModelSpec spec = model_from_json_text(j.dump());
    CHECK(spec.kind == "generic");
    CHECK(spec.h_s.rows() == 2);
    CHECK(spec.impl.dim_e == 2);
    CHECK_FALSE(spec.jc.has_value());

    // H_SE = 0 and u_target = exp(-i H_S tau): the channel hits the target
    const QuantumChannel ch = induced_channel(spec.h_s, spec.impl);
    SamplerBudget budget;
    budget.samples = 200;
    budget.seed = 6;
    CHECK(delta_U(ch, spec.u_target, budget).value < 1e-3);  // fourth root of F noise

    const auto path = std::filesystem::temp_directory_path() / "uimpl_model_roundtrip.json";
    {
        std::ofstream out(path);
        out << j.dump();
    }
    CHECK(load_model(path).kind == "generic");
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_model(path), ParseError);
}

TEST_CASE("json error paths") {
    CHECK_THROWS_AS(model_from_json_text("{ not json"), ParseError);
    CHECK_THROWS_AS(model_from_json_text("[1, 2]"), ParseError);
    CHECK_THROWS_AS(model_from_json_text(R"({"model": "bogus"})"), ParseError);
    CHECK_THROWS_AS(model_from_json_text(R"({"model": "jaynes_cummings", "alpha": 2.0})"),
                    ParseError);

    nlohmann::json jc;
    jc["model"] = "jaynes_cummings";
    jc["epsilon"] = 1.0;
    jc["alpha"] = 2.0;
    jc["lambda"] = 0.1;
    jc["tau"] = 1.0;
    jc["fock_dim"] = 3.5;
    CHECK_THROWS_AS(model_from_json_text(jc.dump()), ParseError);
    jc["fock_dim"] = "big";
    CHECK_THROWS_AS(model_from_json_text(jc.dump()), ParseError);

    nlohmann::json g = generic_template();
    g["h_e"][0][1] = {0.3, 0.0};  // breaks Hermiticity
    CHECK_THROWS_AS(model_from_json_text(g.dump()), NonHermitian);

    g = generic_template();
    g["sigma_e"][0][0] = {2.0, 0.0};  // trace 2
    CHECK_THROWS_AS(model_from_json_text(g.dump()), ValidationError);

    g = generic_template();
    g["u_target"] = matrix_json(2.0 * CMat::Identity(2, 2));
    CHECK_THROWS_AS(model_from_json_text(g.dump()), ValidationError);

    g = generic_template();
    g["h_s"] = matrix_json(CMat::Identity(3, 3));  // wrong row count
    CHECK_THROWS_AS(model_from_json_text(g.dump()), DimMismatch);

    g = generic_template();
    g["h_s"][0][0] = 1.0;  // bare number instead of a [re, im] pair
    CHECK_THROWS_AS(model_from_json_text(g.dump()), ParseError);

    g = generic_template();
    g.erase("tau");
    CHECK_THROWS_AS(model_from_json_text(g.dump()), ParseError);
}
