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

#include "uimpl/models.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace uimpl {

namespace {

// log of the coherent amplitude <n|alpha> for alpha > 0; evaluated in log
// space so n! cannot overflow.
inline double log_coherent_amp(double alpha, int n) {
    return -0.5 * alpha * alpha + n * std::log(alpha) - 0.5 * std::lgamma(n + 1.0);
}

void require_finite_param(double v, const char* name) {
    if (!std::isfinite(v)) throw ValidationError(std::string("model parameter ") + name + " must be finite");
}

}  // namespace

int auto_fock_dim(double alpha) {
    if (!std::isfinite(alpha) || alpha < 0.0)
        throw ValidationError("auto_fock_dim: alpha must be finite and nonnegative");
    const int floor_dim = static_cast<int>(std::ceil(alpha * alpha + 10.0 * alpha + 20.0));
    if (alpha == 0.0) return floor_dim;
    double mass = 0.0;
    int n = 0;
    // Photon-number distribution is Poisson(alpha^2); accumulate until the
    // tail target is met. The floor keeps derived bath statistics accurate
    // well beyond the raw tail criterion.
    const int hard_cap = floor_dim + 4 * static_cast<int>(std::ceil(alpha * alpha)) + 1000;
    while (n < hard_cap) {
        mass += std::exp(2.0 * log_coherent_amp(alpha, n));
        ++n;
        if (1.0 - mass <= tol::coherent_tail_auto) break;
    }
    return std::max(n, floor_dim);
}

CoherentState coherent_state(double alpha, int fock_dim, bool allow_large_tail) {
    if (!std::isfinite(alpha) || alpha < 0.0)
        throw ValidationError("coherent_state: alpha must be finite and nonnegative");
    if (fock_dim < 1) throw ValidationError("coherent_state: fock_dim must be >= 1");
    CVec amp = CVec::Zero(fock_dim);
    if (alpha == 0.0) {
        amp[0] = 1.0;
        return CoherentState{PureState(std::move(amp)), 0.0};
    }
    double mass = 0.0;
    for (int n = 0; n < fock_dim; ++n) {
        const double a = std::exp(log_coherent_amp(alpha, n));
        amp[n] = a;
        mass += a * a;
    }
    const double tail = std::max(0.0, 1.0 - mass);
    if (tail > tol::coherent_tail_cap && !allow_large_tail)
        throw TailMassTooLarge("coherent_state: truncation tail " + std::to_string(tail) +
                               " exceeds cap; raise fock_dim or opt in");
    amp /= std::sqrt(mass);
    return CoherentState{PureState::normalized(std::move(amp)), tail};
}

CMat boson_annihilation(int fock_dim) {
    if (fock_dim < 1) throw ValidationError("boson_annihilation: fock_dim must be >= 1");
    CMat b = CMat::Zero(fock_dim, fock_dim);
    for (int n = 1; n < fock_dim; ++n) b(n - 1, n) = std::sqrt(static_cast<double>(n));
    return b;
}

JCModel build_jc(const JCParams& p) {
    require_finite_param(p.epsilon, "epsilon");
    require_finite_param(p.lambda, "lambda");
    require_finite_param(p.alpha, "alpha");
    require_finite_param(p.tau, "tau");
    if (p.epsilon <= 0.0) throw ValidationError("build_jc: epsilon must be positive");
    if (p.alpha < 0.0) throw ValidationError("build_jc: alpha must be nonnegative");
    if (p.tau < 0.0) throw ValidationError("build_jc: tau must be nonnegative");
    int n = p.fock_dim;
    if (n == JCParams::kAutoFock) {
        n = auto_fock_dim(p.alpha);
    } else if (n < 1) {
        throw ValidationError("build_jc: fock_dim must be >= 1 or auto");
    }

    // Qubit basis: index 0 spin-up, index 1 spin-down; ground energy is zero.
    CMat h_s = CMat::Zero(2, 2);
    h_s(0, 0) = 2.0 * p.epsilon;

    const CMat b = boson_annihilation(n);
    const CMat h_e = 2.0 * p.epsilon * (b.adjoint() * b);

    CMat sp = CMat::Zero(2, 2);
    sp(0, 1) = 1.0;
    const CMat h_se = p.lambda * (kron(sp, b) + kron(sp.adjoint(), b.adjoint()));

    CoherentState coh = coherent_state(p.alpha, n);
    ImplementationSet impl{n, h_e, DensityMatrix::pure(coh.state), h_se, p.tau, coh.tail_mass};
    return JCModel{std::move(h_s), std::move(impl), n};
}

CMat jc_target_unitary(const JCParams& p) {
    require_finite_param(p.epsilon, "epsilon");
    require_finite_param(p.lambda, "lambda");
    require_finite_param(p.alpha, "alpha");
    require_finite_param(p.tau, "tau");
    const double theta = p.tau * p.epsilon;
    const double phi = p.tau * p.alpha * p.lambda;
    CMat rot_z = CMat::Zero(2, 2);
    rot_z(0, 0) = Cplx(std::cos(theta), -std::sin(theta));
    rot_z(1, 1) = Cplx(std::cos(theta), std::sin(theta));
    CMat rot_x(2, 2);
    rot_x(0, 0) = std::cos(phi);
    rot_x(1, 1) = std::cos(phi);
    rot_x(0, 1) = Cplx(0.0, -std::sin(phi));
    rot_x(1, 0) = Cplx(0.0, -std::sin(phi));
    return rot_z * rot_x;
}

ModelSpec make_jc_spec(const JCParams& p) {
    JCModel m = build_jc(p);
    return ModelSpec{"jaynes_cummings", std::move(m.h_s), std::move(m.impl), jc_target_unitary(p),
                     p};
}

namespace {

using nlohmann::json;

double number_field(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("missing field: ") + key);
    const json& v = j.at(key);
    if (!v.is_number()) throw ParseError(std::string("field must be a number: ") + key);
    return v.get<double>();
}

Eigen::Index int_field(const json& j, const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("missing field: ") + key);
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw ParseError(std::string("field must be an integer: ") + key);
    return v.get<Eigen::Index>();
}

// Matrices are row-major nested arrays whose entries are [re, im] pairs.
CMat matrix_field(const json& j, const char* key, Eigen::Index rows, Eigen::Index cols) {
    if (!j.contains(key)) throw ParseError(std::string("missing field: ") + key);
    const json& m = j.at(key);
    if (!m.is_array()) throw ParseError(std::string(key) + ": expected an array of rows");
    if (static_cast<Eigen::Index>(m.size()) != rows)
        throw DimMismatch(std::string(key) + ": expected " + std::to_string(rows) + " rows, got " +
                          std::to_string(m.size()));
    CMat out(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = m.at(r);
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw DimMismatch(std::string(key) + ": row " + std::to_string(r) + " must have " +
                              std::to_string(cols) + " entries");
        for (Eigen::Index c = 0; c < cols; ++c) {
            const json& e = row.at(c);
            if (!e.is_array() || e.size() != 2 || !e.at(0).is_number() || !e.at(1).is_number())
                throw ParseError(std::string(key) + ": entries must be [re, im] number pairs");
            out(r, c) = Cplx(e.at(0).get<double>(), e.at(1).get<double>());
        }
    }
    require_finite(out, key);
    return out;
}

ModelSpec parse_generic(const json& j) {
    const Eigen::Index ds = int_field(j, "dim_s");
    const Eigen::Index de = int_field(j, "dim_e");
    if (ds < 1 || de < 1) throw ValidationError("generic model: dimensions must be >= 1");
    const CMat h_s = matrix_field(j, "h_s", ds, ds);
    const CMat h_e = matrix_field(j, "h_e", de, de);
    const CMat h_se = matrix_field(j, "h_se", ds * de, ds * de);
    const CMat sigma_e = matrix_field(j, "sigma_e", de, de);
    const CMat u_target = matrix_field(j, "u_target", ds, ds);
    const double tau = number_field(j, "tau");
    require_hermitian(h_s, "generic model: h_s");
    require_hermitian(h_e, "generic model: h_e");
    require_hermitian(h_se, "generic model: h_se");
    require_unitary(u_target, "generic model: u_target");
    ImplementationSet impl{de, h_e, DensityMatrix(sigma_e), h_se, tau, 0.0};
    validate_implementation(h_s, impl);
    return ModelSpec{"generic", h_s, std::move(impl), u_target, std::nullopt};
}

ModelSpec parse_jc(const json& j) {
    JCParams p;
    p.epsilon = number_field(j, "epsilon");
    p.lambda = number_field(j, "lambda");
    p.alpha = number_field(j, "alpha");
    p.tau = number_field(j, "tau");
    if (!j.contains("fock_dim")) throw ParseError("missing field: fock_dim");
    const json& fd = j.at("fock_dim");
    if (fd.is_string()) {
        if (fd.get<std::string>() != "auto")
            throw ParseError("fock_dim: expected an integer or \"auto\"");
        p.fock_dim = JCParams::kAutoFock;
    } else if (fd.is_number_integer()) {
        p.fock_dim = fd.get<int>();
    } else {
        throw ParseError("fock_dim: expected an integer or \"auto\"");
    }
    return make_jc_spec(p);
}

}  // namespace

ModelSpec model_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("model description must be a JSON object");
    if (!j.contains("model") || !j.at("model").is_string())
        throw ParseError("missing string field: model");
    const std::string kind = j.at("model").get<std::string>();
    if (kind == "jaynes_cummings") return parse_jc(j);
    if (kind == "generic") return parse_generic(j);
    throw ParseError("unknown model kind: " + kind);
}

ModelSpec load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json_text(buf.str());
}

}  // namespace uimpl
