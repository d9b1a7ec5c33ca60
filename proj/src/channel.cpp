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

#include "uimpl/channel.hpp"

#include <cmath>
#include <string>

namespace uimpl {

void validate_implementation(const CMat& h_s, const ImplementationSet& impl) {
    require_hermitian(h_s, "implementation: H_S");
    require_hermitian(impl.h_e, "implementation: H_E");
    require_hermitian(impl.h_se, "implementation: H_SE");
    if (impl.dim_e <= 0) throw DimMismatch("implementation: dim_e must be positive");
    if (impl.h_e.rows() != impl.dim_e) throw DimMismatch("implementation: H_E dimension mismatch");
    if (impl.sigma_e.dim() != impl.dim_e)
        throw DimMismatch("implementation: sigma_E dimension mismatch");
    if (impl.h_se.rows() != h_s.rows() * impl.dim_e)
        throw DimMismatch("implementation: H_SE must act on dim_s * dim_e");
    if (!std::isfinite(impl.tau)) throw NonFinite("implementation: tau must be finite");
    if (impl.tau < 0.0) throw ValidationError("implementation: tau must be nonnegative");
}

CMat composite_hamiltonian(const CMat& h_s, const ImplementationSet& impl) {
    validate_implementation(h_s, impl);
    const Eigen::Index ds = h_s.rows();
    const Eigen::Index de = impl.dim_e;
    return kron(h_s, CMat::Identity(de, de)) + impl.h_se + kron(CMat::Identity(ds, ds), impl.h_e);
}

QuantumChannel induced_channel(const CMat& h_s, const ImplementationSet& impl) {
    const CMat h = composite_hamiltonian(h_s, impl);
    const Eigen::Index ds = h_s.rows();
    const Eigen::Index de = impl.dim_e;

    const HermitianEig he = herm_eig(h);
    CVec phases(he.eigenvalues.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        const double angle = -impl.tau * he.eigenvalues[k];
        phases[k] = Cplx(std::cos(angle), std::sin(angle));
    }

    const HermitianEig se = herm_eig(impl.sigma_e.matrix());

    QuantumChannel ch;
    ch.dim_in = ds;
    ch.dim_out = ds;
    // One Kraus operator per (bath output index m, retained bath eigenvector
    // k): K_(m,k)[s', s] = sqrt(q_k) <s' m| U |s k>. Columns of U are formed
    // by two matvecs against the eigenbasis instead of building U itself.
    for (Eigen::Index k = 0; k < de; ++k) {
        const double qk = se.eigenvalues[k];
        if (qk < tol::kraus_drop) continue;
        const double rq = std::sqrt(qk);
        CMat evolved(ds * de, ds);  // column s holds U |s k>
        for (Eigen::Index s = 0; s < ds; ++s) {
            CVec in = CVec::Zero(ds * de);
            in.segment(s * de, de) = se.eigenvectors.col(k);
            const CVec rotated = he.eigenvectors.adjoint() * in;
            evolved.col(s) = he.eigenvectors * (phases.asDiagonal() * rotated);
        }
        for (Eigen::Index m = 0; m < de; ++m) {
            CMat kop(ds, ds);
            for (Eigen::Index sp = 0; sp < ds; ++sp)
                for (Eigen::Index s = 0; s < ds; ++s) kop(sp, s) = rq * evolved(sp * de + m, s);
            ch.kraus.push_back(std::move(kop));
        }
    }
    require_trace_preserving(ch);
    return ch;
}

void require_trace_preserving(const QuantumChannel& ch, double tolerance) {
    if (ch.kraus.empty()) throw ValidationError("channel: no Kraus operators");
    CMat acc = CMat::Zero(ch.dim_in, ch.dim_in);
    for (const CMat& k : ch.kraus) {
        if (k.rows() != ch.dim_out || k.cols() != ch.dim_in)
            throw DimMismatch("channel: Kraus operator shape mismatch");
        acc += k.adjoint() * k;
    }
    const double dev = max_abs(acc - CMat::Identity(ch.dim_in, ch.dim_in));
    if (dev > tolerance)
        throw ValidationError("channel: sum K^dag K deviates from identity by " +
                              std::to_string(dev));
}

CMat apply_channel_raw(const QuantumChannel& ch, const CMat& rho) {
    CMat out = CMat::Zero(ch.dim_out, ch.dim_out);
    for (const CMat& k : ch.kraus) out += k * rho * k.adjoint();
    return out;
}

DensityMatrix apply_channel(const QuantumChannel& ch, const DensityMatrix& rho) {
    if (rho.dim() != ch.dim_in) throw DimMismatch("apply_channel: input dimension mismatch");
    return DensityMatrix(apply_channel_raw(ch, rho.matrix()));
}

CMat channel_superoperator(const QuantumChannel& ch) {
    const Eigen::Index d2 = ch.dim_out * ch.dim_out;
    CMat s = CMat::Zero(d2, ch.dim_in * ch.dim_in);
    // vec(K rho K^dag) = (conj(K) (x) K) vec(rho) for column-major vec.
    for (const CMat& k : ch.kraus) s += kron(k.conjugate(), k);
    return s;
}

}  // namespace uimpl
