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

#include <filesystem>
#include <optional>
#include <string>

#include "uimpl/channel.hpp"

namespace uimpl {

// Qubit-in-a-cavity model: H_S = eps (sigma_z + 1), H_E = 2 eps b^dag b,
// H_SE = lambda (sigma_+ b + b^dag sigma_-), bath prepared in a coherent
// state of amplitude alpha, evolved for time tau.
struct JCParams {
    double epsilon = 1.0;
    double lambda = 1.0;
    double alpha = 1.0;
    double tau = 1.0;

    static constexpr int kAutoFock = -1;
    // kAutoFock selects the smallest cutoff with tail mass <= coherent_tail_auto,
    // floored at alpha^2 + 10 alpha + 20.
    int fock_dim = kAutoFock;
};

struct CoherentState {
    PureState state;
    double tail_mass;  // probability beyond the cutoff, before renormalizing
};

int auto_fock_dim(double alpha);

// Truncated, renormalized coherent state. Amplitudes are evaluated in log
// space so large alpha cannot overflow. Throws TailMassTooLarge when the
// tail exceeds tol::coherent_tail_cap unless the caller opts in.
CoherentState coherent_state(double alpha, int fock_dim, bool allow_large_tail = false);

// Truncated annihilation operator, b[n-1, n] = sqrt(n).
CMat boson_annihilation(int fock_dim);

struct JCModel {
    CMat h_s;
    ImplementationSet impl;
    int fock_dim;
};

JCModel build_jc(const JCParams& p);

// Gate the dynamics approaches for large alpha at fixed alpha*lambda:
// exp(-i tau eps sigma_z) exp(-i tau alpha lambda sigma_x).
CMat jc_target_unitary(const JCParams& p);

// A fully specified verification instance: system Hamiltonian, realization
// data, and the target gate.
struct ModelSpec {
    std::string kind;  // "jaynes_cummings" or "generic"
    CMat h_s;
    ImplementationSet impl;
    CMat u_target;
    std::optional<JCParams> jc;
};

ModelSpec make_jc_spec(const JCParams& p);

// Parses and validates a model description; see README for the format.
// Malformed JSON or missing keys throw ParseError; structurally valid input
// with bad physics (non-Hermitian, non-state, non-unitary) throws
// ValidationError or a more specific subtype.
ModelSpec load_model(const std::filesystem::path& path);
ModelSpec model_from_json_text(const std::string& text);

}  // namespace uimpl
