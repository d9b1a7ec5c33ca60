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

#include <cstdint>

#include "uimpl/linalg.hpp"

namespace uimpl {

// Deterministic splittable PRNG (splitmix64 core). Streams reproduce
// bit-identically across platforms, and child streams are derived by value
// from (state, index) so work items can be evaluated in any order or on any
// thread without changing the result.
class SeedStream {
public:
    explicit SeedStream(std::uint64_t seed) : state_(seed) {}

    SeedStream child(std::uint64_t index) const;

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform();

    // Standard normal via Box-Muller; two uniforms per call, no cached spare,
    // so copies of a stream stay in lockstep.
    double gaussian();

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

CVec gaussian_cvec(Eigen::Index n, SeedStream& stream);
CMat gaussian_cmat(Eigen::Index rows, Eigen::Index cols, SeedStream& stream);

// Haar-distributed unitary (QR of a Ginibre matrix with the phase fix that
// makes the distribution exactly invariant).
CMat random_unitary(Eigen::Index dim, SeedStream stream);

// GUE-style Hermitian matrix, entries O(1).
CMat random_hermitian(Eigen::Index dim, SeedStream stream);

}  // namespace uimpl
