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

#include <string>
#include <vector>

#include "uimpl/harness.hpp"

namespace uimpl {

inline constexpr const char* kVersion = "0.1.0";

struct ReportProvenance {
    std::uint64_t seed = 0;
    long samples = 0;
    int threads = 1;
    std::string version = kVersion;
    // Everything except the timestamp is deterministic for a given seed;
    // leave it empty for byte-stable output.
    std::string timestamp;
};

// Serializes metrics, check verdicts, and provenance as pretty-printed JSON.
// Key order is sorted and numbers use shortest round-trip formatting, so the
// text is reproducible across runs and thread counts.
std::string report_to_json(const ModelMetrics& m, const std::vector<CheckResult>& checks,
                           const ReportProvenance& prov);

}  // namespace uimpl
