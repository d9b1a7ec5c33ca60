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

#include "uimpl/report.hpp"

#include "json.hpp"

namespace uimpl {

std::string report_to_json(const ModelMetrics& m, const std::vector<CheckResult>& checks,
                           const ReportProvenance& prov) {
    using nlohmann::json;
    json metrics;
    metrics["delta_u"] = m.du.value;
    metrics["delta_u_samples_used"] = m.du.samples_used;
    metrics["delta_u_refined"] = m.du.refined;
    metrics["delta_e"] = m.delta_e;
    metrics["delta_eq"] = m.delta_eq;
    if (m.due) {
        metrics["delta_ue"] = *m.due;
    } else {
        metrics["delta_ue"] = nullptr;
    }
    metrics["chi"] = m.chi_value;
    metrics["comm_norm"] = m.comm_norm;
    metrics["h_s_norm"] = m.h_s_norm;
    metrics["fock_dim"] = m.spec.impl.dim_e;
    metrics["truncation_tail"] = m.spec.impl.truncation_tail;
    metrics["conserving"] = m.conserving;
    metrics["gap_delta"] = m.gap.delta;
    metrics["tilde_delta_e"] = m.gap.tilde_delta_e;
    metrics["gain_max"] = m.gap.inputs.gain_max;
    metrics["gain_min"] = m.gap.inputs.gain_min;

    json check_array = json::array();
    for (const CheckResult& c : checks) {
        json jc;
        jc["name"] = c.name;
        jc["kind"] = to_string(c.kind);
        jc["lhs"] = c.lhs;
        jc["rhs"] = c.rhs;
        jc["regime_value"] = c.regime_value;
        if (std::isfinite(c.regime_threshold)) {
            jc["regime_threshold"] = c.regime_threshold;
        } else {
            jc["regime_threshold"] = nullptr;
        }
        jc["regime_met"] = c.regime_met;
        jc["satisfied"] = c.satisfied;
        jc["margin"] = c.margin;
        jc["status"] = to_string(c.status);
        jc["estimator_note"] = c.estimator_note;
        check_array.push_back(std::move(jc));
    }

    json model;
    model["kind"] = m.spec.kind;
    model["dim_s"] = m.spec.h_s.rows();
    model["dim_e"] = m.spec.impl.dim_e;
    model["tau"] = m.spec.impl.tau;
    if (m.spec.jc) {
        model["epsilon"] = m.spec.jc->epsilon;
        model["lambda"] = m.spec.jc->lambda;
        model["alpha"] = m.spec.jc->alpha;
    }

    json provenance;
    provenance["seed"] = prov.seed;
    provenance["samples"] = prov.samples;
    provenance["threads"] = prov.threads;
    provenance["version"] = prov.version;
    provenance["timestamp"] = prov.timestamp;

    json root;
    root["metrics"] = std::move(metrics);
    root["checks"] = std::move(check_array);
    root["model"] = std::move(model);
    root["provenance"] = std::move(provenance);
    return root.dump(2) + "\n";
}

}  // namespace uimpl
