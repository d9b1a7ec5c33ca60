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

#include "uimpl/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace uimpl {

namespace {

const double kSqrt2 = std::numbers::sqrt2;

CheckResult make_result(std::string name, BoundKind kind, double lhs, double rhs) {
    CheckResult r;
    r.name = std::move(name);
    r.kind = kind;
    r.lhs = lhs;
    r.rhs = rhs;
    r.margin = lhs - rhs;
    r.satisfied = (kind == BoundKind::lower) ? (lhs >= rhs - tol::check_slack)
                                             : (lhs <= rhs + tol::check_slack);
    r.status = r.satisfied ? CheckStatus::satisfied : CheckStatus::violated;
    return r;
}

void apply_regime(CheckResult& r, double value, double threshold, bool met) {
    r.regime_value = value;
    r.regime_threshold = threshold;
    r.regime_met = met;
    if (!met && r.status != CheckStatus::vacuous) r.status = CheckStatus::not_applicable;
}

void append_note(std::string& note, const std::string& part) {
    if (!note.empty()) note += "; ";
    note += part;
}

void mark_not_applicable(CheckResult& r, const std::string& why) {
    r.regime_met = false;
    r.status = CheckStatus::not_applicable;
    append_note(r.estimator_note, why);
}

std::string escalation_note(int round, double old_value, double new_value) {
    return "escalated x" + std::to_string(1 << (2 * round)) + ": delta estimate " +
           std::to_string(old_value) + " -> " + std::to_string(new_value);
}

// Re-evaluates a delta_U-dependent check with a 4x larger sample budget, up
// to twice, before a violation verdict stands. The estimator is monotone in
// the budget, so escalation can only strengthen the left side (or reveal
// that the regime no longer holds).
template <typename Rebuild>
CheckResult with_escalation(const ModelMetrics& m, Rebuild rebuild) {
    DeltaUEstimate du = m.du;
    std::string note = "delta_u is a lower-bound estimate";
    CheckResult r = rebuild(du, note);
    SamplerBudget b = m.budget;
    for (int round = 1; round <= 2 && r.regime_met && !r.satisfied; ++round) {
        b.samples *= 4;
        const double old_value = du.value;
        du = delta_U(m.channel, m.spec.u_target, b);
        append_note(note, escalation_note(round, old_value, du.value));
        r = rebuild(du, note);
    }
    return r;
}

}  // namespace

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::satisfied: return "satisfied";
        case CheckStatus::violated: return "violated";
        case CheckStatus::not_applicable: return "not-applicable";
        case CheckStatus::vacuous: return "vacuous";
    }
    return "unknown";
}

const char* to_string(BoundKind k) { return k == BoundKind::lower ? "lower" : "upper"; }

void SuiteReport::tally(const CheckResult& r, std::uint64_t seed) {
    ++evaluated;
    switch (r.status) {
        case CheckStatus::satisfied: ++satisfied_count; break;
        case CheckStatus::violated:
            ++violated_count;
            if (failures.size() < 16) failures.push_back(TrialFailure{r.name, seed, r.lhs, r.rhs});
            break;
        case CheckStatus::not_applicable: ++not_applicable_count; break;
        case CheckStatus::vacuous: ++vacuous_count; break;
    }
    if (r.status == CheckStatus::satisfied || r.status == CheckStatus::violated)
        min_slack = std::min(min_slack, r.slack());
}

ModelMetrics compute_metrics(const ModelSpec& spec, const SamplerBudget& budget,
                             bool with_delta_ue) {
    validate_implementation(spec.h_s, spec.impl);
    require_unitary(spec.u_target, "compute_metrics: u_target");
    QuantumChannel ch = induced_channel(spec.h_s, spec.impl);
    const double h_s_norm = spectral_norm(spec.h_s);
    const double comm = commutator_norm(spec.h_s, spec.u_target);
    CMat u_total = mat_exp_herm(composite_hamiltonian(spec.h_s, spec.impl), spec.impl.tau);
    const double chi_value = chi(spec.h_s, spec.impl.h_e, u_total);
    const bool conserving = chi_value <= tol::conservation_gate * comm;
    const double de = delta_E(spec.impl.sigma_e, spec.impl.h_e);
    const double deq = delta_EQ(spec.impl.sigma_e, spec.impl.h_e);
    DeltaUEstimate du = delta_U(ch, spec.u_target, budget);
    std::optional<double> due;
    if (with_delta_ue) due = delta_Ue(ch, spec.u_target, budget);
    EnergyShiftGap gap = energy_shift_gap(spec.h_s, spec.impl, spec.u_target, &u_total);
    return ModelMetrics{spec,      std::move(ch), budget, h_s_norm,      comm,
                        chi_value, conserving,    de,     deq,           std::move(du),
                        due,       std::move(gap), std::move(u_total)};
}

CheckResult check_tradeoff1(const ModelMetrics& m) {
    auto rebuild = [&m](const DeltaUEstimate& du, const std::string& note) {
        CheckResult r =
            make_result("tradeoff1", BoundKind::lower, m.delta_e * du.value, m.comm_norm / 40.0);
        const double thr = (m.comm_norm > 0.0 && m.h_s_norm > 0.0)
                               ? m.comm_norm / (40.0 * m.h_s_norm)
                               : 0.0;
        apply_regime(r, du.value, thr, du.value < thr);
        r.estimator_note = note;
        if (m.comm_norm == 0.0) append_note(r.estimator_note, "commutator vanishes, bound trivial");
        return r;
    };
    if (!m.conserving) {
        CheckResult r = rebuild(m.du, "delta_u is a lower-bound estimate");
        mark_not_applicable(r, "conservation gate failed (chi = " + std::to_string(m.chi_value) +
                                   "), see generalized_tradeoff1");
        return r;
    }
    return with_escalation(m, rebuild);
}

CheckResult check_tradeoff2(const ModelMetrics& m) {
    auto rebuild = [&m](const DeltaUEstimate& du, const std::string& note) {
        CheckResult r =
            make_result("tradeoff2", BoundKind::lower, m.delta_eq * du.value, m.comm_norm / 81.0);
        const double thr = (m.comm_norm > 0.0 && m.h_s_norm > 0.0)
                               ? m.comm_norm / (64.0 * m.h_s_norm)
                               : 0.0;
        apply_regime(r, du.value, thr, du.value < thr);
        r.estimator_note = note;
        if (m.comm_norm == 0.0) append_note(r.estimator_note, "commutator vanishes, bound trivial");
        return r;
    };
    if (!m.conserving) {
        CheckResult r = rebuild(m.du, "delta_u is a lower-bound estimate");
        mark_not_applicable(r, "conservation gate failed (chi = " + std::to_string(m.chi_value) +
                                   "), see generalized_tradeoff2");
        return r;
    }
    return with_escalation(m, rebuild);
}

std::pair<CheckResult, CheckResult> check_generalized(const ModelMetrics& m) {
    const double c = m.comm_norm;
    const double x = m.chi_value;
    const bool vacuous = x >= c;
    auto rebuild_one = [&](const char* name, double divisor, double spread) {
        return [&m, name, divisor, spread, c, x, vacuous](const DeltaUEstimate& du,
                                                          const std::string& note) {
            CheckResult r = make_result(name, BoundKind::lower, spread * du.value, (c - x) / divisor);
            if (vacuous) {
                r.status = CheckStatus::vacuous;
                r.regime_met = false;
                r.regime_value = du.value;
                r.regime_threshold = 0.0;
                r.estimator_note = note;
                append_note(r.estimator_note,
                            "chi >= ||[U_S, H_S]||, the generalized bound asserts nothing");
                return r;
            }
            const double thr = (c - x) / (128.0 * std::max(m.h_s_norm, x));
            apply_regime(r, du.value, thr, du.value < thr);
            r.estimator_note = note;
            return r;
        };
    };
    CheckResult first =
        with_escalation(m, rebuild_one("generalized_tradeoff1", 40.0, m.delta_e));
    CheckResult second =
        with_escalation(m, rebuild_one("generalized_tradeoff2", 81.0, m.delta_eq));
    return {std::move(first), std::move(second)};
}

CheckResult check_lemma1(const CMat& s1, const CMat& s2, const CMat& a) {
    require_hermitian(a, "check_lemma1: observable");
    if (s1.rows() != s2.rows() || s1.rows() != a.rows())
        throw DimMismatch("check_lemma1: dimension mismatch");
    const double gap = std::abs(((s1 - s2) * a).trace().real());
    const double lb = bures_raw(s1, s2);
    const double dev1 = std::sqrt(variance_raw(s1, a));
    const double dev2 = std::sqrt(variance_raw(s2, a));
    CheckResult r = make_result("lemma1", BoundKind::upper, gap, kSqrt2 * lb * (dev1 + dev2 + gap));
    return r;
}

CheckResult check_lemma2(const ModelMetrics& m) {
    const double lhs = bures_raw(m.gap.sigma_out_max, m.gap.sigma_out_min);
    auto rebuild = [&m, lhs](const DeltaUEstimate& du, const std::string& note) {
        CheckResult r = make_result("lemma2", BoundKind::upper, lhs, 4.0 * du.value);
        const bool strict = du.value <= 0.125 + tol::check_slack;
        const bool extended = du.value <= 0.25 + tol::check_slack;
        apply_regime(r, du.value, 0.125, strict);
        r.estimator_note = note;
        if (!strict && extended)
            append_note(r.estimator_note,
                        std::string("extended-regime (delta_u <= 1/4) verdict: ") +
                            (r.satisfied ? "satisfied" : "violated"));
        return r;
    };
    return with_escalation(m, rebuild);
}

CheckResult check_theorem_unify(Eigen::Index a_dim, Eigen::Index b_dim, std::uint64_t trial_seed,
                                bool swap_joint) {
    if (a_dim < 2 || b_dim < 2) throw DimMismatch("check_theorem_unify: dims must be >= 2");
    if (swap_joint && a_dim != b_dim)
        throw DimMismatch("check_theorem_unify: swap coupling needs equal dims");
    const SeedStream root(trial_seed);
    const CVec psi1 = random_pure_state(a_dim, root.child(0)).amplitudes();
    CVec psi2;
    for (std::uint64_t attempt = 0;; ++attempt) {
        const CVec raw = random_pure_state(a_dim, root.child(1 + attempt)).amplitudes();
        CVec orth = raw - psi1 * psi1.dot(raw);
        if (orth.norm() > 1e-6) {
            psi2 = orth.normalized();
            break;
        }
    }
    const CVec psi12 = (psi1 + psi2).normalized();

    SeedStream picker = root.child(9);
    const bool mixed_bath = (picker.next_u64() & 1) != 0;
    const CMat sigma_b = mixed_bath ? random_density_matrix(b_dim, root.child(10)).matrix()
                                    : random_pure_state(b_dim, root.child(10)).projector();
    CMat v;
    if (swap_joint) {
        v = CMat::Zero(a_dim * b_dim, a_dim * b_dim);
        for (Eigen::Index i = 0; i < a_dim; ++i)
            for (Eigen::Index j = 0; j < b_dim; ++j) v(j * a_dim + i, i * b_dim + j) = 1.0;
    } else {
        v = random_unitary(a_dim * b_dim, root.child(11));
    }
    const CMat u = random_unitary(a_dim, root.child(12));

    auto pass_through = [&](const CVec& psi, CMat& bath_out) {
        const CMat joint = kron(psi * psi.adjoint(), sigma_b);
        const CMat evolved = v * joint * v.adjoint();
        bath_out = partial_trace(evolved, a_dim, b_dim, Keep::E);
        const CMat sys_out = partial_trace(evolved, a_dim, b_dim, Keep::S);
        const CMat target = u * (psi * psi.adjoint()) * u.adjoint();
        return std::sqrt(bures_raw(sys_out, target));
    };
    CMat bath1, bath2, bath12;
    const double d1 = pass_through(psi1, bath1);
    const double d2 = pass_through(psi2, bath2);
    const double d12 = pass_through(psi12, bath12);

    const double lhs = bures_raw(bath1, bath2);
    const double rhs = 2.0 * std::sqrt(std::pow(d1, 4) + std::pow(d2, 4) +
                                       kSqrt2 * (d1 * d1 + d2 * d2)) +
                       2.0 * kSqrt2 * d12 * d12 + d1 * d1 + d2 * d2;
    CheckResult r = make_result("theorem_unify", BoundKind::upper, lhs, rhs);
    if (swap_joint) r.estimator_note = "swap coupling (maximally disturbing)";
    return r;
}

std::vector<CheckResult> check_middle_and_s1s2(const ModelMetrics& m) {
    std::vector<CheckResult> out;

    auto rebuild_middle = [&m](const DeltaUEstimate& du, const std::string& note) {
        CheckResult r = make_result("middle", BoundKind::upper, m.gap.delta,
                                    4.0 * kSqrt2 * du.value *
                                        (2.0 * m.gap.tilde_delta_e + m.gap.delta));
        const bool strict = du.value <= 0.125 + tol::check_slack;
        const bool extended = du.value <= 0.25 + tol::check_slack;
        apply_regime(r, du.value, 0.125, strict);
        r.estimator_note = note;
        if (!strict && extended)
            append_note(r.estimator_note,
                        std::string("extended-regime (delta_u <= 1/4) verdict: ") +
                            (r.satisfied ? "satisfied" : "violated"));
        return r;
    };
    auto rebuild_s1 = [&m](const DeltaUEstimate& du, const std::string& note) {
        CheckResult r = make_result("s1", BoundKind::upper, m.comm_norm,
                                    m.gap.delta + 4.0 * kSqrt2 * du.value * du.value * m.h_s_norm);
        apply_regime(r, du.value, std::numeric_limits<double>::infinity(), true);
        r.estimator_note = note;
        return r;
    };

    if (!m.conserving) {
        const std::string why =
            "conservation gate failed (chi = " + std::to_string(m.chi_value) + ")";
        CheckResult middle = rebuild_middle(m.du, "delta_u is a lower-bound estimate");
        mark_not_applicable(middle, why);
        CheckResult s1 = rebuild_s1(m.du, "delta_u is a lower-bound estimate");
        mark_not_applicable(s1, why);
        CheckResult s2 = make_result("s2", BoundKind::upper, m.gap.tilde_delta_e,
                                     m.delta_e + m.h_s_norm);
        mark_not_applicable(s2, why);
        out.push_back(std::move(middle));
        out.push_back(std::move(s1));
        out.push_back(std::move(s2));
        return out;
    }

    out.push_back(with_escalation(m, rebuild_middle));
    out.push_back(with_escalation(m, rebuild_s1));
    out.push_back(
        make_result("s2", BoundKind::upper, m.gap.tilde_delta_e, m.delta_e + m.h_s_norm));
    return out;
}

namespace {

CheckResult entanglement_core(const QuantumChannel& ch, const CMat& u_target, double delta_e,
                              double comm_norm, double h_s_norm, const SamplerBudget& budget,
                              std::optional<double> due0, bool escalate) {
    auto rebuild = [&](double due, const std::string& note) {
        CheckResult r =
            make_result("entanglement_tradeoff", BoundKind::lower, due * delta_e, comm_norm / 8.0);
        const double thr =
            (comm_norm > 0.0 && h_s_norm > 0.0) ? comm_norm / (16.0 * h_s_norm) : 0.0;
        apply_regime(r, due, thr, due <= thr);
        r.estimator_note = note;
        if (comm_norm == 0.0) append_note(r.estimator_note, "commutator vanishes, bound trivial");
        return r;
    };
    double due = due0 ? *due0 : delta_Ue(ch, u_target, budget);
    std::string note = "delta_ue is a lower-bound estimate";
    CheckResult r = rebuild(due, note);
    if (!escalate) return r;
    SamplerBudget b = budget;
    for (int round = 1; round <= 2 && r.regime_met && !r.satisfied; ++round) {
        b.samples *= 4;
        const double old_value = due;
        due = delta_Ue(ch, u_target, b);
        append_note(note, escalation_note(round, old_value, due));
        r = rebuild(due, note);
    }
    return r;
}

}  // namespace

CheckResult check_entanglement_variant(const ModelMetrics& m) {
    if (!m.conserving) {
        CheckResult r = entanglement_core(m.channel, m.spec.u_target, m.delta_e, m.comm_norm,
                                          m.h_s_norm, m.budget, m.due, false);
        mark_not_applicable(r,
                            "conservation gate failed (chi = " + std::to_string(m.chi_value) + ")");
        return r;
    }
    return entanglement_core(m.channel, m.spec.u_target, m.delta_e, m.comm_norm, m.h_s_norm,
                             m.budget, m.due, true);
}

CheckResult check_entanglement_variant(const QuantumChannel& ch, const CMat& u_target,
                                       double delta_e, double comm_norm, double h_s_norm,
                                       const SamplerBudget& budget) {
    return entanglement_core(ch, u_target, delta_e, comm_norm, h_s_norm, budget, std::nullopt,
                             true);
}

CheckResult check_covariance_fact(const CMat& a, const CMat& u, const CMat& rho) {
    require_hermitian(a, "check_covariance_fact: observable");
    require_unitary(u, "check_covariance_fact: u");
    if (a.rows() != u.rows() || a.rows() != rho.rows())
        throw DimMismatch("check_covariance_fact: dimension mismatch");
    const double x = commutator_norm(a, u);
    const double var_a = variance_raw(rho, a);
    const CMat rotated = u.adjoint() * a * u;
    const double var_rot = variance_raw(rho, rotated);
    return make_result("covariance_fact", BoundKind::upper, std::abs(var_a - var_rot),
                       x * (2.0 * std::sqrt(var_a) + x));
}

std::vector<CheckResult> run_all_checks(const ModelMetrics& m) {
    std::vector<CheckResult> out;
    out.push_back(check_tradeoff1(m));
    out.push_back(check_tradeoff2(m));
    auto [g1, g2] = check_generalized(m);
    out.push_back(std::move(g1));
    out.push_back(std::move(g2));
    out.push_back(check_lemma2(m));
    for (CheckResult& r : check_middle_and_s1s2(m)) out.push_back(std::move(r));
    out.push_back(check_entanglement_variant(m));

    const Eigen::Index ds = m.spec.h_s.rows();
    const Eigen::Index de = m.spec.impl.dim_e;
    const CMat a_total = kron(m.spec.h_s, CMat::Identity(de, de)) +
                         kron(CMat::Identity(ds, ds), m.spec.impl.h_e);
    const CMat joint_max = kron(m.gap.inputs.rho_max.projector(), m.spec.impl.sigma_e.matrix());
    out.push_back(check_covariance_fact(a_total, m.u_total, joint_max));
    out.push_back(check_lemma1(m.gap.sigma_out_max, m.gap.sigma_out_min, m.spec.impl.h_e));
    return out;
}

ModelSpec random_model(SeedStream stream, const RandomModelOptions& opt) {
    if (opt.dim_s_min < 2 || opt.dim_e_min < 2 || opt.dim_s_max < opt.dim_s_min ||
        opt.dim_e_max < opt.dim_e_min)
        throw ValidationError("random_model: bad dimension ranges");
    const Eigen::Index ds =
        opt.dim_s_min + static_cast<Eigen::Index>(stream.next_u64() %
                                                  (opt.dim_s_max - opt.dim_s_min + 1));
    const Eigen::Index de =
        opt.dim_e_min + static_cast<Eigen::Index>(stream.next_u64() %
                                                  (opt.dim_e_max - opt.dim_e_min + 1));
    // Integer level ladders on a shared scale: sums of system and bath levels
    // collide, so the pinched interaction has nontrivial exchange blocks.
    const double g = 0.5 + stream.uniform();
    const CMat vs = random_unitary(ds, stream.child(101));
    const CMat ve = random_unitary(de, stream.child(102));
    RVec lev_s(ds), lev_e(de);
    for (Eigen::Index i = 0; i < ds; ++i) lev_s[i] = g * static_cast<double>(i);
    for (Eigen::Index j = 0; j < de; ++j) lev_e[j] = g * static_cast<double>(j);
    CMat h_s = vs * lev_s.asDiagonal() * vs.adjoint();
    h_s = 0.5 * (h_s + h_s.adjoint());
    CMat h_e = ve * lev_e.asDiagonal() * ve.adjoint();
    h_e = 0.5 * (h_e + h_e.adjoint());

    const CMat raw = random_hermitian(ds * de, stream.child(103));
    const CMat basis = kron(vs, ve);
    const CMat rotated = basis.adjoint() * raw * basis;
    CMat pinched = rotated;
    for (Eigen::Index i = 0; i < ds; ++i)
        for (Eigen::Index j = 0; j < de; ++j)
            for (Eigen::Index ip = 0; ip < ds; ++ip)
                for (Eigen::Index jp = 0; jp < de; ++jp)
                    if (i + j != ip + jp) pinched(i * de + j, ip * de + jp) = 0.0;
    CMat blocks = pinched;
    if (!opt.conserving) {
        // Near-conserving with a small symmetry-breaking remainder: chi stays
        // well below the commutator norm, so the widened bounds stay
        // informative instead of all going vacuous.
        const double eta = 0.02 + 0.18 * stream.uniform();
        blocks += eta * (rotated - pinched);
    }
    CMat interaction = basis * blocks * basis.adjoint();
    interaction = 0.5 * (interaction + interaction.adjoint());
    const double inorm = spectral_norm(interaction);
    // Log-uniform coupling: the decades below ~1e-2 are where the gate-error
    // regimes of the distance bounds actually open up.
    const double coupling = opt.coupling_min * std::exp(std::log(opt.coupling_max /
                                                                 opt.coupling_min) *
                                                        stream.uniform());
    if (inorm > 1e-12) interaction *= coupling / inorm;

    const bool mixed_bath = (stream.next_u64() & 1) != 0;
    DensityMatrix sigma = mixed_bath
                              ? random_density_matrix(de, stream.child(104))
                              : DensityMatrix::pure(random_pure_state(de, stream.child(104)));
    const double tau = 0.3 + 1.2 * stream.uniform();
    ImplementationSet impl{de, std::move(h_e), std::move(sigma), std::move(interaction), tau, 0.0};

    // Target: polar unitary of the channel's dominant Kraus operator. Close
    // to what the dynamics implements, but not fitted any further.
    const QuantumChannel ch = induced_channel(h_s, impl);
    double best_norm = -1.0;
    Eigen::Index best = 0;
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(ch.kraus.size()); ++i) {
        const double n = ch.kraus[i].norm();
        if (n > best_norm) {
            best_norm = n;
            best = i;
        }
    }
    Eigen::JacobiSVD<CMat> svd(ch.kraus[best], Eigen::ComputeFullU | Eigen::ComputeFullV);
    CMat u_target = svd.matrixU() * svd.matrixV().adjoint();
    return ModelSpec{"generic", std::move(h_s), std::move(impl), std::move(u_target),
                     std::nullopt};
}

CheckResult lemma1_trial(std::uint64_t trial_seed, Eigen::Index dim_max) {
    if (dim_max < 2) throw ValidationError("lemma1_trial: dim_max must be >= 2");
    SeedStream s(trial_seed);
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(s.next_u64() %
                                                           static_cast<std::uint64_t>(dim_max - 1));
    const int shape = static_cast<int>(s.next_u64() % 3);  // (mixed,mixed),(pure,mixed),(pure,pure)
    auto state = [&](int which, bool pure) {
        return pure ? random_pure_state(dim, s.child(which)).projector()
                    : random_density_matrix(dim, s.child(which)).matrix();
    };
    const CMat s1 = state(0, shape >= 1);
    const CMat s2 = state(1, shape == 2);
    const double scale = 0.5 + 2.5 * s.uniform();
    const CMat a = scale * random_hermitian(dim, s.child(2));
    return check_lemma1(s1, s2, a);
}

CheckResult unify_trial(std::uint64_t trial_seed) {
    SeedStream s(trial_seed);
    constexpr Eigen::Index dims[4][2] = {{2, 2}, {2, 3}, {2, 4}, {3, 3}};
    const std::uint64_t pick = s.next_u64() % 4;
    const Eigen::Index a = dims[pick][0];
    const Eigen::Index b = dims[pick][1];
    const bool swap_joint = (s.next_u64() % 7 == 3) && a == b;
    return check_theorem_unify(a, b, s.state(), swap_joint);
}

CheckResult covariance_trial(std::uint64_t trial_seed, Eigen::Index dim_max) {
    if (dim_max < 2) throw ValidationError("covariance_trial: dim_max must be >= 2");
    SeedStream s(trial_seed);
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(s.next_u64() %
                                                           static_cast<std::uint64_t>(dim_max - 1));
    const bool haar_u = (s.next_u64() % 2) == 0;
    const bool pure_rho = (s.next_u64() % 3) == 0;
    const double scale = 0.5 + 2.5 * s.uniform();
    const CMat a = scale * random_hermitian(dim, s.child(0));
    const CMat u = haar_u ? random_unitary(dim, s.child(1))
                          : mat_exp_herm(random_hermitian(dim, s.child(1)), 0.7);
    const CMat rho = pure_rho ? random_pure_state(dim, s.child(2)).projector()
                              : random_density_matrix(dim, s.child(2)).matrix();
    return check_covariance_fact(a, u, rho);
}

std::pair<CheckResult, CheckResult> delta_eq_trial(std::uint64_t trial_seed) {
    SeedStream s(trial_seed);
    const Eigen::Index dim = 2 + static_cast<Eigen::Index>(s.next_u64() % 3);
    const Eigen::Index rank =
        std::min<Eigen::Index>(dim, 2 + static_cast<Eigen::Index>(s.next_u64() % 2));
    SeedStream gs = s.child(0);
    const CMat g = gaussian_cmat(dim, rank, gs);
    CMat sig = g * g.adjoint();
    sig /= sig.trace().real();
    const DensityMatrix sigma(sig);
    const double scale = 0.5 + 2.5 * s.uniform();
    const CMat h = scale * random_hermitian(dim, s.child(1));
    const double closed = delta_EQ(sigma, h);
    double oracle = delta_EQ_oracle(sigma, h, 0, s.child(2).state(), 64);
    bool escalated = false;
    if (std::abs(closed - oracle) > 1e-4 * closed) {
        // The search is stochastic; on disagreement spend a bigger budget
        // before declaring a violation. The lower result is the tighter
        // decomposition, so taking the min never hides a true gap.
        oracle = std::min(oracle, delta_EQ_oracle(sigma, h, 0, s.child(3).state(), 256));
        escalated = true;
    }
    CheckResult agree = make_result("delta_eq_agreement", BoundKind::upper,
                                    std::abs(closed - oracle), 1e-4 * closed);
    CheckResult above =
        make_result("delta_eq_oracle_not_below", BoundKind::lower, oracle, closed - 1e-6);
    if (escalated) append_note(agree.estimator_note, "search escalated to 256 starts");
    return {std::move(agree), std::move(above)};
}

std::vector<CheckResult> model_trial(std::uint64_t trial_seed, bool conserving,
                                     const SamplerBudget& base_budget) {
    SeedStream s(trial_seed);
    RandomModelOptions opt;
    opt.conserving = conserving;
    const ModelSpec spec = random_model(s, opt);
    SamplerBudget budget = base_budget;
    budget.seed = s.child(999).state();
    const ModelMetrics m = compute_metrics(spec, budget, false);
    std::vector<CheckResult> out;
    out.push_back(check_tradeoff1(m));
    out.push_back(check_tradeoff2(m));
    auto [g1, g2] = check_generalized(m);
    out.push_back(std::move(g1));
    out.push_back(std::move(g2));
    out.push_back(check_lemma2(m));
    for (CheckResult& r : check_middle_and_s1s2(m)) out.push_back(std::move(r));
    return out;
}

CheckResult entanglement_trial(std::uint64_t trial_seed, const SamplerBudget& base_budget) {
    SeedStream s(trial_seed);
    RandomModelOptions opt;
    opt.conserving = true;
    opt.dim_e_max = 5;
    const ModelSpec spec = random_model(s, opt);
    SamplerBudget budget = base_budget;
    budget.seed = s.child(999).state();
    const ModelMetrics m = compute_metrics(spec, budget, true);
    return check_entanglement_variant(m);
}

CheckResult entanglement_designed_trial(std::uint64_t trial_seed,
                                        const SamplerBudget& base_budget) {
    SeedStream s(trial_seed);
    JCParams p;
    p.epsilon = 5.0 + 10.0 * s.uniform();
    // The error scales as ~1.29/alpha against a fixed threshold of 1/16, so
    // amplitudes past ~20.6 sit inside the regime with a real margin.
    p.alpha = 21.0 + 1.5 * s.uniform();
    p.tau = 1.0;
    p.lambda = std::numbers::pi / (2.0 * p.alpha * p.tau);
    const ModelSpec spec = make_jc_spec(p);
    SamplerBudget budget = base_budget;
    budget.seed = s.child(999).state();
    // The ladder interaction commutes with the bare energy by construction,
    // so the expensive full-metrics route (two extra diagonalizations of the
    // composite just to certify chi = 0) is skipped.
    const QuantumChannel ch = induced_channel(spec.h_s, spec.impl);
    return check_entanglement_variant(ch, spec.u_target, delta_E(spec.impl.sigma_e, spec.impl.h_e),
                                      commutator_norm(spec.h_s, spec.u_target),
                                      spectral_norm(spec.h_s), budget);
}

SuiteReport run_lemma1_suite(int trials, Eigen::Index dim_max, std::uint64_t seed, bool negate) {
    SuiteReport rep;
    rep.name = "lemma1";
    rep.trials = trials;
    const SeedStream root(seed);
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = root.child(t).state();
        CheckResult r = lemma1_trial(trial_seed, dim_max);
        if (negate) {
            r.satisfied = !r.satisfied;
            r.status = r.satisfied ? CheckStatus::satisfied : CheckStatus::violated;
            append_note(r.estimator_note, "verdict negated for self-test");
        }
        rep.tally(r, trial_seed);
    }
    return rep;
}

SuiteReport run_unify_suite(int trials, std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "theorem_unify";
    rep.trials = trials;
    const SeedStream root(seed);
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = root.child(t).state();
        rep.tally(unify_trial(trial_seed), trial_seed);
    }
    return rep;
}

SuiteReport run_covariance_suite(int trials, Eigen::Index dim_max, std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "covariance_fact";
    rep.trials = trials;
    const SeedStream root(seed);
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = root.child(t).state();
        rep.tally(covariance_trial(trial_seed, dim_max), trial_seed);
    }
    return rep;
}

SuiteReport run_model_suite(int trials, std::uint64_t seed, bool conserving,
                            const SamplerBudget& base_budget) {
    SuiteReport rep;
    rep.name = conserving ? "models_conserving" : "models_nonconserving";
    rep.trials = trials;
    const SeedStream root(seed);
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = root.child(t).state();
        for (const CheckResult& r : model_trial(trial_seed, conserving, base_budget))
            rep.tally(r, trial_seed);
    }
    return rep;
}

SuiteReport run_delta_eq_suite(int trials, std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "delta_eq_agreement";
    rep.trials = trials;
    const SeedStream root(seed);
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = root.child(t).state();
        const auto [agree, above] = delta_eq_trial(trial_seed);
        rep.tally(agree, trial_seed);
        rep.tally(above, trial_seed);
    }
    return rep;
}

SuiteReport run_entanglement_suite(int trials, std::uint64_t seed,
                                   const SamplerBudget& base_budget) {
    SuiteReport rep;
    rep.name = "entanglement_tradeoff";
    rep.trials = trials;
    const SeedStream root(seed);
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = root.child(t).state();
        rep.tally(entanglement_trial(trial_seed, base_budget), trial_seed);
    }
    return rep;
}

SuiteReport run_entanglement_designed_suite(int trials, std::uint64_t seed,
                                            const SamplerBudget& base_budget) {
    SuiteReport rep;
    rep.name = "entanglement_designed";
    rep.trials = trials;
    const SeedStream root(seed);
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = root.child(t).state();
        rep.tally(entanglement_designed_trial(trial_seed, base_budget), trial_seed);
    }
    return rep;
}

}  // namespace uimpl
