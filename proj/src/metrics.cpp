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

#include "uimpl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>
#include <vector>

namespace uimpl {

namespace {

constexpr double kPi = std::numbers::pi;

int normalized_threads(int threads) { return threads > 1 ? threads : 1; }

std::vector<std::pair<long, long>> split_range(long n, int parts) {
    std::vector<std::pair<long, long>> out;
    const long base = n / parts;
    const long extra = n % parts;
    long begin = 0;
    for (int t = 0; t < parts; ++t) {
        const long len = base + (t < extra ? 1 : 0);
        out.emplace_back(begin, begin + len);
        begin += len;
    }
    return out;
}

// Winner of a candidate scan. Ties in value resolve to the lower index, so
// the result does not depend on evaluation order or thread count.
struct BestCandidate {
    double value = -1.0;
    long index = std::numeric_limits<long>::max();
};

bool improves(const BestCandidate& best, double value, long index) {
    return value > best.value || (value == best.value && index < best.index);
}

}  // namespace

double delta_E(const DensityMatrix& sigma_e, const CMat& h_e) {
    require_hermitian(h_e, "delta_E: h_e");
    if (h_e.rows() != sigma_e.dim()) throw DimMismatch("delta_E: dimension mismatch");
    return std::sqrt(variance_raw(sigma_e.matrix(), h_e));
}

namespace {

// Objective for the worst-case gate error: L_B between the channel output
// and the rotated input, evaluated through the superoperator. The target
// output is pure, so the fidelity collapses to sqrt(<psi'|Lambda(rho)|psi'>).
struct GateErrorObjective {
    const CMat& superop;
    const CMat& u_s;
    Eigen::Index d;
    CVec vec_rho, vec_out, psi_t;

    GateErrorObjective(const CMat& superop_, const CMat& u_s_)
        : superop(superop_), u_s(u_s_), d(u_s_.rows()), vec_rho(d * d), vec_out(d * d), psi_t(d) {}

    double operator()(const CVec& psi) {
        for (Eigen::Index b = 0; b < d; ++b)
            for (Eigen::Index a = 0; a < d; ++a) vec_rho[a + b * d] = psi[a] * std::conj(psi[b]);
        vec_out.noalias() = superop * vec_rho;
        psi_t.noalias() = u_s * psi;
        Cplx acc(0.0, 0.0);
        for (Eigen::Index b = 0; b < d; ++b)
            for (Eigen::Index a = 0; a < d; ++a)
                acc += std::conj(psi_t[a]) * vec_out[a + b * d] * psi_t[b];
        const double f = std::min(1.0, std::sqrt(std::max(0.0, acc.real())));
        return std::sqrt(1.0 - f);
    }
};

CVec gate_error_candidate(long idx, long grid_n, Eigen::Index d, const SamplerBudget& budget,
                          const SeedStream& root) {
    if (idx < grid_n) {
        const long it = idx / budget.bloch_phi;
        const long ip = idx % budget.bloch_phi;
        // Midpoint latitudes avoid duplicating the poles across phi.
        const double theta = kPi * (static_cast<double>(it) + 0.5) / budget.bloch_theta;
        const double phi = 2.0 * kPi * static_cast<double>(ip) / budget.bloch_phi;
        CVec v(2);
        v[0] = std::cos(0.5 * theta);
        v[1] = std::polar(std::sin(0.5 * theta), phi);
        return v;
    }
    return random_pure_state(d, root.child(static_cast<std::uint64_t>(idx - grid_n))).amplitudes();
}

// Greedy coordinate ascent on the unit sphere; only strictly improving moves
// are taken, so the refined value can never fall below the start.
template <typename Objective>
double refine_state(CVec& psi, double start_value, Objective& objective,
                    const SamplerBudget& budget) {
    double best = start_value;
    const Eigen::Index d = psi.size();
    CVec trial = psi;
    double step = budget.refine_step;
    for (int sweep = 0; sweep < budget.refine_sweeps; ++sweep, step *= budget.refine_decay) {
        bool improved = false;
        for (Eigen::Index c = 0; c < 2 * d; ++c) {
            for (int dir = 0; dir < 2; ++dir) {
                trial = psi;
                const double amount = (dir == 0) ? step : -step;
                trial[c / 2] += (c % 2 == 0) ? Cplx(amount, 0.0) : Cplx(0.0, amount);
                trial.normalize();
                const double v = objective(trial);
                if (v > best) {
                    best = v;
                    psi = trial;
                    improved = true;
                }
            }
        }
        if (!improved && step < 1e-4) break;
    }
    return best;
}

}  // namespace

DeltaUEstimate delta_U(const QuantumChannel& ch, const CMat& u_s, const SamplerBudget& budget) {
    if (budget.samples <= 0) throw BudgetZero("delta_U: sample budget must be positive");
    require_unitary(u_s, "delta_U: u_s");
    if (ch.dim_in != ch.dim_out || u_s.rows() != ch.dim_in)
        throw DimMismatch("delta_U: channel and target dimensions must agree");
    const Eigen::Index d = ch.dim_in;
    const CMat superop = channel_superoperator(ch);
    const SeedStream root(budget.seed);

    const long grid_n =
        (d == 2) ? static_cast<long>(budget.bloch_theta) * budget.bloch_phi : 0;
    const long total = grid_n + budget.samples;

    const int threads = normalized_threads(budget.threads);
    std::vector<BestCandidate> winners(threads);
    auto scan = [&](long begin, long end, BestCandidate& best) {
        GateErrorObjective objective(superop, u_s);
        for (long idx = begin; idx < end; ++idx) {
            const CVec psi = gate_error_candidate(idx, grid_n, d, budget, root);
            const double v = objective(psi);
            if (improves(best, v, idx)) best = BestCandidate{v, idx};
        }
    };
    if (threads == 1) {
        scan(0, total, winners[0]);
    } else {
        const auto chunks = split_range(total, threads);
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(scan, chunks[t].first, chunks[t].second, std::ref(winners[t]));
        for (auto& th : pool) th.join();
    }
    BestCandidate best;
    for (const BestCandidate& w : winners)
        if (w.index != std::numeric_limits<long>::max() && improves(best, w.value, w.index))
            best = w;

    // The winner is refined single-threaded so the report is identical for
    // every thread count.
    CVec psi = gate_error_candidate(best.index, grid_n, d, budget, root);
    GateErrorObjective objective(superop, u_s);
    double lb = best.value;
    const bool refined = budget.refine_sweeps > 0;
    if (refined) lb = refine_state(psi, lb, objective, budget);
    return DeltaUEstimate{std::sqrt(std::clamp(lb, 0.0, 1.0)), PureState::normalized(psi), total,
                          refined};
}

double commutator_norm(const CMat& h_s, const CMat& u_s) {
    require_hermitian(h_s, "commutator_norm: h_s");
    require_unitary(u_s, "commutator_norm: u_s");
    if (h_s.rows() != u_s.rows()) throw DimMismatch("commutator_norm: dimension mismatch");
    // ||[H, U]|| = ||H - U^dag H U|| because U is unitary.
    return spectral_norm(h_s - u_s.adjoint() * h_s * u_s);
}

ExtremalPair extremal_states(const CMat& h_s, const CMat& u_s) {
    require_hermitian(h_s, "extremal_states: h_s");
    require_unitary(u_s, "extremal_states: u_s");
    if (h_s.rows() != u_s.rows()) throw DimMismatch("extremal_states: dimension mismatch");
    const CMat d = h_s - u_s.adjoint() * h_s * u_s;
    const HermitianEig eig = herm_eig(d);
    const Eigen::Index n = eig.eigenvalues.size();
    std::string note;
    const double scale = std::max(1.0, eig.eigenvalues.cwiseAbs().maxCoeff());
    if (n >= 2) {
        if (eig.eigenvalues[n - 1] - eig.eigenvalues[n - 2] <= 1e-12 * scale)
            note += "max gain degenerate, lowest-index eigenvector chosen; ";
        if (eig.eigenvalues[1] - eig.eigenvalues[0] <= 1e-12 * scale)
            note += "min gain degenerate, lowest-index eigenvector chosen; ";
    }
    return ExtremalPair{PureState::normalized(eig.eigenvectors.col(n - 1)),
                        PureState::normalized(eig.eigenvectors.col(0)), eig.eigenvalues[n - 1],
                        eig.eigenvalues[0], std::move(note)};
}

double delta_EQ(const DensityMatrix& sigma_e, const CMat& h_e) {
    require_hermitian(h_e, "delta_EQ: h_e");
    if (h_e.rows() != sigma_e.dim()) throw DimMismatch("delta_EQ: dimension mismatch");
    const HermitianEig eig = herm_eig(sigma_e.matrix());
    const CMat m = eig.eigenvectors.adjoint() * h_e * eig.eigenvectors;
    const Eigen::Index n = eig.eigenvalues.size();
    double acc = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double lk = std::max(0.0, eig.eigenvalues[k]);
        for (Eigen::Index l = k + 1; l < n; ++l) {
            const double ll = std::max(0.0, eig.eigenvalues[l]);
            const double sum = lk + ll;
            if (sum <= tol::qfi_pair_cutoff) continue;
            const double diff = lk - ll;
            acc += (diff * diff / sum) * std::norm(m(k, l));
        }
    }
    return std::sqrt(std::max(0.0, acc));
}

namespace {

// Decomposition-search state: W is an (m x r) isometry over the support of
// sigma; row j encodes the j-th ensemble member. With B = sqrt(L) Atil
// sqrt(L) and D = diag(L) the ensemble average of squared means is
// sum_j (w_j^dag B w_j)^2 / (w_j^dag D w_j), to be maximized.
struct DecompositionSearch {
    CMat b;
    RVec lam;
    double trace_a2;

    double mean_square_sum(const CMat& w) const {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < w.rows(); ++j) {
            double p = 0.0;
            for (Eigen::Index a = 0; a < w.cols(); ++a) p += std::norm(w(j, a)) * lam[a];
            if (p < 1e-14) continue;
            Cplx mean(0.0, 0.0);
            for (Eigen::Index a = 0; a < w.cols(); ++a)
                for (Eigen::Index c = 0; c < w.cols(); ++c)
                    mean += std::conj(w(j, a)) * b(a, c) * w(j, c);
            acc += mean.real() * mean.real() / p;
        }
        return acc;
    }

    // d/dW* of mean_square_sum, rows treated independently (the isometry
    // constraint is restored by the caller's re-orthonormalization).
    CMat euclidean_gradient(const CMat& w) const {
        CMat grad = CMat::Zero(w.rows(), w.cols());
        for (Eigen::Index j = 0; j < w.rows(); ++j) {
            double p = 0.0;
            for (Eigen::Index a = 0; a < w.cols(); ++a) p += std::norm(w(j, a)) * lam[a];
            if (p < 1e-14) continue;
            const CVec u = w.row(j).transpose();
            const CVec bu = b * u;
            const double mean = u.dot(bu).real();
            for (Eigen::Index a = 0; a < w.cols(); ++a)
                grad(j, a) =
                    2.0 * (mean / p) * bu(a) - (mean * mean / (p * p)) * lam[a] * u(a);
        }
        return grad;
    }
};

CMat thin_orthonormalize(const CMat& w) {
    Eigen::HouseholderQR<CMat> qr(w);
    return qr.householderQ() * CMat::Identity(w.rows(), w.cols());
}

}  // namespace

double delta_EQ_oracle(const DensityMatrix& sigma_e, const CMat& h_e, int ensemble_size,
                       std::uint64_t seed, int starts) {
    require_hermitian(h_e, "delta_EQ_oracle: h_e");
    if (h_e.rows() != sigma_e.dim()) throw DimMismatch("delta_EQ_oracle: dimension mismatch");
    if (sigma_e.dim() > 6)
        throw ScaleTooLarge("delta_EQ_oracle: dimension capped at 6; use the closed form");
    const HermitianEig eig = herm_eig(sigma_e.matrix());
    std::vector<Eigen::Index> support;
    for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k)
        if (eig.eigenvalues[k] > tol::kraus_drop) support.push_back(k);
    const Eigen::Index r = static_cast<Eigen::Index>(support.size());
    if (r > 4) throw ScaleTooLarge("delta_EQ_oracle: rank capped at 4; use the closed form");
    if (r == 0) throw NotPSD("delta_EQ_oracle: state has no support");
    if (ensemble_size > 0 && ensemble_size < r)
        throw ValidationError("delta_EQ_oracle: ensemble_size below the state rank");

    CMat v(sigma_e.dim(), r);
    RVec lam(r);
    for (Eigen::Index a = 0; a < r; ++a) {
        v.col(a) = eig.eigenvectors.col(support[a]);
        lam[a] = eig.eigenvalues[support[a]];
    }
    const CMat atil = v.adjoint() * h_e * v;
    const CMat a2til = v.adjoint() * (h_e * h_e) * v;
    const RVec root = lam.cwiseSqrt();
    DecompositionSearch search;
    search.b = root.asDiagonal() * atil * root.asDiagonal();
    search.lam = lam;
    search.trace_a2 = 0.0;
    for (Eigen::Index a = 0; a < r; ++a) search.trace_a2 += lam[a] * a2til(a, a).real();

    // Every isometry is a valid decomposition, so the best value over any set
    // of searches still upper-bounds the minimum. Larger ensembles make the
    // landscape harder, not better; sizes r..r+2 searched independently,
    // chained through a lifted warm start, beat a single large one in
    // practice.
    const HermitianEig eig_atil = herm_eig(atil);
    const HermitianEig eig_b = herm_eig(search.b);
    const CMat whitened = root.cwiseInverse().asDiagonal() * eig_atil.eigenvectors;

    auto run_search = [&](Eigen::Index m, SeedStream rng, const CMat* warm) {
        auto ascend = [&](CMat& w, double& g, int iters) {
            double eta = 0.05;
            for (int it = 0; it < iters && eta > 1e-13; ++it) {
                const CMat grad = search.euclidean_gradient(w);
                const CMat trial = thin_orthonormalize(w + eta * grad);
                const double gt = search.mean_square_sum(trial);
                if (gt > g) {
                    g = gt;
                    w = trial;
                    eta *= 1.3;
                } else {
                    eta *= 0.5;
                }
            }
        };

        struct Ranked {
            double g;
            CMat w;
        };
        std::vector<Ranked> ranked;
        // Coarse phase: random restarts with shrinking random proposals.
        for (int s = 0; s < starts; ++s) {
            SeedStream local = rng.child(s);
            CMat w = thin_orthonormalize(gaussian_cmat(m, r, local));
            double g = search.mean_square_sum(w);
            for (int it = 0; it < 150; ++it) {
                const double step = 0.5 * std::pow(0.85, it / 10);
                const CMat trial = thin_orthonormalize(w + step * gaussian_cmat(m, r, local));
                const double gt = search.mean_square_sum(trial);
                if (gt > g) {
                    g = gt;
                    w = trial;
                }
            }
            ranked.push_back(Ranked{g, std::move(w)});
        }
        // Structured starts: eigenbases of the weighted operators sit near the
        // stationary points the random walk rarely reaches, and the warm start
        // lifts the previous ensemble size's champion with fresh rows.
        SeedStream pad_rng = rng.child(0x706164);
        auto add_candidate = [&](const CMat& rows) {
            CMat w0 = 0.02 * gaussian_cmat(m, r, pad_rng);
            w0.topRows(std::min(rows.rows(), m)) = rows.topRows(std::min(rows.rows(), m));
            w0 = thin_orthonormalize(w0);
            ranked.push_back(Ranked{search.mean_square_sum(w0), std::move(w0)});
        };
        add_candidate(CMat::Identity(r, r));
        add_candidate(eig_atil.eigenvectors.transpose());
        add_candidate(eig_atil.eigenvectors.adjoint());
        add_candidate(eig_b.eigenvectors.transpose());
        add_candidate(eig_b.eigenvectors.adjoint());
        add_candidate(thin_orthonormalize(whitened).transpose());
        if (warm != nullptr && warm->rows() <= m) add_candidate(*warm);

        std::stable_sort(ranked.begin(), ranked.end(),
                         [](const Ranked& a, const Ranked& b) { return a.g > b.g; });

        // Fine phase: deterministic coordinate descent with
        // re-orthonormalization after every move, then projected gradient
        // ascent with an adaptive step. The top candidates get both passes;
        // the rest get the cheap gradient pass only.
        double g_best = ranked.front().g;
        CMat w_best = ranked.front().w;
        for (std::size_t f = 0; f < ranked.size(); ++f) {
            CMat w = ranked[f].w;
            double g = ranked[f].g;
            if (f < 10) {
                double step = 0.2;
                for (int sweep = 0; sweep < 14; ++sweep, step *= 0.5) {
                    for (Eigen::Index col = 0; col < r; ++col)
                        for (Eigen::Index row = 0; row < m; ++row)
                            for (int part = 0; part < 2; ++part)
                                for (int dir = 0; dir < 2; ++dir) {
                                    CMat trial = w;
                                    const double amount = (dir == 0) ? step : -step;
                                    trial(row, col) +=
                                        (part == 0) ? Cplx(amount, 0.0) : Cplx(0.0, amount);
                                    trial = thin_orthonormalize(trial);
                                    const double gt = search.mean_square_sum(trial);
                                    if (gt > g) {
                                        g = gt;
                                        w = std::move(trial);
                                    }
                                }
                }
            }
            ascend(w, g, 400);
            if (g > g_best) {
                g_best = g;
                w_best = std::move(w);
            }
        }

        // Basin hopping from the champion: kick the whole matrix or a single
        // row, re-orthonormalize, re-ascend. Single-row kicks swap out one
        // ensemble member at a time and cross ridges the full kick cannot.
        SeedStream hop_rng = rng.child(0x686f70);
        for (int hop = 0; hop < 48; ++hop) {
            CMat w = w_best;
            if (hop % 2 == 0) {
                const double kick = (hop % 6 < 2) ? 0.4 : (hop % 6 < 4) ? 0.15 : 0.05;
                w += kick * gaussian_cmat(m, r, hop_rng);
            } else {
                w.row((hop / 2) % m) += 0.8 * gaussian_cmat(1, r, hop_rng).row(0);
            }
            w = thin_orthonormalize(w);
            double g = search.mean_square_sum(w);
            ascend(w, g, 300);
            if (g > g_best) {
                g_best = g;
                w_best = std::move(w);
            }
        }
        return std::make_pair(g_best, std::move(w_best));
    };

    SeedStream rng(seed);
    double g_best = 0.0;
    if (ensemble_size > 0) {
        g_best = run_search(ensemble_size, rng, nullptr).first;
    } else {
        CMat champion;
        for (Eigen::Index m = r; m <= r + 2; ++m) {
            auto [g, w] = run_search(m, rng.child(static_cast<std::uint64_t>(m)),
                                     champion.rows() > 0 ? &champion : nullptr);
            if (g > g_best) {
                g_best = g;
                champion = std::move(w);
            }
        }
    }
    return std::sqrt(std::max(0.0, search.trace_a2 - g_best));
}

double chi(const CMat& h_s, const CMat& h_e, const CMat& u_total) {
    require_hermitian(h_s, "chi: h_s");
    require_hermitian(h_e, "chi: h_e");
    require_unitary(u_total, "chi: u_total");
    const Eigen::Index ds = h_s.rows();
    const Eigen::Index de = h_e.rows();
    if (u_total.rows() != ds * de) throw DimMismatch("chi: propagator dimension mismatch");
    const CMat a = kron(h_s, CMat::Identity(de, de)) + kron(CMat::Identity(ds, ds), h_e);
    return spectral_norm(a - u_total.adjoint() * a * u_total);
}

EnergyShiftGap energy_shift_gap(const CMat& h_s, const ImplementationSet& impl, const CMat& u_s,
                                const CMat* u_total) {
    validate_implementation(h_s, impl);
    require_unitary(u_s, "energy_shift_gap: u_s");
    ExtremalPair extremal = extremal_states(h_s, u_s);
    CMat u;
    if (u_total == nullptr) {
        u = mat_exp_herm(composite_hamiltonian(h_s, impl), impl.tau);
    } else {
        u = *u_total;
    }
    const Eigen::Index ds = h_s.rows();
    auto evolve_bath = [&](const PureState& psi) {
        const CMat joint = kron(psi.projector(), impl.sigma_e.matrix());
        const CMat evolved = u * joint * u.adjoint();
        return partial_trace(evolved, ds, impl.dim_e, Keep::E);
    };
    CMat out_max = evolve_bath(extremal.rho_max);
    CMat out_min = evolve_bath(extremal.rho_min);
    const double delta = std::abs(((out_max - out_min) * impl.h_e).trace().real());
    const double spread_max = std::sqrt(variance_raw(out_max, impl.h_e));
    const double spread_min = std::sqrt(variance_raw(out_min, impl.h_e));
    return EnergyShiftGap{delta, std::max(spread_max, spread_min), std::move(out_max),
                          std::move(out_min), std::move(extremal)};
}

double entanglement_fidelity(const QuantumChannel& ch, const CMat& u_s, const CMat& rho) {
    require_unitary(u_s, "entanglement_fidelity: u_s");
    if (ch.dim_in != ch.dim_out || u_s.rows() != ch.dim_in || rho.rows() != ch.dim_in)
        throw DimMismatch("entanglement_fidelity: dimension mismatch");
    const CMat u_adj = u_s.adjoint();
    double acc = 0.0;
    for (const CMat& k : ch.kraus) acc += std::norm((rho * (u_adj * k)).trace());
    return std::min(1.0, std::sqrt(std::max(0.0, acc)));
}

namespace {

// Entanglement-error objective: arccos F_e with F_e^2 a PSD quadratic form in
// vec(rho). Candidates are parameterized as rho = G G^dag / Tr so mixed
// interior optima are reachable by the same coordinate moves.
struct EntanglementObjective {
    const CMat& gram;
    Eigen::Index d;
    CMat rho;
    CVec vec_rho, tmp;

    EntanglementObjective(const CMat& gram_, Eigen::Index d_)
        : gram(gram_), d(d_), rho(d_, d_), vec_rho(d_ * d_), tmp(d_ * d_) {}

    double operator()(const CMat& g) {
        rho.noalias() = g * g.adjoint();
        const double tr = rho.trace().real();
        if (!(tr > 1e-300)) return 0.0;
        rho /= tr;
        for (Eigen::Index c = 0; c < d; ++c)
            for (Eigen::Index a = 0; a < d; ++a) vec_rho[a + c * d] = rho(a, c);
        tmp.noalias() = gram * vec_rho;
        const double fe2 = std::clamp(vec_rho.dot(tmp).real(), 0.0, 1.0);
        return std::acos(std::sqrt(fe2));
    }
};

CMat entanglement_candidate(long idx, long samples, Eigen::Index d, const SeedStream& root) {
    if (idx < samples) {
        CMat g = CMat::Zero(d, d);
        g.col(0) = random_pure_state(d, root.child(2 * static_cast<std::uint64_t>(idx)))
                       .amplitudes();
        return g;
    }
    if (idx < 2 * samples) {
        SeedStream s = root.child(2 * static_cast<std::uint64_t>(idx - samples) + 1);
        CMat g = gaussian_cmat(d, d, s);
        return g / g.norm();
    }
    return CMat::Identity(d, d) / std::sqrt(static_cast<double>(d));
}

}  // namespace

double delta_Ue(const QuantumChannel& ch, const CMat& u_s, const SamplerBudget& budget) {
    if (budget.samples <= 0) throw BudgetZero("delta_Ue: sample budget must be positive");
    require_unitary(u_s, "delta_Ue: u_s");
    if (ch.dim_in != ch.dim_out || u_s.rows() != ch.dim_in)
        throw DimMismatch("delta_Ue: channel and target dimensions must agree");
    const Eigen::Index d = ch.dim_in;
    const Eigen::Index d2 = d * d;

    // Tr(rho M) = t^T vec(rho) with t = vec(M^T), so F_e^2 = v^dag Gram v.
    CMat gram = CMat::Zero(d2, d2);
    const CMat u_adj = u_s.adjoint();
    for (const CMat& k : ch.kraus) {
        const CMat mt = (u_adj * k).transpose();
        CVec t(d2);
        for (Eigen::Index c = 0; c < d; ++c)
            for (Eigen::Index a = 0; a < d; ++a) t[a + c * d] = mt(a, c);
        gram.noalias() += t.conjugate() * t.transpose();
    }

    const SeedStream root(budget.seed);
    const long total = 2 * budget.samples + 1;
    const int threads = normalized_threads(budget.threads);
    std::vector<BestCandidate> winners(threads);
    auto scan = [&](long begin, long end, BestCandidate& best) {
        EntanglementObjective objective(gram, d);
        for (long idx = begin; idx < end; ++idx) {
            const double v = objective(entanglement_candidate(idx, budget.samples, d, root));
            if (improves(best, v, idx)) best = BestCandidate{v, idx};
        }
    };
    if (threads == 1) {
        scan(0, total, winners[0]);
    } else {
        const auto chunks = split_range(total, threads);
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(scan, chunks[t].first, chunks[t].second, std::ref(winners[t]));
        for (auto& th : pool) th.join();
    }
    BestCandidate best;
    for (const BestCandidate& w : winners)
        if (w.index != std::numeric_limits<long>::max() && improves(best, w.value, w.index))
            best = w;

    CMat g = entanglement_candidate(best.index, budget.samples, d, root);
    EntanglementObjective objective(gram, d);
    double value = best.value;
    double step = budget.refine_step;
    CMat trial = g;
    for (int sweep = 0; sweep < budget.refine_sweeps; ++sweep, step *= budget.refine_decay) {
        bool improved = false;
        for (Eigen::Index c = 0; c < 2 * d2; ++c) {
            for (int dir = 0; dir < 2; ++dir) {
                trial = g;
                const double amount = (dir == 0) ? step : -step;
                const Eigen::Index flat = c / 2;
                trial(flat % d, flat / d) += (c % 2 == 0) ? Cplx(amount, 0.0) : Cplx(0.0, amount);
                trial /= trial.norm();
                const double v = objective(trial);
                if (v > value) {
                    value = v;
                    g = trial;
                    improved = true;
                }
            }
        }
        if (!improved && step < 1e-4) break;
    }
    return std::clamp(value, 0.0, 0.5 * kPi);
}

}  // namespace uimpl
