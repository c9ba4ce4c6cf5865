#include "qmix/ree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace qmix {

namespace {

constexpr double kSmoothing = 1e-12;

// f(σ) = S(ρ‖σ) in bits, as a function of σ with ρ fixed; evaluated through
// the eigendecomposition of σ with +kSmoothing on the eigenvalues so the
// gradient stays finite at the boundary.
struct Objective {
    Matrix rho;
    double rho_log_term;  // Tr[ρ log2 ρ]
    bool smoothed = false;

    explicit Objective(const Matrix& r) : rho(r) {
        EigH e = eig_hermitian(rho);
        rho_log_term = 0.0;
        for (int k = 0; k < e.values.size(); ++k) {
            double lam = std::max(e.values(k), 0.0);
            if (lam > 0.0) rho_log_term += lam * std::log2(lam);
        }
    }

    double value(const Matrix& sigma) {
        EigH e = eig_hermitian(sigma);
        double s = rho_log_term;
        for (int j = 0; j < e.values.size(); ++j) {
            double lam = std::max(e.values(j), 0.0) + kSmoothing;
            if (e.values(j) < tol.support_cutoff) smoothed = true;
            Vector v = e.vectors.col(j);
            double w = std::real((v.adjoint() * rho * v)(0));
            s -= w * std::log2(lam);
        }
        return s;
    }

    // Gradient of f at σ: −U (ρ̃ ∘ Φ) U† / ln2, where ρ̃ = U†ρU and
    // Φ_{jk} = (ln λ_j − ln λ_k)/(λ_j − λ_k) is the divided difference of ln.
    Matrix gradient(const Matrix& sigma) {
        EigH e = eig_hermitian(sigma);
        const int n = static_cast<int>(sigma.rows());
        Matrix rt = e.vectors.adjoint() * rho * e.vectors;
        Matrix d(n, n);
        for (int j = 0; j < n; ++j) {
            double a = std::max(e.values(j), 0.0) + kSmoothing;
            for (int k = 0; k < n; ++k) {
                double b = std::max(e.values(k), 0.0) + kSmoothing;
                double phi = (std::abs(a - b) < 1e-14 * (a + b))
                                 ? 1.0 / (0.5 * (a + b))
                                 : (std::log(a) - std::log(b)) / (a - b);
                d(j, k) = rt(j, k) * phi;
            }
        }
        Matrix g = -(e.vectors * d * e.vectors.adjoint()) / std::numbers::ln2;
        return (g + Matrix(g.adjoint())) / 2.0;
    }
};

// Project a Hermitian matrix onto {X ⪰ 0, Tr X = 1}: eigenvalues onto the
// probability simplex.
Matrix project_density(const Matrix& m) {
    EigH e = eig_hermitian((m + Matrix(m.adjoint())) / 2.0);
    const int n = static_cast<int>(e.values.size());
    // Euclidean projection of the eigenvalue vector onto the simplex.
    std::vector<double> v(e.values.data(), e.values.data() + n);
    std::vector<double> sorted = v;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double cum = 0.0, theta = 0.0;
    int rho_idx = 0;
    for (int i = 0; i < n; ++i) {
        cum += sorted[i];
        double t = (cum - 1.0) / (i + 1);
        if (sorted[i] - t > 0) {
            rho_idx = i;
            theta = t;
        }
    }
    (void)rho_idx;
    RealVector lam(n);
    for (int i = 0; i < n; ++i) lam(i) = std::max(v[i] - theta, 0.0);
    return e.vectors * lam.asDiagonal() * e.vectors.adjoint();
}

Matrix project_psd(const Matrix& m) {
    EigH e = eig_hermitian((m + Matrix(m.adjoint())) / 2.0);
    RealVector lam = e.values.cwiseMax(0.0);
    return e.vectors * lam.asDiagonal() * e.vectors.adjoint();
}

// Dykstra alternating projections onto {PSD, Tr = 1} ∩ {PPT}: high-accuracy
// feasibility restoration for witnesses.
Matrix project_ppt_density(const Matrix& m, const std::vector<int>& dims,
                           const std::vector<int>& t_idx, int sweeps = 200) {
    Matrix x = m;
    Matrix p = Matrix::Zero(m.rows(), m.cols());
    Matrix q = Matrix::Zero(m.rows(), m.cols());
    for (int s = 0; s < sweeps; ++s) {
        Matrix y = project_density(x + p);
        p = x + p - y;
        Matrix yt = partial_transpose(Matrix(y + q), dims, t_idx);
        Matrix zt = project_psd(yt);
        Matrix z = partial_transpose(zt, dims, t_idx);
        q = y + q - z;
        if ((z - x).cwiseAbs().maxCoeff() < 1e-14 && s > 3) return z;
        x = z;
    }
    return x;
}

struct PptLpState {
    Matrix z, u;  // splitting variable (PT picture) and scaled dual
    double tau = 1.0;
    bool ready = false;
};

// min ⟨G, X⟩ over {X ⪰ 0, Tr X = 1, X^{T_B} ⪰ 0} by ADMM-style splitting:
// alternate the density-set projection (direct picture) and the PSD
// projection (partially transposed picture) with a dual correction term.
// Returns X and the final primal residual.
std::pair<Matrix, double> ppt_linear_minimize(const Matrix& g, const std::vector<int>& dims,
                                              const std::vector<int>& t_idx, PptLpState& st,
                                              int max_iter, double eps) {
    const int n = static_cast<int>(g.rows());
    if (!st.ready) {
        st.z = Matrix::Identity(n, n) / n;
        st.u = Matrix::Zero(n, n);
        st.tau = std::max(1.0, g.cwiseAbs().maxCoeff());
        st.ready = true;
    }
    Matrix x;
    double res = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Matrix target = partial_transpose(Matrix(st.z - st.u / st.tau), dims, t_idx);
        x = project_density(target - g / st.tau);
        Matrix xt = partial_transpose(x, dims, t_idx);
        Matrix z_prev = st.z;
        st.z = project_psd(xt + st.u / st.tau);
        st.u += st.tau * (xt - st.z);
        double primal = (xt - st.z).norm();
        double dual = st.tau * (st.z - z_prev).norm();
        res = primal;
        if (primal < eps && dual < eps) break;
        // Residual balancing keeps the two projection sequences in step.
        if (primal > 10.0 * dual) {
            st.tau *= 2.0;
        } else if (dual > 10.0 * primal) {
            st.tau *= 0.5;
        }
    }
    return {x, res};
}

}  // namespace

std::vector<int> bob_indices(const SubsystemSignature& sig, const std::vector<Party>& alice) {
    std::vector<int> bob;
    for (int k = 0; k < static_cast<int>(sig.size()); ++k) {
        bool is_alice = false;
        for (Party p : alice) {
            if (sig.labels[k] == p) is_alice = true;
        }
        if (!is_alice) bob.push_back(k);
    }
    if (bob.empty() || bob.size() == sig.size()) {
        throw std::invalid_argument("REE split must leave factors on both sides");
    }
    return bob;
}

bool is_ppt(const DensityMatrix& rho, const std::vector<Party>& alice) {
    std::vector<int> bob = bob_indices(rho.sig(), alice);
    Matrix pt = partial_transpose(rho.mat(), rho.sig().dims, bob);
    EigH e = eig_hermitian(pt);
    return e.values.minCoeff() >= -tol.ppt_feasibility;
}

double ree_upper_bound(const DensityMatrix& rho, const DensityMatrix& candidate,
                       const std::vector<Party>& alice) {
    if (!is_ppt(candidate, alice)) {
        throw std::invalid_argument("ree_upper_bound: candidate state is not PPT");
    }
    return relative_entropy(rho.mat(), candidate.mat());
}

ReeResult ree_from_candidate(const DensityMatrix& rho, const DensityMatrix& candidate,
                             const std::vector<Party>& alice) {
    ReeResult r{ree_upper_bound(rho, candidate, alice), candidate, ReeMethod::CandidateState,
                0.0, false, 0};
    return r;
}

ReeResult ree_ppt(const DensityMatrix& rho, const ReeOptions& opts) {
    const std::vector<int>& dims = rho.sig().dims;
    std::vector<int> bob = bob_indices(rho.sig(), opts.alice);
    const int n = rho.dim();

    Objective f(rho.mat());

    // Away-step Frank–Wolfe over the registry of atoms visited so far (the
    // maximally mixed start plus each linear-subproblem solution). Away
    // steps remove the zigzag between active atoms that plain conditional
    // gradient suffers from at boundary optima.
    std::vector<Matrix> atoms = {Matrix::Identity(n, n) / n};
    std::vector<double> weights = {1.0};
    Matrix sigma = atoms[0];
    double fval = f.value(sigma);
    double gap = std::numeric_limits<double>::infinity();
    double lp_res = 0.0;
    PptLpState lp;
    int iters = 0;

    auto line_search = [&](const Matrix& base, const Matrix& dir, double t_max) {
        double lo = 0.0, hi = t_max;
        double slope_hi =
            std::real((f.gradient(base + t_max * dir).adjoint() * dir).trace());
        if (slope_hi <= 0.0) return t_max;
        for (int b = 0; b < 30; ++b) {
            double mid = 0.5 * (lo + hi);
            double slope = std::real((f.gradient(base + mid * dir).adjoint() * dir).trace());
            if (slope > 0.0) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return 0.5 * (lo + hi);
    };

    // One corrective round over the current atom hull: a Frank–Wolfe or
    // away step restricted to the atoms already found (no new linear
    // subproblem). Returns the hull gap seen before stepping.
    auto hull_round = [&]() {
        Matrix g = f.gradient(sigma);
        double sig_score = std::real((g.adjoint() * sigma).trace());
        int best = -1, away = -1;
        double best_score = std::numeric_limits<double>::infinity();
        double away_score = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            double score = std::real((g.adjoint() * atoms[i]).trace());
            if (score < best_score) {
                best_score = score;
                best = static_cast<int>(i);
            }
            if (weights[i] > 1e-14 && score > away_score) {
                away_score = score;
                away = static_cast<int>(i);
            }
        }
        double fw_gap = sig_score - best_score;
        double away_gap = away_score - sig_score;
        double hull_gap = std::max(fw_gap, away_gap);
        if (hull_gap <= 0.0) return 0.0;
        if (fw_gap >= away_gap || away < 0 || weights[away] >= 1.0 - 1e-14) {
            Matrix dir = atoms[best] - sigma;
            double t = line_search(sigma, dir, 1.0);
            if (t <= 0.0) return 0.0;
            for (double& w : weights) w *= (1.0 - t);
            weights[best] += t;
            sigma = sigma + t * dir;
        } else {
            Matrix dir = sigma - atoms[away];
            double t_max = weights[away] / (1.0 - weights[away]);
            double t = line_search(sigma, dir, t_max);
            if (t <= 0.0) return 0.0;
            for (double& w : weights) w *= (1.0 + t);
            weights[away] -= t;
            sigma = sigma + t * dir;
        }
        sigma = (sigma + Matrix(sigma.adjoint())) / 2.0;
        return hull_gap;
    };

    // f is blind to the partial-transpose constraint, so projected points
    // must be verified feasible before acceptance or the polish drifts out
    // of the PPT set toward the unconstrained minimizer.
    auto nearly_feasible = [&](const Matrix& m) {
        if (std::abs(m.trace().real() - 1.0) > 1e-10) return false;
        EigH e1 = eig_hermitian(m);
        if (e1.values.minCoeff() < -1e-11) return false;
        EigH e2 = eig_hermitian(partial_transpose(m, dims, bob));
        return e2.values.minCoeff() >= -1e-11;
    };

    // Monotone projected-gradient rounds polish the iterate inside the
    // feasible set once the atom hull has located the active face; they do
    // not consume linear-subproblem iterations.
    double pg_step = 0.25;
    auto pg_round = [&]() {
        Matrix g = f.gradient(sigma);
        for (int tries = 0; tries < 20; ++tries) {
            Matrix target = sigma - pg_step * g;
            Matrix cand = project_ppt_density(target, dims, bob, 100);
            if (!nearly_feasible(cand)) {
                cand = project_ppt_density(target, dims, bob, 600);
            }
            if (nearly_feasible(cand)) {
                double fcand = f.value(cand);
                if (fcand <= fval - 1e-15) {
                    double moved = (cand - sigma).cwiseAbs().maxCoeff();
                    sigma = std::move(cand);
                    fval = fcand;
                    pg_step *= 1.6;
                    return moved;
                }
            }
            pg_step *= 0.4;
            if (pg_step < 1e-13) break;
        }
        return 0.0;
    };

    // Exponentiated-gradient rounds: steps in log-eigenvalue space stay
    // well-scaled when the optimum touches the boundary and the ordinary
    // gradient blows up like 1/λ.
    double meg_step = 0.5;
    auto meg_round = [&]() {
        Matrix g = f.gradient(sigma);
        EigH es = eig_hermitian(sigma);
        RealVector lg(es.values.size());
        for (int j = 0; j < es.values.size(); ++j) {
            lg(j) = std::log(std::max(es.values(j), 0.0) + kSmoothing);
        }
        Matrix log_sigma = es.vectors * lg.asDiagonal() * es.vectors.adjoint();
        for (int tries = 0; tries < 12; ++tries) {
            Matrix h = log_sigma - meg_step * g;
            h = (h + Matrix(h.adjoint())) / 2.0;
            EigH eh = eig_hermitian(h);
            RealVector ex = (eh.values.array() - eh.values.maxCoeff()).exp();
            Matrix cand = eh.vectors * ex.asDiagonal() * eh.vectors.adjoint();
            cand /= cand.trace().real();
            cand = project_ppt_density(cand, dims, bob, 100);
            if (!nearly_feasible(cand)) cand = project_ppt_density(cand, dims, bob, 500);
            if (nearly_feasible(cand)) {
                double fcand = f.value(cand);
                if (fcand <= fval - 1e-15) {
                    double moved = (cand - sigma).cwiseAbs().maxCoeff();
                    sigma = std::move(cand);
                    fval = fcand;
                    meg_step *= 1.5;
                    return moved;
                }
            }
            meg_step *= 0.4;
            if (meg_step < 1e-12) break;
        }
        return 0.0;
    };

    int stalled = 0;
    for (int k = 0; k < opts.max_iter; ++k) {
        iters = k + 1;
        Matrix g = f.gradient(sigma);
        auto [x, res] = ppt_linear_minimize(g, dims, bob, lp, 600, 1e-9 * n);
        lp_res = res;

        gap = std::real((g.adjoint() * (sigma - x)).trace());
        if (gap <= opts.tol) break;
        // Near rank-deficient optima the gradient certificate has a noise
        // floor; once the objective stops moving, more atoms cannot help.
        double f_before = fval;

        // Register the new atom (merge repeats), then re-optimize the
        // weights over the whole hull before the next linear subproblem.
        int merge = -1;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            if ((atoms[i] - x).cwiseAbs().maxCoeff() < 1e-11) {
                merge = static_cast<int>(i);
                break;
            }
        }
        if (merge < 0) {
            atoms.push_back(x);
            weights.push_back(0.0);
        }
        for (int round = 0; round < 60; ++round) {
            if (hull_round() <= 0.05 * opts.tol) break;
        }
        fval = f.value(sigma);

        // Once the hull stops making progress, polish with projected
        // gradient before asking for another atom. The polished point
        // replaces the hull as the single base atom (it moved off it).
        bool moved = false;
        if (k >= 2) {
            pg_step = std::max(pg_step, 1e-2);  // recover from collapsed steps
            meg_step = std::max(meg_step, 1e-2);
            for (int round = 0; round < 80; ++round) {
                double f_round = fval;
                double delta = pg_round();
                delta = std::max(delta, meg_round());
                if (delta > 0.0) moved = true;
                if (f_round - fval < 1e-13) break;
            }
            if (moved) {
                atoms = {sigma};
                weights = {1.0};
            }
        }
        if (f_before - fval < std::max(1e-13, 1e-3 * opts.tol)) {
            if (++stalled >= 4) break;
        } else {
            stalled = 0;
        }
        if (moved) continue;

        // Drop dead atoms to keep the hull searches short.
        for (std::size_t i = 0; i < atoms.size();) {
            if (weights[i] < 1e-14) {
                atoms.erase(atoms.begin() + i);
                weights.erase(weights.begin() + i);
            } else {
                ++i;
            }
        }
    }
    {
        // Final certificate: one tight linear subproblem at the solution.
        Matrix g = f.gradient(sigma);
        auto [x, res] = ppt_linear_minimize(g, dims, bob, lp, 4000, 1e-10 * n);
        lp_res = std::max(lp_res, res);
        gap = std::max(std::real((g.adjoint() * (sigma - x)).trace()), 0.0);
    }

    // Feasibility restoration for the witness (the iterates are convex
    // combinations of PPT points up to the LP residual).
    Matrix w = project_ppt_density(sigma, dims, bob);
    double witness_trace_fix = (w - sigma).norm();
    w = (w + Matrix(w.adjoint())) / 2.0;
    DensityMatrix witness(w / w.trace().real(), rho.sig());

    ReeResult r;
    r.value = f.value(witness.mat());
    r.witness = witness;
    r.method = ReeMethod::FrankWolfePPT;
    r.gap_estimate = std::max(gap, 0.0) + lp_res * max_abs(f.gradient(sigma)) * n +
                     witness_trace_fix;
    r.smoothed = f.smoothed;
    r.iterations = iters;
    if (!is_ppt(witness, opts.alice)) {
        throw std::runtime_error("ree_ppt: witness failed the PPT feasibility check");
    }
    return r;
}

std::vector<Vector> bell_basis() {
    const double s = 1.0 / std::sqrt(2.0);
    Vector phi_p = Vector::Zero(4), phi_m = Vector::Zero(4), psi_p = Vector::Zero(4),
           psi_m = Vector::Zero(4);
    phi_p(0) = s;
    phi_p(3) = s;
    phi_m(0) = s;
    phi_m(3) = -s;
    psi_p(1) = s;
    psi_p(2) = s;
    psi_m(1) = s;
    psi_m(2) = -s;
    return {phi_p, phi_m, psi_p, psi_m};
}

DensityMatrix bell_diagonal_state(const std::vector<double>& weights) {
    if (weights.size() != 4) throw std::invalid_argument("need 4 Bell weights");
    auto basis = bell_basis();
    Matrix m = Matrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) m += weights[i] * Matrix(basis[i] * basis[i].adjoint());
    return {std::move(m), {2, 2}, {Party::A, Party::B}};
}

ReeResult bell_diagonal_ree(const std::vector<double>& bell_weights) {
    if (bell_weights.size() != 4) throw std::invalid_argument("need 4 Bell weights");
    double lam = *std::max_element(bell_weights.begin(), bell_weights.end());
    ReeResult r;
    r.method = ReeMethod::ClosedForm;
    if (lam <= 0.5) {
        r.value = 0.0;
        r.witness = bell_diagonal_state(bell_weights);
        return r;
    }
    // Closest separable Bell-diagonal state: cap the top weight at 1/2 and
    // rescale the rest proportionally.
    int arg = static_cast<int>(std::max_element(bell_weights.begin(), bell_weights.end()) -
                               bell_weights.begin());
    std::vector<double> q(4);
    double rest = 1.0 - lam;
    for (int i = 0; i < 4; ++i) {
        q[i] = (i == arg) ? 0.5 : (rest > 0.0 ? bell_weights[i] / (2.0 * rest) : 1.0 / 6.0);
    }
    r.value = 1.0 - binary_entropy(lam);
    r.witness = bell_diagonal_state(q);
    return r;
}

}  // namespace qmix
