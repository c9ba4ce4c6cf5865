#pragma once

#include <functional>
#include <vector>

#include "qmix/numeric.hpp"

namespace qmix {

/// Gaussian state as first and second moments in the (x₁,p₁,x₂,p₂,…)
/// quadrature ordering with vacuum variance 1 (so a TMSV "of variance μ"
/// has diagonal blocks μ·I₂). Validated: cov symmetric, V + iΩ ⪰ −slack.
struct GaussianState {
    RealVector mean;
    RealMatrix cov;

    GaussianState(RealVector mean_in, RealMatrix cov_in);
    int modes() const { return static_cast<int>(mean.size()) / 2; }

    static GaussianState vacuum(int modes);
    GaussianState reduced(const std::vector<int>& keep_modes) const;
};

/// Standard symplectic form Ω = ⊕ [[0,1],[−1,0]] on m modes.
RealMatrix symplectic_form(int modes);

/// Pure-loss channel of transmissivity η with an optional coherent
/// displacement of the environment: applied to a mode, the mean picks up the
/// fixed offset (2·Re γ√(1−η), 2·Im γ√(1−η)).
struct LossyChannel {
    double eta;
    Complex displacement;  // γ√(1−η); zero for the plain lossy channel

    explicit LossyChannel(double eta_in, Complex gamma = Complex(0, 0));
};

/// Two-mode squeezed vacuum of variance μ ≥ 1:
/// cov = [[μI, √(μ²−1)Z],[√(μ²−1)Z, μI]].
GaussianState tmsv_state(double mu);

/// Moment update V → XVXᵀ + Y with X = √η·I₂, Y = (1−η)·I₂ on the chosen
/// mode; mean scaled by √η and shifted by the channel displacement.
GaussianState apply_lossy(const LossyChannel& ch, const GaussianState& g, int mode);

/// Quasi-Choi state of the lossy channel: loss applied to mode B of Φ^μ.
GaussianState quasi_choi_state(double eta, double mu);

/// Symplectic eigenvalues (ν_k ≥ 1, one per mode).
std::vector<double> symplectic_eigenvalues(const GaussianState& g);

/// Single-mode entropy kernel h(ν) = ((ν+1)/2)log₂((ν+1)/2) − ((ν−1)/2)log₂((ν−1)/2).
double entropy_kernel(double nu);

/// Von Neumann entropy in bits, Σ_k h(ν_k).
double symplectic_entropy(const GaussianState& g);

/// Reverse coherent information S(A) − S(AB) of the quasi-Choi state.
double gaussian_rci(double eta, double mu);

/// Relative entropy S(ρ₁‖ρ₂) in bits from moments:
///   S = −S(ρ₁) + [ln Z₂ + ½(Tr[G₂V₁] + δuᵀG₂δu)]/ln 2,
/// with Gibbs exponent G₂ = iΩ·arccoth(V₂ iΩ) and Z₂ = √det((V₂+iΩ)/2).
/// Requires ρ₂ full rank (all ν_k > 1); throws with the offending ν otherwise.
double gaussian_relative_entropy(const GaussianState& g1, const GaussianState& g2);

/// PLOB secret-key bound of the lossy channel, −log₂(1−η); +inf at η = 1.
double plob_bound(double eta);

struct SandwichBounds {
    double lower;
    double upper;
};

/// Two-way capacity sandwich for a finite mixture of lossy channels:
/// upper = −Σ p_i log₂(1−η_i), lower = upper − H({p_i}).
SandwichBounds lossy_mixture_bounds(const std::vector<double>& probs,
                                    const std::vector<double>& etas);

struct QuadratureResult {
    double value;
    double error_estimate;
    int panels;
};

/// −∫ p(η) log₂(1−η) dη over [eta_min, eta_max] by adaptive Gauss–Kronrod
/// (G7/K15) bisection to the given absolute tolerance.
QuadratureResult continuous_mixture_upper(const std::function<double(double)>& density,
                                          double eta_min, double eta_max, double abs_tol = 1e-8);

/// Moment-level check that displaced lossy channels are jointly
/// teleportation covariant in γ: an input mean shift z produces the output
/// shift √η·z independent of γ, and E_{η,γ} differs from E_{η,0} only by the
/// fixed offset γ√(1−η). Samples are (γ, z) pairs.
bool classical_env_covariance_check(double eta,
                                    const std::vector<std::pair<Complex, Complex>>& samples);

}  // namespace qmix
