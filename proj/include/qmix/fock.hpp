#pragma once

#include "qmix/gaussian.hpp"
#include "qmix/state.hpp"

namespace qmix {

/// Brute-force Fock-basis counterparts of the Gaussian moment calculus.
/// Everything here works on the truncated space span{|0⟩,…,|cutoff⟩} per
/// mode and is deliberately independent of the moment formulas it certifies.

/// TMSV via its Schmidt form Σ_n √(1−λ²) λⁿ |nn⟩, λ² = (μ−1)/(μ+1).
/// The truncation deficit 1 − Tr is λ^{2(cutoff+1)}·(normalization).
DensityMatrix fock_tmsv(double mu, int cutoff);

/// Thermal state (geometric photon distribution) with symplectic eigenvalue nu.
DensityMatrix fock_thermal(double nu, int cutoff);

/// Beam-splitter (vacuum environment) Kraus operators on the truncated space:
/// K_k = Σ_n √C(n,k) √η^{n−k} √(1−η)^k |n−k⟩⟨n|. Trace preserving exactly
/// within the truncation.
std::vector<Matrix> fock_lossy_kraus(double eta, int cutoff);

/// Apply loss to one mode of a one- or two-mode Fock-basis state.
DensityMatrix fock_apply_lossy(const DensityMatrix& rho, double eta, int mode);

/// Fock representation of a zero-mean Gaussian state. Supported families:
/// vacuum/thermal products and (possibly lossy) TMSV states, i.e. covariance
/// patterns [[aI, cZ],[cZ, bI]]; anything else throws. Errors out when the
/// truncated trace deficit exceeds 1e-6.
DensityMatrix fock_oracle(const GaussianState& g, int cutoff);

/// Relative entropy between two Gaussian states evaluated entirely in the
/// truncated Fock basis (states renormalized by their truncated traces).
double fock_oracle_rel_entropy(const GaussianState& g1, const GaussianState& g2, int cutoff);

/// Reverse coherent information S(A) − S(AB) of a two-mode Fock-basis state.
double fock_rci(const DensityMatrix& rho);

/// Truncation deficit 1 − Tr of the raw (unnormalized) Fock representation.
double fock_trace_deficit(const GaussianState& g, int cutoff);

}  // namespace qmix
