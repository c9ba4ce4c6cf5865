#pragma once

#include "qmix/channel.hpp"
#include "qmix/state.hpp"

namespace qmix {

/// Binary Shannon entropy in bits; h2(0) = h2(1) = 0.
double binary_entropy(double x);

/// Shannon entropy of a probability vector, in bits.
double shannon_entropy(const std::vector<double>& p);

/// Von Neumann entropy in bits. Eigenvalues below the PSD slack are clamped
/// to zero before taking logs.
double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const Matrix& rho);

/// Quantum relative entropy S(ρ‖σ) in bits; +inf when supp(ρ) ⊄ supp(σ)
/// (support detected via the eigenvalue cutoff tol.support_cutoff).
double relative_entropy(const Matrix& rho, const Matrix& sigma);
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// I_C = S(B) − S(AB) of the Choi state.
double coherent_information(const QuantumChannel& ch);
/// I_RC = S(A) − S(AB) of the Choi state.
double reverse_coherent_information(const QuantumChannel& ch);

}  // namespace qmix
