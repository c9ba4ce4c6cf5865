#pragma once

#include <random>

#include "qmix/state.hpp"

namespace qmix {

using Rng = std::mt19937_64;

/// Haar-random pure state of dimension d as a density matrix (single factor).
DensityMatrix random_pure_state(int d, Rng& rng, Party label = Party::T);

/// Full-rank random density matrix (Wishart: GG†/Tr).
DensityMatrix random_state(int d, Rng& rng, Party label = Party::T);
DensityMatrix random_state(const SubsystemSignature& sig, Rng& rng);

/// Haar-random unitary via QR of a Ginibre matrix.
Matrix random_unitary(int d, Rng& rng);

/// Random Hermitian matrix with N(0,1) entries (for eigensolver checks).
Matrix random_hermitian(int d, Rng& rng);

/// Random probability vector of length n (flat Dirichlet).
std::vector<double> random_probabilities(int n, Rng& rng);

/// Haar-random isometry of shape (rows × cols), rows ≥ cols.
Matrix random_isometry(int rows, int cols, Rng& rng);

}  // namespace qmix
