#pragma once

#include <utility>
#include <vector>

#include "qmix/state.hpp"

namespace qmix {

// --- Kronecker products -----------------------------------------------------

Matrix kron(const Matrix& a, const Matrix& b);

/// Tensor product of states; signatures concatenate.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// --- Subsystem bookkeeping on raw matrices ----------------------------------
// All of these treat a d×d matrix as living on ⊗_k C^{dims[k]} with the
// leftmost factor varying slowest (row-major multi-index).

/// Trace out every factor NOT listed in `keep`; kept factors stay in their
/// original relative order.
Matrix partial_trace(const Matrix& m, const std::vector<int>& dims, const std::vector<int>& keep);

/// Reorder tensor factors: factor perm[k] of the input becomes factor k of
/// the output.
Matrix permute_subsystems(const Matrix& m, const std::vector<int>& dims,
                          const std::vector<int>& perm);

/// Transpose the listed factors in place (partial transpose).
Matrix partial_transpose(const Matrix& m, const std::vector<int>& dims,
                         const std::vector<int>& transposed);

// --- Label-level wrappers ----------------------------------------------------

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<Party>& keep);
Matrix partial_transpose(const DensityMatrix& rho, const std::vector<Party>& transposed);

// --- Hermitian eigenproblems --------------------------------------------------

struct EigH {
    RealVector values;   // descending
    Matrix vectors;      // columns, unitary; m = V diag(values) V†
};

/// Eigendecomposition of a Hermitian matrix (validated within tol.hermiticity).
EigH eig_hermitian(const Matrix& m);

/// log2 of a PSD matrix on its support: eigenvalues below `cutoff` are left
/// out of the logarithm (their log2 set to 0), so the result is finite for
/// rank-deficient inputs. Callers needing the support-mismatch check do it
/// on the eigenvalues directly.
Matrix log2_psd(const Matrix& m, double cutoff = tol.support_cutoff);

// --- Small constructors --------------------------------------------------------

Matrix identity(int d);
Vector basis_ket(int d, int j);
Matrix basis_proj(int d, int j);

/// d-dimensional maximally entangled ket Σ_i |ii⟩/√d.
Vector max_entangled_ket(int d);
DensityMatrix max_entangled_state(int d);

/// Matrix unit |a⟩⟨b| in dimension d.
Matrix matrix_unit(int d, int a, int b);

bool is_psd(const Matrix& m, double slack = tol.psd_slack);

}  // namespace qmix
