#pragma once

#include "qmix/entropy.hpp"
#include "qmix/state.hpp"

namespace qmix {

enum class ReeMethod { ClosedForm, CandidateState, FrankWolfePPT };

/// Result of a relative-entropy-of-entanglement computation. The witness is
/// the closest PPT (for 2⊗2 / 2⊗3: separable) state found; gap_estimate
/// bounds the distance of `value` from the true PPT-set optimum.
struct ReeResult {
    double value = 0.0;
    DensityMatrix witness;
    ReeMethod method = ReeMethod::FrankWolfePPT;
    double gap_estimate = 0.0;
    bool smoothed = false;
    int iterations = 0;
};

struct ReeOptions {
    int max_iter = 300;  // linear-subproblem (atom) iterations
    double tol = 1e-6;   // stop when the Frank–Wolfe gap drops below this
    std::vector<Party> alice = {Party::C, Party::A, Party::T};
};

/// Bob-side factor indices for the Alice|Bob split (everything not tagged
/// with an Alice label is Bob's).
std::vector<int> bob_indices(const SubsystemSignature& sig, const std::vector<Party>& alice);

/// Is the partial transpose over Bob's factors PSD within the feasibility slack?
bool is_ppt(const DensityMatrix& rho, const std::vector<Party>& alice = {Party::C, Party::A,
                                                                         Party::T});

/// S(ρ‖candidate) — an upper bound on the REE for any PPT candidate.
/// Throws if the candidate is not PPT.
double ree_upper_bound(const DensityMatrix& rho, const DensityMatrix& candidate,
                       const std::vector<Party>& alice = {Party::C, Party::A, Party::T});

ReeResult ree_from_candidate(const DensityMatrix& rho, const DensityMatrix& candidate,
                             const std::vector<Party>& alice = {Party::C, Party::A, Party::T});

/// Minimize S(ρ‖σ) over PPT states σ by conditional-gradient (Frank–Wolfe)
/// iteration from the maximally mixed state, with exact line search. The
/// linear subproblem over {σ ⪰ 0, Tr σ = 1, σ^{T_B} ⪰ 0} is solved by an
/// operator-splitting scheme alternating projections onto the PSD/unit-trace
/// and PPT sets with a running dual correction. Non-convergence is reported
/// through gap_estimate, never silently.
ReeResult ree_ppt(const DensityMatrix& rho, const ReeOptions& opts = {});

/// Bell-diagonal closed form: for largest Bell weight λ ≥ 1/2 the REE is
/// 1 − H₂(λ); below 1/2 the state is separable. Witness included.
ReeResult bell_diagonal_ree(const std::vector<double>& bell_weights);

/// The four Bell kets of two qubits (Φ+, Φ−, Ψ+, Ψ−).
std::vector<Vector> bell_basis();
DensityMatrix bell_diagonal_state(const std::vector<double>& weights);

}  // namespace qmix
