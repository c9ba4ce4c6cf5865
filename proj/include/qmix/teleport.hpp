#pragma once

#include <optional>
#include <vector>

#include "qmix/channel.hpp"

namespace qmix {

/// Discrete Weyl (generalized Pauli) group on dimension d: the d² unitaries
/// X^a Z^b with X|j⟩ = |j+1 mod d⟩ and Z|j⟩ = ω^j |j⟩, ω = e^{2πi/d}.
/// Element k = a·d + b.
struct WeylGroup {
    int d;
    std::vector<Matrix> operators;

    explicit WeylGroup(int dimension);
    int size() const { return static_cast<int>(operators.size()); }
    const Matrix& op(int a, int b) const { return operators.at(a * d + b); }
};

/// Per-outcome correction unitaries for a generalized teleportation; entry k
/// corrects the Bell outcome with projector (I ⊗ U_k)Φ(I ⊗ U_k)† on (A,T).
struct CorrectionTable {
    int d;                            // Bell-measurement dimension
    std::vector<Matrix> corrections;  // d² unitaries on the output space
};

/// Corrections for teleporting over the ideal maximally entangled program:
/// V_k = U_k.
CorrectionTable standard_corrections(int d);

/// Generalized teleportation: Bell-measure (A,T), correct B, average over
/// the d² outcomes. `program` has signature (A: d, B: d_out); the input is
/// any operator of dimension d. Linear in the input.
Matrix teleport(const DensityMatrix& program, const Matrix& input,
                const CorrectionTable& corrections);
DensityMatrix teleport(const DensityMatrix& program, const DensityMatrix& input,
                       const CorrectionTable& corrections);

/// Search for per-element corrections V with E(UρU†) = V E(ρ) V† on a full
/// operator basis. The candidate set is the output-dimension Weyl group,
/// plus flag-preserving block extensions W ⊕ 1 of the input Weyl group when
/// the output space is the input space with an appended erasure flag.
/// Comparisons are made at the superoperator level, so global phases never
/// matter. Returns nullopt if some group element admits no candidate.
std::optional<CorrectionTable> covariance_table(const QuantumChannel& ch, const WeylGroup& group);

/// All valid candidates per group element (used for joint-covariance search).
std::vector<std::vector<Matrix>> covariance_candidates(const QuantumChannel& ch,
                                                       const WeylGroup& group);

/// True iff one correction table works for every component simultaneously.
/// Components with differing input or output spaces can never share a
/// teleportation LOCC, so such lists report false.
bool jointly_covariant(const std::vector<QuantumChannel>& components, const WeylGroup& group);
bool jointly_covariant(const ChannelEnsemble& ens, const WeylGroup& group);

/// A correction table valid for all components at once, if one exists.
std::optional<CorrectionTable> joint_covariance_table(const std::vector<QuantumChannel>& components,
                                                      const WeylGroup& group);

/// Max-norm deviation between teleport-over-Choi (with the given table) and
/// the channel action, over a complete operator basis.
double teleport_simulation_deviation(const QuantumChannel& ch, const CorrectionTable& table);

}  // namespace qmix
