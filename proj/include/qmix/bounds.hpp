#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmix/channel.hpp"
#include "qmix/gaussian.hpp"

namespace qmix {

/// Assembled capacity statement for one channel. `capacity_chain` carries
/// the two-way assisted quantities D2 = Q2 ≤ P2 = K where known.
struct CapacityReport {
    std::string channel_id;
    std::map<std::string, double> params;
    std::optional<double> lower;
    double upper = 0.0;
    bool exact = false;
    std::vector<std::pair<std::string, std::string>> method_notes;
    std::map<std::string, double> capacity_chain;

    void validate() const;  // lower ≤ upper, exact ⇒ lower = upper, chain order
};

/// Exact two-way capacities of the dephrasure channel:
/// Q2 = D2 = P2 = K = (1−p)(1−H₂(q)).
CapacityReport dephrasure_capacities(double p, double q);

/// Upper bound K ≤ 1−p for the diagonal amplitude-damping mixture; the
/// component REEs are 0 (replacer) and 1 (identity). No lower bound.
CapacityReport dad_bound(double p);

/// K ≤ (1−p)·E_R(σ_inner) for a channel followed by erasure.
double pipeline_bound(double inner_ree, double p);
CapacityReport pipeline_report(double inner_ree, double p);

/// Generic ensemble bound K ≤ Σ p_i E_R(σ_P^i); optional RCI lower bound.
CapacityReport ensemble_bound(const std::vector<double>& probs,
                              const std::vector<double>& ree_per_component,
                              std::optional<double> mixture_rci = std::nullopt);

/// Finite lossy mixture: PLOB sandwich of upper/lower bounds.
CapacityReport lossy_mixture_report(const std::vector<double>& probs,
                                    const std::vector<double>& etas);

/// Continuous lossy mixture with a uniform density on [eta_min, eta_max].
CapacityReport continuous_lossy_report(double eta_min, double eta_max);

/// M-slot DAD memory channel; the joint distribution is either the product
/// of identical marginals (memoryless) or perfectly correlated.
CapacityReport memory_dad_report(int slots, double p, bool correlated);

}  // namespace qmix
