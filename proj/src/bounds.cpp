#include "qmix/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "qmix/condsim.hpp"
#include "qmix/entropy.hpp"

namespace qmix {

void CapacityReport::validate() const {
    if (lower && *lower > upper + 1e-9) {
        throw std::logic_error("capacity report: lower bound exceeds upper bound");
    }
    if (exact && (!lower || std::abs(*lower - upper) > 1e-12)) {
        throw std::logic_error("capacity report: exact flag requires lower = upper");
    }
    auto get = [&](const char* k) -> std::optional<double> {
        auto it = capacity_chain.find(k);
        if (it == capacity_chain.end()) return std::nullopt;
        return it->second;
    };
    auto d2 = get("D2"), q2 = get("Q2"), p2 = get("P2"), k = get("K");
    if (d2 && q2 && std::abs(*d2 - *q2) > 1e-12) {
        throw std::logic_error("capacity report: D2 must equal Q2");
    }
    if (p2 && k && std::abs(*p2 - *k) > 1e-12) {
        throw std::logic_error("capacity report: P2 must equal K");
    }
    if (q2 && p2 && *q2 > *p2 + 1e-12) {
        throw std::logic_error("capacity report: Q2 must not exceed P2");
    }
}

CapacityReport dephrasure_capacities(double p, double q) {
    if (p < 0 || p > 1 || q < 0 || q > 1) {
        throw std::invalid_argument("dephrasure parameters must lie in [0,1]");
    }
    const double cap = (1.0 - p) * (1.0 - binary_entropy(q));
    CapacityReport r;
    r.channel_id = "dephrasure";
    r.params = {{"p", p}, {"q", q}};
    r.lower = cap;
    r.upper = cap;
    r.exact = true;
    r.method_notes = {
        {"upper", "conditional simulation REE sum: (1-p)(1-H2(q))"},
        {"lower", "erasure post-selection + dephasing D2 = 1-H2(q)"},
    };
    r.capacity_chain = {{"D2", cap}, {"Q2", cap}, {"P2", cap}, {"K", cap}};
    r.validate();
    return r;
}

CapacityReport dad_bound(double p) {
    if (p < 0 || p > 1) throw std::invalid_argument("DAD parameter must lie in [0,1]");
    CapacityReport r;
    r.channel_id = "dad";
    r.params = {{"p", p}};
    r.upper = 1.0 - p;
    r.exact = false;
    r.method_notes = {
        {"upper", "component REE sum: p*0 (replacer) + (1-p)*1 (identity)"},
    };
    r.capacity_chain = {{"K", r.upper}};
    r.validate();
    return r;
}

double pipeline_bound(double inner_ree, double p) {
    if (inner_ree < 0.0) throw std::invalid_argument("inner REE must be nonnegative");
    if (p < 0 || p > 1) throw std::invalid_argument("erasure probability must lie in [0,1]");
    return (1.0 - p) * inner_ree;
}

CapacityReport pipeline_report(double inner_ree, double p) {
    CapacityReport r;
    r.channel_id = "pipeline";
    r.params = {{"p", p}, {"inner_ree", inner_ree}};
    r.upper = pipeline_bound(inner_ree, p);
    r.exact = false;
    r.method_notes = {
        {"upper", "(1-p) * E_R(inner program state); erasure component REE = 0"},
    };
    r.validate();
    return r;
}

CapacityReport ensemble_bound(const std::vector<double>& probs,
                              const std::vector<double>& ree_per_component,
                              std::optional<double> mixture_rci) {
    if (probs.size() != ree_per_component.size() || probs.empty()) {
        throw std::invalid_argument("ensemble_bound: aligned nonempty lists required");
    }
    CapacityReport r;
    r.channel_id = "ensemble";
    r.upper = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        r.upper += probs[i] * ree_per_component[i];
    }
    r.method_notes = {{"upper", "sum of probability-weighted component REEs"}};
    if (mixture_rci) {
        r.lower = std::max(0.0, *mixture_rci);
        r.method_notes.emplace_back("lower", "reverse coherent information of the mixture");
    }
    r.exact = false;
    r.validate();
    return r;
}

CapacityReport lossy_mixture_report(const std::vector<double>& probs,
                                    const std::vector<double>& etas) {
    SandwichBounds sb = lossy_mixture_bounds(probs, etas);
    CapacityReport r;
    r.channel_id = "lossy-mixture";
    for (std::size_t i = 0; i < probs.size(); ++i) {
        r.params["p" + std::to_string(i)] = probs[i];
        r.params["eta" + std::to_string(i)] = etas[i];
    }
    r.upper = sb.upper;
    r.lower = sb.lower;
    r.exact = false;
    r.method_notes = {
        {"upper", "probability-weighted PLOB bounds -sum p log2(1-eta)"},
        {"lower", "mixture RCI concavity: upper - H({p})"},
    };
    r.validate();
    return r;
}

CapacityReport continuous_lossy_report(double eta_min, double eta_max) {
    const double width = eta_max - eta_min;
    if (width <= 0.0) throw std::invalid_argument("need eta_min < eta_max");
    auto density = [&](double) { return 1.0 / width; };
    QuadratureResult quad = continuous_mixture_upper(density, eta_min, eta_max);
    CapacityReport r;
    r.channel_id = "lossy-continuous";
    r.params = {{"eta_min", eta_min}, {"eta_max", eta_max}};
    r.upper = quad.value;
    r.exact = false;
    r.method_notes = {
        {"upper", "adaptive quadrature of -p(eta) log2(1-eta), error estimate " +
                      std::to_string(quad.error_estimate)},
    };
    r.validate();
    return r;
}

CapacityReport memory_dad_report(int slots, double p, bool correlated) {
    if (slots < 1) throw std::invalid_argument("memory channel needs at least one slot");
    if (p < 0 || p > 1) throw std::invalid_argument("DAD parameter must lie in [0,1]");
    // Component REEs per slot: replacer → 0, identity → 1.
    std::vector<std::vector<double>> rees(slots, {0.0, 1.0});
    std::size_t total = 1;
    for (int k = 0; k < slots; ++k) total *= 2;
    std::vector<double> joint(total, 0.0);
    if (correlated) {
        joint[0] = p;           // all replacer
        joint[total - 1] = 1 - p;  // all identity
    } else {
        for (std::size_t flat = 0; flat < total; ++flat) {
            double w = 1.0;
            std::size_t rem = flat;
            for (int k = 0; k < slots; ++k) {
                w *= (rem % 2 == 0) ? p : (1 - p);
                rem /= 2;
            }
            joint[flat] = w;
        }
    }
    CapacityReport r;
    r.channel_id = "memory";
    r.params = {{"slots", static_cast<double>(slots)},
                {"p", p},
                {"correlated", correlated ? 1.0 : 0.0}};
    r.upper = memory_bound(rees, joint);
    r.exact = false;
    r.method_notes = {
        {"upper", correlated ? "correlated joint distribution over component REE sums"
                             : "product distribution; equals the sum of marginal bounds"},
    };
    r.validate();
    return r;
}

}  // namespace qmix
