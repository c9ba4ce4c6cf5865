#include "qmix/verify.hpp"

#include <cmath>
#include <stdexcept>

#include "qmix/bounds.hpp"
#include "qmix/condsim.hpp"
#include "qmix/entropy.hpp"
#include "qmix/fock.hpp"
#include "qmix/gaussian.hpp"
#include "qmix/random.hpp"
#include "qmix/ree.hpp"

namespace qmix {

namespace {

QuantumChannel random_qubit_channel(Rng& rng, int env_dim = 4) {
    Matrix v = random_isometry(2 * env_dim, 2, rng);
    std::vector<Matrix> kraus;
    for (int e = 0; e < env_dim; ++e) {
        Matrix k(2, 2);
        for (int out = 0; out < 2; ++out)
            for (int in = 0; in < 2; ++in) k(out, in) = v(out * env_dim + e, in);
        kraus.push_back(std::move(k));
    }
    return QuantumChannel::from_kraus(std::move(kraus));
}

ChannelEnsemble random_pauli_ensemble(int components, Rng& rng) {
    std::vector<EnsembleEntry> entries;
    auto weights = random_probabilities(components, rng);
    for (int i = 0; i < components; ++i) {
        auto p = random_probabilities(4, rng);
        entries.push_back({weights[i], pauli_channel(p[0], p[1], p[2], p[3])});
    }
    return ChannelEnsemble(std::move(entries));
}

double choi_equality_deviation(const SimulatedEnsemble& sim) {
    QuantumChannel cond = conditional_channel(sim);
    QuantumChannel avg = mixture(sim.ensemble);
    return max_abs_diff(cond.choi().mat(), avg.choi().mat());
}

}  // namespace

std::vector<CheckResult> verify_condsim(std::uint64_t seed) {
    std::vector<CheckResult> out;
    Rng rng(seed);

    double dad_dev = 0.0;
    for (int k = 0; k <= 10; ++k) {
        auto sim = SimulatedEnsemble::from_covariant_components(dad_ensemble(k / 10.0));
        dad_dev = std::max(dad_dev, choi_equality_deviation(sim));
    }
    out.push_back({"condsim.dad_choi_equality(11 p)", dad_dev, tol.simulation});

    double dr_dev = 0.0;
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        for (double q : {0.0, 0.1, 0.25, 0.4, 0.5}) {
            auto sim = SimulatedEnsemble::from_covariant_components(dephrasure_ensemble(p, q));
            dr_dev = std::max(dr_dev, choi_equality_deviation(sim));
        }
    }
    out.push_back({"condsim.dephrasure_choi_equality(5x5)", dr_dev, tol.simulation});

    auto pauli = random_pauli_ensemble(5, rng);
    auto pauli_sim = SimulatedEnsemble::from_covariant_components(pauli);
    out.push_back({"condsim.random_pauli5_choi_equality", choi_equality_deviation(pauli_sim),
                   tol.simulation});
    out.push_back({"condsim.random_pauli5_operator_basis", verify_simulation(pauli_sim),
                   tol.simulation});

    auto dad_sim = SimulatedEnsemble::from_covariant_components(dad_ensemble(0.3));
    ControlProgramState theta = build_control_program(dad_sim);
    out.push_back({"condsim.block_orthogonality", theta.off_block_leakage(),
                   tol.block_orthogonality});

    double fs = finite_size_bound({1000, 0.01, 1.0}, 0.7);
    out.push_back({"condsim.finite_size_worked_example", std::abs(fs - 0.7293), 1e-3});
    double fs_prev = finite_size_bound({100, 0.01, 1.0}, 0.7);
    double worst_monotone = 0.0;
    for (long long n : {1000LL, 10000LL, 100000LL, 1000000LL}) {
        double fs_n = finite_size_bound({n, 0.01, 1.0}, 0.7);
        worst_monotone = std::max(worst_monotone, fs_n - fs_prev);
        fs_prev = fs_n;
    }
    out.push_back({"condsim.finite_size_monotone_in_n", worst_monotone, 0.0});

    // Memory: product distribution equals the sum of marginal bounds.
    std::vector<std::vector<double>> rees = {{0.0, 1.0}, {0.0, 1.0}};
    double p = 0.3;
    std::vector<double> product_joint = {p * p, p * (1 - p), (1 - p) * p, (1 - p) * (1 - p)};
    double product_bound = memory_bound(rees, product_joint);
    double marginal_sum = 2.0 * (1 - p);
    out.push_back({"condsim.memory_product_equals_marginals",
                   std::abs(product_bound - marginal_sum), 1e-12});
    std::vector<double> corr_joint = {0.5, 0.0, 0.0, 0.5};
    out.push_back({"condsim.memory_correlated_dad_bound",
                   std::abs(memory_bound(rees, corr_joint) - 1.0), 0.0});
    return out;
}

std::vector<CheckResult> verify_teleport(std::uint64_t seed) {
    std::vector<CheckResult> out;
    Rng rng(seed);
    WeylGroup qubit(2);

    // Ideal teleportation on random states.
    double ideal_dev = 0.0;
    CorrectionTable standard = standard_corrections(2);
    for (int k = 0; k < 5; ++k) {
        DensityMatrix rho = random_state(2, rng);
        DensityMatrix tele = teleport(max_entangled_state(2), rho, standard);
        ideal_dev = std::max(ideal_dev, max_abs_diff(tele.mat(), rho.mat()));
    }
    out.push_back({"teleport.ideal_on_random_states", ideal_dev, tol.simulation});

    auto simulate = [&](const char* name, const QuantumChannel& ch) {
        auto table = covariance_table(ch, qubit);
        if (!table) {
            out.push_back({std::string("teleport.") + name + "_covariant", 1.0, 0.5});
            return;
        }
        out.push_back({std::string("teleport.") + name + "_simulation",
                       teleport_simulation_deviation(ch, *table), tol.simulation});
    };
    simulate("identity", identity_channel(2));
    simulate("dephasing_q0", dephasing_channel(0.0));
    simulate("dephasing_q0.1", dephasing_channel(0.1));
    simulate("dephasing_q0.5", dephasing_channel(0.5));
    simulate("replacer0", replacer0_channel());
    simulate("erasure_replacer", erasure_replacer_channel());

    auto expect_joint = [&](const char* name, const std::vector<QuantumChannel>& comps,
                            bool expected) {
        bool got = jointly_covariant(comps, qubit);
        out.push_back({std::string("teleport.joint_covariance_") + name,
                       got == expected ? 0.0 : 1.0, 0.5});
    };
    expect_joint("dad_false", {replacer0_channel(), identity_channel(2)}, false);
    expect_joint("dephrasure_false", {dephasing_channel(0.1), erasure_replacer_channel()}, false);
    auto pauli = random_pauli_ensemble(3, rng);
    std::vector<QuantumChannel> pauli_comps;
    for (const auto& e : pauli.entries) pauli_comps.push_back(e.channel);
    expect_joint("pauli_true", pauli_comps, true);

    // Jointly covariant ensembles admit one teleportation over the mixed Choi.
    auto joint_table = joint_covariance_table(pauli_comps, qubit);
    double joint_dev = 1.0;
    if (joint_table) {
        QuantumChannel avg = mixture(pauli);
        joint_dev = teleport_simulation_deviation(avg, *joint_table);
    }
    out.push_back({"teleport.joint_pauli_single_teleportation", joint_dev, tol.simulation});
    return out;
}

std::vector<CheckResult> verify_ree(std::uint64_t seed) {
    std::vector<CheckResult> out;
    Rng rng(seed);

    ReeOptions opts;
    opts.tol = 1e-6;

    ReeResult bell = ree_ppt(max_entangled_state(2), opts);
    out.push_back({"ree.bell_state_value_1", std::abs(bell.value - 1.0), 1e-4});

    double prod_dev = 0.0;
    ReeOptions tight = opts;
    tight.tol = 2e-7;
    for (int k = 0; k < 3; ++k) {
        DensityMatrix a = random_state(2, rng, Party::A);
        DensityMatrix b = random_state(2, rng, Party::B);
        ReeResult r = ree_ppt(tensor(a, b), tight);
        prod_dev = std::max(prod_dev, r.value);
    }
    out.push_back({"ree.random_product_states_zero", prod_dev, 1e-6});

    for (double q : {0.05, 0.1, 0.25}) {
        ReeResult r = ree_ppt(dephasing_channel(q).choi(), opts);
        out.push_back({"ree.dephasing_choi_q" + std::to_string(q),
                       std::abs(r.value - (1.0 - binary_entropy(q))), 1e-3});
    }

    for (double lam : {0.6, 0.7, 0.9}) {
        std::vector<double> w = {lam, (1 - lam) / 3, (1 - lam) / 3, (1 - lam) / 3};
        ReeResult solver = ree_ppt(bell_diagonal_state(w), opts);
        ReeResult closed = bell_diagonal_ree(w);
        out.push_back({"ree.bell_diagonal_lambda" + std::to_string(lam),
                       std::abs(solver.value - closed.value), 1e-3});
    }

    // Chain inequality on random two-component qubit ensembles.
    ReeOracle oracle = [&](const DensityMatrix& s) {
        ReeOptions o;
        o.tol = 1e-6;
        o.max_iter = 60;
        return ree_ppt(s, o).value;
    };
    double worst_violation = 0.0;
    for (int k = 0; k < 10; ++k) {
        auto probs = random_probabilities(2, rng);
        std::vector<std::pair<double, DensityMatrix>> blocks;
        for (int i = 0; i < 2; ++i) {
            blocks.emplace_back(probs[i], random_qubit_channel(rng).choi());
        }
        ControlProgramState theta = ControlProgramState::build(blocks);
        ReeChainResult chain = ree_chain_bound(theta, oracle, 1e-3);
        worst_violation = std::max(worst_violation, chain.e_theta - chain.sum_bound);
    }
    out.push_back({"ree.chain_inequality_random_ensembles", std::max(worst_violation, 0.0), 1e-3});
    return out;
}

std::vector<CheckResult> verify_gaussian(std::uint64_t seed) {
    std::vector<CheckResult> out;
    (void)seed;

    double rci_gap = 0.0;
    for (double eta : {0.1, 0.5, 0.7, 0.9}) {
        rci_gap = std::max(rci_gap, std::abs(gaussian_rci(eta, 1e4) - plob_bound(eta)));
    }
    out.push_back({"gaussian.rci_large_mu_vs_plob", rci_gap, 1e-3});

    // Moment calculus against the Fock oracle.
    const int cutoff = 40;
    double rci_moment = gaussian_rci(0.5, 1.5);
    double rci_fock = fock_rci(fock_oracle(quasi_choi_state(0.5, 1.5), cutoff));
    out.push_back({"gaussian.rci_vs_fock_cutoff40", std::abs(rci_moment - rci_fock), 1e-6});

    GaussianState g1 = tmsv_state(1.5);
    GaussianState g2 = apply_lossy(LossyChannel(0.9), tmsv_state(1.5), 1);
    double re_moment = gaussian_relative_entropy(g1, g2);
    double re_fock = fock_oracle_rel_entropy(g1, g2, cutoff);
    out.push_back({"gaussian.rel_entropy_vs_fock_cutoff40", std::abs(re_moment - re_fock), 1e-6});

    // Thermal relative entropy: classical geometric-distribution formula.
    auto thermal = [](double nu) {
        RealMatrix v = nu * RealMatrix::Identity(2, 2);
        return GaussianState(RealVector::Zero(2), v);
    };
    double nu1 = 1.2, nu2 = 3.0;
    double lam1 = (nu1 - 1) / (nu1 + 1), lam2 = (nu2 - 1) / (nu2 + 1);
    double nbar1 = (nu1 - 1) / 2;
    double analytic = std::log2((1 - lam1) / (1 - lam2)) + nbar1 * std::log2(lam1 / lam2);
    out.push_back({"gaussian.thermal_rel_entropy_analytic",
                   std::abs(gaussian_relative_entropy(thermal(nu1), thermal(nu2)) - analytic),
                   1e-9});

    // Hand-evaluated PLOB sandwiches.
    auto sw1 = lossy_mixture_bounds({1.0}, {0.5});
    double dev = std::abs(sw1.upper - 1.0) + std::abs(sw1.lower - 1.0);
    auto sw2 = lossy_mixture_bounds({0.5, 0.5}, {0.5, 0.8});
    dev = std::max(dev, std::abs(sw2.upper - 1.660964047443681) +
                            std::abs(sw2.lower - 0.660964047443681));
    auto sw3 = lossy_mixture_bounds({0.2, 0.3, 0.5}, {0.1, 0.5, 0.9});
    dev = std::max(dev, std::abs(sw3.upper - 1.991364666132691) +
                            std::abs(sw3.lower - 0.505889368905357));
    out.push_back({"gaussian.lossy_mixture_sandwiches", dev, 1e-6});

    // Continuous uniform mixture vs the symbolic integral 1/ln2 - 1.
    auto quad = continuous_mixture_upper([](double) { return 2.0; }, 0.0, 0.5);
    out.push_back({"gaussian.uniform_density_quadrature",
                   std::abs(quad.value - 0.4426950408889634), 1e-6});

    std::vector<std::pair<Complex, Complex>> samples = {
        {{0.0, 0.0}, {1.0, -0.5}}, {{2.0, 1.0}, {0.3, 0.7}}, {{-1.5, 0.2}, {-0.4, 1.1}}};
    out.push_back({"gaussian.classical_env_covariance",
                   classical_env_covariance_check(0.3, samples) ? 0.0 : 1.0, 0.5});

    // Uncertainty relation preserved by loss.
    double worst = 0.0;
    for (double eta : {0.0, 0.3, 0.7, 1.0}) {
        GaussianState g = apply_lossy(LossyChannel(eta), tmsv_state(2.0), 1);
        Matrix m = g.cov.cast<Complex>() +
                   Complex(0, 1) * symplectic_form(2).cast<Complex>();
        EigH e = eig_hermitian(m);
        worst = std::max(worst, -e.values.minCoeff());
    }
    out.push_back({"gaussian.uncertainty_preserved_by_loss", worst, tol.uncertainty_slack});
    return out;
}

std::vector<CheckResult> verify_suite(const std::string& name, std::uint64_t seed) {
    if (name == "condsim") return verify_condsim(seed);
    if (name == "teleport") return verify_teleport(seed);
    if (name == "ree") return verify_ree(seed);
    if (name == "gaussian") return verify_gaussian(seed);
    if (name == "all") {
        std::vector<CheckResult> all;
        for (const char* suite : {"condsim", "teleport", "ree", "gaussian"}) {
            auto part = verify_suite(suite, seed);
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    throw std::invalid_argument("unknown verification suite: " + name);
}

}  // namespace qmix
