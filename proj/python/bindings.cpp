#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmix/bounds.hpp"
#include "qmix/condsim.hpp"
#include "qmix/entropy.hpp"
#include "qmix/fock.hpp"
#include "qmix/gaussian.hpp"
#include "qmix/random.hpp"
#include "qmix/ree.hpp"
#include "qmix/verify.hpp"

namespace py = pybind11;
using namespace qmix;

namespace {

std::vector<Party> parse_labels(const std::string& labels) {
    std::vector<Party> out;
    for (char c : labels) {
        switch (c) {
            case 'C': out.push_back(Party::C); break;
            case 'A': out.push_back(Party::A); break;
            case 'B': out.push_back(Party::B); break;
            case 'T': out.push_back(Party::T); break;
            case 'E': out.push_back(Party::E); break;
            default: throw std::invalid_argument("labels must be drawn from CABTE");
        }
    }
    return out;
}

std::string labels_str(const SubsystemSignature& sig) {
    std::string s;
    for (Party p : sig.labels) s.push_back(static_cast<char>(p));
    return s;
}

py::dict report_dict(const CapacityReport& r) {
    py::dict d;
    d["channel_id"] = r.channel_id;
    d["params"] = r.params;
    d["lower"] = r.lower ? py::object(py::float_(*r.lower)) : py::object(py::none());
    d["upper"] = r.upper;
    d["exact"] = r.exact;
    d["method_notes"] = r.method_notes;
    d["capacity_chain"] = r.capacity_chain;
    return d;
}

ChannelEnsemble ensemble_of(const std::vector<std::pair<double, QuantumChannel>>& entries) {
    std::vector<EnsembleEntry> es;
    for (const auto& [p, ch] : entries) es.push_back({p, ch});
    return ChannelEnsemble(std::move(es));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Conditional simulation of quantum channel mixtures and capacity bounds";

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init([](const Matrix& mat, const std::vector<int>& dims,
                         const std::string& labels) {
                 return DensityMatrix(mat, dims, parse_labels(labels));
             }),
             py::arg("matrix"), py::arg("dims"), py::arg("labels"))
        .def_property_readonly("matrix", &DensityMatrix::mat)
        .def_property_readonly("dims",
                               [](const DensityMatrix& r) { return r.sig().dims; })
        .def_property_readonly("labels",
                               [](const DensityMatrix& r) { return labels_str(r.sig()); })
        .def_property_readonly("dim", &DensityMatrix::dim)
        .def("__repr__", [](const DensityMatrix& r) {
            return "<DensityMatrix " + r.sig().str() + ">";
        });

    m.def("tensor", [](const DensityMatrix& a, const DensityMatrix& b) { return tensor(a, b); });
    m.def(
        "partial_trace",
        [](const DensityMatrix& rho, const std::string& keep) {
            return partial_trace(rho, parse_labels(keep));
        },
        py::arg("rho"), py::arg("keep"));
    m.def("max_entangled_state", &max_entangled_state, py::arg("d"));

    py::class_<QuantumChannel>(m, "QuantumChannel")
        .def_static("from_kraus", &QuantumChannel::from_kraus, py::arg("kraus"))
        .def_static("from_choi", &QuantumChannel::from_choi, py::arg("choi"))
        .def_property_readonly("d_in", &QuantumChannel::d_in)
        .def_property_readonly("d_out", &QuantumChannel::d_out)
        .def_property_readonly("kraus", &QuantumChannel::kraus)
        .def_property_readonly("choi", &QuantumChannel::choi)
        .def("apply", py::overload_cast<const DensityMatrix&>(&QuantumChannel::apply, py::const_),
             py::arg("rho"))
        .def("__repr__", [](const QuantumChannel& c) {
            return "<QuantumChannel " + std::to_string(c.d_in()) + "->" +
                   std::to_string(c.d_out()) + ">";
        });

    m.def("identity_channel", &identity_channel, py::arg("d"));
    m.def("dephasing_channel", &dephasing_channel, py::arg("q"));
    m.def("pauli_channel", &pauli_channel, py::arg("p_i"), py::arg("p_x"), py::arg("p_y"),
          py::arg("p_z"));
    m.def("erasure_channel", &erasure_channel, py::arg("d"), py::arg("p"));
    m.def("replacer0_channel", &replacer0_channel);
    m.def("erasure_replacer_channel", &erasure_replacer_channel);
    m.def("dephrasure_channel", &dephrasure_channel, py::arg("p"), py::arg("q"));
    m.def("dad_channel", &dad_channel, py::arg("p"));
    m.def("pipeline_channel", &pipeline_channel, py::arg("inner"), py::arg("p"));
    m.def("compose", &compose, py::arg("g"), py::arg("f"));
    m.def(
        "mixture",
        [](const std::vector<std::pair<double, QuantumChannel>>& entries) {
            return mixture(ensemble_of(entries));
        },
        py::arg("entries"));

    m.def(
        "jointly_covariant",
        [](const std::vector<QuantumChannel>& comps) {
            int d = comps.at(0).d_in();
            return jointly_covariant(comps, WeylGroup(d));
        },
        py::arg("components"));
    m.def(
        "teleport_simulation_deviation",
        [](const QuantumChannel& ch) {
            WeylGroup g(ch.d_in());
            auto table = covariance_table(ch, g);
            if (!table) throw std::invalid_argument("channel is not teleportation covariant");
            return teleport_simulation_deviation(ch, *table);
        },
        py::arg("channel"));

    m.def(
        "conditional_choi",
        [](const std::vector<std::pair<double, QuantumChannel>>& entries) {
            auto sim = SimulatedEnsemble::from_covariant_components(ensemble_of(entries));
            return conditional_channel(sim).choi();
        },
        py::arg("entries"),
        "Choi state of the control-program conditional simulation of the mixture");
    m.def(
        "verify_conditional_simulation",
        [](const std::vector<std::pair<double, QuantumChannel>>& entries) {
            auto sim = SimulatedEnsemble::from_covariant_components(ensemble_of(entries));
            return verify_simulation(sim);
        },
        py::arg("entries"),
        "Max-norm deviation between the conditional simulation and the average channel");
    m.def(
        "control_program_state",
        [](const std::vector<std::pair<double, QuantumChannel>>& entries) {
            auto sim = SimulatedEnsemble::from_covariant_components(ensemble_of(entries));
            return build_control_program(sim).realized;
        },
        py::arg("entries"));
    m.def(
        "finite_size_bound",
        [](long long n, double eps, double alpha, double sum_ree) {
            return finite_size_bound({n, eps, alpha}, sum_ree);
        },
        py::arg("n"), py::arg("eps"), py::arg("alpha"), py::arg("sum_ree"));
    m.def("memory_bound", &memory_bound, py::arg("ree_per_slot"), py::arg("joint_p"));

    m.def("binary_entropy", &binary_entropy, py::arg("x"));
    m.def("von_neumann_entropy",
          py::overload_cast<const DensityMatrix&>(&von_neumann_entropy), py::arg("rho"));
    m.def("relative_entropy",
          py::overload_cast<const DensityMatrix&, const DensityMatrix&>(&relative_entropy),
          py::arg("rho"), py::arg("sigma"));
    m.def("coherent_information", &coherent_information, py::arg("channel"));
    m.def("reverse_coherent_information", &reverse_coherent_information, py::arg("channel"));

    py::class_<ReeResult>(m, "ReeResult")
        .def_readonly("value", &ReeResult::value)
        .def_readonly("gap_estimate", &ReeResult::gap_estimate)
        .def_readonly("iterations", &ReeResult::iterations)
        .def_readonly("witness", &ReeResult::witness)
        .def_property_readonly("method",
                               [](const ReeResult& r) {
                                   switch (r.method) {
                                       case ReeMethod::ClosedForm: return "closed-form";
                                       case ReeMethod::CandidateState: return "candidate-state";
                                       default: return "frank-wolfe-ppt";
                                   }
                               })
        .def("__repr__", [](const ReeResult& r) {
            return "<ReeResult value=" + std::to_string(r.value) + ">";
        });

    m.def(
        "ree_ppt",
        [](const DensityMatrix& rho, int max_iter, double tol_in, const std::string& alice) {
            ReeOptions opts;
            opts.max_iter = max_iter;
            opts.tol = tol_in;
            opts.alice = parse_labels(alice);
            return ree_ppt(rho, opts);
        },
        py::arg("rho"), py::arg("max_iter") = 3000, py::arg("tol") = 1e-6,
        py::arg("alice") = "CAT");
    m.def(
        "ree_upper_bound",
        [](const DensityMatrix& rho, const DensityMatrix& candidate, const std::string& alice) {
            return ree_upper_bound(rho, candidate, parse_labels(alice));
        },
        py::arg("rho"), py::arg("candidate"), py::arg("alice") = "CAT");
    m.def("bell_diagonal_state", &bell_diagonal_state, py::arg("weights"));
    m.def("bell_diagonal_ree",
          [](const std::vector<double>& w) { return bell_diagonal_ree(w).value; },
          py::arg("weights"));

    py::class_<GaussianState>(m, "GaussianState")
        .def(py::init<RealVector, RealMatrix>(), py::arg("mean"), py::arg("cov"))
        .def_readonly("mean", &GaussianState::mean)
        .def_readonly("cov", &GaussianState::cov)
        .def_property_readonly("modes", &GaussianState::modes);

    m.def("tmsv_state", &tmsv_state, py::arg("mu"));
    m.def(
        "apply_lossy",
        [](const GaussianState& g, double eta, int mode, Complex gamma) {
            return apply_lossy(LossyChannel(eta, gamma), g, mode);
        },
        py::arg("state"), py::arg("eta"), py::arg("mode") = 0,
        py::arg("gamma") = Complex(0, 0));
    m.def("quasi_choi_state", &quasi_choi_state, py::arg("eta"), py::arg("mu"));
    m.def("symplectic_eigenvalues", &symplectic_eigenvalues, py::arg("state"));
    m.def("symplectic_entropy", &symplectic_entropy, py::arg("state"));
    m.def("gaussian_rci", &gaussian_rci, py::arg("eta"), py::arg("mu"));
    m.def("gaussian_relative_entropy", &gaussian_relative_entropy, py::arg("g1"), py::arg("g2"));
    m.def("plob_bound", &plob_bound, py::arg("eta"));
    m.def(
        "lossy_mixture_bounds",
        [](const std::vector<double>& probs, const std::vector<double>& etas) {
            SandwichBounds b = lossy_mixture_bounds(probs, etas);
            return std::make_pair(b.lower, b.upper);
        },
        py::arg("probs"), py::arg("etas"));
    m.def(
        "continuous_mixture_upper",
        [](const std::function<double(double)>& density, double eta_min, double eta_max,
           double abs_tol) {
            QuadratureResult r = continuous_mixture_upper(density, eta_min, eta_max, abs_tol);
            return std::make_pair(r.value, r.error_estimate);
        },
        py::arg("density"), py::arg("eta_min"), py::arg("eta_max"), py::arg("abs_tol") = 1e-8);

    m.def("fock_oracle", &fock_oracle, py::arg("state"), py::arg("cutoff"));
    m.def("fock_oracle_rel_entropy", &fock_oracle_rel_entropy, py::arg("g1"), py::arg("g2"),
          py::arg("cutoff"));
    m.def("fock_rci", &fock_rci, py::arg("rho"));
    m.def("fock_trace_deficit", &fock_trace_deficit, py::arg("state"), py::arg("cutoff"));

    m.def("dephrasure_capacities",
          [](double p, double q) { return report_dict(dephrasure_capacities(p, q)); },
          py::arg("p"), py::arg("q"));
    m.def("dad_bound", [](double p) { return report_dict(dad_bound(p)); }, py::arg("p"));
    m.def("pipeline_bound", &pipeline_bound, py::arg("inner_ree"), py::arg("p"));
    m.def(
        "lossy_mixture_report",
        [](const std::vector<double>& probs, const std::vector<double>& etas) {
            return report_dict(lossy_mixture_report(probs, etas));
        },
        py::arg("probs"), py::arg("etas"));
    m.def(
        "memory_dad_report",
        [](int slots, double p, bool correlated) {
            return report_dict(memory_dad_report(slots, p, correlated));
        },
        py::arg("slots"), py::arg("p"), py::arg("correlated"));

    m.def(
        "verify",
        [](const std::string& suite, std::uint64_t seed) {
            py::list out;
            for (const auto& c : verify_suite(suite, seed)) {
                py::dict d;
                d["name"] = c.name;
                d["deviation"] = c.deviation;
                d["threshold"] = c.threshold;
                d["passed"] = c.passed();
                out.append(d);
            }
            return out;
        },
        py::arg("suite"), py::arg("seed") = 42);
}
