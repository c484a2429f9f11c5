// Copyright 2026 The vqtrain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vqtrain/analysis.hpp"
#include "vqtrain/control.hpp"
#include "vqtrain/errors.hpp"
#include "vqtrain/pvqd.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <random>
#include <string>

namespace py = pybind11;
using namespace vqtrain;

namespace {

OptimizerConfig make_config(const std::string& method, int iterations, std::optional<double> beta,
                            std::optional<double> epsilon_r, std::optional<double> alpha, std::uint64_t seed) {
    OptimizerConfig cfg = OptimizerConfig::for_method(parse_method(method), iterations, seed);
    if (beta) cfg.beta = *beta;
    if (epsilon_r) cfg.epsilon_r = *epsilon_r;
    if (alpha) cfg.fixed_alpha = *alpha;
    return cfg;
}

py::dict trace_to_dict(const TrainTrace& trace) {
    std::vector<int> iteration;
    std::vector<double> infidelity, alpha1, alpha_t, grad_norm, step_norm;
    for (const TrainRow& r : trace.rows) {
        iteration.push_back(r.iteration);
        infidelity.push_back(r.infidelity);
        alpha1.push_back(r.alpha1);
        alpha_t.push_back(r.alpha_t);
        grad_norm.push_back(r.grad_norm);
        step_norm.push_back(r.step_norm);
    }
    py::dict out;
    out["iteration"] = iteration;
    out["infidelity"] = infidelity;
    out["alpha1"] = alpha1;
    out["alpha_t"] = alpha_t;
    out["grad_norm"] = grad_norm;
    out["step_norm"] = step_norm;
    out["final_theta"] = trace.final_theta;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "C++ core of vqtrain";
    m.attr("__version__") = VQTRAIN_VERSION;

    static py::exception<Error> base(m, "VqtrainError", PyExc_RuntimeError);
    py::register_exception<SizeError>(m, "SizeError", PyExc_ValueError);
    py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConditioningError>(m, "ConditioningError", base.ptr());

    py::class_<StateVector>(m, "State")
        .def(py::init([](int n_qubits, const ComplexVector& amplitudes, bool normalize) {
                 return normalize ? StateVector::normalized(n_qubits, amplitudes) : StateVector(n_qubits, amplitudes);
             }),
             py::arg("n_qubits"), py::arg("amplitudes"), py::arg("normalize") = false)
        .def_property_readonly("n_qubits", &StateVector::n_qubits)
        .def_property_readonly("amplitudes", &StateVector::amplitudes)
        .def("__len__", &StateVector::dimension);

    py::class_<CircuitSpec>(m, "Circuit")
        .def_property_readonly("n_qubits", &CircuitSpec::n_qubits)
        .def_property_readonly("n_params", &CircuitSpec::n_params)
        .def_property_readonly("layers", &CircuitSpec::layers)
        .def_property_readonly("kind", [](const CircuitSpec& c) { return to_string(c.kind()); })
        .def("serialize", &CircuitSpec::serialize)
        .def("__repr__", [](const CircuitSpec& c) {
            return "<Circuit " + to_string(c.kind()) + " qubits=" + std::to_string(c.n_qubits()) +
                   " params=" + std::to_string(c.n_params()) + ">";
        });

    m.def(
        "build_ansatz",
        [](const std::string& kind, int n_qubits, int layers, std::optional<std::uint64_t> axis_seed) {
            return build_ansatz(parse_ansatz_kind(kind), n_qubits, layers, axis_seed);
        },
        py::arg("kind"), py::arg("n_qubits"), py::arg("layers"), py::arg("axis_seed") = py::none(),
        "Layered ansatz: 'yz-cnot', 'yz-sqiswap' or 'r-cphase'.");
    m.def("build_product_ansatz", &build_product_ansatz, py::arg("n_qubits"));
    m.def(
        "random_parameters",
        [](int n, std::uint64_t seed) {
            std::mt19937_64 rng(seed);
            return random_parameters(n, rng);
        },
        py::arg("n_params"), py::arg("seed"), "Uniform angles in [0, 2 pi).");

    m.def("prepare", &prepare, py::arg("circuit"), py::arg("theta"));
    m.def("fidelity", &fidelity, py::arg("a"), py::arg("b"));
    m.def("tangents", &tangents, py::arg("circuit"), py::arg("theta"));
    m.def("fidelity_gradient", py::overload_cast<const CircuitSpec&, const ParamVector&, const StateVector&>(
                                   &fidelity_gradient),
          py::arg("circuit"), py::arg("theta"), py::arg("target"));
    m.def("parameter_shift_gradient", &parameter_shift_gradient, py::arg("circuit"), py::arg("theta"),
          py::arg("target"));
    m.def(
        "qfim", [](const CircuitSpec& c, const ParamVector& theta) { return qfim(c, theta).matrix(); },
        py::arg("circuit"), py::arg("theta"), "Quantum Fisher information metric at theta.");
    m.def(
        "gqng",
        [](const RealMatrix& metric, const RealVector& grad, double beta, double epsilon_r, bool clamp) {
            GradientConfig cfg{beta, epsilon_r};
            cfg.clamp_ill_conditioned = clamp;
            return gqng(Metric(metric), grad, cfg);
        },
        py::arg("metric"), py::arg("grad"), py::arg("beta"), py::arg("epsilon_r") = 0.0,
        py::arg("clamp_ill_conditioned") = false, "(F + eps I)^-beta grad.");

    m.def(
        "init_at_infidelity",
        [](const CircuitSpec& c, const ParamVector& theta_t, double infidelity, std::uint64_t seed) {
            return init_at_infidelity(c, theta_t, infidelity, seed);
        },
        py::arg("circuit"), py::arg("theta_target"), py::arg("infidelity"), py::arg("seed"));
    m.def("make_unreachable_target", &make_unreachable_target, py::arg("circuit"), py::arg("theta_target"),
          py::arg("k0"), py::arg("seed"));
    m.def(
        "train",
        [](const CircuitSpec& c, const ParamVector& theta_init, const StateVector& target, const std::string& method,
           int iterations, std::optional<double> beta, std::optional<double> epsilon_r, std::optional<double> alpha,
           std::uint64_t seed) {
            const OptimizerConfig cfg = make_config(method, iterations, beta, epsilon_r, alpha, seed);
            TrainTrace trace;
            {
                py::gil_scoped_release release;
                trace = train(c, theta_init, target, cfg);
            }
            return trace_to_dict(trace);
        },
        py::arg("circuit"), py::arg("theta_init"), py::arg("target"), py::arg("method") = "a-gqng",
        py::arg("iterations") = 20, py::arg("beta") = py::none(), py::arg("epsilon_r") = py::none(),
        py::arg("alpha") = py::none(), py::arg("seed") = 0,
        "Fidelity training; returns per-iteration columns and final_theta.");

    py::class_<ControlProblem>(m, "ControlProblem")
        .def_property_readonly("amplitudes", [](const ControlProblem& p) { return p.protocol.amplitudes; })
        .def_property_readonly("n_params", [](const ControlProblem& p) { return p.protocol.n_params(); })
        .def_property_readonly("target", [](const ControlProblem& p) { return p.target; })
        .def("fidelity", &protocol_fidelity)
        .def("with_amplitudes", [](const ControlProblem& p, const RealMatrix& amplitudes) {
            ControlProblem out = p;
            out.protocol.amplitudes = amplitudes;
            out.protocol.validate();
            return out;
        });
    m.def(
        "make_control_problem",
        [](int n_qubits, int steps, double dt, double g, double target_h, double target_g, std::uint64_t seed,
           bool periodic) {
            std::mt19937_64 rng(seed);
            return make_control_problem(random_protocol(n_qubits, steps, dt, g, rng, periodic), target_h, target_g);
        },
        py::arg("n_qubits"), py::arg("steps"), py::arg("dt") = 1.0, py::arg("g") = 1.0, py::arg("target_h") = 1.0,
        py::arg("target_g") = 1.0, py::arg("seed") = 0, py::arg("periodic") = false,
        "Random protocol in [-1, 1] driving |0...0> toward the Ising ground state.");
    m.def("evolve_protocol", &evolve_protocol, py::arg("problem"));
    m.def("control_gradient", &control_gradient, py::arg("problem"));
    m.def(
        "control_qfim", [](const ControlProblem& p) { return control_qfim(p).matrix(); }, py::arg("problem"));
    m.def(
        "train_control",
        [](const ControlProblem& p, const std::string& method, int iterations, std::optional<double> beta,
           std::optional<double> epsilon_r, std::optional<double> alpha, std::uint64_t seed) {
            const OptimizerConfig cfg = make_config(method, iterations, beta, epsilon_r, alpha, seed);
            TrainTrace trace;
            {
                py::gil_scoped_release release;
                trace = train_control(p, cfg);
            }
            return trace_to_dict(trace);
        },
        py::arg("problem"), py::arg("method") = "a-qng", py::arg("iterations") = 20, py::arg("beta") = py::none(),
        py::arg("epsilon_r") = py::none(), py::arg("alpha") = py::none(), py::arg("seed") = 0);

    m.def(
        "pvqd_run",
        [](int n_qubits, int layers, double J, double h, double dt, int trotter_steps, int train_iterations,
           const std::string& method, bool product_formula, bool periodic) {
            PvqdConfig cfg{build_ansatz(AnsatzKind::YZ_CNOT, n_qubits, layers)};
            cfg.J = J;
            cfg.h = h;
            cfg.dt = dt;
            cfg.trotter_steps = trotter_steps;
            cfg.train_iterations = train_iterations;
            cfg.optimizer = OptimizerConfig::for_method(parse_method(method), train_iterations);
            cfg.product_formula = product_formula;
            cfg.periodic = periodic;
            PvqdTrajectory tr;
            {
                py::gil_scoped_release release;
                tr = pvqd_run(cfg);
            }
            std::vector<double> time, fid, mag, mag_exact, loss, gamma, pre;
            for (const PvqdStep& s : tr.steps) {
                time.push_back(s.time);
                fid.push_back(s.fidelity_exact);
                mag.push_back(s.magnetization);
                mag_exact.push_back(s.magnetization_exact);
                loss.push_back(s.final_loss);
                gamma.push_back(s.gamma_bound);
                pre.push_back(s.fidelity_pre_train);
            }
            py::dict out;
            out["time"] = time;
            out["fidelity_exact"] = fid;
            out["magnetization"] = mag;
            out["magnetization_exact"] = mag_exact;
            out["final_loss"] = loss;
            out["gamma_bound"] = gamma;
            out["fidelity_pre_train"] = pre;
            out["final_theta"] = tr.final_theta;
            return out;
        },
        py::arg("n_qubits"), py::arg("layers"), py::arg("J") = 0.25, py::arg("h") = 1.0, py::arg("dt") = 0.2,
        py::arg("trotter_steps") = 10, py::arg("train_iterations") = 20, py::arg("method") = "a-gqng",
        py::arg("product_formula") = false, py::arg("periodic") = false,
        "Projected variational dynamics of the transverse-field Ising chain with a YZ-CNOT circuit.");

    m.def(
        "kernel_scan",
        [](const CircuitSpec& c, int instances, int points, double max_norm, std::uint64_t seed, int threads) {
            KernelScanConfig cfg{instances, points, max_norm, seed, threads};
            std::vector<KernelSample> samples;
            {
                py::gil_scoped_release release;
                samples = kernel_scan(c, cfg);
            }
            std::vector<int> instance;
            std::vector<double> norm, fid;
            for (const KernelSample& s : samples) {
                instance.push_back(s.instance);
                norm.push_back(s.norm);
                fid.push_back(s.fidelity);
            }
            py::dict out;
            out["instance"] = instance;
            out["norm"] = norm;
            out["fidelity"] = fid;
            return out;
        },
        py::arg("circuit"), py::arg("instances") = 10, py::arg("points") = 21, py::arg("max_norm") = 2.0,
        py::arg("seed") = 0, py::arg("threads") = 1);
    m.def(
        "variance_scan",
        [](const CircuitSpec& c, const std::vector<double>& infidelities, int instances, std::uint64_t seed,
           int threads) {
            VarianceScan scan;
            {
                py::gil_scoped_release release;
                scan = variance_scan(c, infidelities, instances, seed, threads);
            }
            std::vector<double> dk, emp, eq8, eq9;
            for (const VarianceSample& b : scan.buckets) {
                dk.push_back(b.infidelity);
                emp.push_back(b.var_empirical);
                eq8.push_back(b.var_eq8);
                eq9.push_back(b.var_eq9);
            }
            py::dict out;
            out["infidelity"] = dk;
            out["var_empirical"] = emp;
            out["var_predicted"] = eq8;
            out["var_lower_bound"] = eq9;
            return out;
        },
        py::arg("circuit"), py::arg("infidelities"), py::arg("instances") = 20, py::arg("seed") = 0,
        py::arg("threads") = 1);
}
