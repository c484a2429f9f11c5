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

// Experiment runner. Each subcommand writes one CSV table whose header
// echoes every option, so a run can be repeated from its own output.

#include "vqtrain/analysis.hpp"
#include "vqtrain/control.hpp"
#include "vqtrain/errors.hpp"
#include "vqtrain/parallel.hpp"
#include "vqtrain/pvqd.hpp"
#include "vqtrain/rng.hpp"
#include "vqtrain/table.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using vqtrain::ResultTable;

// Semantic flag errors detected after parsing; reported as usage errors.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& message) {
    if (!ok) throw UsageError(message);
}

struct Common {
    std::uint64_t seed = 0;
    int instances = 1;
    std::string out = "-";
    int threads = vqtrain::default_threads();
    bool summarize = false;
};

struct CircuitArgs {
    std::string ansatz = "yz-cnot";
    int qubits = 4;
    int layers = 2;
    std::optional<std::uint64_t> axis_seed;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--seed", c.seed, "base seed; instance seeds are derived from it");
    app->add_option("--instances", c.instances, "number of random instances");
    app->add_option("--out", c.out, "output file, '-' for stdout");
    app->add_option("--threads", c.threads, "worker threads for instance-parallel work");
    app->add_flag("--summarize", c.summarize, "append an aggregate CSV block");
}

void add_circuit(CLI::App* app, CircuitArgs& c) {
    app->add_option("--ansatz", c.ansatz, "yz-cnot, yz-sqiswap or r-cphase");
    app->add_option("--qubits", c.qubits, "number of qubits");
    app->add_option("--layers", c.layers, "number of ansatz layers");
    app->add_option("--axis-seed", c.axis_seed, "rotation-axis seed for r-cphase (default: --seed)");
}

void check_common(const Common& c) {
    require(c.instances >= 1, "--instances must be at least 1");
    require(c.threads >= 1, "--threads must be at least 1");
}

vqtrain::CircuitSpec make_circuit(const CircuitArgs& a, std::uint64_t seed) {
    vqtrain::AnsatzKind kind;
    try {
        kind = vqtrain::parse_ansatz_kind(a.ansatz);
    } catch (const vqtrain::ContractError& e) {
        throw UsageError(e.what());
    }
    require(kind != vqtrain::AnsatzKind::PRODUCT_RY, "--ansatz must be yz-cnot, yz-sqiswap or r-cphase");
    require(a.qubits >= 2 && a.qubits <= 16, "--qubits must lie in [2, 16]");
    require(a.layers >= 1, "--layers must be at least 1");
    return vqtrain::build_ansatz(kind, a.qubits, a.layers, a.axis_seed.value_or(seed));
}

void echo_common(ResultTable& t, const std::string& sub, const Common& c) {
    t.add_meta("tool", "vqtrain");
    t.add_meta("version", VQTRAIN_VERSION);
    t.add_meta("subcommand", sub);
    t.add_meta("seed", std::to_string(c.seed));
    t.add_meta("instances", static_cast<long long>(c.instances));
    t.add_meta("summarize", c.summarize ? "true" : "false");
}

void echo_circuit(ResultTable& t, const vqtrain::CircuitSpec& circuit) {
    t.add_meta("ansatz", vqtrain::to_string(circuit.kind()));
    t.add_meta("qubits", static_cast<long long>(circuit.n_qubits()));
    t.add_meta("layers", static_cast<long long>(circuit.layers()));
    if (circuit.axis_seed()) t.add_meta("axis_seed", std::to_string(*circuit.axis_seed()));
    t.add_meta("params", static_cast<long long>(circuit.n_params()));
}

double quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

// ---- kernel-scan ----------------------------------------------------------

struct KernelArgs {
    Common common;
    CircuitArgs circuit;
    int points = 21;
    double max_norm = 2.0;
};

std::vector<ResultTable> run_kernel_scan(const KernelArgs& a) {
    check_common(a.common);
    require(a.points >= 2, "--points must be at least 2");
    require(a.max_norm > 0.0, "--max-norm must be positive");
    const vqtrain::CircuitSpec circuit = make_circuit(a.circuit, a.common.seed);
    const auto samples = vqtrain::kernel_scan(
        circuit, {a.common.instances, a.points, a.max_norm, a.common.seed, a.common.threads});
    ResultTable t({"instance", "norm", "fidelity"});
    echo_common(t, "kernel-scan", a.common);
    echo_circuit(t, circuit);
    t.add_meta("points", static_cast<long long>(a.points));
    t.add_meta("max_norm", a.max_norm);
    for (const auto& s : samples) t.add_row({static_cast<long long>(s.instance), s.norm, s.fidelity});
    std::vector<ResultTable> out{t};
    if (a.common.summarize) {
        ResultTable s({"norm", "mean_fidelity", "mean_neg_log_fidelity", "count"});
        for (const auto& b : vqtrain::bin_kernel_samples(samples)) {
            s.add_row({b.norm, b.mean_fidelity, b.mean_neg_log_fidelity, static_cast<long long>(b.count)});
        }
        out.push_back(s);
    }
    return out;
}

// ---- variance-scan --------------------------------------------------------

struct VarianceArgs {
    Common common;
    CircuitArgs circuit;
    std::vector<double> infidelities{0.5, 0.9};
};

std::vector<ResultTable> run_variance_scan(const VarianceArgs& a) {
    check_common(a.common);
    require(a.common.instances >= 2, "--instances must be at least 2 for a variance");
    require(!a.infidelities.empty(), "--infidelities must list at least one value");
    for (double d : a.infidelities) require(d > 0.0 && d < 1.0, "--infidelities values must lie in (0, 1)");
    const vqtrain::CircuitSpec circuit = make_circuit(a.circuit, a.common.seed);
    const auto scan = vqtrain::variance_scan(circuit, a.infidelities, a.common.instances, a.common.seed,
                                             a.common.threads);
    ResultTable t({"n_qubits", "m_params", "infidelity", "var_empirical", "var_eq8", "var_eq9", "floor_random"});
    echo_common(t, "variance-scan", a.common);
    echo_circuit(t, circuit);
    std::string list;
    for (double d : a.infidelities) list += (list.empty() ? "" : ",") + vqtrain::format_double(d);
    t.add_meta("infidelities", list);
    for (const auto& b : scan.buckets) {
        t.add_row({static_cast<long long>(b.n_qubits), static_cast<long long>(b.m_params), b.infidelity,
                   b.var_empirical, b.var_eq8, b.var_eq9, b.floor_random});
    }
    std::vector<ResultTable> out{t};
    if (a.common.summarize) {
        ResultTable s({"instance", "infidelity", "var_eq8", "var_eq9", "trace_f", "trace_f2"});
        for (const auto& i : scan.instances) {
            s.add_row({static_cast<long long>(i.instance), i.infidelity, i.var_eq8, i.var_eq9, i.trace_f,
                       i.trace_f2});
        }
        out.push_back(s);
    }
    return out;
}

// ---- shared optimizer flags -----------------------------------------------

struct OptimizerArgs {
    std::string optimizer = "a-qng";
    std::optional<double> beta;
    std::optional<double> reg;
    std::optional<double> alpha;
    int iters = 20;
};

void add_optimizer(CLI::App* app, OptimizerArgs& o) {
    app->add_option("--optimizer", o.optimizer, "a-g, a-gqng, a-qng, s-qng or adam");
    app->add_option("--beta", o.beta, "GQNG exponent (default per optimizer)");
    app->add_option("--reg", o.reg, "metric regularization epsilon_R (default per optimizer)");
    app->add_option("--alpha", o.alpha, "fixed learning rate for s-qng (1.0) and adam (0.1)");
    app->add_option("--iters", o.iters, "training iterations");
}

vqtrain::OptimizerConfig make_optimizer(const OptimizerArgs& o, std::uint64_t seed) {
    vqtrain::Method method;
    try {
        method = vqtrain::parse_method(o.optimizer);
    } catch (const vqtrain::ContractError& e) {
        throw UsageError(e.what());
    }
    require(o.iters >= 0, "--iters must be non-negative");
    vqtrain::OptimizerConfig c = vqtrain::OptimizerConfig::for_method(method, o.iters, seed);
    if (o.beta) c.beta = *o.beta;
    if (o.reg) c.epsilon_r = *o.reg;
    if (o.alpha) c.fixed_alpha = *o.alpha;
    try {
        c.validate();
    } catch (const vqtrain::ContractError& e) {
        throw UsageError(e.what());
    }
    return c;
}

void echo_optimizer(ResultTable& t, const vqtrain::OptimizerConfig& c) {
    t.add_meta("optimizer", vqtrain::to_string(c.method));
    t.add_meta("beta", c.beta);
    t.add_meta("reg", c.epsilon_r);
    t.add_meta("alpha", c.fixed_alpha);
    t.add_meta("iters", static_cast<long long>(c.iterations));
}

const std::vector<std::string> kTrainColumns{"instance",  "iteration", "infidelity", "alpha1",
                                             "alpha_t",   "grad_norm", "step_norm"};

void add_trace_rows(ResultTable& t, int instance, const vqtrain::TrainTrace& trace) {
    for (const auto& r : trace.rows) {
        t.add_row({static_cast<long long>(instance), static_cast<long long>(r.iteration), r.infidelity, r.alpha1,
                   r.alpha_t, r.grad_norm, r.step_norm});
    }
}

ResultTable summarize_traces(const std::vector<vqtrain::TrainTrace>& traces) {
    ResultTable s({"iteration", "mean_infidelity", "median_infidelity", "p20_infidelity", "p80_infidelity"});
    const std::size_t rows = traces.front().rows.size();
    for (std::size_t k = 0; k < rows; ++k) {
        std::vector<double> v;
        for (const auto& tr : traces) v.push_back(tr.rows[k].infidelity);
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= static_cast<double>(v.size());
        s.add_row({static_cast<long long>(k), mean, quantile(v, 0.5), quantile(v, 0.2), quantile(v, 0.8)});
    }
    return s;
}

// ---- train ----------------------------------------------------------------

struct TrainArgs {
    Common common;
    CircuitArgs circuit;
    OptimizerArgs opt;
    double init_infidelity = 0.9;
    double k0 = 1.0;
};

std::vector<ResultTable> run_train(const TrainArgs& a) {
    check_common(a.common);
    require(a.init_infidelity > 0.0 && a.init_infidelity < 1.0, "--init-infidelity must lie in (0, 1)");
    require(a.k0 > 0.0 && a.k0 <= 1.0, "--k0 must lie in (0, 1]");
    require(1.0 - a.init_infidelity < a.k0, "--init-infidelity must leave the start fidelity below --k0");
    const vqtrain::CircuitSpec circuit = make_circuit(a.circuit, a.common.seed);
    const vqtrain::OptimizerConfig config = make_optimizer(a.opt, a.common.seed);
    std::vector<vqtrain::TrainTrace> traces(static_cast<std::size_t>(a.common.instances));
    vqtrain::parallel_for(traces.size(), a.common.threads, [&](std::size_t i) {
        const std::uint64_t s = vqtrain::instance_seed(a.common.seed, i);
        std::mt19937_64 rng(vqtrain::stream_seed(s, 0));
        const vqtrain::ParamVector theta_t = vqtrain::random_parameters(circuit.n_params(), rng);
        const vqtrain::StateVector target =
            a.k0 < 1.0 ? vqtrain::make_unreachable_target(circuit, theta_t, a.k0, vqtrain::stream_seed(s, 2))
                       : vqtrain::prepare(circuit, theta_t);
        const vqtrain::CircuitObjective objective(circuit, target);
        const vqtrain::ParamVector theta0 =
            vqtrain::init_at_infidelity(objective, theta_t, a.init_infidelity, vqtrain::stream_seed(s, 1));
        traces[i] = vqtrain::train(objective, theta0, config);
    });
    ResultTable t(kTrainColumns);
    echo_common(t, "train", a.common);
    echo_circuit(t, circuit);
    echo_optimizer(t, config);
    t.add_meta("init_infidelity", a.init_infidelity);
    t.add_meta("k0", a.k0);
    for (std::size_t i = 0; i < traces.size(); ++i) add_trace_rows(t, static_cast<int>(i), traces[i]);
    std::vector<ResultTable> out{t};
    if (a.common.summarize) out.push_back(summarize_traces(traces));
    return out;
}

// ---- control --------------------------------------------------------------

struct ControlArgs {
    Common common;
    OptimizerArgs opt;
    int qubits = 6;
    int steps = 16;
    double dt = 1.0;
    double g = 1.0;
    double target_h = 1.0;
    double target_g = 1.0;
    std::optional<double> fd_delta;
    bool periodic = false;
};

std::vector<ResultTable> run_control(const ControlArgs& a) {
    check_common(a.common);
    require(a.qubits >= 1 && a.qubits <= 10, "--qubits must lie in [1, 10]");
    require(a.steps >= 1, "--steps must be at least 1");
    require(a.dt > 0.0, "--dt must be positive");
    if (a.fd_delta) require(*a.fd_delta > 0.0, "--fd-delta must be positive");
    const vqtrain::OptimizerConfig config = make_optimizer(a.opt, a.common.seed);
    std::vector<vqtrain::TrainTrace> traces(static_cast<std::size_t>(a.common.instances));
    vqtrain::parallel_for(traces.size(), a.common.threads, [&](std::size_t i) {
        std::mt19937_64 rng(vqtrain::stream_seed(vqtrain::instance_seed(a.common.seed, i), 0));
        vqtrain::ControlProblem problem = vqtrain::make_control_problem(
            vqtrain::random_protocol(a.qubits, a.steps, a.dt, a.g, rng, a.periodic), a.target_h, a.target_g);
        if (a.fd_delta) problem.fd_delta_gradient = problem.fd_delta_metric = *a.fd_delta;
        traces[i] = vqtrain::train_control(problem, config);
    });
    ResultTable t(kTrainColumns);
    echo_common(t, "control", a.common);
    t.add_meta("qubits", static_cast<long long>(a.qubits));
    t.add_meta("steps", static_cast<long long>(a.steps));
    t.add_meta("dt", a.dt);
    t.add_meta("g", a.g);
    t.add_meta("target_h", a.target_h);
    t.add_meta("target_g", a.target_g);
    t.add_meta("periodic", a.periodic ? "true" : "false");
    if (a.fd_delta) {
        t.add_meta("fd_delta", *a.fd_delta);
    } else {
        t.add_meta("fd_delta_gradient", 1e-5);
        t.add_meta("fd_delta_metric", 1e-4);
    }
    echo_optimizer(t, config);
    for (std::size_t i = 0; i < traces.size(); ++i) add_trace_rows(t, static_cast<int>(i), traces[i]);
    std::vector<ResultTable> out{t};
    if (a.common.summarize) out.push_back(summarize_traces(traces));
    return out;
}

// ---- pvqd -----------------------------------------------------------------

struct PvqdArgs {
    Common common;
    std::string optimizer = "a-gqng";
    int qubits = 6;
    std::optional<int> layers;
    double dt = 0.2;
    int trotter_steps = 10;
    int train_iters = 20;
    double J = 0.25;
    double h = 1.0;
    bool product_formula = false;
    bool periodic = false;
};

std::vector<ResultTable> run_pvqd(const PvqdArgs& a) {
    check_common(a.common);
    require(a.dt > 0.0, "--dt must be positive");
    require(a.trotter_steps >= 1, "--trotter-steps must be at least 1");
    require(a.train_iters >= 1, "--train-iters must be at least 1");
    CircuitArgs ca{"yz-cnot", a.qubits, a.layers.value_or(a.qubits), std::nullopt};
    vqtrain::PvqdConfig config{make_circuit(ca, a.common.seed)};
    config.J = a.J;
    config.h = a.h;
    config.dt = a.dt;
    config.trotter_steps = a.trotter_steps;
    config.train_iterations = a.train_iters;
    config.optimizer = make_optimizer({a.optimizer, std::nullopt, std::nullopt, std::nullopt, a.train_iters},
                                      a.common.seed);
    config.product_formula = a.product_formula;
    config.periodic = a.periodic;
    const vqtrain::PvqdTrajectory traj = vqtrain::pvqd_run(config);

    ResultTable t({"step", "time", "fidelity_exact", "magnetization", "final_loss", "gamma_bound",
                   "fidelity_pre_train", "magnetization_exact"});
    echo_common(t, "pvqd", a.common);
    echo_circuit(t, config.circuit);
    t.add_meta("dt", a.dt);
    t.add_meta("trotter_steps", static_cast<long long>(a.trotter_steps));
    t.add_meta("train_iters", static_cast<long long>(a.train_iters));
    t.add_meta("J", a.J);
    t.add_meta("h", a.h);
    t.add_meta("optimizer", a.optimizer);
    t.add_meta("target", a.product_formula ? "product-formula" : "exact");
    t.add_meta("periodic", a.periodic ? "true" : "false");
    for (const auto& s : traj.steps) {
        if (!s.error.empty()) std::cerr << "step " << s.step << ": training failed: " << s.error << '\n';
        t.add_row({static_cast<long long>(s.step), s.time, s.fidelity_exact, s.magnetization, s.final_loss,
                   s.gamma_bound, s.fidelity_pre_train, s.magnetization_exact});
    }
    std::vector<ResultTable> out{t};
    if (a.common.summarize) {
        ResultTable s({"max_magnetization_error", "min_fidelity_exact", "gamma_violations"});
        double max_err = 0.0;
        double min_fid = 1.0;
        long long violations = 0;
        for (const auto& st : traj.steps) {
            max_err = std::max(max_err, std::abs(st.magnetization - st.magnetization_exact));
            min_fid = std::min(min_fid, st.fidelity_exact);
            if (st.fidelity_pre_train < st.gamma_bound) ++violations;
        }
        s.add_row({max_err, min_fid, violations});
        out.push_back(s);
    }
    return out;
}

void emit(const std::vector<ResultTable>& tables, const std::string& path) {
    std::ostringstream text;
    tables.front().write(text);
    for (std::size_t i = 1; i < tables.size(); ++i) {
        text << "\n# summary\n";
        tables[i].write_body(text);
    }
    if (path == "-") {
        std::cout << text.str();
        std::cout.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
    file << text.str();
    if (!file) throw std::runtime_error("failed writing output file '" + path + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vqtrain: adaptive fidelity training experiments on a statevector simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(VQTRAIN_VERSION));

    KernelArgs ka;
    auto* kernel = app.add_subcommand("kernel-scan", "fidelity against metric norm around random targets");
    add_common(kernel, ka.common);
    add_circuit(kernel, ka.circuit);
    kernel->add_option("--points", ka.points, "grid points per instance");
    kernel->add_option("--max-norm", ka.max_norm, "largest dtheta^T F dtheta on the grid");

    VarianceArgs va;
    auto* variance = app.add_subcommand("variance-scan", "gradient variance against infidelity");
    add_common(variance, va.common);
    add_circuit(variance, va.circuit);
    variance->add_option("--infidelities", va.infidelities, "comma-separated infidelity buckets")->delimiter(',');

    TrainArgs ta;
    auto* trainer = app.add_subcommand("train", "train a circuit toward a random target");
    add_common(trainer, ta.common);
    add_circuit(trainer, ta.circuit);
    add_optimizer(trainer, ta.opt);
    trainer->add_option("--init-infidelity", ta.init_infidelity, "infidelity of the start point");
    trainer->add_option("--k0", ta.k0, "maximal reachable fidelity of the target");

    ControlArgs ca;
    auto* control = app.add_subcommand("control", "optimize a driving protocol for the Ising ground state");
    add_common(control, ca.common);
    add_optimizer(control, ca.opt);
    control->add_option("--qubits", ca.qubits, "chain length");
    control->add_option("--steps", ca.steps, "piecewise-constant steps d");
    control->add_option("--dt", ca.dt, "step duration");
    control->add_option("--g", ca.g, "longitudinal field of the drive");
    control->add_option("--target-h", ca.target_h, "transverse field of the target Hamiltonian");
    control->add_option("--target-g", ca.target_g, "longitudinal field of the target Hamiltonian");
    control->add_option("--fd-delta", ca.fd_delta, "finite-difference step for gradient and metric");
    control->add_flag("--periodic", ca.periodic, "close the chain with an (N, 1) bond");

    PvqdArgs pa;
    auto* pvqd = app.add_subcommand("pvqd", "projected variational dynamics of the transverse Ising chain");
    pvqd->set_help_flag("--help", "Print this help message and exit");
    add_common(pvqd, pa.common);
    pvqd->add_option("--qubits", pa.qubits, "chain length");
    pvqd->add_option("--layers", pa.layers, "ansatz layers (default: qubits)");
    pvqd->add_option("--dt", pa.dt, "time step");
    pvqd->add_option("--trotter-steps", pa.trotter_steps, "number of time steps");
    pvqd->add_option("--train-iters", pa.train_iters, "training iterations per step");
    pvqd->add_option("--J", pa.J, "ZZ coupling");
    pvqd->add_option("--h", pa.h, "transverse field");
    pvqd->add_option("--optimizer", pa.optimizer, "optimizer for each step");
    pvqd->add_flag("--product-formula", pa.product_formula, "first-order product formula target");
    pvqd->add_flag("--periodic", pa.periodic, "close the chain with an (N, 1) bond");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\nRun with --help for usage.\n";
        return 2;
    }

    try {
        std::vector<ResultTable> tables;
        std::string out;
        if (kernel->parsed()) {
            tables = run_kernel_scan(ka);
            out = ka.common.out;
        } else if (variance->parsed()) {
            tables = run_variance_scan(va);
            out = va.common.out;
        } else if (trainer->parsed()) {
            tables = run_train(ta);
            out = ta.common.out;
        } else if (control->parsed()) {
            tables = run_control(ca);
            out = ca.common.out;
        } else {
            tables = run_pvqd(pa);
            out = pa.common.out;
        }
        emit(tables, out);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
