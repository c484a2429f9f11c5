# Copyright 2026 The vqtrain Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
import math

import numpy as np
import pytest

import vqtrain as vq


@pytest.fixture
def circuit():
    return vq.build_ansatz("yz-cnot", 4, 2)


def test_circuit_shape(circuit):
    assert circuit.n_qubits == 4
    assert circuit.n_params == 16
    assert circuit.kind == "yz-cnot"
    assert "CNOT q0 q1" in circuit.serialize()


def test_prepare_and_fidelity(circuit):
    theta = vq.random_parameters(circuit.n_params, 3)
    psi = vq.prepare(circuit, theta)
    assert psi.amplitudes.shape == (16,)
    assert np.linalg.norm(psi.amplitudes) == pytest.approx(1.0)
    assert vq.fidelity(psi, psi) == pytest.approx(1.0)
    zero = vq.prepare(circuit, np.zeros(circuit.n_params))
    assert abs(zero.amplitudes[0]) == pytest.approx(1.0)


def test_gradients_agree(circuit):
    theta = vq.random_parameters(circuit.n_params, 1)
    target = vq.prepare(circuit, vq.random_parameters(circuit.n_params, 2))
    g = vq.fidelity_gradient(circuit, theta, target)
    s = vq.parameter_shift_gradient(circuit, theta, target)
    np.testing.assert_allclose(g, s, atol=1e-10)


def test_qfim_and_gqng(circuit):
    theta = vq.random_parameters(circuit.n_params, 5)
    f = vq.qfim(circuit, theta)
    np.testing.assert_allclose(f, f.T, atol=1e-12)
    assert np.linalg.eigvalsh(f).min() > -1e-9
    grad = np.ones(circuit.n_params)
    np.testing.assert_allclose(vq.gqng(f, grad, 0.0), grad)
    with pytest.raises(vq.ConditioningError):
        vq.gqng(np.diag([1.0, 0.0]), np.ones(2), 1.0)


def test_training_reduces_infidelity(circuit):
    star = vq.random_parameters(circuit.n_params, 7)
    target = vq.prepare(circuit, star)
    init = vq.init_at_infidelity(circuit, star, 0.5, 11)
    trace = vq.train(circuit, init, target, method="a-qng", iterations=10)
    assert trace["infidelity"][0] == pytest.approx(0.5, abs=1e-8)
    assert trace["infidelity"][-1] < 0.05
    again = vq.train(circuit, init, target, method="a-qng", iterations=10)
    assert again["infidelity"] == trace["infidelity"]


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        vq.build_ansatz("nope", 3, 1)
    with pytest.raises(ValueError):
        vq.build_ansatz("yz-cnot", 1, 1)


def test_control_round_trip():
    prob = vq.make_control_problem(2, 3, seed=4)
    assert prob.amplitudes.shape == (3, 2)
    assert 0.0 <= prob.fidelity() <= 1.0
    assert vq.control_gradient(prob).shape == (6,)
    assert vq.control_qfim(prob).shape == (6, 6)
    trace = vq.train_control(prob, iterations=3)
    assert len(trace["infidelity"]) == 4


def test_pvqd_tracks_magnetization():
    out = vq.pvqd_run(3, 3, trotter_steps=3, train_iterations=10)
    assert out["time"] == pytest.approx([0.0, 0.2, 0.4, 0.6])
    err = np.abs(np.array(out["magnetization"]) - np.array(out["magnetization_exact"]))
    assert err.max() < 0.1


def test_scans():
    c = vq.build_ansatz("yz-cnot", 3, 2)
    k = vq.kernel_scan(c, instances=2, points=5)
    assert len(k["fidelity"]) == 10
    assert k["fidelity"][0] == pytest.approx(1.0)
    v = vq.variance_scan(c, [0.5], instances=4)
    assert v["var_lower_bound"][0] <= v["var_predicted"][0] + 1e-12
    assert math.isfinite(v["var_empirical"][0])
