# Copyright 2026 The quantum-bottleneck Authors
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

import qib_bottleneck as qb


def product_state():
    rho = np.array([[0.7, 0.1 + 0.2j], [0.1 - 0.2j, 0.3]])
    return qb.CQState(np.array([0.5, 0.5]), [rho, rho])


def test_state_roundtrip():
    s = product_state()
    assert s.size_x == 2
    assert s.dim_y == 2
    assert np.allclose(s.rho[0], s.rho[1])
    assert qb.holevo_information(s) == pytest.approx(0.0, abs=1e-12)


def test_invalid_state_raises_value_error():
    with pytest.raises(ValueError):
        qb.CQState(np.array([0.5, 0.6]), [np.eye(2) / 2, np.eye(2) / 2])
    with pytest.raises(qb.ValidationError):
        qb.CQState(np.array([1.0]), [np.array([[0.5, 0.0], [0.0, 0.6]])])


def test_run_qib_monotone():
    s = qb.random_qubit_ensemble(8, 3)
    r = qb.run_qib(s, alpha=1.0, beta=6.0, dim_t=2, tol=1e-10, max_iters=2000, seed=1)
    assert r["status"] == "converged"
    f = [row["f"] for row in r["records"]]
    assert all(b <= a + 1e-9 for a, b in zip(f, f[1:]))
    assert qb.f_alpha(s, r["channel"], 1.0, 6.0) == pytest.approx(f[-1])


def test_run_qdib():
    s = qb.copy_state(4)
    r = qb.run_qdib(s, beta=5.0, dim_t=4, classical=True, seed=2)
    assert r["status"] == "converged"
    assert "support_T" in r["records"][0]
    assert math.isnan(r["records"][0]["step_divergence"])


def test_advantage():
    a = qb.advantage_gap(3, 2, 1.0, 2.0)
    assert a["gap"] == pytest.approx(math.log(2) - 0.636514, abs=1e-6)
    c = qb.fourier_feature_channel(3, 2)
    assert qb.f_alpha(qb.copy_state(3), c, 1.0, 2.0) == pytest.approx(qb.quantum_bound(2, 2.0), abs=1e-9)
    with pytest.raises(ValueError):
        qb.classical_bound(3, 3, 2.0)


def test_bcov_identity():
    s = qb.random_qubit_ensemble(5, 4)
    rng = np.random.default_rng(0)
    sigmas = []
    for _ in range(5):
        a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        m = a @ a.conj().T
        sigmas.append(m / np.trace(m).real)
    c = qb.CQChannel(sigmas)
    f = qb.f_operator(s, c, 0.5, 3.0)
    weighted = sum(p * np.trace(sig @ fx).real for p, sig, fx in zip(s.px, c.sigma, f))
    assert weighted == pytest.approx(qb.f_alpha(s, c, 0.5, 3.0), abs=1e-8)


def test_classify():
    r = qb.classify(0)
    assert r["f_quantum"] < r["f_classical"]
    assert 0.0 <= r["acc_classical"] <= 1.0
