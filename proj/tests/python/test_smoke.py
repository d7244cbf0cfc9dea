# Copyright 2026 The orthodyn Authors
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

import numpy as np
import pytest

import orthodyn as od

K = np.array([0.0, 0.0, 0.2])


@pytest.fixture(scope="module")
def model():
    return od.make_default_model()


def test_igm_at_isotropic_point(model):
    L, q = od.igm(model, K)
    np.testing.assert_allclose(L, [-0.4, -0.4, -0.4], atol=1e-15)
    assert len(q) == 3
    for qi in q:
        np.testing.assert_allclose(qi[1:], [-np.pi / 2, 0.0], atol=1e-15)
    jp_inv = od.robot_jacobian_inverse(model, K)
    np.testing.assert_allclose(np.abs(jp_inv) @ np.abs(jp_inv).T, np.eye(3), atol=1e-10)


def test_round_trip_forward_point(model):
    p = np.array([0.03, -0.02, 0.22])
    _, q = od.igm(model, p)
    for i in range(3):
        np.testing.assert_allclose(od.chain_forward_point(model, i, q[i]), p, atol=1e-12)


def test_jacobian_finite_difference(model):
    _, q = od.igm(model, np.array([0.01, 0.02, 0.18]))
    h = 1e-6
    J = od.chain_jacobian(model, 1, q[1])
    fd = np.column_stack([
        (od.chain_forward_point(model, 1, q[1] + h * e)
         - od.chain_forward_point(model, 1, q[1] - h * e)) / (2 * h)
        for e in np.eye(3)
    ])
    np.testing.assert_allclose(J, fd, atol=1e-8)


def test_dynamics_round_trip(model):
    p, v, a = np.array([0.02, 0.0, 0.21]), np.array([0.1, -0.2, 0.3]), np.array([1.0, 2.0, -1.0])
    gamma = od.inverse_dynamics(model, p, v, a)
    np.testing.assert_allclose(od.direct_dynamics(model, p, v, gamma), a, atol=1e-10)
    A, h = od.robot_inertia(model, p, v)
    np.testing.assert_allclose(A, A.T, atol=1e-12)
    assert 0.5 * v @ A @ v == pytest.approx(od.kinetic_energy(model, p, v), rel=1e-10)


def test_errors(model):
    with pytest.raises(od.OutOfWorkspace):
        od.igm(model, np.array([0.0, 0.7, 0.2]))
    with pytest.raises(od.OrthodynError):
        od.load_model("[robot]\nplatform_mass = 0\n")
    with pytest.raises(od.ValidationError):
        text = od.serialize_model(model).replace("b7 = -0.1", "b7 = -0.2", 1)
        od.load_model(text)


def test_model_text_round_trip(model):
    text = od.serialize_model(model)
    assert od.serialize_model(od.load_model(text)) == text


def test_simulate_tracks_path(model):
    path = od.quintic_path(model, K, np.array([0.03, 0.02, 0.23]), 0.2, 1e-3)
    assert path["P"].shape == (201, 3)
    t_rec, g_rec = path["t"], path["Gamma"]

    def torque(t):
        return np.array([np.interp(t, t_rec, g_rec[:, k]) for k in range(3)])

    sim = od.simulate(model, K, np.zeros(3), torque, dt=1e-3, t_end=0.2)
    assert sim["completed"]
    assert np.max(np.linalg.norm(sim["P"] - path["P"], axis=1)) < 1e-4


def test_simulate_hold(model):
    sim = od.simulate(model, K, np.zeros(3), "hold", dt=1e-2, t_end=0.1)
    np.testing.assert_allclose(sim["P"][-1], K, atol=1e-12)


def test_verify_subset(model):
    reports = od.verify(model, seed=42, samples=2)
    assert {r["check_name"] for r in reports} == set(od.check_names())
    assert all(r["pass"] for r in reports), [r for r in reports if not r["pass"]]
