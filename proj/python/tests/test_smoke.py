import json
import math

import numpy as np
import pytest

import koopman_forge as kf


def test_registry_lists_anchored_checks():
    checks = kf.list_checks()
    assert len(checks) >= 30
    ids = [c[0] for c in checks]
    assert ids == sorted(ids)
    assert ("susy_algebra", "charges", "Eq. 4.31") in checks
    assert all(anchor for _, _, anchor in checks)


def test_charges_suite_passes():
    results = kf.run_suite("charges", n=2)
    assert results
    assert all(r["status"] == "pass" for r in results)
    assert all(r["max_error"] is None for r in results)


def test_unknown_suite_raises():
    with pytest.raises(ValueError):
        kf.run_suite("nonsense")


def test_identities_hold_in_pq_ordering():
    verdicts = kf.bfa_identities(1, "pq")
    assert verdicts and all(ok for _, _, ok in verdicts)


def test_harmonic_trajectory_rotates():
    rows = kf.integrate("harmonic", [1.0, 0.0], [1.0, 0.0], [0.0, 1.0], T=math.pi / 2, dt=1e-3)
    t, q, p = rows[-1, 0], rows[-1, 1], rows[-1, 2]
    assert t == pytest.approx(math.pi / 2)
    assert q == pytest.approx(0.0, abs=1e-10)
    assert p == pytest.approx(-1.0, abs=1e-10)


def test_tangent_map_is_symplectic():
    omega = np.array([[0.0, 1.0], [-1.0, 0.0]])
    for name in kf.library_names():
        m = kf.tangent_map(name, np.array([0.4, 0.2]), 2.0)
        assert np.abs(m.T @ omega @ m - omega).max() < 1e-9


def test_gaussian_inverse_determinant():
    a = np.array([[2.0]])
    eps = 0.25
    value = kf.gaussian_inverse_det(a, eps)
    assert value.real == pytest.approx(2 * math.pi / math.sqrt(4 * eps**2 + 4.0))
    with pytest.raises(ValueError):
        kf.gaussian_inverse_det(np.array([[-1.0]]), eps)


def test_causal_determinant_is_trivial():
    assert kf.discrete_determinant("pendulum", [0.5, 0.0], 1.0, 50, "-", 0.0) == 1.0


def test_report_is_deterministic():
    a = kf.report_json("algebra", seed=3)
    b = kf.report_json("algebra", seed=3)
    assert a == b
    doc = json.loads(a)
    assert doc["config"]["seed"] == 3
    assert doc["summary"]["fail"] == 0
