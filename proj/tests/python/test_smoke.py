import json
import os
import pathlib

import numpy as np
import pytest

import toricgk

CONFIGS = pathlib.Path(os.environ.get("TORICGK_CONFIGS", pathlib.Path(__file__).parents[2] / "configs"))


def test_square_vertices():
    sq = toricgk.DelzantPolytope.square_half()
    pts = sorted(tuple(v) for v in sq.vertices())
    assert pts == [(0.0, 0.0), (0.0, 0.5), (0.5, 0.0), (0.5, 0.5)]


def test_guillemin_centre():
    sq = toricgk.DelzantPolytope.square_half()
    assert toricgk.guillemin_tau(sq, np.array([0.25, 0.25])) == pytest.approx(0.5 * np.log(0.25), abs=1e-15)


def test_kahler_structures():
    phi = np.diag([2.0, 3.0])
    s = toricgk.build_structures(phi, np.zeros((2, 2)), np.zeros((2, 2)))
    g = np.zeros((4, 4))
    g[:2, :2] = np.linalg.inv(phi)
    g[2:, 2:] = phi
    np.testing.assert_allclose(s["g"], g, atol=1e-14)
    np.testing.assert_allclose(s["Jplus"] @ s["Jplus"], -np.eye(4), atol=1e-14)


def test_builder_matches_oracle():
    sq = toricgk.DelzantPolytope.square_half()
    mu = np.array([0.2, 0.35])
    c, f = 1.0, 4.0
    C = np.array([[0, c], [-c, 0]])
    F = np.array([[0, f], [-f, 0]])
    s = toricgk.build_structures(toricgk.canonical_hessian(sq, mu), C, F)
    o = toricgk.oracle_tensors(c, f, mu)
    np.testing.assert_allclose(s["g"], o["g"], rtol=1e-9, atol=1e-12)
    np.testing.assert_allclose(s["b"], o["b"], rtol=1e-9, atol=1e-12)
    checks = toricgk.check_identities(toricgk.canonical_hessian(sq, mu), C, F)
    assert all(c["pass"] for c in checks)


def test_spinor_identity_and_errors():
    assert toricgk.symmetric_spinor_identity(4.0, 1.0, 1.0) <= 1e-9
    with pytest.raises(toricgk.Error):
        toricgk.symmetric_spinor_identity(0.0, 1.0, 1.0)


def test_validate_command():
    text = (CONFIGS / "square.json").read_text()
    r = toricgk.run_command("validate", text)
    assert r["status"] == 0, r["report"]
    cfg = json.loads(text)
    cfg["F"] = [9.0]
    bad = toricgk.run_command("validate", json.dumps(cfg))
    assert bad["status"] == 1
    failing = [c for c in bad["checks"] if not c["pass"]]
    assert any(abs(c["location"][0] - 0.25) < 1e-3 for c in failing)


def test_selftest_and_example():
    assert all(c["pass"] for c in toricgk.matrix_fact_suite(0))
    r = toricgk.run_command("example", c=2.0, f=7.0, grid=6)
    assert r["status"] == 0, r["report"]
