from fractions import Fraction

import numpy as np
import pytest

import oracles
from homfinsler.errors import DomainError, ModelError
from homfinsler.fixtures import FIXTURES, load_fixture
from homfinsler.liealg import orthonormalize
from homfinsler.meanberwald import a_factor, b_factor, eij_closed, eij_numeric, factor_jets, s_derivs
from homfinsler.metric import PhiSpec
from homfinsler.phicalc import CurvContext
from homfinsler.scurvature import sphere_directions


def test_s_derivs_examples(solvable2d):
    si, sij = s_derivs(solvable2d.with_v([0, 0]), [0.3, 0.4])
    assert not si.any() and not sij.any()
    si, _ = s_derivs(solvable2d, [0, 1])  # s = 0, alpha = 1
    np.testing.assert_allclose(si, solvable2d.v_k)


def test_s_derivs_finite_differences():
    m = load_fixture("heisenberg_noncentral")
    y = np.array([0.3, -0.5, 0.8])
    s = lambda z: float(m.v_k @ z) / np.linalg.norm(z)
    si, sij = s_derivs(m, y)
    h = 1e-5
    E = np.eye(3)
    np.testing.assert_allclose(si, [(s(y + h * e) - s(y - h * e)) / (2 * h) for e in E], atol=1e-9)
    fd = np.array([[(s(y + h * a + h * b) - s(y + h * a - h * b) - s(y - h * a + h * b) + s(y - h * a - h * b))
                    / (4 * h * h) for b in E] for a in E])
    np.testing.assert_allclose(sij, fd, atol=1e-6)
    assert abs(si @ y) < 1e-15


def test_a_factor_values():
    assert a_factor(CurvContext(2, 0.0, 0.0)) == -3
    for n in range(2, 6):
        assert a_factor(CurvContext(n, 0.0, 0.0)) == -(1 + n)
    assert a_factor(CurvContext(2, 0.5, 0.0)) == -2


def test_b_factor_values():
    for n in range(2, 6):
        assert b_factor(CurvContext(n, 0.0, 0.0)) == pytest.approx(-3 * (n + 1) / 2)
        assert b_factor(CurvContext(n, 0.0, 0.0), source="jet") == pytest.approx(-3 * (n + 1) / 2)
    # printed dB numerator at s = b = 0 over 2 D1 D2^2 = 2
    for n in range(2, 6):
        assert b_factor(CurvContext(n, 0.0, 0.0), 1) == pytest.approx((9 + 9 * n) / 2)
        assert b_factor(CurvContext(n, 0.0, 0.0), 1, source="jet") == pytest.approx((9 + 9 * n) / 2)


def test_factor_sources_agree():
    rng = np.random.default_rng(11)
    for _ in range(50):
        b = rng.uniform(0.0, 0.35)
        ctx = CurvContext(int(rng.integers(2, 7)), b, rng.uniform(-1, 1) * b)
        for fn in (a_factor, b_factor):
            for order in range(3):
                p, j = fn(ctx, order), fn(ctx, order, source="jet")
                assert p == pytest.approx(j, rel=1e-11, abs=1e-12)


def test_factor_jets_against_exact_oracle():
    s, b2, n = Fraction(1, 7), Fraction(1, 9), 4
    h = Fraction(1, 10 ** 6)
    K, K1, K2, q, q1, q2 = factor_jets(PhiSpec.named("randers_square"), float(s), float(b2), n)
    f = lambda t: oracles.factor(oracles.RANDERS_SQUARE, t, b2, n)
    assert K == pytest.approx(float(f(s)), rel=1e-14)
    assert K1 == pytest.approx(float((f(s + h) - f(s - h)) / (2 * h)), rel=1e-9)
    assert K2 == pytest.approx(float((f(s + h) - 2 * f(s) + f(s - h)) / h ** 2), rel=1e-9)


def test_factor_errors():
    with pytest.raises(ValueError):
        a_factor(CurvContext(2, 0.1, 0.0), 3)
    with pytest.raises(ValueError):
        a_factor(CurvContext(2, 0.1, 0.0), 0, source="other")


def test_frozen_solvable_matrices(solvable2d):
    np.testing.assert_array_equal(eij_closed(solvable2d, "square", None, [0, 1]).entries, np.zeros((2, 2)))
    e = eij_closed(solvable2d, "square", None, [1, 1]).entries
    expected = 0.22932566416717595 * np.array([[-1, 1], [1, -1]])
    np.testing.assert_allclose(e, expected, rtol=1e-12)


def test_v_zero_and_central(heisenberg):
    m = orthonormalize(load_fixture("solvable3d"))[0].with_v([0, 0, 0])
    for y in sphere_directions(m, 8):
        assert not eij_closed(m, "square", None, y).entries.any()
    for y in sphere_directions(heisenberg, 8):
        assert not eij_closed(heisenberg, "square", None, y).entries.any()
        assert not eij_closed(heisenberg, "square", None, y, source="printed").entries.any()


def test_riemannian_numeric_zero(solvable2d):
    assert np.abs(eij_numeric(solvable2d, "riemannian", None, [0.3, 0.7]).entries).max() == 0


@pytest.mark.parametrize("name", FIXTURES)
def test_closed_vs_numeric(ortho, name):
    for fam in ("square", "randers_square"):
        m = ortho(name, fam)
        for y in sphere_directions(m, 6, seed=2):
            c = eij_closed(m, fam, None, y)
            num = eij_numeric(m, fam, None, y)
            assert not num.flagged
            assert np.abs(c.entries - num.entries).max() <= 1e-6 * (1 + np.abs(num.entries).max())
            assert c.euler_residual() < 1e-12
            np.testing.assert_array_equal(c.entries, c.entries.T)


def test_printed_and_jet_sources_agree(ortho):
    for name in ("solvable3d", "rotdil", "heisenberg_noncentral"):
        for fam in ("square", "randers_square"):
            m = ortho(name, fam)
            for y in sphere_directions(m, 5, seed=9):
                a = eij_closed(m, fam, None, y).entries
                b = eij_closed(m, fam, None, y, source="printed").entries
                np.testing.assert_allclose(a, b, rtol=1e-10, atol=1e-12)


def test_custom_phi_jet_source(ortho):
    m = ortho("solvable3d")
    phi = PhiSpec.custom(["1", "1/2", "1/4"])
    y = np.array([0.4, 0.2, -0.9])
    c = eij_closed(m, phi, None, y)
    num = eij_numeric(m, phi, None, y)
    assert np.abs(c.entries - num.entries).max() < 1e-6
    with pytest.raises(ValueError):
        eij_closed(m, phi, None, y, source="printed")


def test_degree_minus_one(ortho):
    m = ortho("rotdil", "randers_square")
    y = np.array([0.5, -0.3, 0.8])
    e = eij_closed(m, "randers_square", None, y).entries
    for lam in (0.5, 2.0):
        np.testing.assert_allclose(eij_closed(m, "randers_square", None, lam * y).entries, e / lam,
                                   rtol=1e-12, atol=1e-14)


def test_requires_orthonormal_frame():
    m = load_fixture("solvable3d")
    with pytest.raises(ModelError):
        eij_closed(m, "square", None, [1, 0, 0])
    with pytest.raises(ModelError):
        s_derivs(m, [1, 0, 0])


def test_zero_direction(solvable2d):
    with pytest.raises(DomainError):
        eij_closed(solvable2d, "square", None, [0, 0])
    with pytest.raises(DomainError):
        eij_numeric(solvable2d, "square", None, [0, 0])
    with pytest.raises(ValueError):
        eij_numeric(solvable2d, "square", None, [0, 1], h=0.0)


def test_to_dict(solvable2d):
    d = eij_closed(solvable2d, "square", None, [1, 1]).to_dict()
    assert d["method"] == "closed:jet" and len(d["entries"]) == 2
