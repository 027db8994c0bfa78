from fractions import Fraction

import numpy as np
import pytest

import oracles
from homfinsler.errors import DomainError, SingularContextError
from homfinsler.metric import PhiSpec
from homfinsler.phicalc import (
    FIELDS,
    CurvContext,
    phiquant_derivative,
    quantities_closed,
    quantities_generic,
    quantities_grid,
    quantities_randers_square,
    quantities_square,
    t_function,
    volume_factor,
)

SQUARE = PhiSpec.named("square")
RSQ = PhiSpec.named("randers_square")
RIEM = PhiSpec.named("riemannian")


def test_context_validation():
    with pytest.raises(DomainError):
        CurvContext(1, 0.5, 0.0)
    with pytest.raises(DomainError):
        CurvContext(2, 1.0, 0.0)
    with pytest.raises(DomainError):
        CurvContext(2, 0.3, 0.4)
    assert CurvContext(2, 0.5, -0.5).b2 == 0.25


def test_riemannian_quantities_vanish():
    q = quantities_generic(RIEM, CurvContext(4, 0.6, -0.3))
    assert (q.Q, q.Qp, q.Qpp, q.Delta, q.psi, q.Phi) == (0, 0, 0, 1, 0, 0)


def test_square_at_origin():
    q = quantities_generic(SQUARE, CurvContext(2, 0.0, 0.0))
    assert (q.Q, q.Delta, q.Phi) == (2.0, 1.0, -6.0)
    q = quantities_square(CurvContext(3, 0.5, 0.0))
    assert (q.Q, q.Delta) == (2.0, 1.5)
    for n in range(2, 7):
        assert quantities_square(CurvContext(n, 0.0, 0.0)).Phi == -2 * (n + 1)


def test_randers_square_at_origin():
    q = quantities_randers_square(CurvContext(2, 0.0, 0.0))
    assert (q.Q, q.Qp, q.Qpp, q.Delta, q.Phi) == (3.0, 2.0, 6.0, 1.0, -9.0)
    assert quantities_randers_square(CurvContext(2, 0.5, 0.0)).Delta == 1.5


@pytest.mark.parametrize("coeffs,phi", [(oracles.SQUARE, SQUARE), (oracles.RANDERS_SQUARE, RSQ),
                                        ((1, Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)),
                                         PhiSpec.custom(["1", "1/2", "1/4", "1/8"]))])
def test_generic_matches_exact_oracle(coeffs, phi):
    for s, b, n in [(Fraction(1, 5), Fraction(1, 2), 3), (Fraction(-1, 4), Fraction(3, 10), 2),
                    (Fraction(1, 10), Fraction(1, 5), 5)]:
        exact = oracles.quantities(coeffs, s, b * b, n)
        got = quantities_generic(phi, CurvContext(n, float(b), float(s))).to_dict()
        for f in FIELDS:
            assert got[f] == pytest.approx(float(exact[f]), rel=1e-14, abs=1e-15), f


def test_frozen_square_values():
    # exact values at s = 1/5, b = 1/2, n = 3
    q = quantities_square(CurvContext(3, 0.5, 0.2))
    assert q.Q == pytest.approx(5 / 2, rel=1e-15)
    assert q.Qp == pytest.approx(25 / 8, rel=1e-15)
    assert q.Qpp == pytest.approx(125 / 16, rel=1e-15)
    assert q.Delta == pytest.approx(69 / 32, rel=1e-15)
    assert q.psi == pytest.approx(50 / 69, rel=1e-15)
    assert q.Phi == pytest.approx(-4455 / 256, rel=1e-15)


def test_closed_dispatch():
    ctx = CurvContext(3, 0.3, 0.1)
    assert quantities_closed("square", ctx) == quantities_square(ctx)
    with pytest.raises(ValueError):
        quantities_closed("randers", ctx)


def test_psi_wiring():
    q = quantities_generic(RSQ, CurvContext(4, 0.3, -0.2))
    assert q.psi == pytest.approx(q.Qp / (2 * q.Delta), rel=1e-15)


def test_singular_context_raises():
    # phi = 1 - 2 s^2: Delta(0) = 1 + b^2 phi''(0) = 0 at b = 1/2
    with pytest.raises(SingularContextError):
        quantities_generic(PhiSpec.custom([1, 0, -2]), CurvContext(2, 0.5, 0.0))
    with pytest.raises(SingularContextError):
        phiquant_derivative(PhiSpec.custom([1, 0, -2]), CurvContext(2, 0.5, 0.0), "Phi", 1)


def test_grid_shapes_and_methods():
    s = np.linspace(-0.4, 0.4, 9)
    g = quantities_grid("square", s, 0.5, 3)
    c = quantities_grid("square", s, 0.5, 3, method="closed")
    assert g.shape == c.shape == (9, 6)
    np.testing.assert_allclose(g, c, rtol=1e-14)
    with pytest.raises(ValueError):
        quantities_grid("riemannian", s, 0.5, 3, method="closed")


def test_phiquant_derivative_values():
    ctx = CurvContext(3, 0.5, 0.0)
    assert phiquant_derivative(SQUARE, ctx, "Q", 1) == pytest.approx(2.0)
    for f in FIELDS:
        assert phiquant_derivative(RIEM, ctx, f, 1) == 0
    with pytest.raises(ValueError):
        phiquant_derivative(SQUARE, ctx, "Q", 3)
    with pytest.raises(ValueError):
        phiquant_derivative(SQUARE, ctx, "nope", 1)


def test_phiquant_derivative_finite_differences():
    rng = np.random.default_rng(3)
    h = 1e-5
    for _ in range(20):
        b = rng.uniform(0.1, 0.35)
        s = rng.uniform(-0.9, 0.9) * b
        n = int(rng.integers(2, 7))
        for phi in (SQUARE, RSQ):
            for f in ("Delta", "Phi", "Q"):
                up = quantities_generic(phi, CurvContext(n, b, s + h)).to_dict()[f]
                dn = quantities_generic(phi, CurvContext(n, b, s - h)).to_dict()[f]
                d = phiquant_derivative(phi, CurvContext(n, b, s), f, 1)
                assert abs(d - (up - dn) / (2 * h)) < 1e-7 * max(1, abs(d))


def test_t_function():
    assert t_function(RIEM, CurvContext(3, 0.5, 0.2)) == 1.0
    assert t_function(SQUARE, CurvContext(2, 0.0, 0.0)) == 1.0
    for phi, b in ((SQUARE, 0.8), (RSQ, 0.35)):
        for s in np.linspace(-b, b, 21):
            assert t_function(phi, CurvContext(4, b, s)) > 0


def _ht_square_exact(b, n):
    # (1/2b) * integral_{-b}^{b} (1+u)^2 (1-u^2)^(n-2) (1 + 2b^2 - 3u^2) du for n = 3
    poly = {0: 1, 1: 2, 2: 1}
    def mul(p, q):
        out = {}
        for i, a in p.items():
            for j, c in q.items():
                out[i + j] = out.get(i + j, 0) + a * c
        return out
    p = poly
    for _ in range(n - 2):
        p = mul(p, {0: 1, 2: -1})
    p = mul(p, {0: 1 + 2 * b * b, 2: -3})
    integral = sum(c * (b ** (k + 1) - (-b) ** (k + 1)) / (k + 1) for k, c in p.items())
    return integral / (2 * b)


def test_volume_factor_square_exact():
    b = Fraction(1, 2)
    # BH for n = 3: 2 / ((1/(5b)) ((1-b)^-5 - (1+b)^-5))
    bh = 2 / ((1 / (5 * b)) * ((1 - b) ** -5 - (1 + b) ** -5))
    assert volume_factor(SQUARE, 0.5, 3, "BH").value == pytest.approx(float(bh), rel=1e-13)
    assert volume_factor(SQUARE, 0.5, 3, "HT").value == pytest.approx(float(_ht_square_exact(b, 3)), rel=1e-13)


def test_volume_factor_frozen():
    assert volume_factor(SQUARE, 0.5, 3, "BH").value == pytest.approx(0.15689566115702464, rel=1e-12)
    assert volume_factor(RSQ, 0.3, 3, "HT").value == pytest.approx(1.0884008285714284, rel=1e-12)


def test_volume_factor_limits():
    for phi in (SQUARE, RSQ, RIEM):
        for form in ("BH", "HT"):
            assert volume_factor(phi, 0.0, 3, form).value == pytest.approx(1.0, abs=1e-14)
            assert volume_factor(phi, 1e-4, 3, form).value == pytest.approx(1.0, abs=1e-3)


def test_volume_factor_errors():
    with pytest.raises(DomainError):
        volume_factor(SQUARE, 1.0, 3)
    with pytest.raises(DomainError):
        volume_factor(SQUARE, 0.5, 1)
    with pytest.raises(ValueError):
        volume_factor(SQUARE, 0.5, 3, form="XX")
    with pytest.raises(DomainError):
        volume_factor(RSQ, 0.5, 3, "BH")  # phi changes sign on [-b, b]


def test_volume_factor_nonconvergence_flag():
    r = volume_factor(SQUARE, 0.95, 6, "BH", quad_n=4, max_nodes=8)
    assert not r.converged and r.nodes == 8
