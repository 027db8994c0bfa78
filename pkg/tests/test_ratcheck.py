from fractions import Fraction

import numpy as np
import pytest

from homfinsler.metric import PhiSpec
from homfinsler.phicalc import FIELDS, CurvContext, quantities_generic
from homfinsler.ratcheck import (
    B2,
    CLAIMS,
    MPoly,
    N,
    RatFunc,
    S,
    build_quantities_symbolic,
    certify_equivalence_e10_vs_closed,
    check_all,
    check_claim,
    printed,
    rf_difference,
    rf_equal,
)


def test_difference_of_squares():
    assert (1 - S) * (1 + S) == 1 - S**2
    assert str((1 - S) * (1 + S)) == "-s^2 + 1"


def test_binomial_fourth_power():
    p = (1 - S) ** 4
    assert [p.terms.get((k, 0, 0), 0) for k in range(5)] == [1, -4, 6, -4, 1]
    assert p.degree() == 4


def test_rational_equivalence():
    assert rf_equal(RatFunc.of(2, 1 - S), RatFunc.of(2 + 2 * S, 1 - S**2))
    assert not rf_equal(RatFunc.of(2, 1 - S), RatFunc.of(2, 1 + S))
    diff = rf_difference(RatFunc.of(2, 1 - S), RatFunc.of(2, 1 + S))
    # denominators are stored up to sign, so the witness is +-4s
    assert diff in (4 * S, -4 * S)


def test_square_delta_certified():
    sym = build_quantities_symbolic("square")
    assert rf_equal(sym["Delta"], RatFunc.of(1 - 3 * S**2 + 2 * B2, (1 - S) ** 2))
    assert rf_equal(sym["Phi"] * RatFunc.of((1 - S) ** 4), RatFunc.of(2 * printed.sq_bracket))


def test_every_claim_holds():
    verdicts = check_all()
    assert len(verdicts) == len(CLAIMS) + 3
    bad = [v.line() for v in verdicts if not v.holds]
    assert not bad
    assert len({v.claim_id for v in verdicts}) == len(verdicts)


def test_certify_closed_forms():
    for fam in ("square", "randers_square", "riemannian"):
        v = certify_equivalence_e10_vs_closed(fam)
        assert v.holds and v.to_dict()["difference"] is None
    with pytest.raises(ValueError):
        certify_equivalence_e10_vs_closed("randers")


def test_false_claim_reports_difference():
    c = CLAIMS[0]
    wrong = type(c)("bogus", "a wrong claim", c.computed, lambda: c.stated() + 1)
    v = check_claim(wrong)
    assert not v.holds
    assert not v.difference.is_zero()
    assert v.line().startswith("bogus\ta wrong claim\tfalse\t")


def test_exponent_guard():
    with pytest.raises(OverflowError):
        S ** 2000
    with pytest.raises(OverflowError):
        MPoly({(1025, 0, 0): 1})


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        RatFunc.of(1, MPoly())
    with pytest.raises(ZeroDivisionError):
        RatFunc.of(0).reciprocal()


def test_canonical_string_independent_of_construction():
    a = (S + B2 + N) ** 2
    b = N**2 + 2 * N * S + S**2 + 2 * B2 * N + B2**2 + 2 * S * B2
    assert str(a) == str(b) and hash(a) == hash(b)


def test_exact_evaluation():
    r = RatFunc.of(1 + S, 1 - S)
    assert r.eval(Fraction(1, 3), 0, 0) == 2
    assert RatFunc.of(S * B2 - N).eval(2, 3, 4) == 2


def test_negative_power_and_division():
    r = RatFunc.of(1 + S, 1 - S)
    assert rf_equal(r ** -1, RatFunc.of(1 - S, 1 + S))
    assert rf_equal(r / r, RatFunc.of(1))
    assert rf_equal(r.deriv_s(), RatFunc.of(2, (1 - S) ** 2))


@pytest.mark.parametrize("family", ["square", "randers_square"])
def test_symbolic_matches_numeric(family):
    sym = build_quantities_symbolic(family)
    phi = PhiSpec.named(family)
    rng = np.random.default_rng(21)
    for _ in range(100):
        b = rng.uniform(0.05, 0.35)
        s = rng.uniform(-1, 1) * b
        n = int(rng.integers(2, 7))
        num = quantities_generic(phi, CurvContext(n, b, s)).to_dict()
        for f in FIELDS:
            got = sym[f].eval_float(s, b * b, n)
            assert got == pytest.approx(num[f], rel=1e-12, abs=1e-13), f


def test_custom_phi_build():
    sym = build_quantities_symbolic(PhiSpec.custom(["1", "1/2"]))
    # phi = 1 + s/2 is Randers-type: Q = 1/2
    assert rf_equal(sym["Q"], RatFunc.of(Fraction(1, 2)))
    assert rf_equal(sym["Qp"], RatFunc.of(0))
    assert "A" not in sym and "B" not in sym
    riem = build_quantities_symbolic("riemannian")
    assert riem["Phi"].num.is_zero() and riem["S_factor"].num.is_zero()
