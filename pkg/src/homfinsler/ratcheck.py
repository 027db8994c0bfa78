"""Exact rational functions in s, b2 (= b^2) and n, and the identity claims they certify.

:class:`MPoly` is a sparse polynomial with rational coefficients over the
three variables.  :class:`RatFunc` keeps its denominator as a product of
powers of primitive polynomial factors, so sums and quotient-rule derivatives
only grow the degree linearly; there is no GCD and no reduction to lowest
terms.  Equality is decided by cross-multiplication.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from numbers import Rational
from typing import Callable

import numpy as np

from .errors import DomainError
from .metric import PhiSpec

__all__ = [
    "MPoly",
    "RatFunc",
    "S",
    "B2",
    "N",
    "rf_equal",
    "rf_difference",
    "build_quantities_symbolic",
    "Claim",
    "Verdict",
    "CLAIMS",
    "check_claim",
    "check_all",
    "certify_equivalence_e10_vs_closed",
    "printed",
]

MAX_EXPONENT = 1024
_VARS = ("s", "b2", "n")


def _num(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class MPoly:
    """Polynomial in (s, b2, n); ``terms`` maps exponent triples to nonzero rationals."""

    __slots__ = ("terms", "_float")

    def __init__(self, terms=None):
        self._float = None
        t = {}
        if terms:
            for key, c in terms.items():
                if c != 0:
                    if any(e > MAX_EXPONENT for e in key):
                        raise OverflowError(f"exponent above {MAX_EXPONENT} in {key}")
                    t[tuple(key)] = _num(c)
        self.terms = t

    @classmethod
    def const(cls, c) -> "MPoly":
        return cls({(0, 0, 0): Fraction(c)})

    @classmethod
    def var(cls, name: str) -> "MPoly":
        key = [0, 0, 0]
        key[_VARS.index(name)] = 1
        return cls({tuple(key): 1})

    @classmethod
    def univariate(cls, coeffs) -> "MPoly":
        """sum_k coeffs[k] s^k."""
        return cls({(k, 0, 0): Fraction(c) for k, c in enumerate(coeffs)})

    @staticmethod
    def _lift(x) -> "MPoly":
        if isinstance(x, MPoly):
            return x
        if isinstance(x, (int, Rational)):
            return MPoly.const(x)
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(k == (0, 0, 0) for k in self.terms)

    def const_value(self):
        return self.terms.get((0, 0, 0), 0)

    def __eq__(self, other):
        other = MPoly._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(self.key())

    def key(self) -> tuple:
        return tuple(sorted(self.terms.items(), reverse=True))

    def __add__(self, other):
        other = MPoly._lift(other)
        if other is NotImplemented:
            return NotImplemented
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return MPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = MPoly._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return MPoly._lift(other) - self

    def __mul__(self, other):
        other = MPoly._lift(other)
        if other is NotImplemented:
            return NotImplemented
        t = {}
        for (a1, a2, a3), ca in self.terms.items():
            for (b1, b2, b3), cb in other.terms.items():
                k = (a1 + b1, a2 + b2, a3 + b3)
                t[k] = t.get(k, 0) + ca * cb
        return MPoly(t)

    __rmul__ = __mul__

    def scale(self, c) -> "MPoly":
        c = Fraction(c)
        return MPoly({k: v * c for k, v in self.terms.items()})

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("MPoly powers must be non-negative integers")
        result = MPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def deriv_s(self) -> "MPoly":
        return MPoly({(i - 1, j, k): c * i for (i, j, k), c in self.terms.items() if i > 0})

    def degree(self, var: str = "s") -> int:
        idx = _VARS.index(var)
        return max((k[idx] for k in self.terms), default=0)

    def eval(self, s, b2, n):
        """Evaluate at a point; exact for rational inputs."""
        total = 0
        for (i, j, k), c in self.terms.items():
            total += c * s ** i * b2 ** j * n ** k
        return total

    def eval_float(self, s, b2, n):
        """Floating-point evaluation (numpy broadcasting) from cached exponent arrays."""
        if self._float is None:
            keys = list(self.terms)
            self._float = (np.array(keys, dtype=float).reshape(-1, 3),
                           np.array([float(self.terms[k]) for k in keys]))
        e, c = self._float
        s, b2, n = (np.asarray(x, dtype=float)[..., None] for x in (s, b2, n))
        return np.sum(c * s ** e[:, 0] * b2 ** e[:, 1] * n ** e[:, 2], axis=-1)

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if not self.terms:
            return Fraction(0)
        fr = [Fraction(c) for c in self.terms.values()]
        g = reduce(math.gcd, (f.numerator for f in fr))
        l = reduce(lambda a, b: a * b // math.gcd(a, b), (f.denominator for f in fr))
        return Fraction(g, l)

    def primitive(self):
        """(c, p) with self = c * p, p integral, primitive, leading coefficient positive."""
        c = self.content()
        lead = self.terms[max(self.terms)]
        if lead < 0:
            c = -c
        return c, MPoly({k: Fraction(v) / c for k, v in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(_VARS, key) if e
            )
            c = Fraction(c)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mono:
                coef = "" if mag == 1 else f"{mag}*"
                parts.append(f"{sign} {coef}{mono}")
            else:
                parts.append(f"{sign} {mag}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self):
        return f"MPoly({self})"


S = MPoly.var("s")
B2 = MPoly.var("b2")
N = MPoly.var("n")


class RatFunc:
    """num / prod(base^exp); bases are primitive, non-constant MPolys keyed canonically."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = num if isinstance(num, MPoly) else MPoly.const(num)
        self.den = dict(den or {})

    @classmethod
    def of(cls, num, den=None) -> "RatFunc":
        """num / den for polynomials (or constants)."""
        num = num if isinstance(num, MPoly) else MPoly.const(num)
        if den is None:
            return cls(num)
        den = den if isinstance(den, MPoly) else MPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if den.is_const():
            return cls(num.scale(1 / Fraction(den.const_value())))
        c, p = den.primitive()
        return cls(num.scale(1 / c), {p.key(): (p, 1)})

    @staticmethod
    def _lift(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (MPoly, int, Rational)):
            return RatFunc.of(x)
        return NotImplemented

    def expand_den(self) -> MPoly:
        out = MPoly.const(1)
        for p, e in self.den.values():
            out = out * p ** e
        return out

    def _to(self, exps: dict) -> MPoly:
        """Numerator over the denominator with exponents ``exps`` (a superset)."""
        out = self.num
        for key, (p, e) in exps.items():
            have = self.den.get(key, (p, 0))[1]
            if e > have:
                out = out * p ** (e - have)
        return out

    def __add__(self, other):
        other = RatFunc._lift(other)
        if other is NotImplemented:
            return NotImplemented
        lcm = {}
        for key, (p, e) in list(self.den.items()) + list(other.den.items()):
            lcm[key] = (p, max(e, lcm.get(key, (p, 0))[1]))
        return RatFunc(self._to(lcm) + other._to(lcm), lcm)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = RatFunc._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RatFunc._lift(other) - self

    def __mul__(self, other):
        other = RatFunc._lift(other)
        if other is NotImplemented:
            return NotImplemented
        den = dict(self.den)
        for key, (p, e) in other.den.items():
            den[key] = (p, e + den.get(key, (p, 0))[1])
        return RatFunc(self.num * other.num, den)

    __rmul__ = __mul__

    def reciprocal(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("reciprocal of the zero rational function")
        inv = RatFunc.of(1, self.num)
        return RatFunc(inv.num * self.expand_den(), inv.den)

    def __truediv__(self, other):
        other = RatFunc._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return RatFunc._lift(other) / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise ValueError("integer powers only")
        if e < 0:
            return self.reciprocal() ** (-e)
        return RatFunc(self.num ** e, {k: (p, x * e) for k, (p, x) in self.den.items()})

    def deriv_s(self) -> "RatFunc":
        """Quotient rule over the factored denominator; every exponent grows by one."""
        bases = [p for p, _ in self.den.values()]
        radical = reduce(lambda a, b: a * b, bases, MPoly.const(1))
        num = self.num.deriv_s() * radical
        for i, (p, e) in enumerate(self.den.values()):
            others = reduce(lambda a, b: a * b, (q for j, q in enumerate(bases) if j != i), MPoly.const(1))
            num = num - self.num * p.deriv_s() * others * e
        return RatFunc(num, {k: (p, e + 1) for k, (p, e) in self.den.items()})

    def eval(self, s, b2, n):
        d = 1
        for p, e in self.den.values():
            d = d * p.eval(s, b2, n) ** e
        return self.num.eval(s, b2, n) / d

    def eval_float(self, s, b2, n):
        d = 1.0
        for p, e in self.den.values():
            d = d * p.eval_float(s, b2, n) ** e
        return self.num.eval_float(s, b2, n) / d

    def __str__(self):
        if not self.den:
            return f"({self.num})"
        den = " * ".join(f"({p})^{e}" if e > 1 else f"({p})" for p, e in self.den.values())
        return f"({self.num}) / ({den})"

    __repr__ = __str__


def rf_difference(a, b) -> MPoly:
    """a.num * b.den - b.num * a.den with fully expanded denominators."""
    a, b = RatFunc._lift(a), RatFunc._lift(b)
    return a.num * b.expand_den() - b.num * a.expand_den()


def rf_equal(a, b) -> bool:
    return rf_difference(a, b).is_zero()


def build_quantities_symbolic(phi) -> dict:
    """Exact Q, Q', Q'', Delta, psi, Phi and Phi / (2 Delta^2) for a polynomial phi.

    ``phi`` is a family name or a :class:`PhiSpec`.  The last entry is also
    stored under ``"A"`` for the square family and ``"B"`` for its Randers change.
    """
    spec = PhiSpec.named(phi) if isinstance(phi, str) else phi
    p = MPoly.univariate(spec.coeffs)
    dp = p.deriv_s()
    den = p - S * dp
    if den.is_zero():
        raise DomainError("phi - s phi' vanishes identically")
    Q = RatFunc.of(dp, den)
    Qp = Q.deriv_s()
    Qpp = Qp.deriv_s()
    bms = B2 - S * S
    Delta = 1 + S * Q + bms * Qp
    Phi = (S * Qp - Q) * (N * Delta + 1 + S * Q) - bms * (1 + S * Q) * Qpp
    out = {"Q": Q, "Qp": Qp, "Qpp": Qpp, "Delta": Delta, "psi": Qp / (2 * Delta), "Phi": Phi}
    if Phi.num.is_zero():
        out["S_factor"] = RatFunc.of(0)
    else:
        out["S_factor"] = Phi / (2 * Delta ** 2)
    if spec.family == "square":
        out["A"] = out["S_factor"]
    elif spec.family == "randers_square":
        out["B"] = out["S_factor"]
    return out


class _Printed:
    """Closed forms exactly as derived by hand for the two named metrics."""

    # square metric, phi = 1 + 2s + s^2
    sq_bracket = -6 * N * S**3 + 3 * (N + 1) * S**2 + 2 * (1 + N + (2 * N - 1) * B2) * S - (1 + N) * (1 + 2 * B2)
    sq_D1 = 1 - 3 * S**2 + 2 * B2
    sq_dA_num = (-18 * N * S**4 + (18 * N + 18) * S**3 + (-18 * B2 + 18) * S**2
                 + (-6 * N - 12 * N * B2 - 6 - 12 * B2) * S
                 + 2 + 2 * B2 - 4 * B2**2 + 2 * N + 8 * N * B2**2 + 8 * N * B2)
    sq_d2A_num = 6 * (-18 * N * S**5 + (27 + 27 * N) * S**4 + (-24 * N * B2 - 36 * B2 + 36 - 12 * N) * S**3
                      + (-6 * N - 12 * N * B2 - 12 * B2 - 6) * S**2
                      + (12 * B2 + 6 * N + 24 * N * B2 - 24 * B2**2 + 24 * N * B2**2 + 12) * S
                      - 1 - N - 4 * N * B2 - 4 * B2 - 4 * N * B2**2 - 4 * B2**2)

    # Randers change, phi = 1 + 3s + s^2
    rs_delta_num = -3 * S**4 - 9 * S**3 + (2 * B2 - 2) * S**2 + (6 * B2 + 3) * S + 2 * B2 + 1
    rs_phi_part1 = (-(12 * N + 4) * S**7 - (63 * N + 21) * S**6 + (8 * N * B2 - 89 * N - 27) * S**5
                    + (42 * N * B2 + 3 * N + 15) * S**4 + (62 * N * B2 + 58 * N + 40) * S**3
                    + (12 * N * B2 + 15 * N + 9) * S**2 - (18 * N * B2 + 9 * N + 9) * S
                    - (6 * N * B2 + 3 * N + 3))
    rs_phi_part2 = (4 * S**7 + 30 * S**6 + (70 - 4 * B2) * S**5 + (60 - 30 * B2) * S**4
                    + (30 - 70 * B2) * S**3 + (6 - 60 * B2) * S**2 - 30 * B2 * S - 6 * B2)
    rs_phi_num = (-12 * N * S**7 + (9 - 63 * N) * S**6 + (8 * N * B2 - 4 * B2 - 89 * N + 43) * S**5
                  + (42 * N * B2 - 30 * B2 + 3 * N + 75) * S**4 + (62 * N * B2 - 70 * B2 + 58 * N + 70) * S**3
                  + (12 * N * B2 - 60 * B2 + 15 * N + 15) * S**2 - (18 * N * B2 + 30 * B2 + 9 * N + 9) * S
                  - (6 * N * B2 + 6 * B2 + 3 * N + 3))
    rs_B_num = (-12 * S**5 * N + (-27 * N + 9) * S**4 + (8 * N * B2 + 4 * N - 4 * B2 + 16) * S**3
                + (18 * N * B2 + 18 * N - 18 * B2 + 18) * S**2 - 12 * B2 * S - 3 - 6 * B2 - 6 * N * B2 - 3 * N)
    rs_D1 = -3 * S**2 + 1 + 2 * B2
    rs_D2 = 1 - 2 * S**2 - 3 * S**4 + 3 * S - 9 * S**3 + 2 * B2 + 2 * B2 * S**2 + 6 * B2 * S
    rs_dB_num = (-36 * N * S**8 + (-162 * N + 54) * S**7 + (-207 * N - 36 * B2 + 225) * S**6
                 + (-252 * B2 + 90 * N - 36 * N * B2 + 522) * S**5
                 + (-488 * B2 + 631 - 80 * N * B2 + 199 * N - 8 * B2**2 + 16 * N * B2**2) * S**4
                 + (-30 * N + 186 + 96 * N * B2**2 - 408 * B2 - 120 * N * B2 - 48 * B2**2) * S**3
                 + (-228 * B2 + 156 * N * B2**2 - 108 * B2**2 - 33 - 60 * N * B2 - 69 * N) * S**2
                 + (96 * N * B2**2 + 6 * N + 6 - 48 * B2**2 - 12 * B2 + 60 * N * B2) * S
                 + 9 + 24 * B2 + 36 * N * B2**2 + 12 * B2**2 + 36 * N * B2 + 9 * N)
    rs_d2B_num = (-108 * S**11 * N + (243 - 729 * N) * S**10
                  + (1593 - 216 * B2 - 144 * N * B2 - 1935 * N) * S**9
                  + (5940 - 2052 * B2 - 1404 * N * B2 - 1512 * N) * S**8
                  + (-144 * B2**2 - 6570 * B2 + 144 * N * B2**2 + 1440 * N - 4338 * N * B2 + 13356) * S**7
                  + (15894 - 10188 * B2 + 1260 * N * B2**2 + 1638 * N - 1332 * B2**2 - 6300 * N * B2) * S**6
                  + (8706 - 4884 * B2**2 - 4254 * N * B2 - 1122 * N - 8574 * B2 + 3756 * N * B2**2) * S**5
                  + (3132 - 7560 * B2**2 - 1080 * N + 5400 * N * B2**2 - 3834 * B2 + 54 * N * B2) * S**4
                  + (2634 * N * B2 + 3960 * N * B2**2 + 1700 - 4680 * B2**2 + 40 * B2**3 + 40 * N * B2**3
                     + 332 * N + 402 * B2) * S**3
                  + (1476 * N * B2**2 + 1368 * N * B2 + 720 * B2 + 315 * N - 1116 * B2**2 + 639) * S**2
                  + (-90 * N * B2 - 15 * N - 162 * B2 - 180 * N * B2**2 + 21 - 468 * B2**2
                     - 120 * N * B2**3 - 120 * B2**3) * S
                  - 24 - 24 * N - 120 * N * B2**3 - 120 * B2**3 - 126 * B2 - 216 * N * B2**2
                  - 126 * N * B2 - 216 * B2**2)

    @cached_property
    def square(self) -> dict:
        u = 1 - S
        return {
            "Q": RatFunc.of(2, u),
            "Qp": RatFunc.of(2, u ** 2),
            "Qpp": RatFunc.of(4, u ** 3),
            "Delta": RatFunc.of(self.sq_D1, u ** 2),
            "Phi": RatFunc.of(2 * self.sq_bracket, u ** 4),
            "A": RatFunc.of(self.sq_bracket, self.sq_D1 ** 2),
            "dA": RatFunc.of(self.sq_dA_num, self.sq_D1 ** 3),
            "d2A": RatFunc.of(self.sq_d2A_num, self.sq_D1 ** 4),
            "q_inline": RatFunc.of(2, u),
        }

    @cached_property
    def randers_square(self) -> dict:
        w = 1 - S**2
        return {
            "Q": RatFunc.of(2 * S + 3, w),
            "Qp": RatFunc.of(2 * S**2 + 6 * S + 2, w ** 2),
            "Qpp": RatFunc.of(4 * S**3 + 18 * S**2 + 12 * S + 6, w ** 3),
            "Delta": RatFunc.of(self.rs_delta_num, w ** 2),
            "Phi_part1": RatFunc.of(self.rs_phi_part1, w ** 4),
            "Phi_part2": RatFunc.of(self.rs_phi_part2, w ** 4),
            "Phi": RatFunc.of(self.rs_phi_num, w ** 4),
            "B": RatFunc.of(self.rs_B_num, 2 * self.rs_D1 * self.rs_D2),
            "dB": RatFunc.of(self.rs_dB_num, 2 * self.rs_D1 * self.rs_D2 ** 2),
            "d2B": RatFunc.of(self.rs_d2B_num, self.rs_D1 * self.rs_D2 ** 3),
            "q_inline": RatFunc.of(2 * S + 3, w),
        }


printed = _Printed()


@dataclass(frozen=True)
class Claim:
    claim_id: str
    location: str
    computed: Callable[[], RatFunc]
    stated: Callable[[], RatFunc]


@dataclass
class Verdict:
    claim_id: str
    location: str
    holds: bool
    difference: MPoly | None = None

    def line(self) -> str:
        text = f"{self.claim_id}\t{self.location}\t{'true' if self.holds else 'false'}"
        if not self.holds and self.difference is not None:
            text += f"\t{self.difference}"
        return text

    def to_dict(self) -> dict:
        return {
            "claim": self.claim_id,
            "location": self.location,
            "verdict": self.holds,
            "difference": None if self.holds or self.difference is None else str(self.difference),
        }


_symbolic_cache: dict = {}


def _sym(family: str) -> dict:
    if family not in _symbolic_cache:
        q = build_quantities_symbolic(family)
        if family in ("square", "randers_square"):
            key = "A" if family == "square" else "B"
            q["d" + key] = q[key].deriv_s()
            q["d2" + key] = q["d" + key].deriv_s()
        _symbolic_cache[family] = q
    return _symbolic_cache[family]


def _rs_part1():
    q = _sym("randers_square")
    return (S * q["Qp"] - q["Q"]) * (1 + N * q["Delta"] + S * q["Q"])


def _rs_part2():
    q = _sym("randers_square")
    return (S**2 - B2) * (1 + S * q["Q"]) * q["Qpp"]


def _claims():
    out = []
    for fam, label in (("square", "square metric"), ("randers_square", "Randers-changed square metric")):
        for field, what in (("Q", "Q"), ("Qp", "Q'"), ("Qpp", "Q''"), ("Delta", "Delta")):
            out.append(Claim(f"{field.lower()}_{fam}", f"{label}: {what} closed form",
                             lambda f=fam, k=field: _sym(f)[k], lambda f=fam, k=field: getattr(printed, f)[k]))
        if fam == "randers_square":
            out.append(Claim("phi_part1_randers_square", f"{label}: first partial sum of Phi",
                             _rs_part1, lambda: printed.randers_square["Phi_part1"]))
            out.append(Claim("phi_part2_randers_square", f"{label}: second partial sum of Phi",
                             _rs_part2, lambda: printed.randers_square["Phi_part2"]))
        out.append(Claim(f"phi_{fam}", f"{label}: Phi expansion",
                         lambda f=fam: _sym(f)["Phi"], lambda f=fam: getattr(printed, f)["Phi"]))
        key = "A" if fam == "square" else "B"
        out.append(Claim(f"{key.lower()}_factor", f"{label}: S-curvature factor {key} = Phi/(2 Delta^2)",
                         lambda f=fam, k=key: _sym(f)[k], lambda f=fam, k=key: getattr(printed, f)[k]))
        out.append(Claim(f"d{key.lower()}_ds", f"{label}: d{key}/ds",
                         lambda f=fam, k=key: _sym(f)["d" + k], lambda f=fam, k=key: getattr(printed, f)["d" + k]))
        out.append(Claim(f"d2{key.lower()}_ds2", f"{label}: d^2{key}/ds^2",
                         lambda f=fam, k=key: _sym(f)["d2" + k], lambda f=fam, k=key: getattr(printed, f)["d2" + k]))
    out.append(Claim("phi_riemannian", "Riemannian metric: Phi vanishes",
                     lambda: _sym("riemannian")["Phi"], lambda: RatFunc.of(0)))
    return tuple(out)


CLAIMS = _claims()


def check_claim(claim: Claim) -> Verdict:
    diff = rf_difference(claim.computed(), claim.stated())
    return Verdict(claim.claim_id, claim.location, diff.is_zero(), diff)


def certify_equivalence_e10_vs_closed(family: str) -> Verdict:
    """The general homogeneous S-curvature formula reduces to the family's closed form.

    General:  S = Phi/(2 Delta^2) * (Q <[v,y],v> + <[v,y],y>/alpha)
    Closed:   S = K * (q <[v,y],v> + <[v,y],y>/alpha)
    so they agree for all models iff Phi/(2 Delta^2) = K and Q = q.
    """
    if family == "riemannian":
        diff = _sym("riemannian")["Phi"].num
        return Verdict("scurv_riemannian", "Riemannian metric: S-curvature vanishes", diff.is_zero(), diff)
    if family not in ("square", "randers_square"):
        raise ValueError(f"no closed form for family {family!r}")
    key = "A" if family == "square" else "B"
    sym = _sym(family)
    pr = getattr(printed, family)
    d1 = rf_difference(sym["S_factor"], pr[key])
    d2 = rf_difference(sym["Q"], pr["q_inline"])
    label = "square metric" if family == "square" else "Randers-changed square metric"
    diff = d1 if not d1.is_zero() else d2
    return Verdict(f"scurv_{family}", f"{label}: general S formula equals closed form",
                   d1.is_zero() and d2.is_zero(), diff)


def check_all() -> list:
    out = [check_claim(c) for c in CLAIMS]
    for fam in ("square", "randers_square", "riemannian"):
        out.append(certify_equivalence_e10_vs_closed(fam))
    return out
