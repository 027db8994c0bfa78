"""(alpha, beta)-metrics F = alpha * phi(beta / alpha) on the tangent space at the origin."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .jets import Jet, polyval_jet
from .liealg import LieModel, to_rational

__all__ = [
    "PhiSpec",
    "ValidityReport",
    "alpha",
    "beta",
    "F",
    "shen_validity",
    "fundamental_tensor",
    "distortion",
    "unit_ball_volume",
    "NEAR_DEGENERATE",
]

NEAR_DEGENERATE = 1e-3

_FAMILIES = {
    "riemannian": (1,),
    "randers": (1, 1),
    "square": (1, 2, 1),
    "randers_square": (1, 3, 1),
}


@dataclass(frozen=True)
class PhiSpec:
    """phi(s) as a polynomial with rational coefficients, ascending degree."""

    family: str
    coeffs: tuple

    def __post_init__(self):
        if self.family not in _FAMILIES and self.family != "custom":
            raise ValueError(f"unknown phi family {self.family!r}")
        if not self.coeffs:
            raise ValueError("phi needs at least one coefficient")
        if self.coeffs[0] <= 0:
            raise ValueError("phi(0) must be positive")

    @classmethod
    def named(cls, family: str) -> "PhiSpec":
        family = family.replace("-", "_")
        if family not in _FAMILIES:
            raise ValueError(f"unknown phi family {family!r}; expected one of {sorted(_FAMILIES)}")
        return cls(family, tuple(Fraction(c) for c in _FAMILIES[family]))

    @classmethod
    def custom(cls, coeffs) -> "PhiSpec":
        cs = [to_rational(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        return cls("custom", tuple(cs))

    @classmethod
    def from_dict(cls, d: dict) -> "PhiSpec":
        fam = str(d.get("family", "custom")).replace("-", "_")
        if fam == "custom":
            if "coeffs" not in d:
                raise ValueError("custom phi needs 'coeffs'")
            return cls.custom(d["coeffs"])
        return cls.named(fam)

    def to_dict(self) -> dict:
        if self.family == "custom":
            return {"family": "custom", "coeffs": [str(c) for c in self.coeffs]}
        return {"family": self.family}

    @property
    def float_coeffs(self) -> tuple:
        return tuple(float(c) for c in self.coeffs)

    def __call__(self, s):
        return np.polynomial.polynomial.polyval(s, self.float_coeffs)

    def jet(self, s: Jet) -> Jet:
        return polyval_jet(self.float_coeffs, s)


@dataclass
class ValidityReport:
    """``margin`` is the smallest Shen-condition value; ``near_degenerate`` also watches min phi."""

    valid: bool
    b: float
    min_phi: float
    min_condition: float
    argmin_condition: float
    margin: float
    near_degenerate: bool
    closed_form_margin: float | None = None

    def to_dict(self):
        return dict(self.__dict__)


def _as_y(m: LieModel, y) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if y.shape[-1] != m.n:
        raise DomainError(f"expected a k-vector of length {m.n}, got shape {y.shape}")
    return y


def alpha(m: LieModel, y):
    """Riemannian length sqrt(<y, y>)."""
    y = _as_y(m, y)
    return np.sqrt(np.einsum("...i,ij,...j->...", y, m.G, y))


def beta(m: LieModel, y):
    """The 1-form dual to v: <v, y>."""
    y = _as_y(m, y)
    return np.einsum("i,ij,...j->...", m.v_k, m.G, y)


def F(m: LieModel, phi: PhiSpec, y):
    y = _as_y(m, y)
    a = alpha(m, y)
    if np.any(a == 0):
        raise DomainError("F is only defined on the slit tangent space (y != 0)")
    return a * phi(beta(m, y) / a)


def shen_condition(phi: PhiSpec, b: float, s):
    """phi(s) - s phi'(s) + (b^2 - s^2) phi''(s), from an order-2 jet of phi."""
    s = np.asarray(s, dtype=float)
    j = phi.jet(Jet.variable(s, 2))
    p, dp, ddp = j.derivs
    return p - s * dp + (b * b - s * s) * ddp


def shen_validity(phi: PhiSpec, b: float, grid_n: int = 1001) -> ValidityReport:
    """Check phi > 0 and the Shen condition on a uniform grid of [-b, b] (endpoints included)."""
    if not 0 <= b < 1:
        raise DomainError(f"b must lie in [0, 1), got {b}")
    if grid_n < 3:
        raise ValueError("grid_n must be >= 3")
    s = np.linspace(-b, b, grid_n)
    ph = phi(s)
    cond = shen_condition(phi, b, s)
    i = int(np.argmin(cond))
    min_phi = float(ph.min())
    min_cond = float(cond[i])
    margin = min_cond
    closed = None
    if phi.family in ("square", "randers_square"):
        # both families give 1 - 3 s^2 + 2 b^2, smallest at s = +-b
        closed = 1.0 - b * b
    return ValidityReport(
        valid=bool(min_phi > 0 and min_cond > 0),
        b=float(b),
        min_phi=min_phi,
        min_condition=min_cond,
        argmin_condition=float(s[i]),
        margin=margin,
        near_degenerate=bool(0 < min(min_phi, min_cond) < NEAR_DEGENERATE),
        closed_form_margin=closed,
    )


def _require_valid(m: LieModel, phi: PhiSpec):
    if not 0 <= m.b < 1:
        raise DomainError(f"norm bound violated: b = {m.b:.6g}")
    rep = shen_validity(phi, m.b, 201)
    if not rep.valid:
        raise DomainError(f"phi does not define a Finsler metric at b = {m.b:.6g}")


def _F2_jet(m: LieModel, phi: PhiSpec, y: np.ndarray, U: np.ndarray) -> Jet:
    """Order-2 jets of F^2 along y + t*u for each row u of U."""
    Gy = m.G @ y
    a2 = Jet([float(y @ Gy) + 0 * U[:, 0], 2 * (U @ Gy), np.einsum("ai,ij,aj->a", U, m.G, U)])
    bv = m.G @ m.v_k
    bj = Jet([float(bv @ y) + 0 * U[:, 0], U @ bv, 0 * U[:, 0]])
    a = a2.sqrt()
    Fj = a * phi.jet(bj / a)
    return Fj * Fj


def fundamental_tensor(m: LieModel, phi: PhiSpec, y) -> np.ndarray:
    """g_ij = 1/2 d^2(F^2)/dy^i dy^j by polarized second-order jets."""
    y = _as_y(m, y)
    if not np.any(y):
        raise DomainError("fundamental tensor needs y != 0")
    nk = m.n
    E = np.eye(nk)
    iu, ju = np.triu_indices(nk, 1)
    U = np.vstack([E, E[iu] + E[ju], E[iu] - E[ju]])
    d2 = 2 * _F2_jet(m, phi, y, U).c[2]  # second directional derivatives
    H = np.diag(d2[:nk])
    npair = len(iu)
    off = (d2[nk:nk + npair] - d2[nk + npair:]) / 4
    H[iu, ju] = off
    H[ju, iu] = off
    return H / 2


def unit_ball_volume(n: int) -> float:
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1)


def _sphere_rule(n: int, quad_n: int):
    """Nodes (rows on the unit sphere S^{n-1}) and weights integrating over it."""
    if n == 1:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    if n == 2:
        t = 2 * np.pi * np.arange(quad_n) / quad_n
        return np.column_stack([np.cos(t), np.sin(t)]), np.full(quad_n, 2 * np.pi / quad_n)
    x, w = np.polynomial.legendre.leggauss(quad_n)
    polar = (x + 1) * np.pi / 2
    wp = w * np.pi / 2
    azim = (x + 1) * np.pi
    wa = w * np.pi
    if n == 3:
        t1, t2 = np.meshgrid(polar, azim, indexing="ij")
        W = np.outer(wp, wa) * np.sin(t1)
        pts = np.stack([np.cos(t1), np.sin(t1) * np.cos(t2), np.sin(t1) * np.sin(t2)], axis=-1)
        return pts.reshape(-1, 3), W.ravel()
    t1, t2, t3 = np.meshgrid(polar, polar, azim, indexing="ij")
    W = np.einsum("a,b,c->abc", wp, wp, wa) * np.sin(t1) ** 2 * np.sin(t2)
    s1, s2 = np.sin(t1), np.sin(t2)
    pts = np.stack([np.cos(t1), s1 * np.cos(t2), s1 * s2 * np.cos(t3), s1 * s2 * np.sin(t3)], axis=-1)
    return pts.reshape(-1, 4), W.ravel()


def indicatrix_volume(m: LieModel, phi: PhiSpec, quad_n: int = 256) -> float:
    """Euclidean coordinate volume of {y : F(y) < 1}."""
    n = m.n
    pts, w = _sphere_rule(n, quad_n)
    r = 1.0 / F(m, phi, pts)
    return float(np.sum(w * r ** n) / n)


def distortion(m: LieModel, phi: PhiSpec, y, quad_n: int = 256) -> float:
    """tau(y) = ln(sqrt(det g(y)) / sigma_F), sigma_F = Vol(B^n) / Vol{F < 1}."""
    n = m.n
    if n > 4:
        raise DomainError("distortion quadrature supports dim k <= 4")
    _require_valid(m, phi)
    g = fundamental_tensor(m, phi, y)
    sigma = unit_ball_volume(n) / indicatrix_volume(m, phi, quad_n)
    return float(0.5 * np.log(np.linalg.det(g)) - np.log(sigma))
