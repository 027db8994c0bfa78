"""Auxiliary quantities of an (alpha, beta)-metric as functions of s, b and n.

For phi(s) the building blocks are

    Q     = phi' / (phi - s phi')
    Delta = 1 + s Q + (b^2 - s^2) Q'
    psi   = Q' / (2 Delta)
    Phi   = (s Q' - Q)(n Delta + 1 + s Q) - (b^2 - s^2)(1 + s Q) Q''

``quantities_generic`` assembles them from order-4 jets of phi, which works
for any polynomial phi.  ``quantities_square`` and
``quantities_randers_square`` are the hand-simplified rational forms for the
two named families; the test-suite holds them to the generic route.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, SingularContextError
from .jets import Jet
from .metric import PhiSpec, shen_validity

__all__ = [
    "CurvContext",
    "PhiQuantities",
    "VolumeFactor",
    "FIELDS",
    "quantities_generic",
    "quantities_square",
    "quantities_randers_square",
    "quantities_closed",
    "quantities_grid",
    "phiquant_derivative",
    "t_function",
    "volume_factor",
]

FIELDS = kernels.FIELDS


@dataclass(frozen=True)
class CurvContext:
    n: int
    b: float
    s: float

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"n must be >= 2, got {self.n}")
        if not 0 <= self.b < 1:
            raise DomainError(f"b must lie in [0, 1), got {self.b}")
        if abs(self.s) > self.b * (1 + 1e-12) + 1e-15:
            raise DomainError(f"|s| must not exceed b ({self.s} vs {self.b})")

    @property
    def b2(self) -> float:
        return self.b * self.b


@dataclass(frozen=True)
class PhiQuantities:
    Q: float
    Qp: float
    Qpp: float
    Delta: float
    psi: float
    Phi: float

    @classmethod
    def from_row(cls, row) -> "PhiQuantities":
        return cls(*(float(x) for x in row))

    def as_array(self) -> np.ndarray:
        return np.array([self.Q, self.Qp, self.Qpp, self.Delta, self.psi, self.Phi])

    def to_dict(self) -> dict:
        return dict(zip(FIELDS, self.as_array().tolist()))


def _check_row(row, what):
    if not np.all(np.isfinite(row)) or row[3] == 0:
        raise SingularContextError(f"{what}: phi - s phi' or Delta vanishes at this context")


def quantities_generic(phi: PhiSpec, ctx: CurvContext) -> PhiQuantities:
    row = kernels.generic_jets(phi.float_coeffs, ctx.s, ctx.b2, ctx.n)[..., 0]
    _check_row(row, "generic quantities")
    return PhiQuantities.from_row(row)


def quantities_square(ctx: CurvContext) -> PhiQuantities:
    row = kernels.square_closed(ctx.s, ctx.b2, ctx.n)
    _check_row(row, "square quantities")
    return PhiQuantities.from_row(row)


def quantities_randers_square(ctx: CurvContext) -> PhiQuantities:
    row = kernels.randers_square_closed(ctx.s, ctx.b2, ctx.n)
    _check_row(row, "randers_square quantities")
    return PhiQuantities.from_row(row)


def quantities_closed(family: str, ctx: CurvContext) -> PhiQuantities:
    if family == "square":
        return quantities_square(ctx)
    if family == "randers_square":
        return quantities_randers_square(ctx)
    raise ValueError(f"no closed form for family {family!r}")


def quantities_grid(phi: PhiSpec | str, s, b, n, method: str = "generic", backend=None) -> np.ndarray:
    """Vectorized quantities; returns an array of shape broadcast(s, b, n) + (6,).

    ``method`` is ``"generic"`` (jets of phi) or ``"closed"`` (named families only).
    No singularity checks; non-finite entries mark singular contexts.
    """
    b2 = np.asarray(b, dtype=float) ** 2
    if method == "generic":
        if isinstance(phi, str):
            phi = PhiSpec.named(phi)
        return kernels.generic_jets(phi.float_coeffs, s, b2, n, backend=backend)[..., 0]
    family = phi if isinstance(phi, str) else phi.family
    if family == "square":
        return kernels.square_closed(s, b2, n, backend=backend)
    if family == "randers_square":
        return kernels.randers_square_closed(s, b2, n, backend=backend)
    raise ValueError(f"no closed form for family {family!r}")


def phiquant_derivative(phi: PhiSpec, ctx: CurvContext, field: str, order: int) -> float:
    """d^order/ds^order of one of Q, Qp, Qpp, Delta, psi, Phi at fixed b and n."""
    if order not in (0, 1, 2):
        raise ValueError("order must be 0, 1 or 2")
    try:
        f = FIELDS.index(field)
    except ValueError:
        raise ValueError(f"unknown field {field!r}; expected one of {FIELDS}") from None
    jets = kernels.generic_jets(phi.float_coeffs, ctx.s, ctx.b2, ctx.n)
    _check_row(jets[..., 0], "phiquant derivative")
    return float(jets[f, order])


def t_function(phi: PhiSpec, ctx: CurvContext) -> float:
    """phi (phi - s phi')^(n-2) {(phi - s phi') + (b^2 - s^2) phi''}."""
    return float(_t_values(phi, ctx.b, ctx.n, np.asarray(ctx.s, dtype=float)))


def _t_values(phi, b, n, s):
    p, dp, ddp = phi.jet(Jet.variable(s, 2)).derivs
    d = p - s * dp
    return p * d ** (n - 2) * (d + (b * b - s * s) * ddp)


@dataclass
class VolumeFactor:
    value: float
    form: str
    nodes: int
    delta: float
    converged: bool

    def to_dict(self):
        return dict(self.__dict__)


def _volume_quotient(phi, b, n, form, nodes):
    x, w = np.polynomial.legendre.leggauss(nodes)
    t = (x + 1) * np.pi / 2
    w = w * np.pi / 2
    sw = w * np.sin(t) ** (n - 2)
    base = sw.sum()
    s = b * np.cos(t)
    if form == "BH":
        return base / np.sum(sw / phi(s) ** n)
    return np.sum(sw * _t_values(phi, b, n, s)) / base


def volume_factor(phi: PhiSpec, b: float, n: int, form: str = "BH", quad_n: int = 64,
                  tol: float = 1e-10, max_nodes: int = 8192) -> VolumeFactor:
    """f(b) with dV = f(b) dV_alpha for the Busemann-Hausdorff or Holmes-Thompson form.

    Gauss-Legendre on [0, pi], doubling the node count until two successive
    values agree within ``tol`` relative.  ``delta`` is the last relative
    change; ``converged`` is False when it still exceeds 1e-8.
    """
    form = form.upper()
    if form not in ("BH", "HT"):
        raise ValueError("form must be 'BH' or 'HT'")
    if not 0 <= b < 1:
        raise DomainError(f"b must lie in [0, 1), got {b}")
    if n < 2:
        raise DomainError("n must be >= 2")
    if b > 0 and not shen_validity(phi, b, 201).valid:
        raise DomainError(f"phi does not define a Finsler metric at b = {b:.6g}")
    nodes = quad_n
    prev = _volume_quotient(phi, b, n, form, nodes)
    delta = np.inf
    while nodes < max_nodes:
        nodes *= 2
        cur = _volume_quotient(phi, b, n, form, nodes)
        delta = abs(cur - prev) / abs(cur) if cur != 0 else abs(cur - prev)
        prev = cur
        if delta <= tol:
            break
    return VolumeFactor(float(prev), form, nodes, float(delta), bool(delta <= 1e-8))
