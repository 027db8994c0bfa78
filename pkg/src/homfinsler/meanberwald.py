"""Mean Berwald curvature E_ij = 1/2 d^2 S / dy^i dy^j at the origin.

In an orthonormal k-basis e_1..e_n write

    S = K(s) * (P / alpha + q(s) R),   P = <[v,y]_k, y>,  R = <[v,y]_k, v>

with K = Phi/(2 Delta^2) and q = Q.  ``eij_closed`` differentiates this
product by the chain rule using

    s_i  = (b_i alpha - s y_i) / alpha^2
    s_ij = (-(b_i y_j + b_j y_i) alpha + 3 s y_i y_j - alpha^2 s delta_ij) / alpha^4
    P_i  = <[v,e_i]_k, y> + <[v,y]_k, e_i>,   P_ij = <[v,e_i]_k, e_j> + <[v,e_j]_k, e_i>
    R_i  = <[v,e_i]_k, v>

``eij_numeric`` is the independent check: a Richardson-extrapolated central
difference Hessian of ``s_general``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, ModelError, SingularContextError
from .liealg import LieModel
from .metric import PhiSpec
from .phicalc import CurvContext
from .ratcheck import printed
from .scurvature import _prepare, s_general

__all__ = [
    "EijMatrix",
    "s_derivs",
    "a_factor",
    "b_factor",
    "factor_jets",
    "eij_closed",
    "eij_numeric",
    "RICHARDSON_FLAG",
]

RICHARDSON_FLAG = 1e-4
_ORTHO_TOL = 1e-12


@dataclass
class EijMatrix:
    entries: np.ndarray
    y: np.ndarray
    method: str
    flagged: bool = False

    def max_abs(self) -> float:
        return float(np.abs(self.entries).max()) if self.entries.size else 0.0

    def euler_residual(self) -> float:
        """max_i |sum_j E_ij y^j|."""
        return float(np.abs(self.entries @ self.y).max()) if self.entries.size else 0.0

    def to_dict(self):
        return {"y": self.y.tolist(), "method": self.method, "entries": self.entries.tolist(),
                "flagged": self.flagged}


def _require_orthonormal(m: LieModel):
    if not np.allclose(m.G, np.eye(m.n), atol=_ORTHO_TOL, rtol=0):
        raise ModelError("mean Berwald formulas need an orthonormal k-basis; call orthonormalize first")


def _y(m: LieModel, y) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if y.shape != (m.n,):
        raise DomainError(f"expected a k-vector of length {m.n}")
    if not np.any(y):
        raise DomainError("y must be nonzero")
    return y


def s_derivs(m: LieModel, y):
    """(s_i, s_ij): first and second y-derivatives of s = beta/alpha in an orthonormal frame."""
    _require_orthonormal(m)
    y = _y(m, y)
    bv = m.v_k
    a = float(np.sqrt(y @ y))
    s = float(bv @ y) / a
    si = (bv * a - s * y) / a ** 2
    by = np.outer(bv, y)
    sij = (-(by + by.T) * a + 3 * s * np.outer(y, y) - a ** 2 * s * np.eye(m.n)) / a ** 4
    return si, sij


def factor_jets(phi: PhiSpec, s, b2, n):
    """(K, K', K'', q, q', q'') with K = Phi/(2 Delta^2), q = Q, from order-4 jets of phi."""
    j = kernels.generic_jets(phi.float_coeffs, s, b2, n)
    Q, Delta, Phi = j[0], j[3], j[5]
    D, D1, D2 = Delta
    P, P1, P2 = Phi
    if not np.isfinite(j).all() or D == 0:
        raise SingularContextError("Delta or phi - s phi' vanishes at this context")
    K = P / (2 * D ** 2)
    K1 = P1 / (2 * D ** 2) - P * D1 / D ** 3
    K2 = P2 / (2 * D ** 2) - 2 * P1 * D1 / D ** 3 - P * D2 / D ** 3 + 3 * P * D1 ** 2 / D ** 4
    return K, K1, K2, Q[0], Q[1], Q[2]


def _printed_factor(family: str, order: int, s, b2, n) -> float:
    if family == "square":
        key = ("A", "dA", "d2A")[order]
    else:
        key = ("B", "dB", "d2B")[order]
    return float(getattr(printed, family)[key].eval_float(s, b2, n))


def _factor(family: str, ctx: CurvContext, order: int, source: str) -> float:
    if order not in (0, 1, 2):
        raise ValueError("order must be 0, 1 or 2")
    if source == "printed":
        return _printed_factor(family, order, ctx.s, ctx.b2, ctx.n)
    if source == "jet":
        return float(factor_jets(PhiSpec.named(family), ctx.s, ctx.b2, ctx.n)[order])
    raise ValueError("source must be 'printed' or 'jet'")


def a_factor(ctx: CurvContext, order: int = 0, source: str = "printed") -> float:
    """A(s) for the square metric, or its first/second s-derivative."""
    return _factor("square", ctx, order, source)


def b_factor(ctx: CurvContext, order: int = 0, source: str = "printed") -> float:
    """B(s) for the Randers-changed square metric, or its first/second s-derivative."""
    return _factor("randers_square", ctx, order, source)


def _q_closed(family: str, s: float):
    if family == "square":
        u = 1 / (1 - s)
        return 2 * u, 2 * u ** 2, 4 * u ** 3
    w = 1 / (1 - s * s)
    return (2 * s + 3) * w, (2 * s * s + 6 * s + 2) * w ** 2, (4 * s ** 3 + 18 * s * s + 12 * s + 6) * w ** 3


def eij_closed(m: LieModel, phi, n, y, source: str = "jet") -> EijMatrix:
    """E_ij by chain-rule assembly.

    ``source="jet"`` takes K and q with their s-derivatives from jets and
    works for any polynomial phi.  ``source="printed"`` uses the hand-derived
    rational forms of A, B and Q and needs one of the two named families.
    """
    phi = PhiSpec.named(phi) if isinstance(phi, str) else phi
    _require_orthonormal(m)
    y = _y(m, y)
    y_, n = _prepare(m, phi, n, y)
    b2 = float(m.b2_exact)
    si, sij = s_derivs(m, y)
    a = float(np.sqrt(y @ y))
    s = float(m.v_k @ y) / a
    if source == "jet":
        K, K1, K2, q, q1, q2 = factor_jets(phi, s, b2, n)
    elif source == "printed":
        if phi.family not in ("square", "randers_square"):
            raise ValueError("printed forms exist only for the square and randers_square families")
        K, K1, K2 = (_printed_factor(phi.family, k, s, b2, n) for k in range(3))
        q, q1, q2 = _q_closed(phi.family, s)
    else:
        raise ValueError("source must be 'printed' or 'jet'")

    Ck = m.Ck
    v = m.v_k
    M = np.einsum("a,abc->bc", v, Ck)  # row b: [v, e_b]_k
    w = y @ M  # [v, y]_k
    P = float(w @ y)
    R = float(w @ v)
    Pi = M @ y + w
    Pij = M + M.T
    Ri = M @ v

    inv = 1 / a
    inv_i = -y / a ** 3
    inv_ij = -np.eye(m.n) / a ** 3 + 3 * np.outer(y, y) / a ** 5

    Ki = K1 * si
    Kij = K2 * np.outer(si, si) + K1 * sij
    qi = q1 * si
    qij = q2 * np.outer(si, si) + q1 * sij

    U = P * inv + q * R
    Ui = Pi * inv + P * inv_i + qi * R + q * Ri
    Uij = (Pij * inv + np.outer(Pi, inv_i) + np.outer(inv_i, Pi) + P * inv_ij
           + qij * R + np.outer(qi, Ri) + np.outer(Ri, qi))
    Sij = Kij * U + np.outer(Ki, Ui) + np.outer(Ui, Ki) + K * Uij
    E = Sij / 2
    return EijMatrix((E + E.T) / 2, y.copy(), f"closed:{source}")


def _hessian(m, phi, n, y, h):
    k = len(y)
    E = np.eye(k)
    iu, ju = np.triu_indices(k, 1)
    pts = [y[None, :], y + h * E, y - h * E,
           y + h * (E[iu] + E[ju]), y + h * (E[iu] - E[ju]),
           y - h * (E[iu] - E[ju]), y - h * (E[iu] + E[ju])]
    sv = s_general(m, phi, n, np.vstack(pts))
    s0 = sv[0]
    p, mi = sv[1:1 + k], sv[1 + k:1 + 2 * k]
    o = 1 + 2 * k
    npair = len(iu)
    pp, pm, mp, mm = (sv[o + t * npair:o + (t + 1) * npair] for t in range(4))
    H = np.diag((p - 2 * s0 + mi) / h ** 2)
    off = (pp - pm - mp + mm) / (4 * h ** 2)
    H[iu, ju] = off
    H[ju, iu] = off
    return H


def eij_numeric(m: LieModel, phi, n, y, h: float | None = None) -> EijMatrix:
    """1/2 central-difference Hessian of S with Richardson extrapolation over (h, h/2)."""
    phi = PhiSpec.named(phi) if isinstance(phi, str) else phi
    y = _y(m, y)
    if h is None:
        h = 1e-4 * float(np.linalg.norm(y))
    if not h > 0:
        raise ValueError("step h must be positive")
    H1 = _hessian(m, phi, n, y, h)
    H2 = _hessian(m, phi, n, y, h / 2)
    H = (4 * H2 - H1) / 3
    scale = max(1.0, float(np.abs(H).max()))
    flagged = bool(np.abs(H1 - H2).max() > RICHARDSON_FLAG * scale)
    E = H / 2
    return EijMatrix((E + E.T) / 2, y.copy(), "numeric", flagged)
