"""S-curvature of a homogeneous (alpha, beta)-space at the origin.

With v the vector dual to beta and [., .]_k the k-part of the bracket,

    S(y) = Phi / (2 alpha Delta^2) * (<[v,y]_k, y> + alpha Q <[v,y]_k, v>)

where Q, Delta, Phi are evaluated at s = beta(y)/alpha(y), b = |v|.  The
square metric and its Randers change have rational closed forms for the
scalar factor; ``s_square`` and ``s_randers_square`` evaluate those directly.

Every function accepts a single k-vector or a stack of them (shape (..., k)).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.stats import norm, qmc

from . import kernels
from .errors import DomainError, ModelError
from .liealg import LieModel, bracket_k
from .metric import PhiSpec, _require_valid

__all__ = [
    "SCurvatureSample",
    "IsotropyVerdict",
    "s_general",
    "s_square",
    "s_randers_square",
    "s_closed",
    "square_factor",
    "randers_square_factor",
    "bracket_terms",
    "sphere_directions",
    "scurv_samples",
    "isotropy_classify",
]

VANISHING_TOL = 1e-9
LD = np.longdouble


def _phi(phi) -> PhiSpec:
    return PhiSpec.named(phi) if isinstance(phi, str) else phi


def _prepare(m: LieModel, phi: PhiSpec, n, y):
    if not m.is_reductive:
        raise ModelError("S-curvature needs a reductive model ([h, k] must lie in k)")
    _require_valid(m, phi)
    y = np.asarray(y, dtype=float)
    if y.shape[-1] != m.n:
        raise DomainError(f"expected k-vectors of length {m.n}, got shape {y.shape}")
    if n is None:
        n = m.n
    if n < 2:
        raise DomainError("n must be >= 2")
    return y, n


def bracket_terms(m: LieModel, y):
    """(alpha, s, <[v,y]_k, y>, <[v,y]_k, v>) for k-vectors y; raises on y = 0."""
    y = np.asarray(y, dtype=float)
    G = m.G
    a = np.sqrt(np.einsum("...i,ij,...j->...", y, G, y))
    if np.any(a == 0):
        raise DomainError("S-curvature is only defined for y != 0")
    Gv = G @ m.v_k
    w = bracket_k(m, np.broadcast_to(m.v_k, y.shape), y)
    p_y = np.einsum("...i,ij,...j->...", w, G, y)
    p_v = w @ Gv
    s = (y @ Gv) / a
    return a, s, p_y, p_v


def _b2(m: LieModel) -> float:
    return float(m.b2_exact)


def s_general(m: LieModel, phi, n, y):
    """S(y) from generically assembled Q, Delta, Phi."""
    phi = _phi(phi)
    y, n = _prepare(m, phi, n, y)
    a, s, p_y, p_v = bracket_terms(m, y)
    q = kernels.generic_jets(phi.float_coeffs, s, _b2(m), n)[..., 0]
    Q, Delta, Phi = q[..., 0], q[..., 3], q[..., 5]
    return Phi / (2 * a * Delta ** 2) * (p_y + a * Q * p_v)


def square_factor(s, b2, n):
    """A(s, b, n) = Phi / (2 Delta^2) for phi = 1 + 2s + s^2, in extended precision."""
    s, b2, n = (np.asarray(x, dtype=LD) for x in (s, b2, n))
    num = (-6 * n * s ** 3 + 3 * (n + 1) * s ** 2 + 2 * (1 + n + (2 * n - 1) * b2) * s
           - (1 + n) * (1 + 2 * b2))
    return num / (1 - 3 * s ** 2 + 2 * b2) ** 2


def randers_square_factor(s, b2, n):
    """B(s, b, n) = Phi / (2 Delta^2) for phi = 1 + 3s + s^2, in extended precision."""
    s, b2, n = (np.asarray(x, dtype=LD) for x in (s, b2, n))
    num = (-12 * s ** 5 * n + (-27 * n + 9) * s ** 4 + (8 * n * b2 + 4 * n - 4 * b2 + 16) * s ** 3
           + (18 * n * b2 + 18 * n - 18 * b2 + 18) * s ** 2 - 12 * b2 * s
           - 3 - 6 * b2 - 6 * n * b2 - 3 * n)
    d1 = 1 + 2 * b2 - 3 * s ** 2
    d2 = 1 - 2 * s ** 2 - 3 * s ** 4 + 3 * s - 9 * s ** 3 + 2 * b2 + 2 * b2 * s ** 2 + 6 * b2 * s
    return num / (2 * d1 * d2)


def _closed(m, family, n, y):
    phi = PhiSpec.named(family)
    y, n = _prepare(m, phi, n, y)
    a, s, p_y, p_v = bracket_terms(m, y)
    sl = np.asarray(s, dtype=LD)
    if family == "square":
        K, q = square_factor(s, _b2(m), n), 2 / (1 - sl)
    else:
        K, q = randers_square_factor(s, _b2(m), n), (2 * sl + 3) / (1 - sl ** 2)
    out = K * (q * np.asarray(p_v, dtype=LD) + np.asarray(p_y, dtype=LD) / np.asarray(a, dtype=LD))
    return out.astype(float) if isinstance(out, np.ndarray) else float(out)


def s_square(m: LieModel, n, y):
    """A(s) * (2/(1-s) <[v,y]_k, v> + <[v,y]_k, y> / alpha)."""
    return _closed(m, "square", n, y)


def s_randers_square(m: LieModel, n, y):
    """B(s) * ((2s+3)/(1-s^2) <[v,y]_k, v> + <[v,y]_k, y> / alpha)."""
    return _closed(m, "randers_square", n, y)


def s_closed(m: LieModel, phi, n, y):
    """Closed form for the family of ``phi``; None when the family has none."""
    phi = _phi(phi)
    if phi.family == "square":
        return s_square(m, n, y)
    if phi.family == "randers_square":
        return s_randers_square(m, n, y)
    if phi.family == "riemannian":
        y, n = _prepare(m, phi, n, y)
        bracket_terms(m, y)
        return np.zeros(y.shape[:-1]) if y.ndim > 1 else 0.0
    return None


@dataclass
class SCurvatureSample:
    y: np.ndarray
    s_general: float
    s_closed: float
    residual: float

    def to_dict(self):
        return {"y": [float(t) for t in self.y], "s_general": self.s_general,
                "s_closed": self.s_closed, "residual": self.residual}


def scurv_samples(m: LieModel, phi, n, Y) -> list:
    """One :class:`SCurvatureSample` per row of Y; s_closed is NaN without a closed form."""
    phi = _phi(phi)
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    sg = np.atleast_1d(s_general(m, phi, n, Y))
    sc = s_closed(m, phi, n, Y)
    sc = np.full(len(Y), np.nan) if sc is None else np.atleast_1d(sc)
    return [SCurvatureSample(Y[i].copy(), float(sg[i]), float(sc[i]), float(abs(sg[i] - sc[i])))
            for i in range(len(Y))]


def sphere_directions(m: LieModel, samples: int = 512, seed: int = 0) -> np.ndarray:
    """Deterministic scrambled-Halton directions with alpha(y) = 1."""
    nk = m.n
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if nk == 1:
        base = np.where(np.arange(samples) % 2 == 0, 1.0, -1.0)[:, None]
    else:
        u = qmc.Halton(d=nk, scramble=True, seed=seed).random(samples)
        z = norm.ppf(np.clip(u, 1e-12, 1 - 1e-12))
        z[np.linalg.norm(z, axis=1) == 0] = 1.0
        base = z
    L = np.linalg.cholesky(m.G)
    y = np.linalg.solve(L.T, base.T).T  # alpha(y) = |base|
    return y / np.linalg.norm(base, axis=1)[:, None]


@dataclass
class IsotropyVerdict:
    verdict: str
    isotropic: bool
    max_abs_s: float
    threshold: float
    c: float
    fit_residual: float
    s_at_v: float | None
    samples: int
    family: str
    notes: list = field(default_factory=list)

    @property
    def vanishing(self) -> bool:
        return self.verdict == "vanishing"

    def to_dict(self):
        return dict(self.__dict__)


def isotropy_classify(m: LieModel, phi, n=None, samples: int = 512, tol: float = VANISHING_TOL,
                      seed: int = 0) -> IsotropyVerdict:
    """Vanishing vs non-vanishing S on the unit sphere, plus the isotropy fit S = (n+1) c F."""
    phi = _phi(phi)
    Y = sphere_directions(m, samples, seed)
    S = np.atleast_1d(s_general(m, phi, n, Y))
    nn = m.n if n is None else n
    w = bracket_k(m, np.broadcast_to(m.v_k, Y.shape), Y)
    scale = max(1.0, float(np.sqrt(np.einsum("ai,ij,aj->a", w, m.G, w)).max()))
    threshold = tol * scale
    max_abs = float(np.abs(S).max())
    Fy = np.sqrt(np.einsum("ai,ij,aj->a", Y, m.G, Y)) * phi(Y @ (m.G @ m.v_k))
    c = float(S @ Fy / ((nn + 1) * (Fy @ Fy)))
    fit_residual = float(np.abs(S - (nn + 1) * c * Fy).max())
    s_at_v = None
    notes = []
    if m.b > 0:
        s_at_v = float(s_general(m, phi, n, m.v_k))
        notes.append("S(v) vanishes because [v, v] = 0, so an isotropic S must have c = 0")
    vanishing = max_abs < threshold
    return IsotropyVerdict(
        verdict="vanishing" if vanishing else "non-vanishing",
        isotropic=bool(vanishing),
        max_abs_s=max_abs,
        threshold=threshold,
        c=c,
        fit_residual=fit_residual,
        s_at_v=s_at_v,
        samples=samples,
        family=phi.family,
        notes=notes,
    )
