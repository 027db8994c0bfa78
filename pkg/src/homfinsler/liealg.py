"""Reductive Lie-algebra models of homogeneous spaces G/H.

A model stores the structure constants of g on a basis e_0..e_{dim-1}, the
split of that basis into an h-part and a k-part, an inner product on k and
the vector v in k that represents the invariant 1-form.  Tangent vectors at
the origin are plain numpy arrays of length ``len(k)`` ("k-vectors").

Structure constants, the inner product and v are kept as exact rationals when
they come from a model file, so every algebraic check in :func:`validate` is
exact.  Floats only enter when brackets are evaluated numerically, or after
:func:`orthonormalize` (whose square roots are irrational in general).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Rational, Real
from pathlib import Path
import numpy as np

from .errors import ModelError

__all__ = [
    "LieModel",
    "Check",
    "ValidationReport",
    "bracket",
    "bracket_k",
    "validate",
    "orthonormalize",
    "model_from_dict",
    "model_to_dict",
    "load_model",
    "to_rational",
]

FLOAT_TOL = 1e-12


def to_rational(x) -> Real:
    """Parse a model-file number: ``"p/q"`` strings, ints and decimal floats become Fractions."""
    if isinstance(x, bool):
        raise ModelError(f"not a number: {x!r}")
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ModelError(f"not a rational literal: {x!r}") from exc
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ModelError(f"non-finite number: {x!r}")
        return Fraction(repr(float(x)))
    if isinstance(x, Real):
        return x
    raise ModelError(f"not a number: {x!r}")


def _is_zero(x) -> bool:
    if isinstance(x, Rational):
        return x == 0
    return abs(x) <= FLOAT_TOL


@dataclass(frozen=True, eq=False)
class LieModel:
    """Lie algebra g = h + k with inner product on k and invariant vector v in k.

    ``structure`` lists entries ``(i, j, l, c)`` meaning c^l_{ij} = c, i.e.
    [e_i, e_j] = sum_l c^l_{ij} e_l.  Entries are taken literally; use
    :meth:`from_brackets` to get the antisymmetric completion.
    """

    dim: int
    h: tuple
    k: tuple
    structure: tuple
    inner: tuple
    v: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise ModelError("dim must be >= 1")
        idx = list(self.h) + list(self.k)
        if sorted(idx) != list(range(self.dim)):
            raise ModelError("h and k indices must partition 0..dim-1")
        nk = len(self.k)
        if len(self.inner) != nk or any(len(row) != nk for row in self.inner):
            raise ModelError(f"inner product must be {nk}x{nk}")
        if len(self.v) != nk:
            raise ModelError(f"v must have {nk} k-coordinates")
        for i, j, l, _ in self.structure:
            if not all(0 <= t < self.dim for t in (i, j, l)):
                raise ModelError(f"bracket index out of range: {(i, j, l)}")

    @classmethod
    def from_brackets(cls, dim, h, k, brackets, inner=None, v=None, name=""):
        """Build a model from i<j bracket entries, completing antisymmetrically.

        Entries with i >= j are kept literally; an entry only gets a mirrored
        partner when the partner is absent.
        """
        entries = {}
        for i, j, l, c in brackets:
            entries[(int(i), int(j), int(l))] = to_rational(c)
        for (i, j, l), c in list(entries.items()):
            if i < j and (j, i, l) not in entries:
                entries[(j, i, l)] = -c
        h = tuple(int(t) for t in h)
        k = tuple(int(t) for t in k)
        nk = len(k)
        if inner is None:
            inner = [[Fraction(int(a == b)) for b in range(nk)] for a in range(nk)]
        if v is None:
            v = [Fraction(0)] * nk
        inner = tuple(tuple(to_rational(x) for x in row) for row in inner)
        v = tuple(to_rational(x) for x in v)
        structure = tuple((i, j, l, c) for (i, j, l), c in sorted(entries.items()) if c != 0)
        return cls(int(dim), h, k, structure, inner, v, name)

    def with_v(self, v) -> "LieModel":
        return LieModel(self.dim, self.h, self.k, self.structure, self.inner,
                        tuple(to_rational(x) for x in v), self.name)

    @cached_property
    def is_exact(self) -> bool:
        vals = [c for *_, c in self.structure] + [x for row in self.inner for x in row] + list(self.v)
        return all(isinstance(x, Rational) for x in vals)

    @cached_property
    def C(self) -> np.ndarray:
        """Dense float tensor C[i, j, l] = c^l_{ij}."""
        out = np.zeros((self.dim,) * 3)
        for i, j, l, c in self.structure:
            out[i, j, l] += float(c)
        return out

    @cached_property
    def Ck(self) -> np.ndarray:
        """Structure constants restricted to k x k -> k, in k-coordinates."""
        kk = np.asarray(self.k, dtype=int)
        return self.C[np.ix_(kk, kk, kk)]

    @cached_property
    def G(self) -> np.ndarray:
        """Inner product on k as a float matrix."""
        return np.array([[float(x) for x in row] for row in self.inner], dtype=float)

    @cached_property
    def v_k(self) -> np.ndarray:
        return np.array([float(x) for x in self.v], dtype=float)

    @cached_property
    def b2_exact(self):
        nk = len(self.k)
        return sum(self.inner[a][c] * self.v[a] * self.v[c] for a in range(nk) for c in range(nk))

    @cached_property
    def b(self) -> float:
        """Length of v in the inner product (the norm of the 1-form)."""
        return math.sqrt(max(float(self.b2_exact), 0.0))

    @property
    def n(self) -> int:
        """Dimension of the homogeneous space, dim k."""
        return len(self.k)

    def embed(self, x) -> np.ndarray:
        """k-coordinates (or a full g-vector) as a g-vector."""
        x = np.asarray(x, dtype=float)
        if x.shape[-1] == self.dim and self.dim != len(self.k):
            return x
        if x.shape[-1] != len(self.k):
            raise ModelError(f"vector length {x.shape[-1]} matches neither dim g={self.dim} nor dim k={len(self.k)}")
        out = np.zeros(x.shape[:-1] + (self.dim,))
        out[..., list(self.k)] = x
        return out

    @cached_property
    def is_reductive(self) -> bool:
        return _first_reductivity_violation(self) is None


def bracket(m: LieModel, x, y) -> np.ndarray:
    """[x, y] as a g-vector; x and y are g-vectors or k-vectors."""
    gx, gy = m.embed(x), m.embed(y)
    return np.einsum("...i,...j,ijl->...l", gx, gy, m.C)


def bracket_k(m: LieModel, x, y) -> np.ndarray:
    """k-component of [x, y] for k-vectors x, y (leading batch axes allowed)."""
    if not m.is_reductive:
        raise ModelError("bracket_k needs a reductive model ([h, k] must lie in k)")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    nk = len(m.k)
    if x.shape[-1] != nk or y.shape[-1] != nk:
        raise ModelError(f"bracket_k expects k-vectors of length {nk}")
    return np.einsum("...i,...j,ijl->...l", x, y, m.Ck)


@dataclass
class Check:
    name: str
    passed: bool
    message: str = ""
    witness: tuple | None = None

    def to_dict(self):
        return {"name": self.name, "passed": self.passed, "message": self.message,
                "witness": list(self.witness) if self.witness is not None else None}


@dataclass
class ValidationReport:
    checks: list
    b: float
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {"ok": self.ok, "b": self.b, "checks": [c.to_dict() for c in self.checks],
                "notes": list(self.notes)}


def _structure_dict(m: LieModel) -> dict:
    d = {}
    for i, j, l, c in m.structure:
        d[(i, j, l)] = d.get((i, j, l), 0) + c
    return d


def _first_antisymmetry_violation(m: LieModel):
    d = _structure_dict(m)
    for (i, j, l) in sorted(set(d) | {(j, i, l) for (i, j, l) in d}):
        if i > j:
            continue
        a = d.get((i, j, l), 0)
        bb = d.get((j, i, l), 0)
        if not _is_zero(a + bb):
            return (i, j, l)
    return None


def _first_jacobi_violation(m: LieModel):
    d = _structure_dict(m)
    # left[i][m] -> {p: c} for [e_i, e_m] = sum_p c e_p
    by_pair = {}
    for (i, j, l), c in d.items():
        by_pair.setdefault((i, j), {})[l] = c

    def br(i, j):
        return by_pair.get((i, j), {})

    def br_vec(i, vec):
        out = {}
        for mm, cm in vec.items():
            for p, cp in br(i, mm).items():
                out[p] = out.get(p, 0) + cm * cp
        return out

    dim = m.dim
    for i in range(dim):
        for j in range(i + 1, dim):
            for l in range(j + 1, dim):
                total = {}
                for a, bb, c in ((i, j, l), (j, l, i), (l, i, j)):
                    for p, val in br_vec(a, br(bb, c)).items():
                        total[p] = total.get(p, 0) + val
                for p, val in sorted(total.items()):
                    if not _is_zero(val):
                        return (i, j, l, p)
    return None


def _first_reductivity_violation(m: LieModel):
    hs = set(m.h)
    ks = set(m.k)
    for (i, j, l), c in sorted(_structure_dict(m).items()):
        if _is_zero(c) or l not in hs:
            continue
        if (i in hs and j in ks) or (i in ks and j in hs):
            return (i, j, l)
    return None


def _spd_failure(m: LieModel):
    nk = len(m.k)
    for a in range(nk):
        for c in range(a + 1, nk):
            if not _is_zero(m.inner[a][c] - m.inner[c][a]):
                return ("not symmetric", (m.k[a], m.k[c]))
    if nk == 0:
        return None
    if m.is_exact:
        # Sylvester's criterion with exact leading minors
        M = [list(row) for row in m.inner]
        for r in range(nk):
            pivot = M[r][r]
            if pivot <= 0:
                return ("not positive definite", (m.k[r],))
            for q in range(r + 1, nk):
                f = M[q][r] / pivot
                for t in range(r, nk):
                    M[q][t] -= f * M[r][t]
        return None
    if np.linalg.eigvalsh(m.G).min() <= 0:
        return ("not positive definite", None)
    return None


def _invariance_violation(m: LieModel):
    d = _structure_dict(m)
    for w in m.h:
        out = {}
        for a, ka in enumerate(m.k):
            va = m.v[a]
            if _is_zero(va):
                continue
            for (i, j, l), c in d.items():
                if i == w and j == ka:
                    out[l] = out.get(l, 0) + c * va
        for l, val in sorted(out.items()):
            if not _is_zero(val):
                return (w, l)
    return None


def validate(m: LieModel) -> ValidationReport:
    """Check every algebraic hypothesis the curvature formulas rely on."""
    checks = []
    w = _first_antisymmetry_violation(m)
    checks.append(Check("antisymmetry", w is None,
                        "" if w is None else f"c^{w[2]}_({w[0]},{w[1]}) != -c^{w[2]}_({w[1]},{w[0]})", w))
    w = _first_jacobi_violation(m)
    checks.append(Check("jacobi", w is None,
                        "" if w is None else f"Jacobi identity fails on (e{w[0]}, e{w[1]}, e{w[2]}) in component {w[3]}",
                        w))
    w = _first_reductivity_violation(m)
    checks.append(Check("reductivity", w is None,
                        "" if w is None else f"[e{w[0]}, e{w[1]}] has a component along h-index {w[2]}", w))
    spd = _spd_failure(m)
    checks.append(Check("inner_spd", spd is None,
                        "" if spd is None else f"inner product {spd[0]}",
                        None if spd is None else spd[1]))
    ok_norm = m.b2_exact < 1 if isinstance(m.b2_exact, Rational) else m.b2_exact < 1 - FLOAT_TOL
    checks.append(Check("norm_bound", bool(ok_norm),
                        "" if ok_norm else f"norm bound violated: b = {m.b:.6g} >= 1"))
    w = _invariance_violation(m)
    checks.append(Check("h_invariance", w is None,
                        "" if w is None else f"[e{w[0]}, v] has nonzero component {w[1]}", w))
    notes = []
    if m.h:
        notes.append("invariance of v under H is checked infinitesimally ([h, v] = 0); "
                     "this is sufficient only for connected H")
    return ValidationReport(checks, m.b, notes)


def orthonormalize(m: LieModel):
    """Change the k-basis so the inner product becomes the identity.

    Returns ``(model, basis)`` where the columns of ``basis`` (dim x dim) are
    the new basis vectors of g in old coordinates; h-vectors are unchanged.
    Old coordinates map to new ones by ``np.linalg.solve(basis, x)``.
    """
    G = m.G
    nk = len(m.k)
    if nk and (not np.allclose(G, G.T, atol=FLOAT_TOL, rtol=0) or np.linalg.eigvalsh(G).min() <= 0):
        raise ModelError("inner product on k is not symmetric positive-definite")
    if nk and np.array_equal(G, np.eye(nk)):
        return m, np.eye(m.dim)
    L = np.linalg.cholesky(G) if nk else np.zeros((0, 0))
    P = np.linalg.inv(L).T  # P^T G P = I
    T = np.eye(m.dim)
    kk = list(m.k)
    T[np.ix_(kk, kk)] = P
    Tinv = np.linalg.inv(T)
    Cn = np.einsum("cl,ijl,ia,jb->abc", Tinv, m.C, T, T)
    structure = tuple((i, j, l, float(Cn[i, j, l])) for i, j, l in zip(*np.nonzero(np.abs(Cn) > 0)))
    v_new = np.linalg.solve(P, m.v_k) if nk else np.zeros(0)
    inner = tuple(tuple(1.0 if a == c else 0.0 for c in range(nk)) for a in range(nk))
    out = LieModel(m.dim, m.h, m.k, structure, inner, tuple(float(x) for x in v_new), m.name)
    return out, T


def _fmt_number(x):
    if isinstance(x, Fraction):
        return str(x)
    return x


def model_from_dict(d: dict) -> LieModel:
    try:
        dim = int(d["dim"])
        h = list(d.get("h", []))
        k = list(d["k"]) if "k" in d else [i for i in range(dim) if i not in set(h)]
        brackets = d.get("brackets", [])
        for entry in brackets:
            if len(entry) != 4:
                raise ModelError(f"bracket entry must be [i, j, l, c]: {entry!r}")
        inner = d.get("inner")
        v = d.get("v")
    except (KeyError, TypeError) as exc:
        raise ModelError(f"malformed model: {exc}") from exc
    if v is not None and len(v) == dim and dim != len(k):
        hv = [to_rational(v[i]) for i in h]
        if any(x != 0 for x in hv):
            raise ModelError("v has a component along h; it must lie in k")
        v = [v[i] for i in k]
    return LieModel.from_brackets(dim, h, k, brackets, inner, v, name=str(d.get("name", "")))


def model_to_dict(m: LieModel) -> dict:
    return {
        "name": m.name,
        "dim": m.dim,
        "h": list(m.h),
        "k": list(m.k),
        "brackets": [[i, j, l, _fmt_number(c)] for i, j, l, c in m.structure if i < j],
        "inner": [[_fmt_number(x) for x in row] for row in m.inner],
        "v": [_fmt_number(x) for x in m.v],
    }


def load_model(path) -> tuple:
    """Read a model file; returns ``(model, phi_dict_or_None)``."""
    with open(Path(path)) as fh:
        d = json.load(fh)
    if not isinstance(d, dict):
        raise ModelError("model file must contain a JSON object")
    return model_from_dict(d), d.get("phi")
