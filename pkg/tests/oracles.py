"""Independent exact oracles, written without the package's jets, kernels or ratcheck.

Derivatives of Q are taken from the explicit quotient-rule expressions
    D   = phi - s phi'
    Q'  = phi phi'' / D^2
    Q'' = (phi' phi'' + phi phi''') / D^2 + 2 s phi phi''^2 / D^3
"""

import math
from fractions import Fraction

SQUARE = (1, 2, 1)
RANDERS_SQUARE = (1, 3, 1)
RIEMANNIAN = (1,)


def _poly(coeffs, s, k=0):
    """k-th derivative of sum c_i s^i at s, exactly."""
    total = Fraction(0)
    for i, c in enumerate(coeffs):
        if i >= k:
            total += Fraction(c) * math.perm(i, k) * Fraction(s) ** (i - k)
    return total


def quantities(coeffs, s, b2, n):
    s, b2, n = Fraction(s), Fraction(b2), Fraction(n)
    p, p1, p2, p3 = (_poly(coeffs, s, k) for k in range(4))
    D = p - s * p1
    Q = p1 / D
    Qp = p * p2 / D ** 2
    Qpp = (p1 * p2 + p * p3) / D ** 2 + 2 * s * p * p2 ** 2 / D ** 3
    Delta = 1 + s * Q + (b2 - s * s) * Qp
    Phi = (s * Qp - Q) * (n * Delta + 1 + s * Q) - (b2 - s * s) * (1 + s * Q) * Qpp
    return {"Q": Q, "Qp": Qp, "Qpp": Qpp, "Delta": Delta, "psi": Qp / (2 * Delta), "Phi": Phi}


def factor(coeffs, s, b2, n):
    q = quantities(coeffs, s, b2, n)
    return q["Phi"] / (2 * q["Delta"] ** 2)


def structure(model):
    """c^l_ij as a dict of Fractions over the full g-basis."""
    return {(i, j, l): Fraction(c) for i, j, l, c in model.structure}


def s_curvature(model, coeffs, y, n=None):
    """S(y) with exact brackets and inner products; only alpha is irrational."""
    k = list(model.k)
    C = structure(model)
    G = [[Fraction(x) for x in row] for row in model.inner]
    v = [Fraction(x) for x in model.v]
    y = [Fraction(x) for x in y]
    nk = len(k)
    pos = {g: a for a, g in enumerate(k)}
    w = [Fraction(0)] * nk
    for (i, j, l), c in C.items():
        if i in pos and j in pos and l in pos:
            w[pos[l]] += c * v[pos[i]] * y[pos[j]]

    def ip(x, z):
        return sum(G[a][b] * x[a] * z[b] for a in range(nk) for b in range(nk))

    a2 = ip(y, y)
    a = math.sqrt(a2)
    b2 = ip(v, v)
    s = ip(v, y) / a
    q = quantities(coeffs, Fraction(s), b2, n or nk)
    Q, Delta, Phi = (float(q[f]) for f in ("Q", "Delta", "Phi"))
    return Phi / (2 * a * Delta ** 2) * (float(ip(w, y)) + a * Q * float(ip(w, v)))
