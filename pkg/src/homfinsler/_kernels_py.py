"""Pure-Python (numpy) kernels; reference implementation and fallback for ``_kernels``.

All functions take 1-D float64 arrays of equal length and return float64
arrays.  Field order everywhere is Q, Q', Q'', Delta, psi, Phi.  Internal
arithmetic uses ``np.longdouble``: both the assembled quantities and the
expanded closed forms cancel heavily near zeros of Phi, and double precision
alone loses up to ~1e-11 relative accuracy there.
"""

import numpy as np

from .jets import Jet, polyval_jet

LD = np.longdouble


def _ld(*arrays):
    return [np.asarray(a, dtype=LD) for a in arrays]


def generic_jets(coeffs, s, b2, n):
    """(m, 6, 3) array: value, d/ds and d^2/ds^2 of each field, from order-4 jets of phi."""
    coeffs = np.asarray(coeffs, dtype=LD)
    dcoeffs = coeffs[1:] * np.arange(1, len(coeffs)) if len(coeffs) > 1 else np.zeros(1, dtype=LD)
    s, b2, n = _ld(s, b2, n)
    sj = Jet.variable(s, 4)
    ph = polyval_jet(coeffs, sj)
    dph = polyval_jet(dcoeffs, sj)
    with np.errstate(divide="ignore", invalid="ignore"):
        Q = dph / (ph - sj * dph)
        Qp = Q.deriv()
        Qpp = Qp.deriv()
        sQ = sj * Q
        bms = b2 - sj * sj
        Delta = 1 + sQ + bms * Qp
        psi = Qp / (Delta * 2)
        Phi = (sj * Qp - Q) * (Delta * n + 1 + sQ) - bms * (1 + sQ) * Qpp
    out = np.empty((len(s), 6, 3))
    for f, jet in enumerate((Q, Qp, Qpp, Delta, psi, Phi)):
        for d in range(3):
            out[:, f, d] = jet.derivative(d)
    return out


def square_closed(s, b2, n):
    """Closed forms for phi = 1 + 2s + s^2."""
    s, b2, n = _ld(s, b2, n)
    out = np.empty((len(s), 6), dtype=LD)
    with np.errstate(divide="ignore", invalid="ignore"):
        u = 1.0 / (1.0 - s)
        out[:, 0] = 2 * u
        out[:, 1] = 2 * u ** 2
        out[:, 2] = 4 * u ** 3
        out[:, 3] = (1 - 3 * s ** 2 + 2 * b2) * u ** 2
        out[:, 4] = out[:, 1] / (2 * out[:, 3])
        bracket = (-6 * n * s ** 3 + 3 * (n + 1) * s ** 2 + 2 * (1 + n + (2 * n - 1) * b2) * s
                   - (1 + n) * (1 + 2 * b2))
        out[:, 5] = 2 * bracket * u ** 4
    return out.astype(float)


def randers_square_closed(s, b2, n):
    """Closed forms for phi = 1 + 3s + s^2."""
    s, b2, n = _ld(s, b2, n)
    out = np.empty((len(s), 6), dtype=LD)
    with np.errstate(divide="ignore", invalid="ignore"):
        w = 1.0 / (1.0 - s ** 2)
        out[:, 0] = (2 * s + 3) * w
        out[:, 1] = (2 * s ** 2 + 6 * s + 2) * w ** 2
        out[:, 2] = (4 * s ** 3 + 18 * s ** 2 + 12 * s + 6) * w ** 3
        out[:, 3] = (-3 * s ** 4 - 9 * s ** 3 + (2 * b2 - 2) * s ** 2 + (6 * b2 + 3) * s + 2 * b2 + 1) * w ** 2
        out[:, 4] = out[:, 1] / (2 * out[:, 3])
        num = (-12 * n * s ** 7 + (9 - 63 * n) * s ** 6 + (8 * n * b2 - 4 * b2 - 89 * n + 43) * s ** 5
               + (42 * n * b2 - 30 * b2 + 3 * n + 75) * s ** 4 + (62 * n * b2 - 70 * b2 + 58 * n + 70) * s ** 3
               + (12 * n * b2 - 60 * b2 + 15 * n + 15) * s ** 2 - (18 * n * b2 + 30 * b2 + 9 * n + 9) * s
               - (6 * n * b2 + 6 * b2 + 3 * n + 3))
        out[:, 5] = num * w ** 4
    return out.astype(float)
