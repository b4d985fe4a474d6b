"""Shared numerical kernels: unit phases, floor-split, finite differences.

The finite-difference stencils here are the single source of derivative
truth for the whole package (ladder operators, annihilation residuals,
Cauchy-Riemann checks).  Interior nodes use a 6th-order central stencil;
the three nodes at each edge fall back to skewed 7-point stencils of the
same order, generated once from a Vandermonde solve.
"""
from __future__ import annotations

import math

import numpy as np

TWO_PI = 2.0 * math.pi

#: residual norms ignore this many nodes at each edge of a non-periodic axis
INTERIOR_BAND = 4

#: snap tolerance used when splitting a real into integer and fractional part
INT_SNAP = 1e-12


def cis(x):
    """e^{2*pi*i*x} for scalars or arrays."""
    return np.exp((2j * math.pi) * np.asarray(x))


def int_frac(x: float, snap: float = INT_SNAP) -> tuple[int, float]:
    """Split x = n + r with n = floor(x) and r in [0, 1).

    Values within `snap` of an integer are snapped to it first, so that
    r never comes out as 1 - epsilon for inputs meant to be integral.
    """
    r = round(x)
    if abs(x - r) <= snap:
        return int(r), 0.0
    n = math.floor(x)
    return int(n), x - n


def int_frac_array(x: np.ndarray, snap: float = INT_SNAP) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`int_frac`."""
    x = np.asarray(x, dtype=float)
    r = np.round(x)
    snapped = np.where(np.abs(x - r) <= snap, r, x)
    n = np.floor(snapped)
    return n.astype(np.int64), snapped - n


def kahan_sum(terms: np.ndarray, axis: int = -1) -> np.ndarray:
    """Compensated summation along `axis`, in fixed ascending index order."""
    terms = np.moveaxis(np.asarray(terms), axis, 0)
    total = np.zeros(terms.shape[1:], dtype=terms.dtype)
    comp = np.zeros_like(total)
    for t in terms:
        y = t - comp
        s = total + y
        comp = (s - total) - y
        total = s
    return total


def _stencil(offsets: np.ndarray) -> np.ndarray:
    """First-derivative weights exact for polynomials of degree < len(offsets)."""
    k = len(offsets)
    a = np.vander(offsets, k, increasing=True).T
    rhs = np.zeros(k)
    rhs[1] = 1.0
    return np.linalg.solve(a, rhs)


_CENTRAL = _stencil(np.arange(-3, 4, dtype=float))
_EDGE = [_stencil(np.arange(7, dtype=float) - shift) for shift in range(3)]


def derivative(values: np.ndarray, step: float, axis: int = -1,
               periodic: bool = False) -> np.ndarray:
    """First derivative along `axis` (6th-order stencils).

    With ``periodic=True`` the central stencil wraps around; otherwise the
    three nodes at each end use one-sided stencils of the same order.
    """
    v = np.moveaxis(np.asarray(values), axis, 0)
    n = v.shape[0]
    if n < 7:
        raise ValueError("derivative needs at least 7 nodes along the axis")
    out = np.zeros(v.shape, dtype=np.result_type(v.dtype, float))
    if periodic:
        for j, c in enumerate(_CENTRAL):
            if c != 0.0:
                out += c * np.roll(v, 3 - j, axis=0)
    else:
        for j, c in enumerate(_CENTRAL):
            if c != 0.0:
                out[3:n - 3] += c * v[j:n - 6 + j]
        for i in range(3):
            for j, c in enumerate(_EDGE[i]):
                out[i] += c * v[j]
                out[n - 1 - i] -= c * v[n - 1 - j]
    out /= step
    return np.moveaxis(out, 0, axis)


def interior_mask_1d(n: int, band: int = INTERIOR_BAND) -> np.ndarray:
    m = np.zeros(n, dtype=bool)
    m[band:n - band] = True
    return m
