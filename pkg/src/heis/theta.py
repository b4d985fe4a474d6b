"""Truncated Jacobi theta series with a certified tail bound.

Only one theta instance appears in this library: the series

    Theta(omega) = sum_n  e^{-(pi*m/kappa) n^2} e^{2*pi*i*n*omega},

i.e. a theta-3 with nome q = e^{-pi*m/kappa}.  Truncation keeps all terms
with |n| <= nmax where nmax is derived from the requested absolute tail
eps on real omega; terms are added in fixed ascending order with Kahan
compensation, so results are deterministic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergenceGuard
from .numerics import TWO_PI

TERM_GUARD = 1e100


@dataclass(frozen=True)
class ThetaTruncation:
    """Absolute tail tolerance and the derived term cap."""
    eps: float
    nmax: int

    @classmethod
    def for_params(cls, m: int, kappa: float, eps: float = 1e-14) -> "ThetaTruncation":
        if not 0 < eps <= 1e-6:
            raise ValueError("eps must lie in (0, 1e-6]")
        nmax = math.ceil(math.sqrt(kappa * math.log(2.0 / eps) / (math.pi * m))) + 1
        return cls(eps=eps, nmax=nmax)


def jacobi_theta_series(m: int, kappa: float, omega,
                        trunc: ThetaTruncation | None = None) -> complex | np.ndarray:
    """Evaluate the truncated series at `omega` (scalar or array).

    Raises :class:`DivergenceGuard` when any term's modulus exceeds 1e100,
    which happens once |Im omega| outgrows the Gaussian damping of the
    retained terms.
    """
    if m < 1 or int(m) != m:
        raise ValueError("m must be a positive integer")
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    if trunc is None:
        trunc = ThetaTruncation.for_params(m, kappa)
    om = np.asarray(omega, dtype=complex)
    rate = math.pi * m / kappa
    total = np.zeros(om.shape, dtype=complex)
    comp = np.zeros_like(total)
    for n in range(-trunc.nmax, trunc.nmax + 1):
        term = np.exp(-rate * n * n + (1j * TWO_PI * n) * om)
        if np.any(np.abs(term) > TERM_GUARD):
            raise DivergenceGuard(
                f"theta term n={n} exceeds the magnitude guard; |Im omega| too large")
        y = term - comp
        s = total + y
        comp = (s - total) - y
        total = s
    if om.ndim == 0:
        return complex(total)
    return total
