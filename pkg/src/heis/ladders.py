"""Derived representations, ladder operators and vacuum vectors.

For the coordinate-form action the Lie-algebra directions act as

    S: f -> 2 pi i hbar f,     X: f -> -f',     Y: f -> -2 pi i hbar t f,

and the normalised ladder pair is

    a^- f = (2 pi hbar t f + kappa f') / sqrt(4 pi hbar kappa),
    a^+ f = (2 pi hbar t f - kappa f') / sqrt(4 pi hbar kappa),

which satisfies [a^-, a^+] = I and (a^-)* = a^+ exactly and annihilates /
raises the same vectors as the unnormalised pair built from the X, Y
directions.  The vacuum of a^- is the Gaussian 2^{1/4} e^{-(pi hbar/kappa) t^2};
its counterpart on the torus is a Jacobi-theta profile, available both as
the prefactor-times-series formula on the fundamental domain and as an
absolutely convergent lattice sum valid at any real argument.
"""
from __future__ import annotations

import enum
import math

import numpy as np

from .errors import OrderTooLarge
from .grids import GridSpec1D, SampledLine, TorusField, sample
from .numerics import TWO_PI, derivative
from .reps import LatticeParams, ReprParams
from .theta import ThetaTruncation, jacobi_theta_series

HERMITE_MAX = 32


class DerivedDirection(enum.Enum):
    S = "s"
    X = "x"
    Y = "y"


def derived_schrodinger(p: ReprParams, direction: DerivedDirection,
                        f: SampledLine) -> SampledLine:
    """Derived coordinate-form action of one Lie-algebra direction.

    Accuracy is that of the shared finite-difference stencil; data rough at
    the grid scale degrades it.
    """
    if direction is DerivedDirection.S:
        vals = (1j * TWO_PI * p.hbar) * f.values
    elif direction is DerivedDirection.X:
        vals = -derivative(f.values, f.grid.step)
    elif direction is DerivedDirection.Y:
        vals = (-1j * TWO_PI * p.hbar) * f.grid.points() * f.values
    else:  # pragma: no cover
        raise ValueError(f"unknown direction {direction!r}")
    return SampledLine(f.grid, vals)


def _ladder(p: ReprParams, f: SampledLine, sign: float) -> SampledLine:
    t = f.grid.points()
    fp = derivative(f.values, f.grid.step)
    scale = 1.0 / math.sqrt(4.0 * math.pi * p.hbar * p.kappa)
    vals = scale * (TWO_PI * p.hbar * t * f.values + sign * p.kappa * fp)
    return SampledLine(f.grid, vals)


def annihilation(p: ReprParams, f: SampledLine) -> SampledLine:
    return _ladder(p, f, +1.0)


def creation(p: ReprParams, f: SampledLine) -> SampledLine:
    return _ladder(p, f, -1.0)


def vacuum_gaussian(p: ReprParams, grid: GridSpec1D) -> SampledLine:
    """The ground state 2^{1/4} e^{-(pi hbar / kappa) t^2}."""
    rate = math.pi * p.hbar / p.kappa
    return sample(lambda t: 2.0 ** 0.25 * np.exp(-rate * t * t), grid)


def hermite_state(p: ReprParams, n: int, grid: GridSpec1D) -> SampledLine:
    """n-th excited state (a^+)^n vacuum / sqrt(n!)."""
    if n < 0 or int(n) != n:
        raise ValueError("order must be a non-negative integer")
    if n > HERMITE_MAX:
        raise OrderTooLarge(f"ladder order {n} exceeds the cap {HERMITE_MAX}")
    f = vacuum_gaussian(p, grid)
    for _ in range(int(n)):
        f = creation(p, f)
    return SampledLine(grid, f.values / math.sqrt(math.factorial(int(n))))


# ---------------------------------------------------------------------------
# The torus vacuum
# ---------------------------------------------------------------------------

def theta_vacuum_prefactor(p: LatticeParams, u, v) -> np.ndarray:
    """e^{pi kappa (3 w^2 - wbar^2 - 2 w wbar)/(4m)} with w = m(v + i u/kappa).

    The exponent collapses to -(pi m / kappa) u^2 + 2 pi i m u v.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return np.exp(-(math.pi * p.m / p.kappa) * u ** 2 + (1j * TWO_PI * p.m) * u * v)


def vacuum_theta(p: LatticeParams, nu: int, nv: int,
                 trunc: ThetaTruncation | None = None) -> TorusField:
    """Torus vacuum: prefactor times the Jacobi theta series at each node."""
    us = (np.arange(nu) / nu)[:, None]
    vs = (np.arange(nv) / nv)[None, :]
    omega = p.m * (vs + 1j * us / p.kappa)
    vals = theta_vacuum_prefactor(p, us, vs) * jacobi_theta_series(
        p.m, p.kappa, omega, trunc)
    return TorusField(nu, nv, p.m, vals)


def theta_vacuum_eval(p: LatticeParams, u, v,
                      eps: float = 1e-14) -> np.ndarray:
    """Torus vacuum at arbitrary real arguments via its lattice-sum form

        sum_n e^{-(pi m / kappa)(u + n)^2} e^{2 pi i m (u + n) v},

    which is absolutely convergent and exactly quasi-periodic, so no
    reduction to the fundamental domain is needed.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    umin = float(np.min(u))
    umax = float(np.max(u))
    reach = ThetaTruncation.for_params(p.m, p.kappa, eps).nmax
    rate = math.pi * p.m / p.kappa
    total = np.zeros(np.broadcast_shapes(u.shape, v.shape), dtype=complex)
    for n in range(-math.ceil(umax) - reach, math.floor(-umin) + reach + 1):
        shifted = u + n
        total = total + np.exp(-rate * shifted ** 2 + (1j * TWO_PI * p.m) * shifted * v)
    return total
