"""Group actions on sampled function spaces.

Seven unitary actions are implemented:

* ``act_schrodinger``            -- coordinate form on L^2(R),
  [rho(s,x,y) f](t) = e^{2 pi i hbar (s - t y)} f(t - x)
* ``act_schrodinger_momentum``   -- momentum form on L^2(R),
  [rho'(s,x,y) f](l) = e^{2 pi i hbar (s + x(l - y))} f(l - y)
* ``act_quasi_regular_left``     -- on L^2(R^2),
  [L(s,x,y) f](x',y') = e^{2 pi i hbar (s + x(y' - y))} f(x'-x, y'-y)
* ``act_quasi_regular_right``    -- on L^2(R^2),
  [R(s,x,y) f](x',y') = e^{-2 pi i hbar (s + x' y)} f(x'+x, y'+y)
* ``act_lattice``                -- on doubly quasi-periodic fields,
  [rho_m(s,x,y) f](u,v) = e^{2 pi i m (s + x(v - y))} f(u-x, v-y)
* ``act_lattice_torus``          -- same action written purely with
  integer/fractional parts, never leaving the fundamental domain
* ``act_fsb``                    -- the analytic-space form obtained from
  the left quasi-regular action by the multiplicative peeling weight

plus the peeled Schrodinger and lattice actions.  Shifts must land on grid
nodes (an optional linear-interpolation mode is provided for the line
actions, flagged approximate); values shifted in from outside a truncated
domain are zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import IndexMismatch, OffGridShift, OverflowGuard
from .grids import GridSpec1D, PlaneField, SampledLine, TorusField
from .group import HeisenbergElement
from .numerics import TWO_PI, cis

SHIFT_TOL = 1e-9
EXP_GUARD = 700.0


@dataclass(frozen=True)
class ReprParams:
    """Planck parameter hbar > 0 and ladder tuning kappa > 0."""
    hbar: float = 1.0
    kappa: float = 1.0

    def __post_init__(self):
        if not self.hbar > 0:
            raise ValueError("hbar must be positive")
        if not self.kappa > 0:
            raise ValueError("kappa must be positive")

    @property
    def h(self) -> float:
        """The derived constant h = 2*pi*hbar used in the analytic chart."""
        return TWO_PI * self.hbar


@dataclass(frozen=True)
class LatticeParams:
    """Integer quasi-periodicity index m >= 1 and ladder tuning kappa > 0."""
    m: int = 1
    kappa: float = 1.0

    def __post_init__(self):
        if self.m < 1 or int(self.m) != self.m:
            raise ValueError("m must be a positive integer")
        if not self.kappa > 0:
            raise ValueError("kappa must be positive")


def _aligned_units(shift: float, step: float, tol: float = SHIFT_TOL) -> int:
    k = round(shift / step)
    if abs(shift - k * step) > tol:
        raise OffGridShift(f"shift {shift} is not a multiple of step {step}")
    return int(k)


def _shift_line(values: np.ndarray, k: int) -> np.ndarray:
    """values[i - k] with zero fill (i.e. the sampled f(t - k*step))."""
    out = np.zeros_like(values)
    n = len(values)
    if k >= 0:
        out[k:] = values[:n - k] if k else values
    else:
        out[:n + k] = values[-k:]
    return out


def _interp_line(f: SampledLine, shift: float) -> np.ndarray:
    """Linear interpolation of f(t - shift); approximate, excluded from
    exactness-grade checks."""
    r = shift / f.grid.step
    k = math.floor(r)
    w = r - k
    lo = _shift_line(f.values, k)
    hi = _shift_line(f.values, k + 1)
    return (1.0 - w) * lo + w * hi


def _shift_plane(values: np.ndarray, kx: int, ky: int) -> np.ndarray:
    out = np.zeros_like(values)
    nx, ny = values.shape
    sx = slice(max(kx, 0), nx + min(kx, 0))
    sy = slice(max(ky, 0), ny + min(ky, 0))
    tx = slice(max(-kx, 0), nx + min(-kx, 0))
    ty = slice(max(-ky, 0), ny + min(-ky, 0))
    out[sx, sy] = values[tx, ty]
    return out


def act_schrodinger(p: ReprParams, g: HeisenbergElement, f: SampledLine,
                    interp: bool = False) -> SampledLine:
    t = f.grid.points()
    if interp:
        shifted = _interp_line(f, g.x)
    else:
        shifted = _shift_line(f.values, _aligned_units(g.x, f.grid.step))
    return SampledLine(f.grid, cis(p.hbar * (g.s - t * g.y)) * shifted)


def act_schrodinger_momentum(p: ReprParams, g: HeisenbergElement, f: SampledLine,
                             interp: bool = False) -> SampledLine:
    lam = f.grid.points()
    if interp:
        shifted = _interp_line(f, g.y)
    else:
        shifted = _shift_line(f.values, _aligned_units(g.y, f.grid.step))
    return SampledLine(f.grid, cis(p.hbar * (g.s + g.x * (lam - g.y))) * shifted)


def act_quasi_regular_left(p: ReprParams, g: HeisenbergElement,
                           F: PlaneField) -> PlaneField:
    kx = _aligned_units(g.x, F.gx.step)
    ky = _aligned_units(g.y, F.gy.step)
    yp = F.gy.points()[None, :]
    phase = cis(p.hbar * (g.s + g.x * (yp - g.y)))
    return PlaneField(F.gx, F.gy, phase * _shift_plane(F.values, kx, ky))


def act_quasi_regular_right(p: ReprParams, g: HeisenbergElement,
                            F: PlaneField) -> PlaneField:
    kx = _aligned_units(g.x, F.gx.step)
    ky = _aligned_units(g.y, F.gy.step)
    xp = F.gx.points()[:, None]
    phase = cis(-p.hbar * (g.s + xp * g.y))
    return PlaneField(F.gx, F.gy, phase * _shift_plane(F.values, -kx, -ky))


def _lattice_shift_indices(g: HeisenbergElement, nu: int, nv: int):
    """Index bookkeeping for the shifted arguments (u - x, v - y).

    Returns stored indices (jj, kk) of the fractional parts, the fractional
    parts themselves, and the integer part of v - y (column vector shapes
    ready for broadcasting over a (nu, nv) field).
    """
    a = round(g.x * nu)
    b = round(g.y * nv)
    if abs(g.x - a / nu) > SHIFT_TOL or abs(g.y - b / nv) > SHIFT_TOL:
        raise OffGridShift("lattice shift is not grid-aligned modulo 1")
    j = np.arange(nu)[:, None]
    k = np.arange(nv)[None, :]
    jj = (j - a) % nu
    kk = (k - b) % nv
    ufrac = jj / nu
    vfrac = kk / nv
    vint = (k - b - kk) // nv
    return jj, kk, ufrac, vfrac, vint


def act_lattice(p: LatticeParams, g: HeisenbergElement, F: TorusField) -> TorusField:
    if F.m != p.m:
        raise IndexMismatch(f"field index {F.m} != parameter index {p.m}")
    jj, kk, ufrac, _, vint = _lattice_shift_indices(g, F.nu, F.nv)
    v = F.v_points()[None, :]
    phase = cis(p.m * (g.s + g.x * (v - g.y))) * cis(p.m * ufrac * vint)
    return TorusField(F.nu, F.nv, F.m, phase * F.values[jj, kk])


def act_lattice_torus(p: LatticeParams, g: HeisenbergElement, F: TorusField) -> TorusField:
    if F.m != p.m:
        raise IndexMismatch(f"field index {F.m} != parameter index {p.m}")
    jj, kk, _, vfrac, vint = _lattice_shift_indices(g, F.nu, F.nv)
    u = F.u_points()[:, None]
    phase = cis(p.m * (g.s + g.x * vfrac + u * vint))
    return TorusField(F.nu, F.nv, F.m, phase * F.values[jj, kk])


def fsb_chart(p: ReprParams, x, y):
    """Complex chart z = sqrt(h / 2 kappa) (x + i kappa y)."""
    return math.sqrt(p.h / (2.0 * p.kappa)) * (np.asarray(x) + 1j * p.kappa * np.asarray(y))


def act_fsb(p: ReprParams, g: HeisenbergElement, F: PlaneField) -> PlaneField:
    kx = _aligned_units(g.x, F.gx.step)
    ky = _aligned_units(g.y, F.gy.step)
    z = fsb_chart(p, g.x, g.y)
    zp = fsb_chart(p, F.gx.points()[:, None], F.gy.points()[None, :])
    expo = (1j * p.h * g.s
            + 0.25 * (np.conj(z) ** 2 - z ** 2 - 2.0 * z * np.conj(z))
            + np.conj(z) * zp)
    if np.max(np.abs(expo.real)) > EXP_GUARD:
        raise OverflowGuard("analytic-chart weight exceeds double range")
    return PlaneField(F.gx, F.gy, np.exp(expo) * _shift_plane(F.values, kx, ky))


def act_schrodinger_peeled(p: ReprParams, g: HeisenbergElement,
                           F: SampledLine) -> SampledLine:
    k = _aligned_units(g.x, F.grid.step)
    t = F.grid.points()
    expo = -(math.pi * p.hbar / p.kappa) * (g.x ** 2 - 2.0 * t * (g.x - 1j * p.kappa * g.y))
    if np.max(np.abs(expo.real)) > EXP_GUARD:
        raise OverflowGuard("peeled-representation weight exceeds double range")
    return SampledLine(F.grid, cis(p.hbar * g.s) * np.exp(expo) * _shift_line(F.values, k))


def _lattice_peel_exponent(p: LatticeParams, u, v):
    """Exponent d with peeled field = e^{-d} * (quasi-periodic field);
    d(u, v) = -(pi m / kappa) u^2 + 2 pi i m u v."""
    u = np.asarray(u)
    v = np.asarray(v)
    return -(math.pi * p.m / p.kappa) * u ** 2 + (1j * TWO_PI * p.m) * u * v


def act_lattice_peeled(p: LatticeParams, g: HeisenbergElement,
                       F: TorusField) -> TorusField:
    """Peeled lattice action: e^{2 pi i m s} e^{pi kappa (w^2/4-term)} F(.-shift)
    with w built from the group coordinates; the shifted field is read through
    the peeled extension rule (plain quasi-periodicity conjugated by the
    peeling weight)."""
    if F.m != p.m:
        raise IndexMismatch(f"field index {F.m} != parameter index {p.m}")
    jj, kk, ufrac, vfrac, vint = _lattice_shift_indices(g, F.nu, F.nv)
    u = F.u_points()[:, None]
    v = F.v_points()[None, :]
    wg = p.m * (g.y + 1j * g.x / p.kappa)
    wp = p.m * (v + 1j * u / p.kappa)
    core = (1j * TWO_PI * p.m * g.s
            + (math.pi * p.kappa / p.m) * (0.25 * (wg - np.conj(wg)) ** 2
                                           + wg * (np.conj(wp) - wp)))
    ushift = u - g.x
    vshift = v - g.y
    ext = (_lattice_peel_exponent(p, ufrac, vfrac)
           - _lattice_peel_exponent(p, ushift, vshift)
           + (1j * TWO_PI * p.m) * ufrac * vint)
    expo = core + ext
    if np.max(np.abs(expo.real)) > EXP_GUARD:
        raise OverflowGuard("peeled lattice weight exceeds double range")
    return TorusField(F.nu, F.nv, F.m, np.exp(expo) * F.values[jj, kk])
