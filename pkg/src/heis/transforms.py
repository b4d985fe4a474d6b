"""Co- and contra-variant transforms between the representation spaces.

Covariant transforms pair a signal against the orbit of a fiducial vector:

* ``matrix_coefficient``    W(f, phi)(x, y) = <f, rho(0,x,y) phi>  on L^2(R)
* ``covariant_pre_fsb``     same with the Gaussian vacuum window and the
                            sqrt(hbar/kappa) measure renormalisation
* ``covariant_zak``         [Z f](u,v) = e^{2 pi i m u v} sum_n f(u+n) e^{2 pi i m n v}
                            (the closed-form pairing against a Dirac comb;
                            the comb itself is never materialised)
* ``covariant_pre_theta``   pairing of a torus field against the shifted
                            theta vacuum
* ``covariant_fourier_inverse``  [W f](y) = int f(t) e^{2 pi i hbar y t} dt

Contravariant transforms integrate a field against the orbit of a
reconstruction vector and invert the above under the pairing condition
<phi, psi> = 1.  The three peelings are invertible multiplication
operators moving each picture to its analytic model space.

All quadrature is the rectangle rule on the stored grids; every sum runs
in a fixed order, so outputs are reproducible bit-for-bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (GridIncompatible, IndexMismatch, OffGridShift,
                     OverflowGuard, ShapeMismatch, SupportOverflow)
from .grids import GridSpec1D, PlaneField, SampledLine, TorusField, norm
from .numerics import cis, int_frac_array, TWO_PI
from .reps import EXP_GUARD, SHIFT_TOL, LatticeParams, ReprParams

ZAK_TAIL_REL = 1e-12


@dataclass(frozen=True)
class FiducialSpec:
    """Analysis window: the Gaussian vacuum or a caller-supplied vector."""
    kind: str = "gaussian"
    custom: SampledLine | None = None

    def __post_init__(self):
        if self.kind not in ("gaussian", "custom"):
            raise ValueError(f"unknown fiducial kind {self.kind!r}")
        if self.kind == "custom" and self.custom is None:
            raise ValueError("custom fiducial requires a vector")


@dataclass(frozen=True)
class ReconstructionSpec:
    """Synthesis vector for the contravariant transforms."""
    kind: str = "gaussian"
    payload: object | None = None

    def __post_init__(self):
        if self.kind not in ("gaussian", "theta_vacuum", "constant", "custom"):
            raise ValueError(f"unknown reconstruction kind {self.kind!r}")
        if self.kind == "custom" and self.payload is None:
            raise ValueError("custom reconstruction requires a vector")


def _gaussian_window(p: ReprParams, t: np.ndarray, x: np.ndarray) -> np.ndarray:
    """e^{-(pi hbar / kappa)(t - x)^2} broadcast over t and x."""
    rate = math.pi * p.hbar / p.kappa
    return np.exp(-rate * (t - x) ** 2)


def _shift_units(x: float, step: float) -> int:
    k = round(x / step)
    if abs(x - k * step) > SHIFT_TOL:
        raise OffGridShift(f"offset {x} is not a multiple of step {step}")
    return int(k)


def _window_matrix(phi: SampledLine, xs: np.ndarray) -> np.ndarray:
    """Rows phi(t - x) for each plane abscissa x (grid-aligned shifts)."""
    n = phi.grid.count
    out = np.zeros((len(xs), n), dtype=complex)
    for i, x in enumerate(xs):
        k = _shift_units(float(x), phi.grid.step)
        if k >= 0:
            out[i, k:] = phi.values[:n - k] if k else phi.values
        else:
            out[i, :n + k] = phi.values[-k:]
    return out


def matrix_coefficient(p: ReprParams, f: SampledLine, phi: SampledLine,
                       gx: GridSpec1D, gy: GridSpec1D) -> PlaneField:
    """W(f, phi)(x, y) = <f, rho(0,x,y) phi> on the plane grid gx x gy."""
    if phi.grid != f.grid:
        raise ShapeMismatch("fiducial vector must share the signal grid")
    windows = np.conj(_window_matrix(phi, gx.points()))
    kernel = cis(p.hbar * np.outer(f.grid.points(), gy.points()))
    vals = (windows * f.values[None, :]) @ kernel * f.grid.step
    return PlaneField(gx, gy, vals)


def covariant_pre_fsb(p: ReprParams, phi: FiducialSpec, f: SampledLine,
                      gx: GridSpec1D, gy: GridSpec1D) -> PlaneField:
    """Windowed-Fourier image of f.

    With the Gaussian fiducial the window is evaluated in closed form at
    every plane abscissa (no alignment needed) and the output carries the
    sqrt(hbar/kappa) renormalisation; a custom fiducial is used as-is.
    """
    if phi.kind == "custom":
        return matrix_coefficient(p, f, phi.custom, gx, gy)
    t = f.grid.points()
    factor = math.sqrt(p.hbar / p.kappa) * 2.0 ** 0.25
    windows = _gaussian_window(p, t[None, :], gx.points()[:, None])
    kernel = cis(p.hbar * np.outer(t, gy.points()))
    vals = factor * ((windows * f.values[None, :]) @ kernel) * f.grid.step
    return PlaneField(gx, gy, vals)


# ---------------------------------------------------------------------------
# Zak pair
# ---------------------------------------------------------------------------

def _zak_indexing(f: SampledLine, nu: int):
    """Samples-per-period bookkeeping; the torus u-grid must be a subgrid
    of the signal grid and the origin must sit on a node."""
    per = 1.0 / f.grid.step
    pint = round(per)
    if abs(per - pint) > 1e-9 * per or pint % nu != 0:
        raise GridIncompatible(
            f"torus u-grid of size {nu} does not divide the {per} samples per unit")
    i0 = round(-f.grid.origin / f.grid.step)
    if abs(f.grid.origin + i0 * f.grid.step) > SHIFT_TOL:
        raise GridIncompatible("signal grid origin is not an integer node")
    return pint, pint // nu, i0


def _zak_support_check(f: SampledLine, ntrunc: int):
    t = f.grid.points()
    outside = (t < -ntrunc) | (t >= ntrunc + 1)
    total = norm(f)
    if total == 0.0:
        return
    tail = math.sqrt(float(np.sum(np.abs(f.values[outside]) ** 2)) * f.grid.step)
    if tail > ZAK_TAIL_REL * total:
        raise SupportOverflow(
            f"signal tail beyond [-{ntrunc}, {ntrunc + 1}) is {tail:.3e} "
            f"(> {ZAK_TAIL_REL} of the norm {total:.3e})")


def covariant_zak(p: LatticeParams, f: SampledLine, nu: int, nv: int,
                  ntrunc: int = 16) -> TorusField:
    """Closed-form lattice covariant transform of a line signal."""
    pint, q, i0 = _zak_indexing(f, nu)
    _zak_support_check(f, ntrunc)
    ns = np.arange(-ntrunc, ntrunc + 1)
    j = np.arange(nu)
    idx = j[:, None] * q + ns[None, :] * pint + i0
    valid = (idx >= 0) & (idx < f.grid.count)
    gathered = np.where(valid, f.values[np.clip(idx, 0, f.grid.count - 1)], 0.0)
    vs = np.arange(nv) / nv
    kernel = cis(p.m * np.outer(ns, vs))
    core = gathered @ kernel
    outer = cis(p.m * np.outer(j / nu, vs))
    return TorusField(nu, nv, p.m, outer * core)


def zak_extended(p: LatticeParams, f: SampledLine, u: float, v: float,
                 ntrunc: int = 16) -> complex:
    """The lattice sum evaluated at an arbitrary real argument (u, v); only
    meaningful when u reduces to a signal grid node.  Used to probe the
    quasi-periodic covariance of the image off the fundamental domain."""
    ns = np.arange(-ntrunc, ntrunc + 1)
    vals = np.zeros(len(ns), dtype=complex)
    for i, n in enumerate(ns):
        t = u + n
        r = (t - f.grid.origin) / f.grid.step
        k = round(r)
        if abs(r - k) > 1e-6:
            raise GridIncompatible(f"u + n = {t} does not land on the signal grid")
        if 0 <= k < f.grid.count:
            vals[i] = f.values[k]
    return complex(cis(p.m * u * v) * np.sum(vals * cis(p.m * ns * v)))


def contravariant_zak_inverse(p: LatticeParams, G: TorusField,
                              out_grid: GridSpec1D) -> SampledLine:
    """Reconstruction [M g](t) = int_0^1 g(t, v) e^{-2 pi i m t v} dv with
    g extended quasi-periodically; the Dirac-delta synthesis vector never
    appears as data."""
    if G.m != p.m:
        raise IndexMismatch(f"field index {G.m} != parameter index {p.m}")
    t = out_grid.points()
    _, frac = int_frac_array(t)
    ju = frac * G.nu
    j = np.rint(ju).astype(int)
    if np.max(np.abs(ju - j)) > 1e-9 * G.nu:
        raise GridIncompatible("output nodes do not reduce to the torus u-grid")
    j %= G.nu
    vs = np.arange(G.nv) / G.nv
    kernel = cis(-p.m * np.outer(t, vs))
    vals = np.sum(G.values[j, :] * kernel, axis=1) / G.nv
    return SampledLine(out_grid, vals)


# ---------------------------------------------------------------------------
# Theta pair (lattice representation <-> plane)
# ---------------------------------------------------------------------------

def _theta_window_reach(p: LatticeParams) -> float:
    # e^{-(pi m / kappa) r^2} <= 1e-18 beyond this radius
    return math.sqrt(p.kappa * math.log(1e18) / (math.pi * p.m))


def _shifted_lattice(p: LatticeParams, nu: int, xmin: float, xmax: float):
    """Flattened abscissae u_j + n covering [xmin - reach, xmax + reach]."""
    reach = _theta_window_reach(p)
    nlo = math.floor(xmin - reach)
    nhi = math.ceil(xmax + reach)
    ns = np.arange(nlo, nhi + 1)
    us = np.arange(nu) / nu
    tau = (us[:, None] + ns[None, :])
    return ns, tau


def covariant_pre_theta(p: LatticeParams, f: TorusField,
                        gx: GridSpec1D, gy: GridSpec1D) -> PlaneField:
    """Pairing <f, rho_m(0,x,y) Phi> against the quasi-periodically extended
    theta vacuum, by rectangle-rule quadrature over the torus grid.

    The vacuum enters through its absolutely convergent lattice-sum form,
    which turns the double integral into a short sum of separable kernels;
    the quadrature nodes and weights are exactly those of the defining
    pairing.
    """
    if f.m != p.m:
        raise IndexMismatch(f"field index {f.m} != parameter index {p.m}")
    xs = gx.points()
    ys = gy.points()
    us = f.u_points()
    vs = f.v_points()
    ns, tau = _shifted_lattice(p, f.nu, float(xs.min()), float(xs.max()))
    rate = math.pi * p.m / p.kappa
    # v-moments of the field at every shifted abscissa u_j + n
    d = f.values * cis(-p.m * np.outer(us, vs))
    moments = d @ cis(-p.m * np.outer(vs, ns)) / f.nv            # (nu, L)
    flat = moments.ravel(order="F")
    tau_flat = tau.ravel(order="F")
    window = np.exp(-rate * (tau_flat[None, :] - xs[:, None]) ** 2)
    osc = cis(p.m * np.outer(tau_flat, ys))
    vals = (window * flat[None, :]) @ osc / f.nu
    return PlaneField(gx, gy, vals)


def contravariant_pre_theta_inverse(p: LatticeParams, psi: ReconstructionSpec,
                                    F: PlaneField, nu: int, nv: int) -> TorusField:
    """Synthesis integral int F(x,y) [rho_m(0,x,y) psi](u,v) dx dy on the
    torus grid; psi defaults to the theta vacuum."""
    if psi.kind == "custom":
        return _pre_theta_inverse_custom(p, psi.payload, F, nu, nv)
    if psi.kind != "theta_vacuum":
        raise ValueError("reconstruction kind must be theta_vacuum or custom")
    xs = F.gx.points()
    ys = F.gy.points()
    cell = F.gx.step * F.gy.step
    ns, tau = _shifted_lattice(p, nu, float(xs.min()), float(xs.max()))
    tau_flat = tau.ravel(order="F")
    rate = math.pi * p.m / p.kappa
    b = F.values @ cis(-p.m * np.outer(ys, tau_flat))            # (nx, A)
    window = np.exp(-rate * (tau_flat[None, :] - xs[:, None]) ** 2)
    a = np.sum(window * b, axis=0) * cell                        # (A,)
    a = a.reshape(nu, len(ns), order="F")
    vs = np.arange(nv) / nv
    us = np.arange(nu) / nu
    core = a @ cis(p.m * np.outer(ns, vs))
    vals = cis(p.m * np.outer(us, vs)) * core
    return TorusField(nu, nv, p.m, vals)


def _pre_theta_inverse_custom(p: LatticeParams, psi: TorusField,
                              F: PlaneField, nu: int, nv: int) -> TorusField:
    """Direct synthesis against a gridded reconstruction vector; plane
    abscissae must be grid-aligned modulo 1 on the torus."""
    if psi.m != p.m or psi.nu != nu or psi.nv != nv:
        raise IndexMismatch("custom reconstruction vector does not match the torus grid")
    xs = F.gx.points()
    ys = F.gy.points()
    cell = F.gx.step * F.gy.step
    out = np.zeros((nu, nv), dtype=complex)
    j = np.arange(nu)[:, None]
    k = np.arange(nv)[None, :]
    vs = np.arange(nv) / nv
    for ix, x in enumerate(xs):
        a = round(x * nu)
        if abs(x - a / nu) > SHIFT_TOL:
            raise GridIncompatible("plane x-node is not torus grid-aligned")
        jj = (j - a) % nu
        ufrac = jj / nu
        for iy, y in enumerate(ys):
            b = round(y * nv)
            if abs(y - b / nv) > SHIFT_TOL:
                raise GridIncompatible("plane y-node is not torus grid-aligned")
            kk = (k - b) % nv
            vint = (k - b - kk) // nv
            shifted = cis(p.m * (x * (vs[None, :] - y))) * cis(p.m * ufrac * vint) \
                * psi.values[jj, kk]
            out += F.values[ix, iy] * shifted
    return TorusField(nu, nv, p.m, out * cell)


# ---------------------------------------------------------------------------
# Fourier pair
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4)
def _fourier_kernel(hbar: float, grid_in: GridSpec1D,
                    grid_out: GridSpec1D) -> np.ndarray:
    return cis(hbar * np.outer(grid_in.points(), grid_out.points()))


def covariant_fourier_inverse(p: ReprParams, f: SampledLine,
                              out_grid: GridSpec1D) -> SampledLine:
    """[W f](y) = int f(t) e^{2 pi i hbar y t} dt (constant fiducial, c = 1)."""
    kernel = _fourier_kernel(p.hbar, f.grid, out_grid)
    return SampledLine(out_grid, f.values @ kernel * f.grid.step)


def contravariant_fourier(p: ReprParams, f: SampledLine,
                          out_grid: GridSpec1D) -> SampledLine:
    """[M f](t) = int f(l) e^{-2 pi i hbar t l} dl (constant synthesis vector)."""
    kernel = _fourier_kernel(p.hbar, f.grid, out_grid)
    return SampledLine(out_grid, f.values @ np.conj(kernel) * f.grid.step)


# ---------------------------------------------------------------------------
# Inverse pre-FSB
# ---------------------------------------------------------------------------

def contravariant_pre_fsb_inverse(p: ReprParams, psi: ReconstructionSpec,
                                  F: PlaneField, out_grid: GridSpec1D) -> SampledLine:
    """[M_psi F](t) = int F(x,y) e^{-2 pi i hbar t y} psi(t - x) dx dy."""
    t = out_grid.points()
    xs = F.gx.points()
    ys = F.gy.points()
    cell = F.gx.step * F.gy.step
    if psi.kind == "gaussian":
        windows = 2.0 ** 0.25 * _gaussian_window(p, t[None, :], xs[:, None])
    elif psi.kind == "custom":
        vec: SampledLine = psi.payload
        if vec.grid != out_grid:
            raise ShapeMismatch("custom reconstruction vector must live on the output grid")
        windows = _window_matrix(vec, xs)
    else:
        raise ValueError("reconstruction kind must be gaussian or custom")
    modulated = F.values @ cis(-p.hbar * np.outer(ys, t))        # (nx, nt)
    vals = np.sum(windows * modulated, axis=0) * cell
    return SampledLine(out_grid, vals)


# ---------------------------------------------------------------------------
# Peelings
# ---------------------------------------------------------------------------

def _apply_weight(values: np.ndarray, expo: np.ndarray, direction: str) -> np.ndarray:
    if direction not in ("forward", "inverse"):
        raise ValueError("direction must be 'forward' or 'inverse'")
    if np.max(np.abs(expo)) > EXP_GUARD:
        raise OverflowGuard("peeling weight exceeds double range on this grid")
    sign = 1.0 if direction == "forward" else -1.0
    return np.exp(sign * expo) * values


def peel_fsb(p: ReprParams, F: PlaneField, direction: str = "forward") -> PlaneField:
    """Multiplication by e^{+-d}, d = (h/4 kappa)(x^2 + kappa^2 y^2 - 2 i kappa x y):
    moves the windowed-Fourier picture to the analytic (FSB) picture."""
    x = F.gx.points()[:, None]
    y = F.gy.points()[None, :]
    d = (p.h / (4.0 * p.kappa)) * (x ** 2 + (p.kappa * y) ** 2 - 2j * p.kappa * x * y)
    return PlaneField(F.gx, F.gy, _apply_weight(F.values, d, direction))


def peel_schrodinger(p: ReprParams, f: SampledLine,
                     direction: str = "forward") -> SampledLine:
    """Multiplication by e^{+-(pi hbar / kappa) t^2}; sends the Hermite
    eigenstates to plain Hermite polynomials."""
    t = f.grid.points()
    d = (math.pi * p.hbar / p.kappa) * t ** 2
    return SampledLine(f.grid, _apply_weight(f.values, d.astype(complex), direction))


def peel_lattice(p: LatticeParams, F: TorusField,
                 direction: str = "forward") -> TorusField:
    """Multiplication removing the theta vacuum's prefactor: the forward
    weight is e^{(pi m / kappa) u^2 - 2 pi i m u v}."""
    u = F.u_points()[:, None]
    v = F.v_points()[None, :]
    d = (math.pi * p.m / p.kappa) * u ** 2 - (1j * TWO_PI * p.m) * u * v
    return TorusField(F.nu, F.nv, F.m, _apply_weight(F.values, d, direction))


# ---------------------------------------------------------------------------
# Peeled compositions
# ---------------------------------------------------------------------------

def fsb_transform(p: ReprParams, f: SampledLine,
                  gx: GridSpec1D, gy: GridSpec1D) -> PlaneField:
    """Analytic-space transform: FSB peeling composed with the Gaussian
    windowed-Fourier transform."""
    return peel_fsb(p, covariant_pre_fsb(p, FiducialSpec(), f, gx, gy), "forward")


def theta_transform(p: LatticeParams, f: TorusField,
                    gx: GridSpec1D, gy: GridSpec1D) -> PlaneField:
    """Analytic-space transform of a torus field: FSB peeling (with
    hbar = m) composed with the theta-vacuum pairing."""
    pr = ReprParams(hbar=float(p.m), kappa=p.kappa)
    return peel_fsb(pr, covariant_pre_theta(p, f, gx, gy), "forward")
