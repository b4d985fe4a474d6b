"""Sampled function spaces on R, R^2 and the torus [0,1)^2.

A line or plane grid is a finite uniform truncation of the real domain;
inner products are plain rectangle-rule Riemann sums, which are spectrally
accurate for the decaying or periodic functions used throughout.  Torus
fields store a single fundamental domain; values anywhere else come from
the quasi-periodic extension rule

    f(u + n, v + k) = e^{2*pi*i*m*u*k} f(u, v),   n, k integers.

CSV serialisation (one row per node, floats at 17 significant digits) is
defined here as well.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (IndexMismatch, InputFormatError, NonFiniteError,
                     OffGridError, ShapeMismatch)
from .numerics import cis, int_frac

GRID_SNAP = 1e-9


@dataclass(frozen=True)
class GridSpec1D:
    origin: float
    step: float
    count: int

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("grid step must be positive")
        if self.count < 2:
            raise ValueError("grid needs at least two points")

    def points(self) -> np.ndarray:
        return self.origin + self.step * np.arange(self.count)

    def index_of(self, t: float, tol: float = GRID_SNAP) -> int:
        """Index of the node at t; OffGridError if t is not a node."""
        r = (t - self.origin) / self.step
        k = round(r)
        if abs(t - (self.origin + k * self.step)) > tol or not 0 <= k < self.count:
            raise OffGridError(f"{t} is not a node of {self}")
        return int(k)


def centered_grid(half_width: float, count: int) -> GridSpec1D:
    """Uniform grid on [-L, L) with `count` points."""
    step = 2.0 * half_width / count
    return GridSpec1D(-half_width, step, count)


@dataclass(frozen=True)
class SampledLine:
    grid: GridSpec1D
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.grid.count,):
            raise ShapeMismatch("value vector length does not match the grid")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class PlaneField:
    gx: GridSpec1D
    gy: GridSpec1D
    values: np.ndarray  # shape (nx, ny); row index = x, column index = y

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.gx.count, self.gy.count):
            raise ShapeMismatch("value matrix shape does not match the grids")
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class TorusField:
    nu: int
    nv: int
    m: int
    values: np.ndarray  # shape (nu, nv); node (j, k) sits at (j/nu, k/nv)

    def __post_init__(self):
        if self.nu < 2 or self.nv < 2:
            raise ValueError("torus grid needs at least 2 nodes per axis")
        if self.m < 1 or self.m != int(self.m):
            raise IndexMismatch("quasi-periodicity index m must be a positive integer")
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (self.nu, self.nv):
            raise ShapeMismatch("value matrix shape does not match the torus grid")
        object.__setattr__(self, "values", vals)

    def u_points(self) -> np.ndarray:
        return np.arange(self.nu) / self.nu

    def v_points(self) -> np.ndarray:
        return np.arange(self.nv) / self.nv


Field = SampledLine | PlaneField | TorusField


def _same_grid(f, g):
    if type(f) is not type(g):
        raise ShapeMismatch(f"cannot pair {type(f).__name__} with {type(g).__name__}")
    if isinstance(f, SampledLine):
        if f.grid != g.grid:
            raise ShapeMismatch("line grids differ")
    elif isinstance(f, PlaneField):
        if f.gx != g.gx or f.gy != g.gy:
            raise ShapeMismatch("plane grids differ")
    else:
        if (f.nu, f.nv) != (g.nu, g.nv):
            raise ShapeMismatch("torus grids differ")
        if f.m != g.m:
            raise IndexMismatch("torus indices differ")


def cell_measure(f: Field) -> float:
    if isinstance(f, SampledLine):
        return f.grid.step
    if isinstance(f, PlaneField):
        return f.gx.step * f.gy.step
    return 1.0 / (f.nu * f.nv)


def inner_product(f: Field, g: Field) -> complex:
    """Rectangle-rule <f, g> = sum f * conj(g) * cell, conjugate-linear in g.

    Summation is a fixed row-major reduction, so repeated calls on the same
    data are bit-identical.
    """
    _same_grid(f, g)
    return complex(np.sum(f.values * np.conj(g.values)) * cell_measure(f))


def norm(f: Field) -> float:
    return float(np.sqrt(abs(np.sum(np.abs(f.values) ** 2)) * cell_measure(f)))


def quasi_periodic_eval(field: TorusField, u: float, v: float) -> complex:
    """Value of the quasi-periodic extension of `field` at any real (u, v).

    The fractional parts must land on stored grid nodes (within 1e-9).
    """
    _, fu = int_frac(u)
    kv, fv = int_frac(v)
    ju = fu * field.nu
    jv = fv * field.nv
    j = round(ju)
    k = round(jv)
    if abs(ju - j) > GRID_SNAP * field.nu or abs(jv - k) > GRID_SNAP * field.nv:
        raise OffGridError(f"({u}, {v}) does not reduce to a torus grid node")
    j %= field.nu
    k %= field.nv
    return complex(cis(field.m * fu * kv) * field.values[j, k])


def sample(fn, grid: GridSpec1D) -> SampledLine:
    """Evaluate a pointwise function on a line grid (vectorised over nodes)."""
    vals = np.asarray(fn(grid.points()), dtype=complex)
    if not np.all(np.isfinite(vals)):
        raise NonFiniteError("sampled line contains non-finite values")
    return SampledLine(grid, vals)


def sample_plane(fn, gx: GridSpec1D, gy: GridSpec1D) -> PlaneField:
    xs = gx.points()[:, None]
    ys = gy.points()[None, :]
    vals = np.asarray(fn(xs, ys), dtype=complex)
    vals = np.broadcast_to(vals, (gx.count, gy.count)).copy()
    if not np.all(np.isfinite(vals)):
        raise NonFiniteError("sampled plane field contains non-finite values")
    return PlaneField(gx, gy, vals)


def sample_torus(fn, nu: int, nv: int, m: int) -> TorusField:
    us = (np.arange(nu) / nu)[:, None]
    vs = (np.arange(nv) / nv)[None, :]
    vals = np.asarray(fn(us, vs), dtype=complex)
    vals = np.broadcast_to(vals, (nu, nv)).copy()
    if not np.all(np.isfinite(vals)):
        raise NonFiniteError("sampled torus field contains non-finite values")
    return TorusField(nu, nv, m, vals)


# ---------------------------------------------------------------------------
# CSV formats: lines "t,re,im"; planes "x,y,re,im" (x-major row order);
# torus "u,v,re,im" preceded by a "# m=<int>" comment line.
# ---------------------------------------------------------------------------

_FMT = "{:.17g}"


def _rows(path):
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                yield line.split(",")


def _parse_floats(parts, width, path):
    if len(parts) != width:
        raise InputFormatError(f"{path}: expected {width} columns, got {len(parts)}")
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise InputFormatError(f"{path}: non-numeric field: {exc}") from exc


def write_line_csv(f: SampledLine, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for t, z in zip(f.grid.points(), f.values):
            fh.write(",".join(_FMT.format(x) for x in (t, z.real, z.imag)) + "\n")


def read_line_csv(path: str) -> SampledLine:
    data = [_parse_floats(p, 3, path) for p in _rows(path)]
    if len(data) < 2:
        raise InputFormatError(f"{path}: need at least two samples")
    arr = np.asarray(data)
    ts = arr[:, 0]
    step = ts[1] - ts[0]
    if step <= 0 or np.max(np.abs(np.diff(ts) - step)) > 1e-9 * max(step, 1.0):
        raise InputFormatError(f"{path}: sample abscissae are not a uniform grid")
    grid = GridSpec1D(float(ts[0]), float(step), len(ts))
    return SampledLine(grid, arr[:, 1] + 1j * arr[:, 2])


def write_plane_csv(f: PlaneField, path: str) -> None:
    xs = f.gx.points()
    ys = f.gy.points()
    with open(path, "w", encoding="utf-8") as fh:
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                z = f.values[i, j]
                fh.write(",".join(_FMT.format(v) for v in (x, y, z.real, z.imag)) + "\n")


def read_plane_csv(path: str) -> PlaneField:
    data = [_parse_floats(p, 4, path) for p in _rows(path)]
    if not data:
        raise InputFormatError(f"{path}: empty plane field")
    arr = np.asarray(data)
    ys = arr[:, 1]
    ny = 1
    while ny < len(ys) and ys[ny] != ys[0]:
        ny += 1
    if ny < 2 or len(ys) % ny != 0:
        raise InputFormatError(f"{path}: rows are not in x-major order")
    nx = len(ys) // ny
    xs = arr[::ny, 0]
    gy = _grid_from(ys[:ny], path)
    gx = _grid_from(xs, path)
    vals = (arr[:, 2] + 1j * arr[:, 3]).reshape(nx, ny)
    return PlaneField(gx, gy, vals)


def _grid_from(points: np.ndarray, path: str) -> GridSpec1D:
    if len(points) < 2:
        raise InputFormatError(f"{path}: fewer than two grid points")
    step = points[1] - points[0]
    if step <= 0 or np.max(np.abs(np.diff(points) - step)) > 1e-9 * max(step, 1.0):
        raise InputFormatError(f"{path}: non-uniform grid")
    return GridSpec1D(float(points[0]), float(step), len(points))


def write_torus_csv(f: TorusField, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# m={f.m}\n")
        us = f.u_points()
        vs = f.v_points()
        for j, u in enumerate(us):
            for k, v in enumerate(vs):
                z = f.values[j, k]
                fh.write(",".join(_FMT.format(x) for x in (u, v, z.real, z.imag)) + "\n")


def read_torus_csv(path: str) -> TorusField:
    m = None
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if body.startswith("m="):
                    try:
                        m = int(body[2:])
                    except ValueError as exc:
                        raise InputFormatError(f"{path}: bad index header {line!r}") from exc
    if m is None:
        raise InputFormatError(f"{path}: missing '# m=<int>' header")
    data = [_parse_floats(p, 4, path) for p in _rows(path)]
    if not data:
        raise InputFormatError(f"{path}: empty torus field")
    arr = np.asarray(data)
    vs = arr[:, 1]
    nv = 1
    while nv < len(vs) and vs[nv] != vs[0]:
        nv += 1
    if nv < 2 or len(vs) % nv != 0:
        raise InputFormatError(f"{path}: rows are not in u-major order")
    nu = len(vs) // nv
    us = arr[::nv, 0]
    if np.max(np.abs(us - np.arange(nu) / nu)) > 1e-9:
        raise InputFormatError(f"{path}: u nodes are not j/{nu}")
    if np.max(np.abs(vs[:nv] - np.arange(nv) / nv)) > 1e-9:
        raise InputFormatError(f"{path}: v nodes are not k/{nv}")
    vals = (arr[:, 2] + 1j * arr[:, 3]).reshape(nu, nv)
    return TorusField(nu, nv, m, vals)
