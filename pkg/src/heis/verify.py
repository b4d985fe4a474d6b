"""Defect metrics: every operator identity asserted by the theory becomes
a number with a pass/fail threshold.

The reusable metrics are :func:`intertwining_defect`,
:func:`annihilation_residual`, :func:`roundtrip_error` and
:func:`unitarity_defect`; :func:`run_suite` bundles them into per-topic
batteries (group axioms, representation actions, ladders, the Zak / FSB /
theta transform pairs, peelings, contravariant reconstruction).  Reports
are deterministic for a fixed configuration: all randomness is drawn from
the seeded generator in :class:`heis.config.RunConfig`.

Negative controls are reported with value = reference_tolerance / defect,
so "pass" (value <= 1) means the perturbed kernel was detected.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .config import RunConfig
from .errors import ConfigError
from .grids import (PlaneField, SampledLine, TorusField, centered_grid,
                    inner_product, norm, sample)
from .group import (HeisenbergElement, SubgroupTag, character, decompose,
                    identity, in_subgroup, inverse, multiply)
from .ladders import (annihilation, creation, hermite_state,
                      theta_vacuum_eval, vacuum_gaussian, vacuum_theta)
from .numerics import INTERIOR_BAND, cis, derivative
from .reps import (LatticeParams, ReprParams, act_fsb, act_lattice,
                   act_lattice_peeled, act_lattice_torus,
                   act_quasi_regular_left, act_quasi_regular_right,
                   act_schrodinger, act_schrodinger_momentum,
                   act_schrodinger_peeled)
from .theta import ThetaTruncation, jacobi_theta_series
from .transforms import (FiducialSpec, ReconstructionSpec,
                         contravariant_fourier, contravariant_pre_fsb_inverse,
                         contravariant_pre_theta_inverse,
                         contravariant_zak_inverse, covariant_fourier_inverse,
                         covariant_pre_fsb, covariant_pre_theta, covariant_zak,
                         matrix_coefficient, peel_fsb, peel_lattice,
                         peel_schrodinger, zak_extended)

PLANE_WINDOW = 3.0  # half-width of the plane interior used after peeling


@dataclass(frozen=True)
class DefectReport:
    name: str
    value: float
    tolerance: float
    metadata: dict

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"defect {self.name} is not finite")

    @property
    def passed(self) -> bool:
        return self.value <= self.tolerance

    def to_dict(self) -> dict:
        return {"name": self.name, "value": self.value,
                "tolerance": self.tolerance, "pass": self.passed,
                "metadata": _plain(self.metadata)}


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def reports_to_json(reports: list[DefectReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


def _report(cfg: RunConfig, name: str, category: str, default_tol: float,
            value: float, **metadata) -> DefectReport:
    meta = {"seed": cfg.seed, "category": category}
    meta.update(metadata)
    return DefectReport(name=name, value=float(value),
                        tolerance=cfg.tolerance(name, category, default_tol),
                        metadata=meta)


def _negative_control(cfg: RunConfig, name: str, raw_defect: float,
                      reference_tol: float, **metadata) -> DefectReport:
    value = reference_tol / max(raw_defect, 1e-300)
    return _report(cfg, name, "negative_control", 1.0, value,
                   perturbed_defect=raw_defect, reference_tolerance=reference_tol,
                   **metadata)


def _rel(diff: float, scale: float) -> float:
    return 0.0 if scale == 0.0 else diff / scale


# ---------------------------------------------------------------------------
# Reusable metrics
# ---------------------------------------------------------------------------

def intertwining_defect(source_act, transform, target_act, g: HeisenbergElement,
                        f, *, name: str = "intertwining",
                        tolerance: float = 1e-5, metadata: dict | None = None,
                        norm_out=norm) -> DefectReport:
    """|| T(rho(g) f) - rho_target(g) T(f) || / ||f|| for one group element."""
    lhs = transform(source_act(g, f))
    rhs = target_act(g, transform(f))
    value = _rel(norm_out(type(lhs)(**{**lhs.__dict__, "values": lhs.values - rhs.values})),
                 norm(f))
    meta = {"g": list(g.as_tuple())}
    meta.update(metadata or {})
    return DefectReport(name, float(value), tolerance, meta)


def roundtrip_error(forward, backward, f, *, name: str = "roundtrip",
                    tolerance: float = 1e-6, metadata: dict | None = None) -> DefectReport:
    back = backward(forward(f))
    value = _rel(norm(type(f)(**{**f.__dict__, "values": back.values - f.values})),
                 norm(f))
    return DefectReport(name, float(value), tolerance, dict(metadata or {}))


def unitarity_defect(transform, f, *, name: str = "unitarity",
                     tolerance: float = 1e-6, metadata: dict | None = None,
                     norm_in=norm, norm_out=norm) -> DefectReport:
    nf = norm_in(f)
    value = _rel(abs(norm_out(transform(f)) - nf), nf)
    return DefectReport(name, float(value), tolerance, dict(metadata or {}))


def _interior2d(shape, band: int = INTERIOR_BAND):
    return (slice(band, shape[0] - band), slice(band, shape[1] - band))


def annihilation_residual(kind: str, field, params, *,
                          name: str | None = None, tolerance: float = 1e-4,
                          window: float = PLANE_WINDOW,
                          metadata: dict | None = None) -> DefectReport:
    """Interior norm of the first-order annihilator matched to `kind`.

    Kinds: "preFSB-Lie" (windowed-Fourier image, operator
    2 pi hbar x + kappa d/dx + i d/dy), "CR-after-peel" (peeled plane field,
    kappa d/dx + i d/dy, restricted to the central window where the peeling
    weight does not amplify quadrature noise), "schrodinger-ladder" (line
    signal, a^-), "lattice-after-peel" (peeled torus field, d/d(conj omega)).
    """
    if kind == "schrodinger-ladder":
        res = annihilation(params, field).values
        band = INTERIOR_BAND
        value = _rel(float(np.max(np.abs(res[band:-band]))), norm(field))
    elif kind == "preFSB-Lie":
        x = field.gx.points()[:, None]
        op = (2.0 * math.pi * params.hbar * x * field.values
              + params.kappa * derivative(field.values, field.gx.step, axis=0)
              + 1j * derivative(field.values, field.gy.step, axis=1))
        inner = _interior2d(field.values.shape)
        value = _rel(float(np.max(np.abs(op[inner]))),
                     float(np.max(np.abs(field.values[inner]))))
    elif kind == "CR-after-peel":
        op = (params.kappa * derivative(field.values, field.gx.step, axis=0)
              + 1j * derivative(field.values, field.gy.step, axis=1))
        mask = ((np.abs(field.gx.points())[:, None] <= window)
                & (np.abs(field.gy.points())[None, :] <= window))
        value = _rel(float(np.max(np.abs(op[mask]))),
                     float(np.max(np.abs(field.values[mask]))))
    elif kind == "lattice-after-peel":
        du = derivative(field.values, 1.0 / field.nu, axis=0)
        dv = derivative(field.values, 1.0 / field.nv, axis=1, periodic=True)
        op = (dv + 1j * params.kappa * du) / (2.0 * params.m)
        band = INTERIOR_BAND
        inner = (slice(band, field.nu - band), slice(None))
        value = _rel(float(np.max(np.abs(op[inner]))),
                     float(np.max(np.abs(field.values[inner]))))
    else:
        raise ValueError(f"unknown annihilation kind {kind!r}")
    return DefectReport(name or f"annihilation[{kind}]", float(value),
                        tolerance, dict(metadata or {}))


# ---------------------------------------------------------------------------
# Suite: group axioms and decompositions
# ---------------------------------------------------------------------------

def _coord_dev(a: HeisenbergElement, b: HeisenbergElement) -> float:
    return max(abs(a.s - b.s), abs(a.x - b.x), abs(a.y - b.y))


def suite_group(cfg: RunConfig) -> list[DefectReport]:
    rng = cfg.rng()
    pts = rng.uniform(-10.0, 10.0, size=(1000, 3, 3))
    reports = []

    assoc = 0.0
    inv_dev = 0.0
    for row in pts:
        a, b, c = (HeisenbergElement(*row[i]) for i in range(3))
        assoc = max(assoc, _coord_dev(multiply(multiply(a, b), c),
                                      multiply(a, multiply(b, c))))
        inv_dev = max(inv_dev, _coord_dev(multiply(a, inverse(a)), identity()),
                      _coord_dev(multiply(inverse(a), a), identity()))
    reports.append(_report(cfg, "group_associativity", "group", 1e-12, assoc,
                           samples=len(pts)))
    reports.append(_report(cfg, "group_inverse_identity", "group", 1e-12, inv_dev,
                           samples=len(pts)))

    integrality = 0.0
    for tag in SubgroupTag:
        recon = 0.0
        member = True
        for row in pts[:, 0, :]:
            g = HeisenbergElement(*row)
            dec = decompose(g, tag)
            recon = max(recon, _coord_dev(multiply(dec.section, dec.remainder), g))
            member = member and in_subgroup(dec.remainder, tag)
            if tag is SubgroupTag.LATTICE:
                integrality = max(integrality,
                                  abs(dec.remainder.x - round(dec.remainder.x)),
                                  abs(dec.remainder.y - round(dec.remainder.y)))
        reports.append(_report(cfg, f"group_reconstruction_{tag.value}", "group",
                               1e-12, recon if member else math.inf,
                               samples=pts.shape[0]))
    reports.append(_report(cfg, "group_lattice_integrality", "group", 0.0,
                           integrality))

    # characters: unimodular and multiplicative on each subgroup
    unimod = 0.0
    multip = 0.0
    makers = {
        SubgroupTag.CENTRE: lambda r: HeisenbergElement(r[0], 0.0, 0.0),
        SubgroupTag.ABELIAN_X: lambda r: HeisenbergElement(r[0], 0.0, r[1]),
        SubgroupTag.ABELIAN_Y: lambda r: HeisenbergElement(r[0], r[1], 0.0),
        SubgroupTag.LATTICE: lambda r: HeisenbergElement(r[0], round(r[1]), round(r[2])),
    }
    for tag, make in makers.items():
        param = 2 if tag is SubgroupTag.LATTICE else cfg.hbar
        for row in pts[:100, 1, :]:
            h1 = make(row)
            h2 = make(row[::-1])
            c1 = character(tag, param, h1)
            c2 = character(tag, param, h2)
            unimod = max(unimod, abs(abs(c1) - 1.0))
            multip = max(multip, abs(character(tag, param, multiply(h1, h2)) - c1 * c2))
    reports.append(_report(cfg, "group_character_unimodular", "group", 1e-12, unimod))
    reports.append(_report(cfg, "group_character_multiplicative", "group", 1e-12, multip))
    return reports


# ---------------------------------------------------------------------------
# Suite: representation actions
# ---------------------------------------------------------------------------

def _line_test_signal(cfg: RunConfig) -> SampledLine:
    return sample(lambda t: (0.8 - 0.4 * t + 0.15 * t * t)
                  * np.exp(-0.5 * math.pi * t * t) * np.exp(0.2j * math.pi * t),
                  cfg.line_grid())


def _plane_test_field(cfg: RunConfig) -> PlaneField:
    gx, gy = cfg.plane_gx(), cfg.plane_gy()
    xs = gx.points()[:, None]
    ys = gy.points()[None, :]
    vals = (1.0 + 0.5 * xs - 0.3j * ys) * np.exp(-0.9 * math.pi * (xs ** 2 + ys ** 2))
    return PlaneField(gx, gy, vals)


def _torus_test_field(cfg: RunConfig) -> TorusField:
    base = vacuum_theta(cfg.lattice_params(), cfg.nu, cfg.nv)
    us = base.u_points()[:, None]
    vs = base.v_points()[None, :]
    vals = base.values * (1.0 + 0.3 * np.sin(2 * math.pi * us) * np.cos(2 * math.pi * vs))
    return TorusField(cfg.nu, cfg.nv, cfg.m, vals)


def _fsb_weighted_norm(p: ReprParams, F: PlaneField) -> float:
    xs = F.gx.points()[:, None]
    ys = F.gy.points()[None, :]
    w = np.exp(-(p.h / (2.0 * p.kappa)) * (xs ** 2 + (p.kappa * ys) ** 2))
    return math.sqrt(float(np.sum(np.abs(F.values) ** 2 * w)) * F.gx.step * F.gy.step)


def _weighted_line_norm(p: ReprParams, f: SampledLine) -> float:
    t = f.grid.points()
    w = np.exp(-2.0 * math.pi * p.hbar / p.kappa * t * t)
    return math.sqrt(float(np.sum(np.abs(f.values) ** 2 * w)) * f.grid.step)


def _weighted_torus_norm(p: LatticeParams, F: TorusField) -> float:
    u = F.u_points()[:, None]
    w = np.exp(-2.0 * math.pi * p.m / p.kappa * u ** 2)
    return math.sqrt(float(np.sum(np.abs(F.values) ** 2 * w)) / (F.nu * F.nv))


def _rand_line_g(cfg, rng, max_units=64, align_y=False):
    step = cfg.line_grid().step
    x = int(rng.integers(-max_units, max_units + 1)) * step
    y = (int(rng.integers(-max_units, max_units + 1)) * step if align_y
         else float(rng.uniform(-1.0, 1.0)))
    return HeisenbergElement(float(rng.uniform(-2.0, 2.0)), x, y)


def _rand_plane_g(cfg, rng, max_units=12):
    gx, gy = cfg.plane_gx(), cfg.plane_gy()
    return HeisenbergElement(float(rng.uniform(-2.0, 2.0)),
                             int(rng.integers(-max_units, max_units + 1)) * gx.step,
                             int(rng.integers(-max_units, max_units + 1)) * gy.step)


def _rand_torus_g(cfg, rng):
    return HeisenbergElement(float(rng.uniform(-2.0, 2.0)),
                             int(rng.integers(0, cfg.nu)) / cfg.nu,
                             int(rng.integers(0, cfg.nv)) / cfg.nv)


def suite_representations(cfg: RunConfig) -> list[DefectReport]:
    rng = cfg.rng()
    p = cfg.repr_params()
    lp = cfg.lattice_params()
    f_line = _line_test_signal(cfg)
    f_plane = _plane_test_field(cfg)
    f_torus = _torus_test_field(cfg)
    f_fsb = peel_fsb(p, covariant_pre_fsb(p, FiducialSpec(), vacuum_gaussian(
        p, cfg.line_grid()), cfg.plane_gx(), cfg.plane_gy()), "forward")
    f_speel = peel_schrodinger(p, vacuum_gaussian(p, cfg.line_grid()), "forward")
    f_lpeel = peel_lattice(lp, vacuum_theta(lp, cfg.nu, cfg.nv), "forward")

    plain = norm
    actions = {
        "schrodinger": (lambda g, f: act_schrodinger(p, g, f), f_line,
                        lambda rng: _rand_line_g(cfg, rng), plain),
        "momentum": (lambda g, f: act_schrodinger_momentum(p, g, f), f_line,
                     lambda rng: _swap_xy(_rand_line_g(cfg, rng)), plain),
        "quasi_regular_left": (lambda g, f: act_quasi_regular_left(p, g, f),
                               f_plane, lambda rng: _rand_plane_g(cfg, rng), plain),
        "quasi_regular_right": (lambda g, f: act_quasi_regular_right(p, g, f),
                                f_plane, lambda rng: _rand_plane_g(cfg, rng), plain),
        "lattice": (lambda g, f: act_lattice(lp, g, f), f_torus,
                    lambda rng: _rand_torus_g(cfg, rng), plain),
        "lattice_torus": (lambda g, f: act_lattice_torus(lp, g, f), f_torus,
                          lambda rng: _rand_torus_g(cfg, rng), plain),
        "fsb": (lambda g, f: act_fsb(p, g, f), f_fsb,
                lambda rng: _rand_plane_g(cfg, rng),
                lambda F: _fsb_weighted_norm(p, F)),
    }

    reports = []
    for label, (act, f0, draw, measure) in actions.items():
        hom = 0.0
        uni = 0.0
        base = measure(f0)
        for _ in range(5):
            g1, g2 = draw(rng), draw(rng)
            two_step = act(g1, act(g2, f0))
            one_step = act(multiply(g1, g2), f0)
            hom = max(hom, _rel(measure(_diff(two_step, one_step)), base))
            uni = max(uni, _rel(abs(measure(act(g1, f0)) - base), base))
        reports.append(_report(cfg, f"{label}_homomorphism", "homomorphism",
                               1e-10, hom, pairs=5))
        reports.append(_report(cfg, f"{label}_unitarity", "unitarity", 1e-10, uni,
                               weighted=(label == "fsb"), samples=5))

    # left and right quasi-regular actions commute
    commute = 0.0
    for _ in range(5):
        g1, g2 = _rand_plane_g(cfg, rng), _rand_plane_g(cfg, rng)
        a = act_quasi_regular_left(p, g1, act_quasi_regular_right(p, g2, f_plane))
        b = act_quasi_regular_right(p, g2, act_quasi_regular_left(p, g1, f_plane))
        commute = max(commute, _rel(norm(_diff(a, b)), norm(f_plane)))
    reports.append(_report(cfg, "quasi_regular_commute", "homomorphism", 1e-10,
                           commute, pairs=5))

    # the two written forms of the lattice action agree at grid nodes
    agree = 0.0
    for _ in range(10):
        g = _rand_torus_g(cfg, rng)
        g = HeisenbergElement(g.s, g.x + rng.integers(-2, 3), g.y + rng.integers(-2, 3))
        agree = max(agree, _rel(norm(_diff(act_lattice(lp, g, f_torus),
                                           act_lattice_torus(lp, g, f_torus))),
                                norm(f_torus)))
    reports.append(_report(cfg, "lattice_torus_agreement", "conjugacy", 1e-12,
                           agree, samples=10))

    # peeled actions equal the peeling conjugates of the unpeeled ones
    conj_specs = [
        ("fsb_conjugacy", f_fsb,
         lambda g, F: act_fsb(p, g, F),
         lambda g, F: peel_fsb(p, act_quasi_regular_left(
             p, g, peel_fsb(p, F, "inverse")), "forward"),
         _rand_plane_g, lambda F: _fsb_weighted_norm(p, F)),
        ("schrodinger_peeled_conjugacy", f_speel,
         lambda g, F: act_schrodinger_peeled(p, g, F),
         lambda g, F: peel_schrodinger(p, act_schrodinger(
             p, g, peel_schrodinger(p, F, "inverse")), "forward"),
         lambda c, r: _rand_line_g(c, r, align_y=False),
         lambda F: _weighted_line_norm(p, F)),
        ("lattice_peeled_conjugacy", f_lpeel,
         lambda g, F: act_lattice_peeled(lp, g, F),
         lambda g, F: peel_lattice(lp, act_lattice(
             lp, g, peel_lattice(lp, F, "inverse")), "forward"),
         lambda c, r: _rand_torus_g(c, r), lambda F: _weighted_torus_norm(lp, F)),
    ]
    for name, f0, direct, conjugated, draw, measure in conj_specs:
        dev = 0.0
        base = measure(f0)
        for _ in range(5):
            g = draw(cfg, rng)
            dev = max(dev, _rel(measure(_diff(direct(g, f0), conjugated(g, f0))), base))
        reports.append(_report(cfg, name, "conjugacy", 1e-10, dev, samples=5))
    return reports


def _swap_xy(g: HeisenbergElement) -> HeisenbergElement:
    return HeisenbergElement(g.s, g.y, g.x)


def _diff(a, b):
    return type(a)(**{**a.__dict__, "values": a.values - b.values})


# ---------------------------------------------------------------------------
# Suite: ladder operators
# ---------------------------------------------------------------------------

def suite_ladders(cfg: RunConfig) -> list[DefectReport]:
    p = cfg.repr_params()
    grid = cfg.line_grid()
    phi0 = vacuum_gaussian(p, grid)
    reports = []

    res = annihilation_residual("schrodinger-ladder", phi0, p)
    reports.append(_report(cfg, "ladders_vacuum_residual", "annihilation", 1e-8,
                           res.value, grid_n=cfg.n))

    fine_grid = centered_grid(cfg.L, 2 * cfg.n)
    res_fine = annihilation_residual("schrodinger-ladder",
                                     vacuum_gaussian(p, fine_grid), p)
    ratio = 0.0 if res.value == 0 else res_fine.value / res.value
    reports.append(_report(cfg, "ladders_vacuum_residual_refinement", "refinement",
                           0.125, ratio, coarse=res.value, fine=res_fine.value))

    t = grid.points()
    f = sample(lambda t: (1.0 + 0.3 * t + 0.2 * t * t)
               * np.exp(-math.pi * t * t / 1.5) * np.exp(0.5j * t), grid)
    comm = (annihilation(p, creation(p, f)).values
            - creation(p, annihilation(p, f)).values - f.values)
    band = INTERIOR_BAND
    comm_dev = _rel(float(np.max(np.abs(comm[band:-band]))),
                    float(np.max(np.abs(f.values[band:-band]))))
    reports.append(_report(cfg, "ladders_commutator", "commutator", 1e-6, comm_dev))

    states = [hermite_state(p, n, grid) for n in range(6)]
    gram = np.array([[inner_product(a, b) for b in states] for a in states])
    gram_scale = float(np.real(gram[0, 0]))
    gram_dev = float(np.max(np.abs(gram - gram_scale * np.eye(6))))
    reports.append(_report(cfg, "ladders_gram", "gram", 1e-6, gram_dev,
                           orders=6, vacuum_norm_sq=gram_scale))

    raise_dev = 0.0
    lower_dev = 0.0
    for n in range(1, 6):
        up = creation(p, states[n - 1])
        raise_dev = max(raise_dev, _rel(
            norm(_diff(up, SampledLine(grid, math.sqrt(n) * states[n].values))),
            math.sqrt(n) * norm(states[n])))
        down = annihilation(p, states[n])
        lower_dev = max(lower_dev, _rel(
            norm(_diff(down, SampledLine(grid, math.sqrt(n) * states[n - 1].values))),
            math.sqrt(n) * norm(states[n - 1])))
    reports.append(_report(cfg, "ladders_raise", "ladder_shift", 1e-5, raise_dev))
    reports.append(_report(cfg, "ladders_lower", "ladder_shift", 1e-5, lower_dev))

    g = sample(lambda t: (0.4 - 0.2j * t) * np.exp(-math.pi * t * t / 1.2), grid)
    lhs = inner_product(creation(p, f), g)
    rhs = inner_product(f, annihilation(p, g))
    adj = _rel(abs(lhs - rhs), norm(f) * norm(g))
    reports.append(_report(cfg, "ladders_adjoint", "adjoint", 1e-8, adj))
    return reports


# ---------------------------------------------------------------------------
# Suite: Zak pair
# ---------------------------------------------------------------------------

def _zak_aligned_g(cfg: RunConfig, rng) -> HeisenbergElement:
    return HeisenbergElement(float(rng.uniform(-1.0, 1.0)),
                             int(rng.integers(-3 * cfg.nu // 4, 3 * cfg.nu // 4 + 1)) / cfg.nu,
                             int(rng.integers(-3 * cfg.nv // 4, 3 * cfg.nv // 4 + 1)) / cfg.nv)


def suite_zak(cfg: RunConfig) -> list[DefectReport]:
    p = cfg.repr_params()
    lp = cfg.lattice_params()
    rng = cfg.rng()
    grid = cfg.line_grid()
    phi0 = vacuum_gaussian(p, grid)
    h3 = hermite_state(p, 3, grid)
    zak = lambda f: covariant_zak(lp, f, cfg.nu, cfg.nv, cfg.ntrunc)
    izak = lambda F: contravariant_zak_inverse(lp, F, grid)
    reports = []

    for label, f in (("gaussian", phi0), ("hermite3", h3)):
        rep = unitarity_defect(zak, f)
        reports.append(_report(cfg, f"zak_unitarity_{label}", "unitarity_transform",
                               1e-6, rep.value))

    # the image of the vacuum is the theta vacuum (linearity carries the
    # Gaussian's 2^{1/4} onto the prefactor-times-series evaluation)
    zphi = zak(phi0)
    ref = 2.0 ** 0.25 * vacuum_theta(lp, cfg.nu, cfg.nv,
                                     ThetaTruncation.for_params(cfg.m, cfg.kappa,
                                                                cfg.theta_eps)).values
    match = float(np.max(np.abs(zphi.values - ref)) / np.max(np.abs(ref)))
    reports.append(_report(cfg, "zak_vacuum_theta_match", "vacuum_match", 1e-8, match))

    inter = 0.0
    gs = []
    for _ in range(10):
        g = _zak_aligned_g(cfg, rng)
        gs.append(list(g.as_tuple()))
        lhs = zak(act_schrodinger(p, g, phi0))
        rhs = act_lattice(lp, g, zphi)
        inter = max(inter, _rel(norm(_diff(lhs, rhs)), norm(phi0)))
    reports.append(_report(cfg, "zak_intertwining", "intertwining", 1e-5, inter,
                           elements=gs))

    for label, f in (("gaussian", phi0), ("hermite3", h3)):
        rep = roundtrip_error(zak, izak, f)
        reports.append(_report(cfg, f"zak_roundtrip_{label}", "roundtrip", 1e-6,
                               rep.value))
    back = zak(izak(zphi))
    reports.append(_report(cfg, "zak_roundtrip_reverse", "roundtrip", 1e-6,
                           _rel(norm(_diff(back, zphi)), norm(zphi))))

    qp = 0.0
    nodes = [(5, 17), (cfg.nu // 2, cfg.nv - 1), (cfg.nu - 1, 3)]
    for (n0, k0) in [(1, 0), (0, 1), (2, -1), (-1, 3)]:
        for (j, k) in nodes:
            u, v = j / cfg.nu, k / cfg.nv
            ext = zak_extended(lp, phi0, u + n0, v + k0, cfg.ntrunc + abs(n0))
            pred = cis(lp.m * u * k0) * zphi.values[j, k]
            qp = max(qp, abs(ext - pred))
    reports.append(_report(cfg, "zak_quasi_periodicity", "quasi_periodicity",
                           1e-12, qp))

    ind = sample(lambda t: ((t >= 0) & (t < 1)).astype(float), grid)
    zi = zak(ind)
    reports.append(_report(cfg, "zak_indicator_modulus", "quasi_periodicity", 1e-12,
                           float(np.max(np.abs(np.abs(zi.values) - 1.0)))))

    # negative control: a coordinate-dependent kernel phase must break the
    # intertwining relation at the reference tolerance
    us = zphi.u_points()[:, None]
    vs = zphi.v_points()[None, :]
    pert = np.exp(0.01j * us * vs)
    gctl = HeisenbergElement(0.3, round(0.25 * cfg.nu) / cfg.nu,
                             round(0.375 * cfg.nv) / cfg.nv)
    bad_zak = lambda f: _scale(zak(f), pert)
    lhs = bad_zak(act_schrodinger(p, gctl, phi0))
    rhs = act_lattice(lp, gctl, bad_zak(phi0))
    raw = _rel(norm(_diff(lhs, rhs)), norm(phi0))
    reports.append(_negative_control(
        cfg, "zak_intertwining_negative_control", raw,
        cfg.tolerance("zak_intertwining", "intertwining", 1e-5)))
    return reports


def _scale(field, factor):
    return type(field)(**{**field.__dict__, "values": field.values * factor})


# ---------------------------------------------------------------------------
# Suite: FSB pair
# ---------------------------------------------------------------------------

def suite_fsb(cfg: RunConfig) -> list[DefectReport]:
    p = cfg.repr_params()
    rng = cfg.rng()
    grid = cfg.line_grid()
    gx, gy = cfg.plane_gx(), cfg.plane_gy()
    phi0 = vacuum_gaussian(p, grid)
    prefsb = lambda f, a=gx, b=gy: covariant_pre_fsb(p, FiducialSpec(), f, a, b)
    reports = []

    w0 = prefsb(phi0)
    i0 = gx.index_of(0.0)
    j0 = gy.index_of(0.0)
    reports.append(_report(cfg, "fsb_vacuum_point", "vacuum_match", 1e-8,
                           abs(w0.values[i0, j0] - math.sqrt(p.hbar / p.kappa)
                               * norm(phi0) ** 2)))

    inter = 0.0
    q = round(gx.step / grid.step)
    for _ in range(10):
        g = HeisenbergElement(float(rng.uniform(-1.0, 1.0)),
                              int(rng.integers(-12, 13)) * q * grid.step,
                              int(rng.integers(-12, 13)) * gy.step)
        lhs = prefsb(act_schrodinger(p, g, phi0))
        rhs = act_quasi_regular_left(p, g, w0)
        inter = max(inter, _rel(norm(_diff(lhs, rhs)), norm(phi0)))
    reports.append(_report(cfg, "prefsb_intertwining", "intertwining", 1e-5, inter))

    res = annihilation_residual("preFSB-Lie", w0, p)
    reports.append(_report(cfg, "prefsb_annihilation", "annihilation", 1e-4,
                           res.value))
    fine = (centered_grid(cfg.Lx, 2 * cfg.nx), centered_grid(cfg.Ly, 2 * cfg.ny))
    res_fine = annihilation_residual("preFSB-Lie", prefsb(phi0, *fine), p)
    reports.append(_report(cfg, "prefsb_annihilation_refinement", "refinement",
                           0.125, 0.0 if res.value == 0 else res_fine.value / res.value,
                           coarse=res.value, fine=res_fine.value))

    # Cauchy-Riemann residual of the peeled image of a displaced Gaussian
    # (the vacuum's peeled image is exactly constant, so it cannot probe the
    # derivative truncation; a coherent state can)
    fshift = sample(lambda t: np.exp(2j * math.pi * 0.6 * t) * 2.0 ** 0.25
                    * np.exp(-math.pi * p.hbar / p.kappa * (t - 0.8) ** 2), grid)
    cr = annihilation_residual("CR-after-peel",
                               peel_fsb(p, prefsb(fshift), "forward"), p)
    reports.append(_report(cfg, "fsb_cauchy_riemann", "cauchy_riemann", 1e-4,
                           cr.value))
    cr_fine = annihilation_residual(
        "CR-after-peel", peel_fsb(p, prefsb(fshift, *fine), "forward"), p)
    reports.append(_report(cfg, "fsb_cauchy_riemann_refinement", "refinement",
                           0.125, 0.0 if cr.value == 0 else cr_fine.value / cr.value,
                           coarse=cr.value, fine=cr_fine.value))

    peeled_vac = peel_fsb(p, w0, "forward")
    mask = ((np.abs(gx.points())[:, None] <= PLANE_WINDOW)
            & (np.abs(gy.points())[None, :] <= PLANE_WINDOW))
    mags = np.abs(peeled_vac.values[mask])
    reports.append(_report(cfg, "fsb_vacuum_constancy", "constancy", 1e-4,
                           float(np.std(mags) / np.mean(mags))))

    h1 = hermite_state(p, 1, grid)
    h2 = hermite_state(p, 2, grid)
    quads = [(phi0, h1, h2, phi0), (phi0, phi0, phi0, phi0), (h2, h1, h1, h2)]
    sesqui = 0.0
    for f1, w1, f2, w2 in quads:
        lhs = inner_product(matrix_coefficient(p, f1, w1, gx, gy),
                            matrix_coefficient(p, f2, w2, gx, gy))
        rhs = inner_product(f1, f2) * np.conj(inner_product(w1, w2))
        sesqui = max(sesqui, _rel(abs(lhs - rhs),
                                  norm(f1) * norm(f2) * norm(w1) * norm(w2)))
    reports.append(_report(cfg, "fsb_sesqui_unitarity", "sesqui_unitarity", 1e-4,
                           sesqui, quadruples=len(quads)))

    fwin = sample(lambda t: (0.7 - 0.3 * t + 0.2 * t * t)
                  * np.exp(-0.5 * math.pi * t * t) * np.exp(1j * math.pi * t / 3.0),
                  grid)
    psi = ReconstructionSpec("gaussian")
    pairing = math.sqrt(p.hbar / p.kappa) * norm(phi0) ** 2 / p.hbar
    rt = roundtrip_error(prefsb,
                         lambda F: contravariant_pre_fsb_inverse(p, psi, F, grid),
                         fwin)
    reports.append(_report(cfg, "prefsb_roundtrip", "roundtrip_prefsb", 1e-4,
                           rt.value, pairing=pairing))

    xs = gx.points()[:, None]
    ys = gy.points()[None, :]
    pert = np.exp(0.01j * xs * ys)
    gctl = HeisenbergElement(0.25, 8 * gx.step, -6 * gy.step)
    bad = lambda f: _scale(prefsb(f), pert)
    raw = _rel(norm(_diff(bad(act_schrodinger(p, gctl, phi0)),
                          act_quasi_regular_left(p, gctl, bad(phi0)))), norm(phi0))
    reports.append(_negative_control(
        cfg, "prefsb_intertwining_negative_control", raw,
        cfg.tolerance("prefsb_intertwining", "intertwining", 1e-5)))
    return reports

# ---------------------------------------------------------------------------
# Suite: theta pair and the lattice vacuum
# ---------------------------------------------------------------------------

def _ipretheta_at(lp: LatticeParams, F: PlaneField, u: float, v: float) -> complex:
    """Synthesis integral evaluated at one (possibly extended) torus point."""
    xs = F.gx.points()[:, None]
    ys = F.gy.points()[None, :]
    phi = theta_vacuum_eval(lp, u - xs, v - ys)
    kernel = cis(lp.m * xs * (v - ys))
    return complex(np.sum(F.values * kernel * phi) * F.gx.step * F.gy.step)


def suite_theta(cfg: RunConfig) -> list[DefectReport]:
    lp = cfg.lattice_params()
    rng = cfg.rng()
    gx, gy = cfg.plane_gx(), cfg.plane_gy()
    trunc = ThetaTruncation.for_params(cfg.m, cfg.kappa, cfg.theta_eps)
    reports = []

    # series-level certificates on a real sweep
    omegas = np.linspace(-1.5, 2.5, 100)
    base = jacobi_theta_series(cfg.m, cfg.kappa, omegas, trunc)
    doubled = jacobi_theta_series(cfg.m, cfg.kappa, omegas,
                                  ThetaTruncation(trunc.eps, 2 * trunc.nmax))
    reports.append(_report(cfg, "theta_series_truncation", "series",
                           cfg.theta_eps, float(np.max(np.abs(base - doubled))),
                           nmax=trunc.nmax))
    shifted = jacobi_theta_series(cfg.m, cfg.kappa, omegas + 1.0, trunc)
    reports.append(_report(cfg, "theta_series_periodicity", "series",
                           2.0 * cfg.theta_eps, float(np.max(np.abs(shifted - base)))))
    qshift = jacobi_theta_series(cfg.m, cfg.kappa, omegas + 1j * cfg.m / cfg.kappa,
                                 ThetaTruncation(trunc.eps, trunc.nmax + 2))
    factor = np.exp(math.pi * cfg.m / cfg.kappa - 2j * math.pi * omegas)
    reports.append(_report(cfg, "theta_series_quasi_period", "series", 1e-10,
                           float(np.max(np.abs(qshift - factor * base)
                                        / np.abs(base)))))

    # the displayed vacuum formula against its lattice-sum form, and the
    # quasi-periodic covariance of the extension
    vac = vacuum_theta(lp, cfg.nu, cfg.nv, trunc)
    us = vac.u_points()[:, None]
    vs = vac.v_points()[None, :]
    lattice_form = theta_vacuum_eval(lp, us, vs)
    scale = float(np.max(np.abs(vac.values)))
    reports.append(_report(cfg, "theta_vacuum_lattice_sum_match", "vacuum_match",
                           1e-10, float(np.max(np.abs(vac.values - lattice_form)))
                           / scale))
    qp = 0.0
    for (n0, k0) in [(1, 0), (0, 1), (-1, 2), (2, -1)]:
        for (j, k) in [(3, 11), (cfg.nu // 2, cfg.nv // 3), (cfg.nu - 2, 1)]:
            u, v = j / cfg.nu, k / cfg.nv
            ext = complex(theta_vacuum_eval(lp, u + n0, v + k0))
            pred = complex(cis(lp.m * u * k0)) * complex(vac.values[j, k])
            qp = max(qp, abs(ext - pred) / scale)
    reports.append(_report(cfg, "theta_vacuum_quasi_periodicity",
                           "quasi_periodicity", 1e-8, qp))

    # peeling the vacuum must cancel the prefactor exactly
    peeled = peel_lattice(lp, vac, "forward")
    om = lp.m * (vs + 1j * us / lp.kappa)
    bare = jacobi_theta_series(cfg.m, cfg.kappa, om, trunc)
    reports.append(_report(cfg, "lattice_peeling_vacuum", "peeling_vacuum", 1e-10,
                           float(np.max(np.abs(peeled.values - bare))
                                 / np.max(np.abs(bare)))))

    res = annihilation_residual("lattice-after-peel", peeled, lp)
    reports.append(_report(cfg, "theta_dbar_residual", "dbar", 1e-4, res.value))
    vac_fine = vacuum_theta(lp, 2 * cfg.nu, 2 * cfg.nv, trunc)
    res_fine = annihilation_residual("lattice-after-peel",
                                     peel_lattice(lp, vac_fine, "forward"), lp)
    reports.append(_report(cfg, "theta_dbar_refinement", "refinement", 0.125,
                           0.0 if res.value == 0 else res_fine.value / res.value,
                           coarse=res.value, fine=res_fine.value))

    # intertwining with the quasi-regular action (parameters hbar = m)
    pr = ReprParams(hbar=float(cfg.m), kappa=cfg.kappa)
    f_torus = _torus_test_field(cfg)
    w_t = covariant_pre_theta(lp, f_torus, gx, gy)
    inter = 0.0
    r_u = gx.step * cfg.nu
    r_v = gy.step * cfg.nv
    if abs(r_u - round(r_u)) > 1e-9 or abs(r_v - round(r_v)) > 1e-9:
        raise ConfigError("plane steps must be torus grid-aligned for the "
                          "theta intertwining battery")
    for _ in range(10):
        g = HeisenbergElement(float(rng.uniform(-1.0, 1.0)),
                              int(rng.integers(-12, 13)) * gx.step,
                              int(rng.integers(-12, 13)) * gy.step)
        lhs = covariant_pre_theta(lp, act_lattice(lp, g, f_torus), gx, gy)
        rhs = act_quasi_regular_left(pr, g, w_t)
        inter = max(inter, _rel(norm(_diff(lhs, rhs)), norm(f_torus)))
    reports.append(_report(cfg, "pretheta_intertwining", "intertwining", 1e-6,
                           inter))

    # round trip on a 64^2 torus after <Phi, Phi>-normalisation
    nru, nrv = min(cfg.nu, 64), min(cfg.nv, 64)
    vac64 = vacuum_theta(lp, nru, nrv, trunc)
    w64 = covariant_pre_theta(lp, vac64, gx, gy)
    back = contravariant_pre_theta_inverse(lp, ReconstructionSpec("theta_vacuum"),
                                           w64, nru, nrv)
    nrm2 = norm(vac64) ** 2
    rt = _rel(norm(TorusField(nru, nrv, cfg.m, back.values / (nrm2 * cfg.m)
                              - vac64.values)), norm(vac64))
    reports.append(_report(cfg, "ipretheta_roundtrip", "roundtrip_pretheta", 1e-3,
                           rt, torus=[nru, nrv], pairing=nrm2))

    # the synthesis output inherits the quasi-periodic covariance
    qp_out = 0.0
    scale_out = float(np.max(np.abs(back.values)))
    for (n0, k0) in [(1, 0), (0, 1), (1, -1)]:
        for (j, k) in [(5, 9), (nru // 2, nrv // 2)]:
            u, v = j / nru, k / nrv
            ext = _ipretheta_at(lp, w64, u + n0, v + k0)
            pred = complex(cis(lp.m * u * k0)) * complex(back.values[j, k])
            qp_out = max(qp_out, abs(ext - pred) / scale_out)
    reports.append(_report(cfg, "ipretheta_quasi_periodicity", "quasi_periodicity",
                           1e-8, qp_out))

    xs = gx.points()[:, None]
    ys = gy.points()[None, :]
    pert = np.exp(0.01j * xs * ys)
    gctl = HeisenbergElement(0.2, 6 * gx.step, -9 * gy.step)
    bad = lambda f: _scale(covariant_pre_theta(lp, f, gx, gy), pert)
    raw = _rel(norm(_diff(bad(act_lattice(lp, gctl, f_torus)),
                          act_quasi_regular_left(pr, gctl, bad(f_torus)))),
               norm(f_torus))
    reports.append(_negative_control(
        cfg, "pretheta_intertwining_negative_control", raw,
        cfg.tolerance("pretheta_intertwining", "intertwining", 1e-6)))
    return reports


# ---------------------------------------------------------------------------
# Suite: peelings
# ---------------------------------------------------------------------------

def suite_peeling(cfg: RunConfig) -> list[DefectReport]:
    p = cfg.repr_params()
    lp = cfg.lattice_params()
    grid = cfg.line_grid()
    reports = []

    f_plane = _plane_test_field(cfg)
    f_torus = _torus_test_field(cfg)
    f_line = _line_test_signal(cfg)
    invol = [
        ("peel_fsb_involution",
         peel_fsb(p, peel_fsb(p, f_plane, "forward"), "inverse"), f_plane),
        ("peel_schrodinger_involution",
         peel_schrodinger(p, peel_schrodinger(p, f_line, "forward"), "inverse"),
         f_line),
        ("peel_lattice_involution",
         peel_lattice(lp, peel_lattice(lp, f_torus, "forward"), "inverse"),
         f_torus),
    ]
    for name, back, orig in invol:
        reports.append(_report(cfg, name, "involution", 1e-12,
                               _rel(norm(_diff(back, orig)), norm(orig))))

    # the peeled vacuum is the constant 2^{1/4}
    phi0 = vacuum_gaussian(p, grid)
    flat = peel_schrodinger(p, phi0, "forward")
    reports.append(_report(cfg, "schrodinger_peeling_vacuum", "hermite_ratio",
                           1e-10, float(np.max(np.abs(flat.values - 2.0 ** 0.25))
                                        / 2.0 ** 0.25)))

    # peeled eigenstates are proportional to Hermite polynomials in the
    # weighted norm of the peeled space
    from numpy.polynomial.hermite import hermval
    beta = math.sqrt(2.0 * math.pi * p.hbar / p.kappa)
    t = grid.points()
    w = np.exp(-2.0 * math.pi * p.hbar / p.kappa * t * t)
    for n in range(1, 5):
        state = hermite_state(p, n, grid)
        peeled = peel_schrodinger(p, state, "forward")
        hpoly = hermval(beta * t, [0.0] * n + [1.0])
        cfit = np.sum(w * peeled.values * np.conj(hpoly)) / np.sum(w * np.abs(hpoly) ** 2)
        dev = math.sqrt(float(np.sum(w * np.abs(peeled.values - cfit * hpoly) ** 2)
                              / np.sum(w * np.abs(cfit * hpoly) ** 2)))
        reports.append(_report(cfg, f"schrodinger_peeling_hermite_{n}",
                               "hermite_ratio", 1e-6, dev,
                               fitted_constant=complex(cfit)))
    return reports


# ---------------------------------------------------------------------------
# Suite: contravariant transforms (Fourier pair and the reconstruction
# condition)
# ---------------------------------------------------------------------------

def suite_contravariant(cfg: RunConfig) -> list[DefectReport]:
    p = cfg.repr_params()
    rng = cfg.rng()
    grid = cfg.line_grid()
    reports = []

    gauss = sample(lambda t: np.exp(-math.pi * p.hbar * t * t), grid)
    wf = covariant_fourier_inverse(p, gauss, grid)
    selfdual = sample(lambda t: np.exp(-math.pi * t * t / p.hbar), grid)
    reports.append(_report(cfg, "fourier_gaussian_selfdual", "selfdual", 1e-8,
                           _rel(norm(_diff(_scale(wf, math.sqrt(p.hbar)), selfdual)),
                                norm(selfdual))))
    reports.append(_report(cfg, "fourier_real_even", "selfdual", 1e-10,
                           float(np.max(np.abs(wf.values.imag))
                                 / np.max(np.abs(wf.values)))))

    fwin = _line_test_signal(cfg)
    rt = roundtrip_error(lambda f: covariant_fourier_inverse(p, f, grid),
                         lambda f: contravariant_fourier(p, f, grid), fwin)
    reports.append(_report(cfg, "fourier_roundtrip", "roundtrip_fourier", 1e-7,
                           rt.value))

    inter = 0.0
    for _ in range(10):
        g = _rand_line_g(cfg, rng, align_y=True)
        lhs = covariant_fourier_inverse(p, act_schrodinger(p, g, fwin), grid)
        rhs = act_schrodinger_momentum(p, g, covariant_fourier_inverse(p, fwin, grid))
        inter = max(inter, _rel(norm(_diff(lhs, rhs)), norm(fwin)))
    reports.append(_report(cfg, "fourier_intertwining", "intertwining", 1e-6,
                           inter))

    lam = grid.points()
    pert = np.exp(0.01j * lam)
    gctl = HeisenbergElement(0.1, 32 * grid.step, -64 * grid.step)
    bad = lambda f: _scale(covariant_fourier_inverse(p, f, grid), pert)
    raw = _rel(norm(_diff(bad(act_schrodinger(p, gctl, fwin)),
                          act_schrodinger_momentum(p, gctl, bad(fwin)))),
               norm(fwin))
    reports.append(_negative_control(
        cfg, "fourier_intertwining_negative_control", raw,
        cfg.tolerance("fourier_intertwining", "intertwining", 1e-6)))

    # the lattice reconstruction condition rejects every smooth trial vector:
    # at y = 1, 0 < x < 1 the condition forces a phase the trial cannot carry
    t = grid.points()
    x0 = 0.5
    psi = 2.0 ** 0.25 * np.exp(-math.pi * t * t)
    shifted = 2.0 ** 0.25 * np.exp(-math.pi * (t - x0) ** 2)
    residual = cis(cfg.m * (t - x0)) * shifted - shifted
    raw = math.sqrt(float(np.sum(np.abs(residual) ** 2) * grid.step)
                    / float(np.sum(np.abs(psi) ** 2) * grid.step))
    reports.append(_negative_control(
        cfg, "lattice_reconstruction_condition", raw, 0.1,
        trial="gaussian", x=x0, y=1.0))
    return reports


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

SUITES = {
    "group": suite_group,
    "representations": suite_representations,
    "ladders": suite_ladders,
    "zak": suite_zak,
    "fsb": suite_fsb,
    "theta": suite_theta,
    "peeling": suite_peeling,
    "contravariant": suite_contravariant,
}

SUITE_ORDER = ["group", "representations", "ladders", "zak", "fsb", "theta",
               "peeling", "contravariant"]


def run_suite(name: str, cfg: RunConfig) -> list[DefectReport]:
    cfg.validate()
    if name == "all":
        out = []
        for key in SUITE_ORDER:
            out.extend(SUITES[key](cfg))
        return out
    if name not in SUITES:
        raise ConfigError(f"unknown suite {name!r}; choose from "
                          f"{SUITE_ORDER + ['all']}")
    return SUITES[name](cfg)
