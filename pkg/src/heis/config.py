"""Run configuration shared by the verification suites and the CLI.

A configuration is a flat bundle of representation parameters, grid sizes
and named tolerance overrides.  JSON config files mirror the field names;
command-line flags override file values.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, fields, replace

import numpy as np

from .errors import ConfigError
from .grids import GridSpec1D, centered_grid
from .reps import LatticeParams, ReprParams

_INT_FIELDS = {"m", "n", "nx", "ny", "nu", "nv", "ntrunc", "seed"}


@dataclass(frozen=True)
class RunConfig:
    hbar: float = 1.0
    kappa: float = 1.0
    m: int = 1
    L: float = 8.0          # line domain [-L, L)
    n: int = 2048           # line sample count
    Lx: float = 6.0         # plane domain [-Lx, Lx) x [-Ly, Ly)
    Ly: float = 6.0
    nx: int = 256
    ny: int = 256
    nu: int = 128           # torus grid
    nv: int = 128
    ntrunc: int = 16        # lattice-sum truncation for the Zak pair
    theta_eps: float = 1e-14
    seed: int = 42
    tolerances: dict = field(default_factory=dict)

    def validate(self) -> "RunConfig":
        for name in ("hbar", "kappa", "L", "Lx", "Ly", "theta_eps"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive")
        for name in _INT_FIELDS - {"seed"}:
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ConfigError(f"{name} must be a positive integer")
        if self.n < 16:
            raise ConfigError("line grid is too small")
        per = self.n / (2.0 * self.L)
        if abs(per - round(per)) > 1e-9:
            raise ConfigError("n / (2 L) must be an integer (samples per unit length)")
        if round(per) % self.nu != 0:
            raise ConfigError(
                f"nu = {self.nu} must divide the {round(per)} samples per unit "
                "length for Zak grid compatibility")
        if not isinstance(self.tolerances, dict):
            raise ConfigError("tolerances must be a name -> value map")
        for key, val in self.tolerances.items():
            try:
                fval = float(val)
            except (TypeError, ValueError):
                raise ConfigError(f"tolerance {key!r} is not a number") from None
            if not fval > 0:
                raise ConfigError(f"tolerance {key!r} must be positive")
        return self

    # -- derived objects ----------------------------------------------------

    def line_grid(self) -> GridSpec1D:
        return centered_grid(self.L, self.n)

    def plane_gx(self) -> GridSpec1D:
        return centered_grid(self.Lx, self.nx)

    def plane_gy(self) -> GridSpec1D:
        return centered_grid(self.Ly, self.ny)

    def repr_params(self) -> ReprParams:
        return ReprParams(hbar=self.hbar, kappa=self.kappa)

    def lattice_params(self) -> LatticeParams:
        return LatticeParams(m=self.m, kappa=self.kappa)

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def tolerance(self, name: str, category: str, default: float) -> float:
        if name in self.tolerances:
            return float(self.tolerances[name])
        if category in self.tolerances:
            return float(self.tolerances[category])
        return default

    # -- construction -------------------------------------------------------

    def with_overrides(self, overrides: dict) -> "RunConfig":
        known = {f.name for f in fields(self)}
        clean = {}
        for key, value in overrides.items():
            if key not in known:
                raise ConfigError(f"unknown config key {key!r}")
            if key == "tolerances":
                merged = dict(self.tolerances)
                merged.update(value)
                clean[key] = merged
            elif key in _INT_FIELDS:
                try:
                    clean[key] = int(value)
                except (TypeError, ValueError):
                    raise ConfigError(f"config key {key!r} must be an integer") from None
            else:
                try:
                    clean[key] = float(value)
                except (TypeError, ValueError):
                    raise ConfigError(f"config key {key!r} must be a number") from None
        return replace(self, **clean).validate()

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot load config {path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError(f"{path}: config must be a JSON object")
        return cls().with_overrides(raw)
