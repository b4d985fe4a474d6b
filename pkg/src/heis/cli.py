"""Command-line entry point.

    heis transform <name> <input.csv> <output.csv> [flags]
    heis verify <suite> [--report out.json] [flags]
    heis gen <signal> <output.csv> [flags]

Flags mirror the RunConfig keys (--hbar, --nu, ...); a JSON config file can
be supplied with --config or the HEIS_CONFIG environment variable, and
named tolerances are overridden with repeatable --tol name=value flags.

Exit codes: 0 success (all checks passed for `verify`), 1 verification
failure, 2 malformed input, 3 configuration error, 4 numerical guard
tripped.
"""
from __future__ import annotations

import argparse
import os
import sys

from .config import RunConfig
from .errors import (ConfigError, DivergenceGuard, HeisError, OverflowGuard,
                     SupportOverflow)
from .grids import (read_line_csv, read_plane_csv, read_torus_csv,
                    write_line_csv, write_plane_csv, write_torus_csv)
from .ladders import hermite_state, vacuum_gaussian, vacuum_theta
from .transforms import (FiducialSpec, ReconstructionSpec,
                         contravariant_fourier, contravariant_pre_fsb_inverse,
                         contravariant_pre_theta_inverse,
                         contravariant_zak_inverse, covariant_fourier_inverse,
                         covariant_pre_fsb, covariant_pre_theta, covariant_zak,
                         fsb_transform, peel_fsb, peel_lattice,
                         peel_schrodinger, theta_transform)
from .verify import reports_to_json, run_suite

_CONFIG_FLAGS = ["hbar", "kappa", "m", "L", "n", "Lx", "Ly", "nx", "ny",
                 "nu", "nv", "ntrunc", "theta_eps", "seed"]

TRANSFORMS = ("prefsb", "fsb", "zak", "izak", "pretheta", "ipretheta",
              "fourier", "ifourier", "peel-fsb", "peel-schrodinger",
              "peel-lattice")

SIGNALS = ("gaussian", "indicator", "theta-vacuum")  # plus hermite:<n>


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=None,
                        help="JSON config file (default: $HEIS_CONFIG if set)")
    for key in _CONFIG_FLAGS:
        parser.add_argument(f"--{key.replace('_', '-')}", dest=key, default=None)
    parser.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                        help="override a named tolerance (repeatable)")


def _build_config(args: argparse.Namespace) -> RunConfig:
    path = args.config or os.environ.get("HEIS_CONFIG")
    cfg = RunConfig.from_file(path) if path else RunConfig()
    overrides = {}
    for key in _CONFIG_FLAGS:
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = value
    tols = {}
    for item in args.tol:
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise ConfigError(f"--tol expects NAME=VALUE, got {item!r}")
        try:
            tols[name] = float(value)
        except ValueError:
            raise ConfigError(f"tolerance {name!r} is not a number") from None
    if tols:
        overrides["tolerances"] = tols
    cfg = cfg.with_overrides(overrides) if overrides else cfg
    return cfg.validate()


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="heis", description=__doc__,
                                  formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = top.add_subparsers(dest="command", required=True)

    tr = sub.add_parser("transform", help="apply a transform to a CSV signal")
    tr.add_argument("name", choices=TRANSFORMS)
    tr.add_argument("input")
    tr.add_argument("output")
    tr.add_argument("--direction", choices=("forward", "inverse"),
                    default="forward", help="peeling direction")
    _add_config_flags(tr)

    ve = sub.add_parser("verify", help="run a verification suite")
    ve.add_argument("suite")
    ve.add_argument("--report", default=None, help="write the JSON report here")
    _add_config_flags(ve)

    ge = sub.add_parser("gen", help="generate a named test signal")
    ge.add_argument("signal", help="gaussian | hermite:<n> | indicator | theta-vacuum")
    ge.add_argument("output")
    _add_config_flags(ge)
    return top


def _run_transform(args, cfg: RunConfig) -> int:
    name = args.name
    p = cfg.repr_params()
    lp = cfg.lattice_params()
    gx, gy = cfg.plane_gx(), cfg.plane_gy()
    line = cfg.line_grid()

    if name in ("prefsb", "fsb", "zak", "fourier", "ifourier", "peel-schrodinger"):
        f = read_line_csv(args.input)
    elif name in ("izak", "pretheta", "peel-lattice"):
        f = read_torus_csv(args.input)
    else:
        f = read_plane_csv(args.input)

    if name == "prefsb":
        out = covariant_pre_fsb(p, FiducialSpec(), f, gx, gy)
    elif name == "fsb":
        out = fsb_transform(p, f, gx, gy)
    elif name == "zak":
        out = covariant_zak(lp, f, cfg.nu, cfg.nv, cfg.ntrunc)
    elif name == "izak":
        out = contravariant_zak_inverse(lp, f, line)
    elif name == "pretheta":
        out = covariant_pre_theta(lp, f, gx, gy)
    elif name == "ipretheta":
        out = contravariant_pre_theta_inverse(lp, ReconstructionSpec("theta_vacuum"),
                                              f, cfg.nu, cfg.nv)
    elif name == "fourier":
        out = covariant_fourier_inverse(p, f, line)
    elif name == "ifourier":
        out = contravariant_fourier(p, f, line)
    elif name == "peel-fsb":
        out = peel_fsb(p, f, args.direction)
    elif name == "peel-schrodinger":
        out = peel_schrodinger(p, f, args.direction)
    else:
        out = peel_lattice(lp, f, args.direction)

    _write_field(out, args.output)
    return 0


def _write_field(field, path: str) -> None:
    from .grids import PlaneField, SampledLine
    if isinstance(field, SampledLine):
        write_line_csv(field, path)
    elif isinstance(field, PlaneField):
        write_plane_csv(field, path)
    else:
        write_torus_csv(field, path)


def _run_verify(args, cfg: RunConfig) -> int:
    reports = run_suite(args.suite, cfg)
    width = max(len(r.name) for r in reports)
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<{width}}  value={r.value:.6e}  "
              f"tol={r.tolerance:.3e}")
    failed = [r for r in reports if not r.passed]
    print(f"{len(reports) - len(failed)}/{len(reports)} checks passed "
          f"(suite={args.suite}, seed={cfg.seed})")
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(reports_to_json(reports) + "\n")
    return 1 if failed else 0


def _run_gen(args, cfg: RunConfig) -> int:
    p = cfg.repr_params()
    line = cfg.line_grid()
    signal = args.signal
    if signal == "gaussian":
        out = vacuum_gaussian(p, line)
    elif signal.startswith("hermite:"):
        try:
            order = int(signal.split(":", 1)[1])
        except ValueError:
            raise ConfigError(f"bad hermite order in {signal!r}") from None
        out = hermite_state(p, order, line)
    elif signal == "indicator":
        import numpy as np
        from .grids import sample
        out = sample(lambda t: ((t >= 0) & (t < 1)).astype(float), line)
    elif signal == "theta-vacuum":
        out = vacuum_theta(cfg.lattice_params(), cfg.nu, cfg.nv)
    else:
        raise ConfigError(f"unknown signal {signal!r}")
    _write_field(out, args.output)
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = _build_config(args)
        if args.command == "transform":
            return _run_transform(args, cfg)
        if args.command == "verify":
            return _run_verify(args, cfg)
        return _run_gen(args, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 3
    except (DivergenceGuard, OverflowGuard, SupportOverflow) as exc:
        print(f"numerical guard: {exc}", file=sys.stderr)
        return 4
    except (HeisError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
