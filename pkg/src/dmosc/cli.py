"""Command-line front end: ``dmosc run``, ``dmosc sweep``, ``dmosc render``.

Exit codes: 0 success, 1 invalid configuration, 2 numerical failure,
3 I/O failure.
"""
from __future__ import annotations

import argparse
import logging
import sys

from .harness import ConfigError, ExperimentConfig, SweepSpec, parse_sweep, run, sweep
from .observables import InvalidDensityError, UndefinedObservableError

log = logging.getLogger("dmosc")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3

# CLI flag -> ExperimentConfig field
_FLAG_FIELDS = {
    "lambda1": "lambda1",
    "lambda2": "lambda2",
    "omega": "omega",
    "alpha": "alpha",
    "nmax": "n_max",
    "sectors": "sectors",
    "solver": "solver",
    "dt": "dt",
    "tmax": "tmax",
    "dtau_out": "dtau_out",
    "observables": "observables",
    "out_dir": "out_dir",
    "format": "format",
    "plot": "plot",
}


def _add_experiment_flags(p):
    p.add_argument("--config", help="flat JSON object with ExperimentConfig fields")
    p.add_argument("--lambda1", type=float, help="Dirac coupling in units of lambda")
    p.add_argument("--lambda2", type=float, help="isospin coupling in units of lambda")
    p.add_argument("--omega", type=float, help="resonant splitting Omega in units of lambda")
    p.add_argument("--alpha", type=float, help="coherent amplitude")
    p.add_argument("--nmax", type=int, help="Fock truncation (default: automatic)")
    p.add_argument("--sectors", choices=("full", "paper"))
    p.add_argument("--solver", choices=("exact", "rk4"))
    p.add_argument("--dt", type=float, help="RK4 step")
    p.add_argument("--tmax", type=float)
    p.add_argument("--dtau-out", dest="dtau_out", type=float)
    p.add_argument("--observables", help="comma-separated subset of S,C,W,g2,norm,excitation")
    p.add_argument("--out-dir", dest="out_dir")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--plot", action="store_const", const=True, default=None,
                   help="also write one SVG per observable")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dmosc",
        description="Dirac-Moshinsky oscillator with isospin coupling as a generalized "
                    "Jaynes-Cummings model: time series of S, C, W and g2.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="compute one time series")
    _add_experiment_flags(p_run)

    p_sweep = sub.add_parser("sweep", help="one series per parameter value, plus manifest")
    _add_experiment_flags(p_sweep)
    p_sweep.add_argument("--sweep", required=True, metavar="PARAM=VALUES",
                         help="lambda1|lambda2|omega|alpha = start:stop:count or v1,v2,...")

    p_render = sub.add_parser("render", help="plot one column of a series file as SVG")
    p_render.add_argument("series")
    p_render.add_argument("observable")
    p_render.add_argument("-o", "--output")
    return parser


def _config(args) -> ExperimentConfig:
    overrides = {field: getattr(args, flag) for flag, field in _FLAG_FIELDS.items()}
    if args.config:
        return ExperimentConfig.from_file(args.config, **overrides)
    return ExperimentConfig.from_mapping({}, **overrides)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if args.command == "render":
            from .svg import render

            path = render(args.series, args.observable, args.output)
            print(path)
            return EXIT_OK
        config = _config(args)
        if args.command == "run":
            files = run(config)
        else:
            name, values = parse_sweep(args.sweep)
            files = [sweep(SweepSpec(parameter=name, values=values, base=config))]
        for f in files:
            print(f)
        return EXIT_OK
    except ConfigError as exc:
        log.error("invalid configuration: %s", exc)
        return EXIT_CONFIG
    except (UndefinedObservableError, InvalidDensityError, ArithmeticError) as exc:
        log.error("numerical error: %s", exc)
        return EXIT_NUMERIC
    except KeyError as exc:
        log.error("%s", exc.args[0] if exc.args else exc)
        return EXIT_CONFIG
    except ValueError as exc:
        # malformed series files and similar input problems
        log.error("%s", exc)
        return EXIT_IO if args.command == "render" else EXIT_CONFIG
    except OSError as exc:
        log.error("I/O error: %s", exc)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
