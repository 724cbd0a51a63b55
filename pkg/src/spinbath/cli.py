"""Command line front end.

Exit codes: 0 success, 2 configuration error, 3 numerical consistency
failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from . import experiments
from .errors import ConsistencyError, DomainError
from .experiments import ConfigError, build_config, load_config_file, \
    parse_param_sets
from .selftest import run_selftest

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CONSISTENCY = 3
EXIT_IO = 4

_RUNNERS = {
    "channel": experiments.run_channel,
    "fig1a": experiments.run_fig1a,
    "fig1b": experiments.run_fig1b,
    "fig2": experiments.run_fig2,
    "fig3": experiments.run_fig3,
    "fig4": experiments.run_fig4,
    "nm-scan": experiments.run_nm_scan,
    "qfi": experiments.run_qfi,
}

_COMMAND_HELP = {
    "channel": "channel entries over the time grid",
    "fig1a": "antipodal probe trajectories through the spin-bath channel",
    "fig1b": "antipodal probe trajectories through amplitude damping",
    "fig2": "trajectory Bures angle per parameter set",
    "fig3": "probe sensitivities per parameter set",
    "fig4": "sensitivity and angle derivatives with sign agreement",
    "nm-scan": "backflow measure over the lag grid",
    "qfi": "probe sensitivities for a single parameter set",
    "selftest": "cross-check independent computation routes",
}


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    add = common.add_argument
    add("--config", metavar="PATH", help="key=value config file")
    add("--output-dir", dest="output_dir", metavar="PATH")
    add("--phase-convention", dest="phase_convention", choices=["ode", "paper"])
    add("--tol", dest="trunc_tol", type=float,
        help="thermal tail truncation tolerance")
    add("--precision", type=int, help="significant digits in CSV output")
    add("--epsilon", type=float, help="qubit splitting, units of J")
    add("--coupling-j0", dest="coupling_j0", type=float)
    add("--temperature", type=float, help="bath temperature, units of J")
    add("--gamma", type=float, help="damping rate for the baseline channel")
    add("--t-max", dest="t_max", type=float)
    add("--t-step", dest="t_step", type=float)
    add("--tau", type=float, help="preparation lag")
    add("--tau-max", dest="tau_max", type=float)
    add("--tau-step", dest="tau_step", type=float)
    add("--theta", type=float, help="probe mixing angle")
    add("--n-cap", dest="n_cap", type=int)
    add("--param-sets", dest="param_sets", metavar="'E,T;E,T;...'",
        help="(epsilon, temperature) sweep for fig2/fig3")
    add("--overwrite", action="store_true", default=None,
        help="allow clobbering existing output files")
    return common


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinbath",
        description="Exact qubit dynamics in a thermal spin environment")
    common = _common_options()
    sub = parser.add_subparsers(dest="command", required=True)
    for name in (*_RUNNERS, "selftest"):
        sub.add_parser(name, parents=[common], help=_COMMAND_HELP[name])
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "selftest":
        return EXIT_OK if run_selftest() else EXIT_CONSISTENCY

    try:
        file_values = load_config_file(args.config) if args.config else {}
        overrides = {key: getattr(args, key) for key in (
            "output_dir", "phase_convention", "trunc_tol", "precision",
            "epsilon", "coupling_j0", "temperature", "gamma", "t_max",
            "t_step", "tau", "tau_max", "tau_step", "theta", "n_cap",
            "overwrite")}
        if args.param_sets is not None:
            overrides["param_sets"] = parse_param_sets(args.param_sets)
        cfg = build_config(file_values, overrides)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        paths = _RUNNERS[args.command](cfg)
    except (ConfigError, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConsistencyError as exc:
        print(f"numerical consistency error: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (OSError, FileExistsError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    for path in paths:
        print(f"wrote {path}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
