"""``corrdyn`` command line interface.

Exit codes: 0 success, 1 usage or config error, 2 validation failure,
3 nonphysical input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from ._kernels import BACKEND
from .channels import ChannelKind, class_params_of
from .correlations import full_report, sudden_death_time, transition_time
from .errors import ConfigError, CorrdynError, NonPhysical
from .trajectory import (
    ClassSpec,
    RunConfig,
    detect_transition,
    reproduce_figure,
    run_trajectory,
    write_csv,
)

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_NONPHYSICAL = 0, 1, 2, 3

_BOOL = {"on": True, "true": True, "yes": True, "1": True, "off": False, "false": False, "no": False, "0": False}
_KEYS = {
    "c1": float,
    "c2": float,
    "c3": float,
    "class": ClassSpec.parse,
    "channel": ChannelKind.parse,
    "gamma": float,
    "tmax": float,
    "samples": int,
    "lindblad": lambda v: _BOOL[v.lower()],
    "grid_n": int,
    "out": str,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse flat ``key=value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower().replace("-", "_")
        if key not in _KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _KEYS[key](value)
        except (ValueError, KeyError, ConfigError) as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key}: {value!r} ({exc})") from None
    return values


def _flag_values(args: argparse.Namespace) -> dict:
    names = {"c1": "c1", "c2": "c2", "c3": "c3", "class_": "class", "channel": "channel", "gamma": "gamma",
             "tmax": "tmax", "samples": "samples", "lindblad": "lindblad", "grid_n": "grid_n", "out": "out"}
    out = {}
    for attr, key in names.items():
        value = getattr(args, attr, None)
        if value is None:
            continue
        try:
            out[key] = _KEYS[key](value) if isinstance(value, str) and key not in ("out",) else value
        except (ValueError, KeyError) as exc:
            raise ConfigError(f"--{key.replace('_', '-')}: bad value {value!r} ({exc})") from None
    return out


def build_config(args: argparse.Namespace, defaults: Optional[dict] = None) -> tuple[RunConfig, Optional[str]]:
    values = dict(defaults or {})
    if getattr(args, "config", None):
        path = Path(args.config)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from None
        values.update(parse_config_text(text, str(path)))
    values.update(_flag_values(args))

    c_keys = [k for k in ("c1", "c2", "c3") if k in values]
    if c_keys and len(c_keys) != 3:
        missing = sorted({"c1", "c2", "c3"} - set(c_keys))
        raise ConfigError(f"initial vector incomplete: missing {', '.join(missing)}")
    cfg = RunConfig(
        c=tuple(values[k] for k in ("c1", "c2", "c3")) if c_keys else None,
        class_spec=values.get("class"),
        channel=values.get("channel"),
        gamma=values.get("gamma", 1.0),
        t_max=values.get("tmax", 1.0),
        samples=values.get("samples", 256),
        lindblad=values.get("lindblad", False),
        grid_n=values.get("grid_n", 0),
    )
    cfg.validate()
    return cfg, values.get("out")


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value config file; flags override it")
    p.add_argument("--c1")
    p.add_argument("--c2")
    p.add_argument("--c3")
    p.add_argument("--class", dest="class_", metavar="CHANNEL:SIGN:KAPPA", help="transition-class state, e.g. phase:+:0.6")
    p.add_argument("--channel", help="phase, bit or bitphase")
    p.add_argument("--gamma", help="decoherence rate (default 1)")
    p.add_argument("--tmax", help="end of the time grid in units of 1/gamma (default 1)")
    p.add_argument("--samples", help="number of time samples (default 256)")
    p.add_argument("--lindblad", help="on/off: cross-check against RK4 integration")
    p.add_argument("--grid-n", dest="grid_n", help="measurement-optimizer grid size; 0 disables the check")


def cmd_evolve(args: argparse.Namespace) -> int:
    cfg, out = build_config(args)
    traj = run_trajectory(cfg)
    if out and out != "-":
        write_csv(traj, out)
    else:
        write_csv(traj, sys.stdout)
    return EXIT_OK


def cmd_transition(args: argparse.Namespace) -> int:
    cfg, _ = build_config(args)
    state = cfg.initial_state()
    ch = cfg.channel_spec
    is_class = class_params_of(state, ch.kind) is not None
    label = "sudden transition" if is_class else "chi-crossing time"
    t_bar = transition_time(state, ch)
    t_s = sudden_death_time(state, ch)
    print(f"state c=({state.c1:.9g}, {state.c2:.9g}, {state.c3:.9g}) channel={ch.kind.short_name} gamma={ch.gamma:g}")
    print(f"{label} gamma_t: " + ("none" if t_bar is None else f"{t_bar * ch.gamma:.9f}"))
    print("entanglement sudden death gamma_t: " + ("none" if t_s is None else f"{t_s * ch.gamma:.9f}"))
    if cfg.samples >= 16:
        est = detect_transition(run_trajectory(cfg))
        if est is None:
            print("detected kink: none")
        else:
            print(f"detected kink gamma_t: {est.gamma_t:.9f} +- {est.uncertainty:.9f}")
    return EXIT_OK


def cmd_fig(args: argparse.Namespace) -> int:
    for path in reproduce_figure(args.id, args.outdir):
        print(path)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    from .validation import validate

    if args.n < 1:
        print("corrdyn validate: error: --n must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    report = validate(args.seed, args.n)
    sys.stdout.write(report.text())
    return EXIT_OK if report.passed else EXIT_VALIDATION


def cmd_report(args: argparse.Namespace) -> int:
    cfg, _ = build_config(args, defaults={})
    report = full_report(cfg.initial_state())
    for key, value in report.as_dict().items():
        print(f"{key}={'absent' if value is None else format(value, '.9f')}")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="corrdyn", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"corrdyn {__version__} ({BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("evolve", help="write a correlation trajectory as CSV")
    _add_run_flags(p)
    p.add_argument("--out", help="output CSV path (default stdout)")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("transition", help="report transition and sudden-death times")
    _add_run_flags(p)
    p.set_defaults(func=cmd_transition)

    p = sub.add_parser("fig", help="write the data behind a figure as CSV")
    p.add_argument("--id", type=int, required=True, choices=(1, 2, 3))
    p.add_argument("--outdir", default=".")
    p.set_defaults(func=cmd_fig)

    p = sub.add_parser("validate", help="run the seeded oracle-equivalence suites")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--n", type=int, default=200)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("report", help="all correlation measures of a single state")
    _add_run_flags(p)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except NonPhysical as exc:
        print(f"corrdyn: nonphysical input: {exc}", file=sys.stderr)
        return EXIT_NONPHYSICAL
    except (CorrdynError, ValueError) as exc:
        print(f"corrdyn: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
