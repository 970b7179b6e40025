"""
Command-line interface.

Every subcommand prints JSON on stdout or writes a CSV/JSON artifact; logs go
to stderr. Library and argument errors exit with status 2 and a JSON error
object on stderr, a failing property suite exits with status 1.
"""

import argparse
import asyncio
import json
import logging
import math
import sys
from typing import Any, Callable, Dict, List, NoReturn, Optional, Sequence

import numpy as np
from pydantic import ValidationError

from . import __version__
from .adjoint import switching_trace_rows
from .artifacts import (
    dump_json,
    write_curves_csv,
    write_front_csv,
    write_json,
    write_loci_csv,
    write_switching_trace_csv,
    write_trajectory_csv,
)
from .config import Settings, get_settings
from .exceptions import BlochSynthesisError, InvalidArguments
from .models import SOUTH, BlochPoint, angular_distance
from .services.engine import SynthesisEngine, parse_family, parse_point
from .verification import SUITES, run_suite

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise InvalidArguments(message, {"usage": self.format_usage().strip()})


def _params_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group("system parameters (radians)")
    group.add_argument("--alpha", type=float, help="normalized strength in (0, pi/4)")
    group.add_argument("--beta", type=float, help="bound ratio angle, default pi/4")
    group.add_argument("--E", dest="E", type=float, help="energy half-gap")
    group.add_argument("--M1", dest="M1", type=float, help="bound of the first field")
    group.add_argument("--M2", dest="M2", type=float, help="bound of the second field")
    return parent


def _common_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--seed", type=int, default=None, help="seed for randomized sampling")
    parent.add_argument("--log-level", default=None, help="override BLOCH_LOG_LEVEL")
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bloch-synthesis", description="Time-optimal control on the Bloch sphere")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)
    common = [_common_parent()]
    params = common + [_params_parent()]

    synth = commands.add_parser("synth", parents=params, help="solve the synthesis for a target")
    synth.add_argument("--target", required=True, help="x,y,z")
    synth.add_argument("--tol", type=float)
    synth.add_argument("--exclusion", type=float, help="south-pole disk radius")
    synth.add_argument("--out")

    extremal = commands.add_parser("extremal", parents=params, help="trajectory CSV of an extremal")
    extremal.add_argument("--family", default="pp")
    extremal.add_argument("--s", type=float, required=True)
    extremal.add_argument("--time", type=float, required=True)
    extremal.add_argument("--dt", type=float, default=0.01)
    extremal.add_argument("--out", required=True)

    trace = commands.add_parser("trace", parents=params, help="switching functions of an extremal")
    trace.add_argument("--theta", type=float, required=True)
    trace.add_argument("--horizon", type=float, default=8.0 * math.pi)
    trace.add_argument("--dt", type=float, default=0.05)
    trace.add_argument("--out", required=True)

    front = commands.add_parser("front", parents=params, help="front of extremals at a time")
    front.add_argument("--time", type=float, required=True)
    front.add_argument("--samples", type=int, default=720)
    front.add_argument("--out", required=True)

    curves = commands.add_parser("curves", parents=params, help="switching curves with refraction")
    curves.add_argument("--k", type=int, nargs="+", required=True)
    curves.add_argument("--samples", type=int, default=100)
    curves.add_argument("--family", default="pp")
    curves.add_argument("--out", required=True)

    loci = commands.add_parser("loci", parents=params, help="singular loci")
    loci.add_argument("--samples", type=int, default=360)
    loci.add_argument("--out", required=True)

    sub = commands.add_parser("suboptimal", parents=params, help="S1/S2 spin flips")
    sub.add_argument("--strategy", choices=["s1", "s2"], default="s2")
    sub.add_argument("--start", default="pm")
    sub.add_argument("--out")

    compare = commands.add_parser("compare", parents=common, help="strategy over circle-law time")
    compare.add_argument("--alpha", type=float, required=True)
    compare.add_argument("--strategy", choices=["s1", "s2"], default="s1")

    oracle = commands.add_parser("oracle", parents=params, help="brute-force minimum-time bracket")
    oracle.add_argument("--target", action="append", default=[], help="x,y,z (repeatable)")
    oracle.add_argument("--random", type=int, default=0, help="add seeded random targets")
    oracle.add_argument("--dt", type=float, default=0.02)
    oracle.add_argument("--eps", type=float, default=0.05)
    oracle.add_argument("--out")

    verify = commands.add_parser("verify", parents=common, help="run a property suite")
    verify.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    verify.add_argument("--out")

    commands.add_parser("serve", parents=common, help="run the MCP server on stdio")
    return parser


def _engine(args: argparse.Namespace, settings: Settings) -> SynthesisEngine:
    return SynthesisEngine.from_arguments(
        settings, alpha=args.alpha, beta=args.beta, E=args.E, M1=args.M1, M2=args.M2
    )


def _emit(payload: Any, out: Optional[str]) -> None:
    if out:
        write_json(out, payload)
    else:
        print(dump_json(payload))


def random_targets(engine: SynthesisEngine, count: int, seed: int) -> List[BlochPoint]:
    """Uniform points on the sphere outside the south-pole exclusion disk."""
    rng = np.random.default_rng(seed)
    radius = engine.params.exclusion_radius(engine.settings.exclusion_factor)
    targets: List[BlochPoint] = []
    while len(targets) < count:
        v = rng.normal(size=3)
        v /= np.linalg.norm(v)
        if angular_distance(v, SOUTH.as_array()) > radius:
            targets.append(BlochPoint.from_array(v))
    return targets


def cmd_synth(args: argparse.Namespace, settings: Settings) -> int:
    engine = _engine(args, settings)
    factor = None if args.exclusion is None else args.exclusion / engine.params.alpha
    _emit(engine.solve(parse_point(args.target), tol=args.tol, exclusion_factor=factor), args.out)
    return 0


def cmd_extremal(args: argparse.Namespace, settings: Settings) -> int:
    engine = _engine(args, settings)
    trajectory = engine.extremal_trajectory(parse_family(args.family), args.s, args.time, args.dt)
    write_trajectory_csv(args.out, trajectory)
    return 0


def cmd_trace(args: argparse.Namespace, settings: Settings) -> int:
    engine = _engine(args, settings)
    rows = switching_trace_rows(args.theta, args.horizon, engine.params, args.dt)
    write_switching_trace_csv(args.out, rows)
    return 0


def cmd_front(args: argparse.Namespace, settings: Settings) -> int:
    report = _engine(args, settings).front(args.time, args.samples)
    write_front_csv(args.out, report)
    summary = {
        "time": report.time,
        "samples": len(report.samples),
        "intersections": len(report.intersections),
    }
    print(json.dumps(summary))
    return 0


def cmd_curves(args: argparse.Namespace, settings: Settings) -> int:
    engine = _engine(args, settings)
    family = parse_family(args.family)
    rows = [pair for k in args.k for pair in engine.curve_samples(k, args.samples, family)]
    write_curves_csv(args.out, rows)
    return 0


def cmd_loci(args: argparse.Namespace, settings: Settings) -> int:
    write_loci_csv(args.out, _engine(args, settings).loci(args.samples))
    return 0


def cmd_suboptimal(args: argparse.Namespace, settings: Settings) -> int:
    report = _engine(args, settings).suboptimal(args.strategy, parse_family(args.start))
    _emit(report, args.out)
    return 0


def cmd_compare(args: argparse.Namespace, settings: Settings) -> int:
    print(dump_json(SynthesisEngine.compare(args.alpha, args.strategy)))
    return 0


def cmd_oracle(args: argparse.Namespace, settings: Settings) -> int:
    engine = _engine(args, settings)
    targets = [parse_point(t) for t in args.target]
    seed = settings.seed if args.seed is None else args.seed
    targets += random_targets(engine, args.random, seed)
    if not targets:
        raise InvalidArguments("oracle needs --target or --random")
    results = engine.oracle(targets, args.dt, args.eps)
    payload: Any = results[0] if len(results) == 1 else [r.model_dump(mode="json") for r in results]
    _emit(payload, args.out)
    return 0


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    seed = settings.seed if args.seed is None else args.seed
    report = run_suite(args.suite, seed)
    _emit(report, args.out)
    return 0 if report.passed else 1


def cmd_serve(args: argparse.Namespace, settings: Settings) -> int:
    from .server import BlochSynthesisServer

    asyncio.run(BlochSynthesisServer(settings).run())
    return 0


COMMANDS: Dict[str, Callable[[argparse.Namespace, Settings], int]] = {
    "synth": cmd_synth,
    "extremal": cmd_extremal,
    "trace": cmd_trace,
    "front": cmd_front,
    "curves": cmd_curves,
    "loci": cmd_loci,
    "suboptimal": cmd_suboptimal,
    "compare": cmd_compare,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
    "serve": cmd_serve,
}


def configure_logging(settings: Settings, override: Optional[str] = None) -> None:
    level = "DEBUG" if settings.debug else (override or settings.log_level)
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _fail(error: BlochSynthesisError) -> int:
    logger.error(f"{error.code}: {error.message}")
    print(json.dumps(error.to_dict()), file=sys.stderr)
    return 2


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse ``argv`` and run one subcommand.

    Returns:
        0 on success, 1 when a property suite fails, 2 on bad arguments or
        library errors
    """
    settings = get_settings()
    try:
        args = build_parser().parse_args(argv)
    except InvalidArguments as e:
        return _fail(e)
    configure_logging(settings, args.log_level)
    try:
        return COMMANDS[args.command](args, settings)
    except BlochSynthesisError as e:
        return _fail(e)
    except ValidationError as e:
        messages = [err["msg"] for err in e.errors()]
        return _fail(InvalidArguments("invalid arguments", {"errors": messages}))
    except ValueError as e:
        return _fail(InvalidArguments(str(e)))


def main() -> int:
    return run(sys.argv[1:])
