"""Command-line front end: ``generate``, ``evaluate``, ``sweep`` and ``preset``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from pathlib import Path
from typing import Any, Sequence

from spectrum_dsa import __version__
from spectrum_dsa.allocation import allocate
from spectrum_dsa.conflict import build_conflict_graph
from spectrum_dsa.generator import RNG_NAME, GenParams, generate_scenario, make_rng
from spectrum_dsa.harness import (
    PRESETS,
    SWEEP_VARIABLES,
    SweepAborted,
    SweepSpec,
    run_sweep,
)
from spectrum_dsa.metrics import METRIC_NAMES, evaluate
from spectrum_dsa.model import Region, Scenario
from spectrum_dsa.sorting import ALL_STRATEGIES, SortStrategy, sort_transmitters

SEED_ENV = "SPECTRUM_DSA_SEED"

log = logging.getLogger("spectrum_dsa")


class CliError(Exception):
    """Runtime failure reported with exit status 1."""


def parse_range(text: str, kind: type = int) -> tuple[Any, Any]:
    """``lo:hi`` (inclusive) or a single value meaning ``lo == hi``."""
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return kind(lo), kind(hi)
        v = kind(text)
        return v, v
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected VALUE or LO:HI, got {text!r}") from None


def parse_values(text: str) -> tuple[int, ...]:
    """Sweep values: ``lo:hi`` inclusive integer range or a comma list."""
    try:
        if ":" in text:
            lo, hi = (int(p) for p in text.split(":", 1))
            return tuple(range(lo, hi + 1))
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI or a comma list, got {text!r}") from None


def _real_range(text: str) -> tuple[float, float]:
    return parse_range(text, float)


def _int_range(text: str) -> tuple[int, int]:
    return parse_range(text, int)


def _strategy(text: str) -> SortStrategy:
    try:
        return SortStrategy.parse(text)
    except ValueError as err:
        raise argparse.ArgumentTypeError(str(err)) from None


def _strategy_list(text: str) -> tuple[SortStrategy, ...]:
    return tuple(_strategy(t) for t in text.split(",") if t.strip())


def _metric_list(text: str) -> tuple[str, ...]:
    ms = tuple(m.strip().lower() for m in text.split(",") if m.strip())
    bad = [m for m in ms if m not in METRIC_NAMES]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown metric(s) {bad}; choose from {METRIC_NAMES}")
    return ms


def _seed(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def resolve_seed(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return _seed(env)
        except (ValueError, argparse.ArgumentTypeError):
            raise CliError(f"{SEED_ENV}={env!r} is not a valid seed") from None
    return 0


def write_atomic(path: Path, text: str) -> None:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as err:
        raise CliError(f"cannot write {path}: {err}") from err


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        write_atomic(Path(path), text)


def _add_gen_flags(p: argparse.ArgumentParser) -> None:
    # unset flags fall back to the config file, then to the Table 1 baseline
    p.add_argument("--n", type=int, default=None, help="number of transmitters (default 25)")
    p.add_argument("--f", type=int, default=None, help="total bandwidth units (default 10)")
    p.add_argument("--b", type=_int_range, default=None, metavar="LO:HI",
                   help="integer bandwidth demand law or fixed value (default 1:3)")
    p.add_argument("--r", type=_real_range, default=None, metavar="LO:HI",
                   help="coverage radius law in meters or fixed value (default 8:17)")
    p.add_argument("--width", type=float, default=None, help="region width in meters (default 100)")
    p.add_argument("--height", type=float, default=None, help="region height in meters (default 100)")


def _gen_params(args: argparse.Namespace, base: GenParams, seed: int) -> GenParams:
    changes: dict[str, Any] = {"seed": seed}
    for flag, name in (("n", "n"), ("f", "f"), ("b", "bandwidth_law"), ("r", "radius_law")):
        if getattr(args, flag) is not None:
            changes[name] = getattr(args, flag)
    if args.width is not None or args.height is not None:
        w = args.width if args.width is not None else base.region.width
        h = args.height if args.height is not None else base.region.height
        changes["region"] = Region(0.0, w, 0.0, h)
    return base.with_(**changes)


def _load_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as err:
        raise CliError(f"cannot read {path}: {err}") from err
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise CliError(f"{path}: malformed JSON: {err}") from err


def cmd_generate(args: argparse.Namespace) -> int:
    base = GenParams()
    if args.config:
        base = GenParams.from_dict(_load_json(args.config))
    seed = args.seed if args.seed is not None else (base.seed if args.config else resolve_seed(None))
    params = _gen_params(args, base, seed)
    _emit(generate_scenario(params).to_json(), args.out)
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    try:
        scenario = Scenario.from_dict(_load_json(args.scenario))
    except ValueError as err:
        raise CliError(f"{args.scenario}: {err}") from err
    g = build_conflict_graph(scenario)
    rng = make_rng(resolve_seed(args.seed))
    order = sort_transmitters(scenario, g, args.strategy, rng)
    alloc = allocate(scenario, g, order)
    report = evaluate(scenario, alloc)
    alloc_csv = "id,start,end\n" + alloc.to_csv()
    if args.out:
        out = Path(args.out)
        write_atomic(out / "allocation.csv", alloc_csv)
        write_atomic(out / "metrics.json", report.to_json())
        if args.edges:
            write_atomic(out / "edges.csv", g.edges_csv())
    elif args.format == "csv":
        sys.stdout.write(alloc_csv)
    else:
        sys.stdout.write(report.to_json())
    return 0


def _check_out_dir(path: str) -> None:
    out = Path(path)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as err:
        raise CliError(f"cannot create output directory {out}: {err}") from err
    if not os.access(out, os.W_OK):
        raise CliError(f"output directory {out} is not writable")


def _write_sweep(result, args: argparse.Namespace, name: str) -> int:
    metrics = args.metric or None
    out = Path(args.out)
    if args.format == "json":
        write_atomic(out / f"{name}.json", result.to_json(metrics))
    else:
        write_atomic(out / f"{name}.csv", result.to_csv(metrics))
    write_atomic(out / f"{name}.meta.json", result.sidecar_json())
    log.info("wrote %s results to %s", name, out)
    return 0


def _run(spec: SweepSpec, workers: int | None):
    try:
        return run_sweep(spec, workers=workers)
    except SweepAborted as err:
        raise CliError(str(err)) from err


def cmd_sweep(args: argparse.Namespace) -> int:
    spec = SweepSpec.from_dict(_load_json(args.config)) if args.config else None
    base = spec.base if spec else GenParams()
    if args.seed is not None:
        seed = args.seed
    else:
        seed = spec.master_seed if spec else resolve_seed(None)
    variable = args.var or (spec.variable if spec else "none")
    values = args.values or (spec.values if spec else None)
    if values is None:
        if variable != "none":
            raise CliError("--values is required when sweeping a variable")
        values = (0,)
    spec = SweepSpec(
        base=_gen_params(args, base, 0),
        variable=variable,
        values=values,
        strategies=args.strategies or (spec.strategies if spec else ALL_STRATEGIES),
        runs=args.runs or (spec.runs if spec else 50),
        master_seed=seed,
        stream=spec.stream if spec else "sweep",
    )
    _check_out_dir(args.out)
    return _write_sweep(_run(spec, args.workers), args, args.name)


def cmd_preset(args: argparse.Namespace) -> int:
    preset = PRESETS[args.name]
    spec = preset.spec(master_seed=resolve_seed(args.seed), runs=args.runs)
    _check_out_dir(args.out)
    return _write_sweep(_run(spec, args.workers), args, preset.name)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectrum-dsa",
        description="Greedy contiguous spectrum allocation simulator.",
    )
    parser.add_argument("--version", action="version",
                        version=f"spectrum-dsa {__version__}; rng {RNG_NAME}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a random scenario as JSON")
    _add_gen_flags(p)
    p.add_argument("--seed", type=_seed, default=None, help=f"default: ${SEED_ENV} or 0")
    p.add_argument("--config", help="JSON file with generation parameters")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("evaluate", help="allocate one scenario with one strategy")
    p.add_argument("scenario", help="scenario JSON file, or - for stdin")
    p.add_argument("--strategy", type=_strategy, required=True,
                   metavar="{" + ",".join(s.value for s in SortStrategy) + "}")
    p.add_argument("--seed", type=_seed, default=None, help="seed for the random strategy")
    p.add_argument("--out", help="directory for allocation.csv and metrics.json")
    p.add_argument("--edges", action="store_true", help="also write the conflict edge list")
    p.add_argument("--format", choices=("csv", "json"), default="json",
                   help="stdout payload when --out is absent: allocation csv or metrics json")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep", help="Monte-Carlo sweep of one generation parameter")
    p.add_argument("--var", choices=SWEEP_VARIABLES, default=None)
    p.add_argument("--values", type=parse_values, default=None, metavar="LO:HI|V1,V2,...")
    _add_gen_flags(p)
    p.add_argument("--strategies", type=_strategy_list, default=None)
    p.add_argument("--config", help="JSON file with a sweep specification")
    p.add_argument("--name", default="sweep", help="output file stem")
    _add_run_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("preset", help="run a sweep with a figure's parameters")
    p.add_argument("name", choices=sorted(PRESETS))
    _add_run_flags(p)
    p.set_defaults(func=cmd_preset)
    return parser


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=_seed, default=None, help=f"master seed (default: ${SEED_ENV} or 0)")
    p.add_argument("--runs", type=_positive, default=None, help="trials per sweep value")
    p.add_argument("--workers", type=_positive, default=None,
                   help="worker processes (default: available cores; results do not depend on it)")
    p.add_argument("--metric", type=_metric_list, default=None, help="comma list of metrics to export")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except CliError as err:
        print(f"spectrum-dsa: error: {err}", file=sys.stderr)
        return 1
    except ValueError as err:
        # invalid parameter combinations caught by the domain types
        parser.error(str(err))
        return 2


if __name__ == "__main__":
    sys.exit(main())
