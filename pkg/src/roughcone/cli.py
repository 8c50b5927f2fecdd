"""Batch front door: parse a config, dispatch, report, trace.

Exit status: 0 when every requested check holds/passes, 1 when any is
refuted or fails, 2 when the only non-passing outcomes are
inconclusive, 3 for configuration or input errors, 4 for I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__, kernels
from .analysis import (
    is_bounded,
    is_r_cauchy,
    is_r_convergent_to,
    rough_limit_set,
)
from .cones import validate_cone
from .config import RunConfig, parse_config
from .errors import ConfigError, InputError, RoughconeError
from .metrics import validate_metric
from .theorems import check_thm_3_3, check_thm_3_4, check_thm_3_5, check_thm_3_6, counterexample_search

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_CONFIG = 3
EXIT_IO = 4


def _fmt(x) -> str:
    """Render a float with 17 significant digits (bit-faithful round trip)."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return "%.17g" % float(x)


@dataclass
class TraceTable:
    """Columnar trace data; written as CSV with one header line."""

    header: list[str]
    columns: list[np.ndarray]  # one array per column, equal lengths

    def write(self, fh):
        fh.write(",".join(self.header) + "\n")
        if not self.columns:
            return
        n = len(self.columns[0])
        ints = [np.issubdtype(c.dtype, np.integer) for c in self.columns]
        for i in range(n):
            parts = [
                str(int(c[i])) if isint else _fmt(c[i])
                for c, isint in zip(self.columns, ints)
            ]
            fh.write(",".join(parts) + "\n")


@dataclass
class RunReport:
    """Everything a run produced, reproducible modulo the wall clock."""

    command: str
    seed: int
    config: dict
    results: list[dict]
    wallclock_s: float
    tool_version: str = __version__
    kernel_backend: str = kernels.BACKEND
    trace: TraceTable | None = field(default=None, compare=False, repr=False)

    def to_dict(self):
        return {
            "schema_version": 1,
            "tool_version": self.tool_version,
            "kernel_backend": self.kernel_backend,
            "command": self.command,
            "seed": self.seed,
            "config": self.config,
            "results": self.results,
            "wallclock_s": self.wallclock_s,
        }

    def exit_status(self) -> int:
        statuses = [r["status"] for r in self.results]
        if any(s == "fail" for s in statuses):
            return EXIT_FAIL
        if any(s == "inconclusive" for s in statuses):
            return EXIT_INCONCLUSIVE
        return EXIT_PASS


def _verdict_status(v) -> str:
    return {"holds": "pass", "refuted": "fail"}.get(v.outcome, "inconclusive")


def _pair_trace(spec, seq, roughness, schedule) -> TraceTable:
    e = schedule.resolve_witness(spec)
    r = roughness.vector(spec.dim)
    n = schedule.horizon
    if seq.length is not None:
        n = min(n, seq.length)
    pts = seq.prefix(n)
    D = spec.distance_tensor(pts)
    iu, ju = np.triu_indices(n, k=1)
    d = D[iu, ju]  # (P, m)
    base = r[None, :] - d
    tstar = spec.cone.crit_thresholds(base, e)
    header = ["i", "j"] + ["d_%d" % c for c in range(spec.dim)]
    cols = [iu + 1, ju + 1] + [d[:, c] for c in range(spec.dim)]
    for t in schedule.scalars:
        header.append("pass_t%s" % _fmt(t))
        cols.append((t > tstar).astype(np.intp))
    return TraceTable(header=header, columns=cols)


def _point_trace(spec, seq, x, roughness, schedule) -> TraceTable:
    e = schedule.resolve_witness(spec)
    r = roughness.vector(spec.dim)
    n = schedule.horizon
    if seq.length is not None:
        n = min(n, seq.length)
    pts = seq.prefix(n)
    d = spec.distances_to(pts, x)
    tstar = spec.cone.crit_thresholds(r[None, :] - d, e)
    header = ["n"] + ["d_%d" % c for c in range(spec.dim)]
    cols = [np.arange(1, n + 1)] + [d[:, c] for c in range(spec.dim)]
    for t in schedule.scalars:
        header.append("pass_t%s" % _fmt(t))
        cols.append((t > tstar).astype(np.intp))
    return TraceTable(header=header, columns=cols)


def _limset_trace(grid, members) -> TraceTable:
    q = len(grid[0])
    member_keys = {tuple(map(float, m)) for m in members}
    flags = np.array(
        [1 if tuple(map(float, g)) in member_keys else 0 for g in grid],
        dtype=np.intp,
    )
    arr = np.asarray(grid, dtype=np.float64)
    header = ["x_%d" % c for c in range(q)] + ["member"]
    cols = [arr[:, c] for c in range(q)] + [flags]
    return TraceTable(header=header, columns=cols)


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def run(cfg: RunConfig) -> RunReport:
    """Execute a parsed config and assemble the report."""
    t0 = time.perf_counter()
    results = []
    trace = None

    if cfg.command == "validate-cone":
        report = validate_cone(cfg.cone, sampler_seed=cfg.seed, trials=cfg.trials)
        results.append(
            {
                "name": "validate-cone",
                "status": "pass" if report.passed else "fail",
                "data": report.to_dict(),
            }
        )
    elif cfg.command == "validate-metric":
        sample = cfg.sample
        if sample is None:
            space = cfg.space.space
            if hasattr(space, "n"):
                sample = list(range(space.n))
            else:
                rng = np.random.default_rng(cfg.seed)
                sample = list(rng.normal(size=(8, space.q)))
                sample.append(sample[0].copy())
        else:
            space = cfg.space.space
            sample = [space.as_point(p) for p in sample]
        report = validate_metric(cfg.space, sample)
        results.append(
            {
                "name": "validate-metric",
                "status": "pass" if report.passed else "fail",
                "data": report.to_dict(),
            }
        )
    elif cfg.command == "analyze":
        for check in cfg.checks:
            if check == "cauchy":
                v = is_r_cauchy(cfg.space, cfg.sequence, cfg.roughness,
                                cfg.schedule)
                results.append(
                    {"name": "cauchy", "status": _verdict_status(v),
                     "data": v.to_dict()}
                )
                if trace is None:
                    trace = _pair_trace(cfg.space, cfg.sequence, cfg.roughness,
                                        cfg.schedule)
            elif check == "converge":
                v = is_r_convergent_to(cfg.space, cfg.sequence, cfg.limit,
                                       cfg.roughness, cfg.schedule)
                results.append(
                    {"name": "converge", "status": _verdict_status(v),
                     "data": v.to_dict()}
                )
                if trace is None:
                    trace = _point_trace(cfg.space, cfg.sequence, cfg.limit,
                                         cfg.roughness, cfg.schedule)
            else:
                bw = is_bounded(cfg.space, cfg.sequence, cfg.witness_horizon,
                                cfg.margin)
                results.append(
                    {"name": "bounded", "status": "pass", "data": bw.to_dict()}
                )
    elif cfg.command == "limset":
        members = rough_limit_set(cfg.space, cfg.sequence, cfg.roughness,
                                  cfg.schedule, cfg.grid)
        results.append(
            {
                "name": "limset",
                "status": "pass",
                "data": {
                    "grid_size": len(cfg.grid),
                    "members": [list(map(float, m)) for m in members],
                },
            }
        )
        trace = _limset_trace(cfg.grid, members)
    elif cfg.command == "theorems":
        params = cfg.theorems
        for tid in params["ids"]:
            report = _run_theorem(tid, cfg, params)
            if report.counterexamples > 0:
                status = "fail"
            elif report.inconclusive > 0:
                status = "inconclusive"
            else:
                status = "pass"
            results.append(
                {"name": "theorem-%s" % tid, "status": status,
                 "data": report.to_dict()}
            )
    else:  # search
        params = cfg.search
        report = counterexample_search(
            params["theorem"],
            budget=params["budget"],
            seed=cfg.seed,
            space=cfg.space,
            schedule=params["schedule"],
            allow_empirical=params["allow_empirical"],
            spawn_offset=params["spawn_offset"],
        )
        status = "fail" if report.counterexamples > 0 else "pass"
        results.append(
            {"name": "search-%s" % params["theorem"], "status": status,
             "data": report.to_dict()}
        )

    return RunReport(
        command=cfg.command,
        seed=cfg.seed,
        config=cfg.resolved,
        results=results,
        wallclock_s=time.perf_counter() - t0,
        trace=trace,
    )


def _run_theorem(tid, cfg, params):
    common = {
        "trials": params["trials"],
        "seed": cfg.seed,
        "space": cfg.space,
        "schedule": params["schedule"],
        "include_controls": params["include_controls"],
        "spawn_offset": params["spawn_offset"],
    }
    if tid == "T33":
        return check_thm_3_3(roughness=cfg.roughness, **common)
    if tid == "T34":
        return check_thm_3_4(
            witness_horizon=params["witness_horizon"],
            verification_horizon=params["verification_horizon"],
            eta=params["eta"],
            radius=params["radius"],
            step_bound=params["step"],
            **common,
        )
    if tid == "T35":
        return check_thm_3_5(
            roughness=cfg.roughness,
            allow_empirical=params["allow_empirical"],
            **common,
        )
    return check_thm_3_6(
        roughness=cfg.roughness,
        allow_empirical=params["allow_empirical"],
        **common,
    )


def emit_trace(report: RunReport, path: str) -> None:
    """Write the run's trace table (pairs, per-index, or grid rows) as CSV."""
    if report.trace is None:
        raise InputError("this run produced no trace data")
    with open(path, "w", encoding="utf-8") as fh:
        report.trace.write(fh)


def write_report(report: RunReport, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def _summary(report: RunReport, stream) -> None:
    for r in report.results:
        line = "%-24s %s" % (r["name"], r["status"].upper())
        data = r["data"]
        if "outcome" in data:
            line += "  (outcome: %s)" % data["outcome"]
        if "counterexamples" in data:
            line += "  (confirmed: %d, premise-violated: %d, vacuous: %d, " \
                    "inconclusive: %d, counterexamples: %d)" % (
                        data["confirmed"], data["premise_violated"],
                        data["vacuous"], data["inconclusive"],
                        data["counterexamples"])
        if "members" in data:
            line += "  (%d of %d grid points)" % (
                len(data["members"]), data["grid_size"])
        print(line, file=stream)
    print("exit status %d  (%.3f s)" % (report.exit_status(),
                                        report.wallclock_s), file=stream)


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print("%s: error: %s" % (self.prog, message), file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="roughcone",
        description="Cone metric spaces: validation, rough convergence "
                    "analysis, and theorem property checks.",
    )
    parser.add_argument("--version", action="version",
                        version="roughcone %s" % __version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, needs_config in (
        ("validate-cone", True),
        ("validate-metric", True),
        ("analyze", True),
        ("limset", True),
        ("theorems", False),
        ("search", True),
    ):
        p = sub.add_parser(name)
        p.add_argument("--config", required=needs_config,
                       help="path to the JSON config document")
        p.add_argument("--out", help="write the JSON report here")
        p.add_argument("--trace", help="write the CSV trace here")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--horizon", type=int, help="override the horizon")
        p.add_argument("--quiet", action="store_true", default=None,
                       help="suppress the stdout summary")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    overrides = {
        "seed": args.seed,
        "horizon": args.horizon,
        "out": args.out,
        "trace": args.trace,
        "quiet": args.quiet,
    }
    try:
        if args.config:
            try:
                with open(args.config, "r", encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                print("roughcone: cannot read config: %s" % exc, file=sys.stderr)
                return EXIT_IO
        else:
            text = json.dumps({"schema_version": 1, "command": args.command})
        cfg = parse_config(text, command=args.command, overrides=overrides)
        report = run(cfg)
    except ConfigError as exc:
        print("roughcone: config error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    except InputError as exc:
        print("roughcone: input error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    except RoughconeError as exc:
        print("roughcone: error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG

    try:
        if cfg.out:
            write_report(report, cfg.out)
        if cfg.trace:
            emit_trace(report, cfg.trace)
    except InputError as exc:
        print("roughcone: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print("roughcone: cannot write output: %s" % exc, file=sys.stderr)
        return EXIT_IO

    if not cfg.quiet:
        _summary(report, sys.stdout)
    return report.exit_status()


if __name__ == "__main__":
    sys.exit(main())
