"""Run configuration: a strict JSON schema mapped onto library objects.

A config document is a single JSON object with a mandatory integer
`schema_version` (currently 1).  Unknown keys are rejected everywhere,
range violations name the offending field, and defaults are plain
values, so applying them is order-independent and idempotent:
parse(render(parse(text))) changes nothing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .analysis import EpsilonSchedule, Roughness
from .cones import Cone, NormSpec, Orthant, Polyhedral, ProductCone, SecondOrder
from .errors import ConfigError, InputError
from .metrics import ConeMetricSpec, builtin_space
from .sequences import (
    BoundedWalk,
    Decay,
    OscDecay,
    Oscillating,
    SequenceSpec,
    TableSequence,
)
from .theorems import THEOREM_IDS

SCHEMA_VERSION = 1

COMMANDS = (
    "validate-cone",
    "validate-metric",
    "analyze",
    "limset",
    "theorems",
    "search",
)

DEFAULT_TRIALS = 1000


class _Section:
    """Key-by-key reader that rejects leftovers and names bad fields."""

    def __init__(self, data, path):
        if not isinstance(data, dict):
            raise ConfigError("%s: expected an object" % path)
        self.data = dict(data)
        self.path = path

    def take(self, key, default=None, required=False):
        if key in self.data:
            return self.data.pop(key)
        if required:
            raise ConfigError("%s: missing required key '%s'" % (self.path, key))
        return default

    def subsection(self, key, required=False):
        raw = self.take(key, required=required)
        if raw is None:
            return None
        return _Section(raw, "%s.%s" % (self.path, key))

    def finish(self):
        if self.data:
            raise ConfigError(
                "%s: unknown keys %s" % (self.path, sorted(self.data))
            )

    def number(self, key, default=None, required=False, minimum=None,
               maximum=None, integer=False):
        v = self.take(key, default=default, required=required)
        if v is None:
            return None
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError("%s.%s: expected a number" % (self.path, key))
        if integer and int(v) != v:
            raise ConfigError("%s.%s: expected an integer" % (self.path, key))
        if minimum is not None and v < minimum:
            raise ConfigError(
                "%s.%s: value %r below minimum %r" % (self.path, key, v, minimum)
            )
        if maximum is not None and v > maximum:
            raise ConfigError(
                "%s.%s: value %r above maximum %r" % (self.path, key, v, maximum)
            )
        return int(v) if integer else float(v)

    def string(self, key, default=None, required=False, choices=None):
        v = self.take(key, default=default, required=required)
        if v is None:
            return None
        if not isinstance(v, str):
            raise ConfigError("%s.%s: expected a string" % (self.path, key))
        if choices is not None and v not in choices:
            raise ConfigError(
                "%s.%s: %r is not one of %s" % (self.path, key, v, sorted(choices))
            )
        return v

    def boolean(self, key, default=None):
        v = self.take(key, default=default)
        if v is None:
            return None
        if not isinstance(v, bool):
            raise ConfigError("%s.%s: expected a boolean" % (self.path, key))
        return v


def _vector(section, key, default=None, required=False):
    v = section.take(key, default=default, required=required)
    if v is None:
        return None
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim == 0:
        arr = arr[None]
    if arr.ndim != 1 or not np.all(np.isfinite(arr)):
        raise ConfigError(
            "%s.%s: expected a finite number vector" % (section.path, key)
        )
    return arr


# ---------------------------------------------------------------------------
# Component builders
# ---------------------------------------------------------------------------


def build_cone(data, path="cone") -> Cone:
    sec = _Section(data, path)
    kind = sec.string("kind", required=True,
                      choices=("orthant", "polyhedral", "second-order", "product"))
    try:
        if kind == "orthant":
            dim = sec.number("dim", required=True, integer=True, minimum=1)
            margin = sec.number("margin", default=0.0, minimum=0.0)
            cone = Orthant(dim, margin=margin)
        elif kind == "polyhedral":
            rows = sec.take("rows", required=True)
            margin = sec.number("margin", default=0.0, minimum=0.0)
            cone = Polyhedral(rows, margin=margin)
        elif kind == "second-order":
            dim = sec.number("dim", required=True, integer=True, minimum=2)
            margin = sec.number("margin", default=0.0, minimum=0.0)
            cone = SecondOrder(dim, margin=margin)
        else:
            factors = sec.take("factors", required=True)
            if not isinstance(factors, list) or not factors:
                raise ConfigError("%s.factors: expected a nonempty list" % path)
            cone = ProductCone(
                [build_cone(f, "%s.factors[%d]" % (path, i))
                 for i, f in enumerate(factors)]
            )
    except InputError as exc:
        raise ConfigError("%s: %s" % (path, exc)) from exc
    sec.finish()
    return cone


def build_norm(data, path="norm") -> NormSpec:
    sec = _Section(data, path)
    kind = sec.string("kind", required=True,
                      choices=("euclidean", "sup", "pnorm", "weighted-sup"))
    try:
        if kind == "pnorm":
            norm = NormSpec.pnorm(sec.number("p", required=True, minimum=1.0))
        elif kind == "weighted-sup":
            norm = NormSpec.weighted_sup(_vector(sec, "weights", required=True))
        else:
            norm = NormSpec(kind)
    except InputError as exc:
        raise ConfigError("%s: %s" % (path, exc)) from exc
    sec.finish()
    return norm


def build_space(data, path="space") -> ConeMetricSpec:
    sec = _Section(data, path)
    name = sec.string("name", required=True,
                      choices=("lifted", "two-component", "table"))
    try:
        if name == "lifted":
            kwargs = {
                "q": sec.number("q", default=1, integer=True, minimum=1),
                "base": sec.string("base", default="euclidean",
                                   choices=("euclidean", "sup", "discrete")),
                "witness": _vector(sec, "witness", default=(1.0, 1.0)),
            }
            cone_data = sec.take("cone")
            if cone_data is not None:
                kwargs["cone"] = build_cone(cone_data, path + ".cone")
            norm_data = sec.take("norm")
            if norm_data is not None:
                kwargs["norm"] = build_norm(norm_data, path + ".norm")
            spec = builtin_space("lifted", **kwargs)
        elif name == "two-component":
            alpha = sec.number("alpha", required=True, minimum=0.0)
            kwargs = {"alpha": alpha}
            norm_data = sec.take("norm")
            if norm_data is not None:
                kwargs["norm"] = build_norm(norm_data, path + ".norm")
            spec = builtin_space("two-component", **kwargs)
        else:
            values = sec.take("values", required=True)
            kwargs = {"values": values}
            cone_data = sec.take("cone")
            if cone_data is not None:
                kwargs["cone"] = build_cone(cone_data, path + ".cone")
            norm_data = sec.take("norm")
            if norm_data is not None:
                kwargs["norm"] = build_norm(norm_data, path + ".norm")
            spec = builtin_space("table", **kwargs)
    except InputError as exc:
        raise ConfigError("%s: %s" % (path, exc)) from exc
    sec.finish()
    return spec


def build_sequence(data, path="sequence") -> SequenceSpec:
    sec = _Section(data, path)
    family = sec.string(
        "family", required=True,
        choices=("oscillating", "decay", "osc-decay", "bounded-walk", "table"),
    )
    try:
        if family == "oscillating":
            seq = Oscillating(_vector(sec, "a", required=True),
                              _vector(sec, "b", required=True))
        elif family == "decay":
            seq = Decay(
                _vector(sec, "center", required=True),
                _vector(sec, "direction", required=True),
                amplitude=sec.number("amplitude", required=True),
                ratio=sec.number("ratio", required=True),
            )
        elif family == "osc-decay":
            amps = sec.take("amplitudes", required=True)
            seq = OscDecay(
                _vector(sec, "center", required=True),
                _vector(sec, "direction", required=True),
                amplitudes=amps,
            )
        elif family == "bounded-walk":
            seq = BoundedWalk(
                _vector(sec, "center", required=True),
                step_bound=sec.number("step", required=True),
                radius=sec.number("radius", required=True),
                seed=sec.number("seed", required=True, integer=True),
            )
        else:
            labeled = sec.boolean("labeled", default=False)
            seq = TableSequence(sec.take("points", required=True),
                                labeled=labeled)
    except InputError as exc:
        raise ConfigError("%s: %s" % (path, exc)) from exc
    sec.finish()
    return seq


def build_roughness(data, dim, path="roughness") -> Roughness:
    sec = _Section(data, path)
    cls = sec.string("class", required=True, choices=("zero", "interior"))
    try:
        if cls == "zero":
            sec.finish()
            return Roughness.zero(dim)
        value = _vector(sec, "value", required=True)
        sec.finish()
        return Roughness.interior(value)
    except InputError as exc:
        raise ConfigError("%s: %s" % (path, exc)) from exc


def build_schedule(data, path="schedule", horizon_override=None) -> EpsilonSchedule:
    kwargs = {}
    if data is not None:
        sec = _Section(data, path)
        scalars = sec.take("scalars")
        if scalars is not None:
            kwargs["scalars"] = tuple(float(t) for t in scalars)
        witness = _vector(sec, "witness")
        if witness is not None:
            kwargs["witness"] = tuple(float(w) for w in witness)
        horizon = sec.number("horizon", integer=True, minimum=2)
        if horizon is not None:
            kwargs["horizon"] = horizon
        window = sec.number("window", integer=True, minimum=1)
        if window is not None:
            kwargs["window"] = window
        sec.finish()
    if horizon_override is not None:
        kwargs["horizon"] = int(horizon_override)
    try:
        return EpsilonSchedule(**kwargs)
    except InputError as exc:
        raise ConfigError("%s: %s" % (path, exc)) from exc


def build_grid(data, q, path="grid"):
    sec = _Section(data, path)
    points = sec.take("points")
    if points is not None:
        sec.finish()
        grid = [np.atleast_1d(np.asarray(p, dtype=np.float64)) for p in points]
        if not grid or any(g.shape != (q,) for g in grid):
            raise ConfigError("%s.points: expected points of dimension %d" % (path, q))
        return grid
    start = sec.number("start", required=True)
    stop = sec.number("stop", required=True)
    step = sec.number("step", required=True)
    sec.finish()
    if step <= 0 or stop < start:
        raise ConfigError("%s: need step > 0 and stop >= start" % path)
    if q != 1:
        raise ConfigError("%s: start/stop/step grids are 1-D; list points instead" % path)
    count = int(round((stop - start) / step))
    return [np.array([start + k * step]) for k in range(count + 1)]


# ---------------------------------------------------------------------------
# RunConfig
# ---------------------------------------------------------------------------


@dataclass
class RunConfig:
    """A parsed, validated, fully defaulted run description."""

    command: str
    seed: int
    quiet: bool
    out: str | None
    trace: str | None
    resolved: dict
    space: ConeMetricSpec | None = None
    cone: Cone | None = None
    norm: NormSpec | None = None
    sequence: SequenceSpec | None = None
    roughness: Roughness | None = None
    schedule: EpsilonSchedule | None = None
    checks: tuple[str, ...] = ()
    limit: np.ndarray | None = None
    witness_horizon: int = 1000
    margin: float = 0.1
    trials: int = DEFAULT_TRIALS
    sample: list | None = None
    grid: list | None = None
    theorems: dict = field(default_factory=dict)
    search: dict = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, RunConfig):
            return NotImplemented
        return self.command == other.command and self.resolved == other.resolved


def parse_config(text: str, command: str | None = None,
                 overrides: dict | None = None) -> RunConfig:
    """Parse a JSON config document into a RunConfig.

    `command` is the CLI subcommand (must match the document's own
    `command` field when both are present); `overrides` carries CLI
    flags (seed, horizon, out, trace, quiet) that take precedence.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            "config syntax error at line %d column %d: %s"
            % (exc.lineno, exc.colno, exc.msg)
        ) from exc
    if not isinstance(data, dict):
        raise ConfigError("config: expected a JSON object")
    overrides = overrides or {}

    sec = _Section(data, "config")
    version = sec.number("schema_version", required=True, integer=True)
    if version != SCHEMA_VERSION:
        raise ConfigError(
            "config.schema_version: expected %d, got %d" % (SCHEMA_VERSION, version)
        )
    doc_command = sec.string("command", choices=COMMANDS)
    if command is not None and doc_command is not None and command != doc_command:
        raise ConfigError(
            "config.command: document says %r but the subcommand is %r"
            % (doc_command, command)
        )
    cmd = command or doc_command
    if cmd is None:
        raise ConfigError("config.command: no command given")

    seed = overrides.get("seed")
    if seed is None:
        seed = sec.number("seed", default=0, integer=True, minimum=0)
    else:
        sec.take("seed")
        if seed < 0:
            raise ConfigError("config.seed: value %r below minimum 0" % (seed,))
    quiet = overrides.get("quiet")
    if quiet is None:
        quiet = sec.boolean("quiet", default=False)
    else:
        sec.take("quiet")
    out = overrides.get("out") or sec.string("out")
    trace = overrides.get("trace") or sec.string("trace")
    horizon_override = overrides.get("horizon")

    cfg = RunConfig(command=cmd, seed=int(seed), quiet=bool(quiet), out=out,
                    trace=trace, resolved={})

    if cmd == "validate-cone":
        cone_data = sec.take("cone", required=True)
        cfg.cone = build_cone(cone_data)
        cfg.trials = sec.number("trials", default=DEFAULT_TRIALS, integer=True,
                                minimum=1)
    elif cmd == "validate-metric":
        cfg.space = build_space(sec.take("space", required=True))
        cfg.sample = sec.take("sample")
        if cfg.sample is not None and len(cfg.sample) < 3:
            raise ConfigError("config.sample: need at least 3 points")
    elif cmd == "analyze":
        cfg.space = build_space(sec.take("space", required=True))
        cfg.sequence = build_sequence(sec.take("sequence", required=True))
        rough_data = sec.take("roughness")
        cfg.roughness = (
            build_roughness(rough_data, cfg.space.dim)
            if rough_data is not None
            else Roughness.zero(cfg.space.dim)
        )
        cfg.schedule = build_schedule(sec.take("schedule"),
                                      horizon_override=horizon_override)
        checks = sec.take("checks", default=["cauchy"])
        if (not isinstance(checks, list) or not checks
                or any(c not in ("cauchy", "converge", "bounded") for c in checks)):
            raise ConfigError(
                "config.checks: expected a nonempty subset of "
                "['cauchy', 'converge', 'bounded']"
            )
        cfg.checks = tuple(checks)
        limit = _vector(sec, "limit")
        if "converge" in cfg.checks and limit is None:
            raise ConfigError("config.limit: required for the converge check")
        cfg.limit = limit
        cfg.witness_horizon = sec.number("witness_horizon", default=1000,
                                         integer=True, minimum=2)
        cfg.margin = sec.number("margin", default=0.1)
        if cfg.margin <= 0:
            raise ConfigError("config.margin: must be > 0")
    elif cmd == "limset":
        cfg.space = build_space(sec.take("space", required=True))
        cfg.sequence = build_sequence(sec.take("sequence", required=True))
        rough_data = sec.take("roughness")
        cfg.roughness = (
            build_roughness(rough_data, cfg.space.dim)
            if rough_data is not None
            else Roughness.zero(cfg.space.dim)
        )
        cfg.schedule = build_schedule(sec.take("schedule"),
                                      horizon_override=horizon_override)
        cfg.grid = build_grid(sec.take("grid", required=True), cfg.space.space.q)
    elif cmd == "theorems":
        tsec = sec.subsection("theorems")
        cfg.theorems = _theorems_params(tsec, horizon_override)
        space_data = sec.take("space")
        if space_data is not None:
            cfg.space = build_space(space_data)
        rough_data = sec.take("roughness")
        if rough_data is not None:
            dim = cfg.space.dim if cfg.space else 2
            cfg.roughness = build_roughness(rough_data, dim)
    else:  # search
        ssec = sec.subsection("search", required=True)
        cfg.search = _search_params(ssec, horizon_override)
        space_data = sec.take("space")
        if space_data is not None:
            cfg.space = build_space(space_data)

    sec.finish()
    cfg.resolved = _render_resolved(cfg, data_seed=seed)
    return cfg


def _theorems_params(tsec, horizon_override):
    if tsec is None:
        params = {
            "ids": list(THEOREM_IDS),
            "trials": 100,
            "include_controls": True,
            "witness_horizon": 1000,
            "verification_horizon": None,
            "eta": 0.1,
            "radius": 1.0,
            "step": 0.25,
            "allow_empirical": False,
            "spawn_offset": 0,
            "schedule": None,
        }
    else:
        ids = tsec.take("ids", default=list(THEOREM_IDS))
        if (not isinstance(ids, list) or not ids
                or any(t not in THEOREM_IDS for t in ids)):
            raise ConfigError(
                "config.theorems.ids: expected a nonempty subset of %s"
                % (list(THEOREM_IDS),)
            )
        params = {
            "ids": ids,
            "trials": tsec.number("trials", default=100, integer=True, minimum=1),
            "include_controls": tsec.boolean("include_controls", default=True),
            "witness_horizon": tsec.number("witness_horizon", default=1000,
                                           integer=True, minimum=2),
            "verification_horizon": tsec.number("verification_horizon",
                                                integer=True, minimum=3),
            "eta": tsec.number("eta", default=0.1),
            "radius": tsec.number("radius", default=1.0),
            "step": tsec.number("step", default=0.25),
            "allow_empirical": tsec.boolean("allow_empirical", default=False),
            "spawn_offset": tsec.number("spawn_offset", default=0, integer=True,
                                        minimum=0),
            "schedule": None,
        }
        sched_data = tsec.take("schedule")
        if sched_data is not None:
            params["schedule"] = build_schedule(sched_data,
                                                path="config.theorems.schedule")
        tsec.finish()
        if params["eta"] <= 0:
            raise ConfigError("config.theorems.eta: must be > 0")
        if params["radius"] <= 0 or params["step"] <= 0:
            raise ConfigError("config.theorems: radius and step must be > 0")
    if horizon_override is not None:
        sched = params["schedule"] or EpsilonSchedule()
        from dataclasses import replace

        params["schedule"] = replace(sched, horizon=int(horizon_override))
    return params


def _search_params(ssec, horizon_override):
    params = {
        "theorem": ssec.string("theorem", required=True, choices=THEOREM_IDS),
        "budget": ssec.number("budget", default=100, integer=True, minimum=1),
        "allow_empirical": ssec.boolean("allow_empirical", default=False),
        "spawn_offset": ssec.number("spawn_offset", default=0, integer=True,
                                    minimum=0),
        "schedule": None,
    }
    sched_data = ssec.take("schedule")
    if sched_data is not None:
        params["schedule"] = build_schedule(sched_data,
                                            path="config.search.schedule")
    ssec.finish()
    if horizon_override is not None:
        sched = params["schedule"] or EpsilonSchedule(horizon=500)
        from dataclasses import replace

        params["schedule"] = replace(sched, horizon=int(horizon_override))
    return params


# ---------------------------------------------------------------------------
# Rendering (the resolved echo)
# ---------------------------------------------------------------------------


def _cone_dict(cone: Cone) -> dict:
    if isinstance(cone, Orthant):
        return {"kind": "orthant", "dim": cone.dim, "margin": cone.margin}
    if isinstance(cone, Polyhedral):
        return {
            "kind": "polyhedral",
            "rows": [list(row) for row in cone.rows],
            "margin": cone.margin,
        }
    if isinstance(cone, SecondOrder):
        return {"kind": "second-order", "dim": cone.dim, "margin": cone.margin}
    return {"kind": "product", "factors": [_cone_dict(f) for f in cone.factors]}


def _norm_dict(norm: NormSpec) -> dict:
    out = {"kind": norm.kind}
    if norm.kind == "pnorm":
        out["p"] = norm.p
    if norm.kind == "weighted-sup":
        out["weights"] = list(norm.weights)
    return out


def _space_dict(spec: ConeMetricSpec) -> dict:
    from .metrics import LiftedRule, TwoComponentRule

    if isinstance(spec.rule, LiftedRule):
        return {
            "name": "lifted",
            "q": spec.space.q,
            "base": spec.rule.base,
            "witness": list(spec.rule.witness),
            "cone": _cone_dict(spec.cone),
            "norm": _norm_dict(spec.norm),
        }
    if isinstance(spec.rule, TwoComponentRule):
        return {
            "name": "two-component",
            "alpha": spec.rule.alpha,
            "norm": _norm_dict(spec.norm),
        }
    return {
        "name": "table",
        "values": spec.rule.values.tolist(),
        "cone": _cone_dict(spec.cone),
        "norm": _norm_dict(spec.norm),
    }


def _sequence_dict(seq: SequenceSpec) -> dict:
    if isinstance(seq, Oscillating):
        return {"family": "oscillating", "a": list(seq.a), "b": list(seq.b)}
    if isinstance(seq, Decay):
        return {
            "family": "decay",
            "center": list(seq.center),
            "direction": list(seq.direction),
            "amplitude": seq.amplitude,
            "ratio": seq.ratio,
        }
    if isinstance(seq, OscDecay):
        return {
            "family": "osc-decay",
            "center": list(seq.center),
            "direction": list(seq.direction),
            "amplitudes": list(seq.amplitudes),
        }
    if isinstance(seq, BoundedWalk):
        return {
            "family": "bounded-walk",
            "center": list(seq.center),
            "step": seq.step_bound,
            "radius": seq.radius,
            "seed": seq.seed,
        }
    return {
        "family": "table",
        "points": seq.points.tolist(),
        "labeled": seq.labeled,
    }


def _roughness_dict(r: Roughness) -> dict:
    if r.cls == "zero":
        return {"class": "zero"}
    return {"class": "interior", "value": list(r.value)}


def _schedule_dict(s: EpsilonSchedule) -> dict:
    out = {"scalars": list(s.scalars), "horizon": s.horizon}
    if s.witness is not None:
        out["witness"] = list(s.witness)
    if s.window is not None:
        out["window"] = s.window
    return out


def _render_resolved(cfg: RunConfig, data_seed) -> dict:
    # out/trace/quiet are delivery knobs, not semantics: excluding them
    # keeps reports identical regardless of where they are written
    out = {
        "schema_version": SCHEMA_VERSION,
        "command": cfg.command,
        "seed": cfg.seed,
    }
    if cfg.command == "validate-cone":
        out["cone"] = _cone_dict(cfg.cone)
        out["trials"] = cfg.trials
    elif cfg.command == "validate-metric":
        out["space"] = _space_dict(cfg.space)
        if cfg.sample is not None:
            out["sample"] = cfg.sample
    elif cfg.command == "analyze":
        out["space"] = _space_dict(cfg.space)
        out["sequence"] = _sequence_dict(cfg.sequence)
        out["roughness"] = _roughness_dict(cfg.roughness)
        out["schedule"] = _schedule_dict(cfg.schedule)
        out["checks"] = list(cfg.checks)
        if cfg.limit is not None:
            out["limit"] = list(cfg.limit)
        out["witness_horizon"] = cfg.witness_horizon
        out["margin"] = cfg.margin
    elif cfg.command == "limset":
        out["space"] = _space_dict(cfg.space)
        out["sequence"] = _sequence_dict(cfg.sequence)
        out["roughness"] = _roughness_dict(cfg.roughness)
        out["schedule"] = _schedule_dict(cfg.schedule)
        out["grid"] = {"points": [list(p) for p in cfg.grid]}
    elif cfg.command == "theorems":
        params = dict(cfg.theorems)
        params["schedule"] = (
            _schedule_dict(params["schedule"]) if params["schedule"] else None
        )
        out["theorems"] = params
        if cfg.space is not None:
            out["space"] = _space_dict(cfg.space)
        if cfg.roughness is not None:
            out["roughness"] = _roughness_dict(cfg.roughness)
    else:
        params = dict(cfg.search)
        params["schedule"] = (
            _schedule_dict(params["schedule"]) if params["schedule"] else None
        )
        out["search"] = params
        if cfg.space is not None:
            out["space"] = _space_dict(cfg.space)
    return out


def render_config(cfg: RunConfig) -> str:
    """The resolved config as a JSON document; parse(render(cfg)) == cfg."""
    return json.dumps(cfg.resolved, indent=2, sort_keys=True)
