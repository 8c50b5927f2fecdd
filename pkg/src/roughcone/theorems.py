"""Property checks of the rough-Cauchy implications over sampled instances.

Four implications are exercised, identified as T33 .. T36:

* T33 - a sequence roughly convergent at degree r/2 is roughly Cauchy at
        degree r.
* T34 - a bounded sequence is roughly Cauchy at the degree given by its
        own bound witness.
* T35 - on a normal cone satisfying the dominated-pair condition with
        constant k, two sequences that are r/(2k^2)-Cauchy have a
        pointwise-distance sequence that is norm(r)-Cauchy at the norm
        level.
* T36 - if a sequence is r-Cauchy and converges to x, and every
        d(x_n, x) dominates r in the cone order, then norm(d(x_n, x) - r)
        tends to 0.

Premises are arranged by construction AND re-verified by the checkers;
an instance counts as a confirmation only when both the re-verified
premises and the conclusion hold.  Premise failures make the instance
vacuous evidence and are never scored as counterexamples.  A refuted
conclusion under satisfied premises is re-checked at doubled horizon
before it is declared a counterexample; one that vanishes is labeled a
horizon artifact.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .analysis import (
    EpsilonSchedule,
    Roughness,
    Verdict,
    all_pairs_ll,
    is_bounded,
    is_r_cauchy,
    is_r_convergent_to,
    scalar_tail_below,
    vector_rough_cauchy,
)
from .cones import normal_constant, star_constant
from .errors import ConfigError, InputError, NoExactConstant
from .metrics import ConeMetricSpec, builtin_space
from .reports import ConstantEstimate
from .sequences import BoundedWalk, Decay, OscDecay, Oscillating, TableSequence

__all__ = [
    "InstanceRecord",
    "SuiteReport",
    "check_thm_3_3",
    "check_thm_3_4",
    "check_thm_3_5",
    "check_thm_3_6",
    "counterexample_search",
    "THEOREM_IDS",
]

THEOREM_IDS = ("T33", "T34", "T35", "T36")

PROFILE_CYCLE = 64  # amplitude-profile length for constructed oscillations


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InstanceRecord:
    """One trial of one theorem."""

    index: int
    kind: str  # "sampled" or a control label
    premises: str  # "satisfied" | "violated" | "inconclusive"
    premise_outcomes: tuple[tuple[str, str], ...]
    classification: str
    # "confirmed" | "premise-violated" | "vacuous" | "inconclusive"
    # | "counterexample"
    provision: str | None = None  # T36 only: "satisfied" | "violated"
    conclusion: Verdict | None = None
    horizon_artifact: bool = False
    final_gap: float | None = None  # T36: norm(d(x_N, x) - r)
    rerun: dict | None = None
    detail: str = ""

    def to_dict(self):
        return {
            "index": self.index,
            "kind": self.kind,
            "premises": self.premises,
            "premise_outcomes": [list(p) for p in self.premise_outcomes],
            "classification": self.classification,
            "provision": self.provision,
            "conclusion": self.conclusion.to_dict() if self.conclusion else None,
            "horizon_artifact": self.horizon_artifact,
            "final_gap": self.final_gap,
            "rerun": self.rerun,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class SuiteReport:
    """Aggregated trial outcomes for one theorem.

    confirmed + premise_violated + vacuous + inconclusive +
    counterexamples equals the number of instances; vacuous is the
    provision-failed bucket (T36), premise_violated covers failed main
    premises, and horizon artifacts are a flagged subset of
    inconclusive.
    """

    theorem: str
    trials: int
    seed: int
    horizon: int
    instances: tuple[InstanceRecord, ...]
    confirmed: int
    premise_violated: int
    vacuous: int
    inconclusive: int
    counterexamples: int
    horizon_artifacts: int
    provision_satisfaction_rate: float | None = None

    @property
    def passed(self) -> bool:
        return self.counterexamples == 0

    def counterexample_records(self):
        return tuple(
            r for r in self.instances if r.classification == "counterexample"
        )

    def to_dict(self):
        return {
            "theorem": self.theorem,
            "trials": self.trials,
            "seed": self.seed,
            "horizon": self.horizon,
            "confirmed": self.confirmed,
            "premise_violated": self.premise_violated,
            "vacuous": self.vacuous,
            "inconclusive": self.inconclusive,
            "counterexamples": self.counterexamples,
            "horizon_artifacts": self.horizon_artifacts,
            "provision_satisfaction_rate": self.provision_satisfaction_rate,
            "passed": self.passed,
            "instances": [r.to_dict() for r in self.instances],
        }


def _aggregate(theorem, trials, seed, horizon, records, provision_rate=None):
    counts = {
        "confirmed": 0,
        "premise-violated": 0,
        "vacuous": 0,
        "inconclusive": 0,
        "counterexample": 0,
    }
    artifacts = 0
    for r in records:
        counts[r.classification] += 1
        artifacts += int(r.horizon_artifact)
    return SuiteReport(
        theorem=theorem,
        trials=trials,
        seed=seed,
        horizon=horizon,
        instances=tuple(records),
        confirmed=counts["confirmed"],
        premise_violated=counts["premise-violated"],
        vacuous=counts["vacuous"],
        inconclusive=counts["inconclusive"],
        counterexamples=counts["counterexample"],
        horizon_artifacts=artifacts,
        provision_satisfaction_rate=provision_rate,
    )


# ---------------------------------------------------------------------------
# Shared machinery
# ---------------------------------------------------------------------------


def _trial_rng(seed: int, offset: int):
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(offset,))
    return np.random.default_rng(ss)


def _premise_status(outcomes):
    states = [v for _, v in outcomes]
    if any(s == "refuted" for s in states):
        return "violated"
    if any(s == "inconclusive" for s in states):
        return "inconclusive"
    return "satisfied"


def _doubled(schedule: EpsilonSchedule) -> EpsilonSchedule:
    return replace(schedule, horizon=2 * schedule.horizon)


def _classify(index, kind, premise_outcomes, conclusion, recheck, rerun,
              provision=None, final_gap=None, detail=""):
    """Fold premise outcomes, a conclusion verdict, and the doubled-horizon
    recheck into a classified record.  `recheck` is a callable producing
    (premise_outcomes, conclusion) at doubled horizon; `rerun` is the
    embeddable config for verified counterexamples."""
    premises = _premise_status(premise_outcomes)
    if premises == "violated":
        return InstanceRecord(
            index=index, kind=kind, premises=premises,
            premise_outcomes=premise_outcomes,
            classification="premise-violated", provision=provision,
            conclusion=conclusion, final_gap=final_gap, detail=detail,
        )
    if premises == "inconclusive":
        return InstanceRecord(
            index=index, kind=kind, premises=premises,
            premise_outcomes=premise_outcomes,
            classification="inconclusive", provision=provision,
            conclusion=conclusion, final_gap=final_gap, detail=detail,
        )
    if provision == "violated":
        return InstanceRecord(
            index=index, kind=kind, premises=premises,
            premise_outcomes=premise_outcomes, classification="vacuous",
            provision=provision, conclusion=conclusion, final_gap=final_gap,
            detail=detail,
        )
    if conclusion.outcome == "holds":
        return InstanceRecord(
            index=index, kind=kind, premises=premises,
            premise_outcomes=premise_outcomes, classification="confirmed",
            provision=provision, conclusion=conclusion, final_gap=final_gap,
            detail=detail,
        )
    if conclusion.outcome == "inconclusive":
        return InstanceRecord(
            index=index, kind=kind, premises=premises,
            premise_outcomes=premise_outcomes, classification="inconclusive",
            provision=provision, conclusion=conclusion, final_gap=final_gap,
            detail=detail,
        )
    # refuted under satisfied premises: recheck at doubled horizon
    re_premises, re_conclusion = recheck()
    if _premise_status(re_premises) == "satisfied" and re_conclusion.outcome == "refuted":
        return InstanceRecord(
            index=index, kind=kind, premises=premises,
            premise_outcomes=premise_outcomes,
            classification="counterexample", provision=provision,
            conclusion=conclusion, final_gap=final_gap, rerun=rerun,
            detail="refutation persists at doubled horizon",
        )
    return InstanceRecord(
        index=index, kind=kind, premises=premises,
        premise_outcomes=premise_outcomes, classification="inconclusive",
        provision=provision, conclusion=conclusion, horizon_artifact=True,
        final_gap=final_gap,
        detail="refutation vanished at doubled horizon (artifact)",
    )


def _resolve_constant(fn, cone, norm, seed):
    """Exact catalogue value when available, else a seeded empirical
    lower bound (whose provenance downstream guards will refuse unless
    overridden)."""
    try:
        return fn(cone, norm)
    except NoExactConstant:
        return fn(cone, norm, mode="empirical", sampler_seed=seed, trials=2000)


def _require_profile(spec: ConeMetricSpec):
    """The suites construct real-vector sequences with prescribed distance
    profiles, which needs a d = rho * carrier space (lifted or
    two-component)."""
    if spec.carrier is None:
        raise InputError(
            "theorem suites need a scalar-profile space "
            "(lifted or two-component), got %s" % spec.describe()
        )


def _unit_direction(spec: ConeMetricSpec, rng):
    """A random direction of unit base-metric length in the point space."""
    q = spec.space.q
    v = rng.normal(size=q)
    while not np.any(v != 0.0):
        v = rng.normal(size=q)
    rho = spec.rho_to(v[None, :], np.zeros(q))[0]
    return v / rho


def _default_t33_space():
    return builtin_space("lifted", q=2, base="euclidean", witness=(1.0, 1.0))


def _default_line_space():
    return builtin_space("lifted", q=1, base="euclidean", witness=(1.0, 1.0))


# ---------------------------------------------------------------------------
# T33: r/2-convergent implies r-Cauchy
# ---------------------------------------------------------------------------


def _t33_instance(spec, seq, center, roughness, schedule):
    half = roughness.scaled(0.5)
    premise = is_r_convergent_to(spec, seq, center, half, schedule)
    outcomes = (("r/2-convergent", premise.outcome),)
    if premise.outcome != "holds":
        return outcomes, None
    conclusion = is_r_cauchy(spec, seq, roughness, schedule)
    return outcomes, conclusion


def check_thm_3_3(
    trials: int,
    seed: int,
    space: ConeMetricSpec | None = None,
    roughness: Roughness | None = None,
    schedule: EpsilonSchedule | None = None,
    include_controls: bool = True,
    spawn_offset: int = 0,
) -> SuiteReport:
    """Construct r/2-convergent sequences and assert each is r-Cauchy."""
    if trials < 1:
        raise InputError("trials must be >= 1")
    spec = space or _default_t33_space()
    _require_profile(spec)
    r = roughness if roughness is not None else Roughness.interior((1.0, 1.0))
    sched = schedule or EpsilonSchedule()
    if r.cls == "interior":
        amp_bound = spec.cone.scaling_sup(
            r.scaled(0.5).vector(spec.dim), spec.carrier
        )
    else:
        amp_bound = 0.0

    def build_seq(rng, amp_scale):
        center = rng.normal(size=spec.space.q)
        direction = _unit_direction(spec, rng)
        if r.cls == "zero":
            return (
                Decay(center, direction, amplitude=rng.uniform(0.5, 2.0),
                      ratio=rng.uniform(0.3, 0.9)),
                center,
            )
        amps = rng.uniform(0.0, amp_scale, size=PROFILE_CYCLE)
        return OscDecay(center, direction, amps), center

    records = []
    for i in range(trials):
        rng = _trial_rng(seed, spawn_offset + i)
        seq, center = build_seq(rng, amp_bound)
        outcomes, conclusion = _t33_instance(spec, seq, center, r, sched)
        rerun = {
            "mode": "theorems",
            "theorem": "T33",
            "trials": 1,
            "seed": seed,
            "spawn_offset": spawn_offset + i,
        }
        records.append(
            _classify(
                i, "sampled", outcomes, conclusion,
                recheck=lambda s=seq, c=center: _t33_instance(
                    spec, s, c, r, _doubled(sched)
                ),
                rerun=rerun,
            )
        )

    if include_controls and r.cls == "interior":
        # control: amplitude at the full r-equivalent is only r-convergent,
        # not r/2-convergent; the premise must report the violation
        rng = _trial_rng(seed, spawn_offset + trials)
        full = spec.cone.scaling_sup(r.vector(spec.dim), spec.carrier)
        center = rng.normal(size=spec.space.q)
        seq = OscDecay(center, _unit_direction(spec, rng), (full,))
        outcomes, conclusion = _t33_instance(spec, seq, center, r, sched)
        rec = _classify(
            trials, "control-r-amplitude", outcomes, conclusion,
            recheck=lambda: _t33_instance(spec, seq, center, r, _doubled(sched)),
            rerun=None,
        )
        records.append(rec)

    return _aggregate("T33", trials, seed, sched.horizon, records)


# ---------------------------------------------------------------------------
# T34: bounded implies r-Cauchy with r = the bound witness
# ---------------------------------------------------------------------------


def _t34_instance(spec, seq, witness_horizon, eta, schedule):
    bw = is_bounded(spec, seq, witness_horizon, eta)
    ok, pair = all_pairs_ll(spec, seq, schedule.horizon, bw.vector())
    outcomes = (("bounded-by-witness", "holds" if ok else "refuted"),)
    if not ok:
        return outcomes, None, bw
    conclusion = is_r_cauchy(spec, seq, Roughness.interior(bw.bound), schedule)
    return outcomes, conclusion, bw


def check_thm_3_4(
    trials: int,
    seed: int,
    space: ConeMetricSpec | None = None,
    witness_horizon: int = 1000,
    verification_horizon: int | None = None,
    eta: float = 0.1,
    radius: float = 1.0,
    step_bound: float = 0.25,
    schedule: EpsilonSchedule | None = None,
    include_controls: bool = True,
    spawn_offset: int = 0,
) -> SuiteReport:
    """Bound random walks at the witness horizon, re-verify the bound over
    the longer verification horizon, then check rough Cauchyness at the
    bound itself (the existential roughness the implication provides)."""
    if trials < 1:
        raise InputError("trials must be >= 1")
    spec = space or _default_line_space()
    _require_profile(spec)
    n_verify = verification_horizon or 2 * witness_horizon
    if witness_horizon >= n_verify:
        raise InputError("witness horizon must precede the verification horizon")
    sched = replace(schedule or EpsilonSchedule(), horizon=n_verify)

    records = []
    for i in range(trials):
        rng = _trial_rng(seed, spawn_offset + i)
        center = rng.normal(size=spec.space.q)
        walk_seed = int(rng.integers(2**63))
        seq = BoundedWalk(center, step_bound, radius, walk_seed)
        outcomes, conclusion, bw = _t34_instance(
            spec, seq, witness_horizon, eta, sched
        )
        rerun = {
            "mode": "theorems",
            "theorem": "T34",
            "trials": 1,
            "seed": seed,
            "spawn_offset": spawn_offset + i,
        }
        records.append(
            _classify(
                i, "sampled", outcomes, conclusion,
                recheck=lambda s=seq: _t34_instance(
                    spec, s, witness_horizon, eta, _doubled(sched)
                )[:2],
                rerun=rerun,
                detail="bound witness %s" % (list(bw.bound),),
            )
        )

    if include_controls:
        # control: linear drift; the witness from the short horizon cannot
        # bound the longer one, so the premise must be reported violated
        drift = TableSequence(np.arange(1.0, n_verify + 1.0))
        outcomes, conclusion, bw = _t34_instance(
            spec, drift, witness_horizon, eta, sched
        )
        records.append(
            _classify(
                trials, "control-drift", outcomes, conclusion,
                recheck=lambda: _t34_instance(
                    spec, drift, witness_horizon, eta, _doubled(sched)
                )[:2],
                rerun=None,
                detail="bound witness %s" % (list(bw.bound),),
            )
        )

    return _aggregate("T34", trials, seed, n_verify, records)


# ---------------------------------------------------------------------------
# T35: paired r/(2k^2)-Cauchy sequences give a norm(r)-Cauchy distance trace
# ---------------------------------------------------------------------------


def _t35_instance(spec, seq_x, seq_y, r_small, offset, schedule):
    px = is_r_cauchy(spec, seq_x, r_small, schedule)
    py = is_r_cauchy(spec, seq_y, r_small, schedule)
    outcomes = (
        ("x-rough-cauchy", px.outcome),
        ("y-rough-cauchy", py.outcome),
    )
    if px.outcome != "holds" or py.outcome != "holds":
        return outcomes, None
    n = schedule.horizon
    if seq_x.length is not None:
        n = min(n, seq_x.length)
    if seq_y.length is not None:
        n = min(n, seq_y.length)
    values = spec.elementwise_d(seq_x.prefix(n), seq_y.prefix(n))
    conclusion = vector_rough_cauchy(values, offset, spec.norm, schedule)
    return outcomes, conclusion


def check_thm_3_5(
    trials: int,
    seed: int,
    space: ConeMetricSpec | None = None,
    roughness: Roughness | None = None,
    star: ConstantEstimate | None = None,
    normal: ConstantEstimate | None = None,
    allow_empirical: bool = False,
    schedule: EpsilonSchedule | None = None,
    include_controls: bool = True,
    spawn_offset: int = 0,
) -> SuiteReport:
    """Construct pairs of r/(2k^2)-Cauchy sequences and assert the
    pointwise-distance sequence is norm(r)-Cauchy at the norm level.

    Refuses to run on empirical (lower-bound) constants unless
    `allow_empirical` is set: the conclusion threshold depends on the
    true constants, so a lower bound could fake a counterexample.
    """
    if trials < 1:
        raise InputError("trials must be >= 1")
    spec = space or _default_line_space()
    _require_profile(spec)
    r = roughness if roughness is not None else Roughness.interior((1.0, 1.0))
    if r.cls != "interior":
        raise InputError("this implication requires an interior roughness")
    star = star or _resolve_constant(star_constant, spec.cone, spec.norm, seed)
    normal = normal or _resolve_constant(normal_constant, spec.cone, spec.norm, seed)
    if not (star.exact and normal.exact) and not allow_empirical:
        raise ConfigError(
            "star/normal constants carry empirical provenance; "
            "pass allow_empirical=True to proceed anyway"
        )
    k = star.value
    sched = schedule or EpsilonSchedule()
    r_small = r.scaled(1.0 / (2.0 * k * k))
    offset = float(spec.norm(r.vector(spec.dim)))
    pair_bound = spec.cone.scaling_sup(r_small.vector(spec.dim), spec.carrier)
    amp_bound = pair_bound / 2.0

    def build_pair(rng):
        seqs = []
        for _ in range(2):
            center = rng.normal(size=spec.space.q) * 2.0
            direction = _unit_direction(spec, rng)
            amps = rng.uniform(0.0, amp_bound, size=PROFILE_CYCLE)
            seqs.append(OscDecay(center, direction, amps))
        return seqs

    records = []
    for i in range(trials):
        rng = _trial_rng(seed, spawn_offset + i)
        seq_x, seq_y = build_pair(rng)
        outcomes, conclusion = _t35_instance(
            spec, seq_x, seq_y, r_small, offset, sched
        )
        rerun = {
            "mode": "theorems",
            "theorem": "T35",
            "trials": 1,
            "seed": seed,
            "spawn_offset": spawn_offset + i,
        }
        records.append(
            _classify(
                i, "sampled", outcomes, conclusion,
                recheck=lambda a=seq_x, b=seq_y: _t35_instance(
                    spec, a, b, r_small, offset, _doubled(sched)
                ),
                rerun=rerun,
            )
        )

    if include_controls:
        # control: two constant sequences; the distance trace is constant
        # and the norm-level condition holds trivially
        rng = _trial_rng(seed, spawn_offset + trials)
        cx = rng.normal(size=spec.space.q)
        cy = rng.normal(size=spec.space.q)
        seq_x = OscDecay(cx, _unit_direction(spec, rng), (0.0,))
        seq_y = OscDecay(cy, _unit_direction(spec, rng), (0.0,))
        outcomes, conclusion = _t35_instance(
            spec, seq_x, seq_y, r_small, offset, sched
        )
        records.append(
            _classify(
                trials, "control-constant", outcomes, conclusion,
                recheck=lambda: _t35_instance(
                    spec, seq_x, seq_y, r_small, offset, _doubled(sched)
                ),
                rerun=None,
            )
        )

    return _aggregate("T35", trials, seed, sched.horizon, records)


# ---------------------------------------------------------------------------
# T36: r-Cauchy + convergent + dominating distances => norm gap vanishes
# ---------------------------------------------------------------------------


def _t36_instance(spec, seq, limit, roughness, schedule):
    pc = is_r_cauchy(spec, seq, roughness, schedule)
    pv = is_r_convergent_to(spec, seq, limit, Roughness.zero(spec.dim), schedule)
    outcomes = (
        ("rough-cauchy", pc.outcome),
        ("converges-to-x", pv.outcome),
    )
    n = schedule.horizon
    if seq.length is not None:
        n = min(n, seq.length)
    dist = spec.distances_to(seq.prefix(n), limit)
    r_vec = roughness.vector(spec.dim)
    shifted = dist - r_vec
    dominated = np.all(spec.cone.gaps(shifted) >= 0.0, axis=-1)
    provision = "satisfied" if bool(dominated.all()) else "violated"
    gaps = spec.norm(shifted)
    final_gap = float(gaps[-1])
    if _premise_status(outcomes) != "satisfied" or provision == "violated":
        return outcomes, provision, None, final_gap
    conclusion = scalar_tail_below(gaps, schedule, kind="norm-gap-to-zero")
    return outcomes, provision, conclusion, final_gap


def check_thm_3_6(
    trials: int,
    seed: int,
    space: ConeMetricSpec | None = None,
    roughness: Roughness | None = None,
    normal: ConstantEstimate | None = None,
    allow_empirical: bool = False,
    schedule: EpsilonSchedule | None = None,
    include_controls: bool = True,
    spawn_offset: int = 0,
) -> SuiteReport:
    """Sample convergent sequences, check the r-Cauchy and convergence
    premises, the domination provision, and the vanishing norm gap.

    The provision-satisfaction rate is reported prominently: with an
    interior roughness it is expected to be zero for genuinely
    convergent sequences, since d(x_n, x) -> 0 cannot dominate r, so
    those instances are vacuous rather than evidence either way.
    """
    if trials < 1:
        raise InputError("trials must be >= 1")
    spec = space or _default_line_space()
    _require_profile(spec)
    r = roughness if roughness is not None else Roughness.zero(2)
    normal = normal or _resolve_constant(normal_constant, spec.cone, spec.norm, seed)
    if not normal.exact and not allow_empirical:
        raise ConfigError(
            "normal constant carries empirical provenance; "
            "pass allow_empirical=True to proceed anyway"
        )
    sched = schedule or EpsilonSchedule()

    records = []
    satisfied = 0
    for i in range(trials):
        rng = _trial_rng(seed, spawn_offset + i)
        center = rng.normal(size=spec.space.q)
        direction = _unit_direction(spec, rng)
        seq = Decay(center, direction, amplitude=rng.uniform(0.5, 2.0),
                    ratio=rng.uniform(0.3, 0.9))
        outcomes, provision, conclusion, final_gap = _t36_instance(
            spec, seq, center, r, sched
        )
        satisfied += int(provision == "satisfied")
        rerun = {
            "mode": "theorems",
            "theorem": "T36",
            "trials": 1,
            "seed": seed,
            "spawn_offset": spawn_offset + i,
        }
        records.append(
            _classify(
                i, "sampled", outcomes, conclusion,
                recheck=lambda s=seq, c=center: _t36_instance(
                    spec, s, c, r, _doubled(sched)
                )[::2],
                rerun=rerun,
                provision=provision,
                final_gap=final_gap,
            )
        )

    if include_controls and r.cls == "interior":
        # control: distances stay pinned above r but the sequence keeps
        # oscillating, so the convergence premise must report violated
        rng = _trial_rng(seed, spawn_offset + trials)
        center = rng.normal(size=spec.space.q)
        direction = _unit_direction(spec, rng)
        base = spec.cone.scaling_sup(r.vector(spec.dim), spec.carrier)
        amps = base * (1.0 + 1.0 / np.arange(1.0, PROFILE_CYCLE + 1.0))
        seq = OscDecay(center, direction, amps)
        outcomes, provision, conclusion, final_gap = _t36_instance(
            spec, seq, center, r, sched
        )
        records.append(
            _classify(
                trials, "control-nonconvergent", outcomes, conclusion,
                recheck=lambda: _t36_instance(
                    spec, seq, center, r, _doubled(sched)
                )[::2],
                rerun=None,
                provision=provision,
                final_gap=final_gap,
            )
        )

    return _aggregate(
        "T36", trials, seed, sched.horizon, records,
        provision_rate=satisfied / trials,
    )


# ---------------------------------------------------------------------------
# Counterexample search without by-construction premises
# ---------------------------------------------------------------------------


def _random_roughness(rng, dim) -> Roughness:
    if rng.uniform() < 0.25:
        return Roughness.zero(dim)
    return Roughness.interior(0.2 + rng.uniform(0.0, 2.0, size=dim))


def _random_sequence(rng, spec):
    q = spec.space.q
    pick = rng.integers(4)
    if pick == 0:
        return Oscillating(rng.normal(size=q), rng.normal(size=q))
    if pick == 1:
        return Decay(rng.normal(size=q), _unit_direction(spec, rng),
                     amplitude=rng.uniform(0.2, 2.0),
                     ratio=rng.uniform(0.3, 0.9))
    if pick == 2:
        amps = rng.uniform(0.0, 1.5, size=8)
        return OscDecay(rng.normal(size=q), _unit_direction(spec, rng), amps)
    return BoundedWalk(rng.normal(size=q), step_bound=rng.uniform(0.05, 0.5),
                       radius=rng.uniform(0.5, 2.0),
                       seed=int(rng.integers(2**63)))


def counterexample_search(
    theorem: str,
    budget: int,
    seed: int,
    space: ConeMetricSpec | None = None,
    schedule: EpsilonSchedule | None = None,
    allow_empirical: bool = False,
    spawn_offset: int = 0,
) -> SuiteReport:
    """Run a theorem's checker over instances sampled WITHOUT arranging the
    premises.  Most instances are vacuous; any counterexample that still
    re-verifies at doubled horizon indicates an implementation bug."""
    if budget < 1:
        raise InputError("budget must be >= 1")
    if theorem not in THEOREM_IDS:
        raise InputError("unknown theorem id %r" % (theorem,))
    spec = space or _default_line_space()
    _require_profile(spec)
    sched = schedule or EpsilonSchedule(horizon=500)
    if theorem == "T35":
        star = _resolve_constant(star_constant, spec.cone, spec.norm, seed)
        normal = _resolve_constant(normal_constant, spec.cone, spec.norm, seed)
        if not (star.exact and normal.exact) and not allow_empirical:
            raise ConfigError(
                "star/normal constants carry empirical provenance; "
                "pass allow_empirical=True to proceed anyway"
            )
        k = star.value

    records = []
    for i in range(budget):
        rng = _trial_rng(seed, spawn_offset + i)
        r = _random_roughness(rng, spec.dim)
        rerun = {
            "mode": "search",
            "theorem": theorem,
            "budget": 1,
            "seed": seed,
            "spawn_offset": spawn_offset + i,
        }
        if theorem == "T33":
            seq = _random_sequence(rng, spec)
            center = rng.normal(size=spec.space.q)
            outcomes, conclusion = _t33_instance(spec, seq, center, r, sched)
            rec = _classify(
                i, "sampled", outcomes, conclusion,
                recheck=lambda s=seq, c=center, rr=r: _t33_instance(
                    spec, s, c, rr, _doubled(sched)
                ),
                rerun=rerun,
            )
        elif theorem == "T34":
            seq = _random_sequence(rng, spec)
            nw = max(2, sched.horizon // 2)
            outcomes, conclusion, _ = _t34_instance(spec, seq, nw, 0.1, sched)
            rec = _classify(
                i, "sampled", outcomes, conclusion,
                recheck=lambda s=seq, w=nw: _t34_instance(
                    spec, s, w, 0.1, _doubled(sched)
                )[:2],
                rerun=rerun,
            )
        elif theorem == "T35":
            if r.cls == "zero":
                r = Roughness.interior(0.2 + rng.uniform(0.0, 2.0, size=spec.dim))
            r_small = r.scaled(1.0 / (2.0 * k * k))
            offset = float(spec.norm(r.vector(spec.dim)))
            seq_x = _random_sequence(rng, spec)
            seq_y = _random_sequence(rng, spec)
            outcomes, conclusion = _t35_instance(
                spec, seq_x, seq_y, r_small, offset, sched
            )
            rec = _classify(
                i, "sampled", outcomes, conclusion,
                recheck=lambda a=seq_x, b=seq_y, rs=r_small, off=offset:
                    _t35_instance(spec, a, b, rs, off, _doubled(sched)),
                rerun=rerun,
            )
        else:
            seq = _random_sequence(rng, spec)
            limit = rng.normal(size=spec.space.q)
            outcomes, provision, conclusion, final_gap = _t36_instance(
                spec, seq, limit, r, sched
            )
            rec = _classify(
                i, "sampled", outcomes, conclusion,
                recheck=lambda s=seq, x=limit, rr=r: _t36_instance(
                    spec, s, x, rr, _doubled(sched)
                )[::2],
                rerun=rerun,
                provision=provision,
                final_gap=final_gap,
            )
        records.append(rec)

    return _aggregate(theorem, budget, seed, sched.horizon, records)
