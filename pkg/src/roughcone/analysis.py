"""Finite-horizon semidecision of rough convergence and rough Cauchyness.

The definitions quantify over every interior epsilon.  Along a fixed
interior witness e, it is enough to test epsilon = t*e for a finite
decreasing list of scalars t: if 0 << c, then c - t*e stays in the cone
for some t > 0, and d << r + t*e forces d << r + c because
(r + c) - d = ((r + t*e) - d) + (c - t*e) lands in int P + P, which is
contained in int P.  The schedule therefore semidecides the full
quantifier from above; verdicts carry the smallest scalar tested.

Every check reduces to a vector of critical scalars: ll(d, r + t*e)
holds iff t exceeds a threshold computable per term (or per index pair,
keyed by the smaller index).  A verdict then reads off violator
positions: none (holds, with the least admissible tail start m), a
violator set reaching into the final stability window while also
occurring before it (refuted, persistently), or violations confined to
the window (inconclusive: the horizon is too short to tell).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .cones import as_vector
from .errors import InputError
from .metrics import ConeMetricSpec, RealVectorSpace
from .reports import as_tuple
from .sequences import SequenceSpec

__all__ = [
    "Roughness",
    "EpsilonSchedule",
    "ScalarResult",
    "Verdict",
    "BoundWitness",
    "is_r_convergent_to",
    "is_r_cauchy",
    "is_cauchy",
    "is_bounded",
    "rough_limit_set",
    "scalar_rough_cauchy",
    "vector_rough_cauchy",
    "scalar_tail_below",
    "all_pairs_ll",
]

DEFAULT_SCALARS = tuple(2.0 ** -j for j in range(13))
DEFAULT_HORIZON = 2000


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Roughness:
    """The roughness degree: either exactly zero or an interior vector."""

    value: tuple[float, ...]
    cls: str  # "zero" | "interior"

    def __post_init__(self):
        if self.cls not in ("zero", "interior"):
            raise InputError("roughness class must be 'zero' or 'interior'")
        if self.cls == "zero" and any(v != 0.0 for v in self.value):
            raise InputError("zero roughness must have an all-zero value")
        if self.cls == "interior" and all(v == 0.0 for v in self.value):
            raise InputError("interior roughness cannot be the zero vector")

    @classmethod
    def zero(cls, dim: int):
        return cls(value=(0.0,) * dim, cls="zero")

    @classmethod
    def interior(cls, value):
        return cls(value=as_tuple(value), cls="interior")

    def vector(self, dim: int) -> np.ndarray:
        return as_vector(self.value, dim)

    def scaled(self, factor: float) -> "Roughness":
        if self.cls == "zero":
            return self
        return Roughness.interior(tuple(factor * v for v in self.value))


@dataclass(frozen=True)
class EpsilonSchedule:
    """Scalars t_1 > ... > t_J > 0 along an interior witness, a horizon,
    and the stability window used to separate persistent violations from
    horizon-edge effects."""

    scalars: tuple[float, ...] = DEFAULT_SCALARS
    witness: tuple[float, ...] | None = None  # None: the cone's default
    horizon: int = DEFAULT_HORIZON
    window: int | None = None  # None: 10% of the horizon

    def __post_init__(self):
        if not self.scalars:
            raise InputError("schedule needs at least one scalar")
        if any(t <= 0 for t in self.scalars):
            raise InputError("schedule scalars must be positive")
        if any(nxt >= prev for prev, nxt in zip(self.scalars, self.scalars[1:])):
            raise InputError("schedule scalars must be strictly decreasing")
        if self.horizon < 2:
            raise InputError("horizon must be >= 2")
        if self.window is not None and self.window < 1:
            raise InputError("stability window must be >= 1")

    def effective_window(self, horizon: int) -> int:
        w = self.window if self.window is not None else max(2, self.horizon // 10)
        if w >= horizon:
            w = max(1, horizon // 10)
        return w

    def resolve_witness(self, spec: ConeMetricSpec) -> np.ndarray:
        e = (
            spec.cone.default_interior_witness()
            if self.witness is None
            else as_vector(self.witness, spec.dim)
        )
        if not spec.cone.interior_contains(e):
            raise InputError("schedule witness is not interior to the cone")
        return e


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScalarResult:
    """Outcome of one scheduled scalar."""

    scalar: float
    status: str  # "holds" | "refuted" | "inconclusive"
    witness_index: int | None = None  # least admissible m (1-based) when holds
    violation: tuple | None = None  # (n,) or (i, j), 1-based
    detail: str = ""


@dataclass(frozen=True)
class Verdict:
    """Semidecision outcome across the whole schedule."""

    kind: str
    outcome: str  # "holds" | "refuted" | "inconclusive"
    horizon: int
    window: int
    results: tuple[ScalarResult, ...]
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.outcome == "holds"

    @property
    def refuting(self) -> ScalarResult | None:
        for r in self.results:
            if r.status == "refuted":
                return r
        return None

    def to_dict(self):
        return {
            "kind": self.kind,
            "outcome": self.outcome,
            "horizon": self.horizon,
            "window": self.window,
            "detail": self.detail,
            "scalars": [
                {
                    "scalar": r.scalar,
                    "status": r.status,
                    "witness_index": r.witness_index,
                    "violation": list(r.violation) if r.violation else None,
                    "detail": r.detail,
                }
                for r in self.results
            ],
        }


@dataclass(frozen=True)
class BoundWitness:
    """Candidate bound g = componentwise max + margin * witness.

    Any finite prefix is bounded, so this is witness-producing rather
    than boolean; `horizon_limited` records that g certifies only the
    inspected prefix.
    """

    bound: tuple[float, ...]
    componentwise_max: tuple[float, ...]
    witness_horizon: int
    margin: float
    horizon_limited: bool = True

    def vector(self) -> np.ndarray:
        return np.asarray(self.bound)

    def to_dict(self):
        return {
            "bound": list(self.bound),
            "componentwise_max": list(self.componentwise_max),
            "witness_horizon": self.witness_horizon,
            "margin": self.margin,
            "horizon_limited": self.horizon_limited,
        }


# ---------------------------------------------------------------------------
# The scan
# ---------------------------------------------------------------------------


def _decide_scalar(crit, pre_max, t, window, resolve, reverify):
    """Classify one scalar.

    `crit` holds per-index critical thresholds keyed by the smallest
    index involved (so a clean tail from m means no entry >= t at or
    after m-1).  `pre_max` is the largest threshold among checks lying
    entirely before the stability window; it decides whether a
    violation that reaches into the window is persistent (also happens
    well before the horizon edge) or might be an edge effect.
    """
    n = crit.shape[0]
    viol = np.nonzero(crit >= t)[0]
    if viol.size == 0:
        return ScalarResult(scalar=t, status="holds", witness_index=1)
    last = int(viol[-1])
    cut = n - window
    if last < cut:
        return ScalarResult(scalar=t, status="holds", witness_index=last + 2)
    in_window = viol[viol >= cut]
    if pre_max < t:
        k = int(in_window[0])
        return ScalarResult(
            scalar=t,
            status="inconclusive",
            violation=resolve(k),
            detail="violations confined to the final %d indices" % window,
        )
    # persistent violation: pick a confirmable witness inside the window,
    # preferring the largest threshold (scan a few in case of boundary
    # rounding between the threshold and the direct predicate)
    order = in_window[np.argsort(-crit[in_window], kind="stable")]
    witness = None
    for k in order[:8]:
        cand = resolve(int(k))
        if not reverify(cand, t):
            witness = cand
            break
    if witness is None:
        witness = resolve(int(order[0]))
    return ScalarResult(
        scalar=t,
        status="refuted",
        violation=witness,
        detail="violations persist before and inside the final window",
    )


def _scan(kind, crit, pre_max, schedule, horizon, window, resolve, reverify,
          detail=""):
    results = tuple(
        _decide_scalar(crit, pre_max, t, window, resolve, reverify)
        for t in schedule.scalars
    )
    if any(r.status == "refuted" for r in results):
        outcome = "refuted"
    elif any(r.status == "inconclusive" for r in results):
        outcome = "inconclusive"
    else:
        outcome = "holds"
    return Verdict(
        kind=kind,
        outcome=outcome,
        horizon=horizon,
        window=window,
        results=results,
        detail=detail,
    )


def _effective_horizon(seq: SequenceSpec, schedule: EpsilonSchedule) -> tuple[int, str]:
    n = schedule.horizon
    if seq.length is not None and seq.length < n:
        return seq.length, "horizon clamped to table length %d" % seq.length
    return n, ""


def _pair_witness_resolver(T):
    def resolve(k):
        row = T[k, k:]
        col = T[k + 1:, k]
        jr = int(np.argmax(row))
        if col.size and col[int(np.argmax(col))] > row[jr]:
            ic = int(np.argmax(col))
            return (k + 1 + ic + 1, k + 1)  # 1-based (i, j), i > j = k+1
        return (k + 1, k + jr + 1)

    return resolve


# ---------------------------------------------------------------------------
# Checkers
# ---------------------------------------------------------------------------


def _resolve_roughness(spec: ConeMetricSpec, roughness: Roughness) -> np.ndarray:
    r = roughness.vector(spec.dim)
    if roughness.cls == "interior" and not spec.cone.interior_contains(r):
        raise InputError("interior roughness value is not interior to the cone")
    return r


def is_r_convergent_to(
    spec: ConeMetricSpec,
    seq: SequenceSpec,
    x,
    roughness: Roughness,
    schedule: EpsilonSchedule,
) -> Verdict:
    """Does d(x_n, x) << r + t*e hold eventually, for every scheduled t?"""
    r = _resolve_roughness(spec, roughness)
    e = schedule.resolve_witness(spec)
    x = spec.space.as_point(x)
    horizon, note = _effective_horizon(seq, schedule)
    window = schedule.effective_window(horizon)
    pts = seq.prefix(horizon)
    dist = spec.distances_to(pts, x)
    crit = spec.cone.crit_thresholds(r - dist, e)
    cut = horizon - window
    pre_max = float(crit[:cut].max()) if cut > 0 else -np.inf

    def resolve(k):
        return (k + 1,)

    def reverify(violation, t):
        (n,) = violation
        d = spec.eval(pts[n - 1], x)
        return spec.cone.interior_contains(r + t * e - d)

    return _scan("rough-convergence", crit, pre_max, schedule, horizon, window,
                 resolve, reverify, detail=note)


def is_r_cauchy(
    spec: ConeMetricSpec,
    seq: SequenceSpec,
    roughness: Roughness,
    schedule: EpsilonSchedule,
) -> Verdict:
    """Does d(x_i, x_j) << r + t*e hold for all pairs past some m, for
    every scheduled t?  With r = 0 this is the plain Cauchy check."""
    r = _resolve_roughness(spec, roughness)
    e = schedule.resolve_witness(spec)
    horizon, note = _effective_horizon(seq, schedule)
    window = schedule.effective_window(horizon)
    pts = seq.prefix(horizon)
    if spec.carrier is not None:
        rho = spec.pairwise_rho(pts)
        T = spec.cone.crit_profile(rho, r, spec.carrier, e)
    else:
        D = spec.distance_tensor(pts)
        T = spec.cone.crit_thresholds(r - D, e)
    crit = kernels.pair_min_index_max(T)
    cut = horizon - window
    pre_max = float(T[:cut, :cut].max()) if cut > 0 else -np.inf
    resolve = _pair_witness_resolver(T)

    def reverify(violation, t):
        i, j = violation
        d = spec.eval(pts[i - 1], pts[j - 1])
        return spec.cone.interior_contains(r + t * e - d)

    return _scan("rough-cauchy", crit, pre_max, schedule, horizon, window,
                 resolve, reverify, detail=note)


def is_cauchy(spec: ConeMetricSpec, seq: SequenceSpec,
              schedule: EpsilonSchedule) -> Verdict:
    """The r = 0 case, kept as a named operation for reports."""
    return is_r_cauchy(spec, seq, Roughness.zero(spec.dim), schedule)


def is_bounded(
    spec: ConeMetricSpec,
    seq: SequenceSpec,
    witness_horizon: int,
    margin: float,
    witness=None,
) -> BoundWitness:
    """Componentwise max of d over the prefix, pushed into the interior
    by margin * witness.  Finite prefixes are always bounded; the
    returned candidate is marked horizon-limited accordingly."""
    if witness_horizon < 2:
        raise InputError("witness horizon must be >= 2")
    if margin <= 0:
        raise InputError("boundedness margin must be > 0")
    e = (
        spec.cone.default_interior_witness()
        if witness is None
        else as_vector(witness, spec.dim)
    )
    if not spec.cone.interior_contains(e):
        raise InputError("boundedness witness is not interior to the cone")
    n = witness_horizon
    if seq.length is not None:
        n = min(n, seq.length)
    pts = seq.prefix(n)
    if spec.carrier is not None:
        rho_max = float(spec.pairwise_rho(pts).max())
        s = np.where(spec.carrier >= 0.0, rho_max * spec.carrier, 0.0)
    else:
        s = spec.distance_tensor(pts).max(axis=(0, 1))
    g = s + margin * e
    return BoundWitness(
        bound=as_tuple(g),
        componentwise_max=as_tuple(s),
        witness_horizon=n,
        margin=float(margin),
    )


def all_pairs_ll(spec: ConeMetricSpec, seq: SequenceSpec, horizon: int,
                 bound, witness=None) -> tuple[bool, tuple | None]:
    """Is d(x_i, x_j) << bound for every pair up to the horizon?

    Returns (ok, violating_pair).  This is the boundedness premise used
    by the theorem suite: the candidate from `is_bounded` is re-verified
    over the full verification horizon.
    """
    b = as_vector(bound, spec.dim)
    e = (
        spec.cone.default_interior_witness()
        if witness is None
        else as_vector(witness, spec.dim)
    )
    n = horizon
    if seq.length is not None:
        n = min(n, seq.length)
    pts = seq.prefix(n)
    if spec.carrier is not None:
        rho = spec.pairwise_rho(pts)
        T = spec.cone.crit_profile(rho, b, spec.carrier, e)
    else:
        D = spec.distance_tensor(pts)
        T = spec.cone.crit_thresholds(b - D, e)
    # ll(d, b) holds iff the critical scalar is negative (t = 0 clears it)
    crit = kernels.pair_min_index_max(T)
    bad = np.nonzero(crit >= 0.0)[0]
    if bad.size == 0:
        return True, None
    resolve = _pair_witness_resolver(T)
    return False, resolve(int(bad[0]))


def rough_limit_set(
    spec: ConeMetricSpec,
    seq: SequenceSpec,
    roughness: Roughness,
    schedule: EpsilonSchedule,
    grid,
) -> list:
    """Brute-force diagnostic: the grid points to which the sequence is
    r-convergent (each decided by a full `is_r_convergent_to` run)."""
    if not isinstance(spec.space, RealVectorSpace):
        raise InputError("rough limit sets are defined on real-vector spaces only")
    candidates = list(grid)
    if not candidates:
        raise InputError("grid must be nonempty")
    out = []
    for x in candidates:
        verdict = is_r_convergent_to(spec, seq, x, roughness, schedule)
        if verdict.holds:
            out.append(x)
    return out


# ---------------------------------------------------------------------------
# Scalar-sequence checks (used by the norm-level theorem conclusions)
# ---------------------------------------------------------------------------


def scalar_rough_cauchy(values, offset: float, schedule: EpsilonSchedule,
                        kind: str = "scalar-rough-cauchy") -> Verdict:
    """|v_i - v_j| < offset + t for all pairs past some m, per scalar t."""
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1:
        raise InputError("expected a scalar sequence")
    horizon = v.shape[0]
    window = schedule.effective_window(horizon)
    T = kernels.pairwise_distance(v[:, None], kernels.SUP) - float(offset)
    crit = kernels.pair_min_index_max(T)
    cut = horizon - window
    pre_max = float(T[:cut, :cut].max()) if cut > 0 else -np.inf
    resolve = _pair_witness_resolver(T)

    def reverify(violation, t):
        i, j = violation
        return abs(v[i - 1] - v[j - 1]) < offset + t

    return _scan(kind, crit, pre_max, schedule, horizon, window, resolve,
                 reverify)


def vector_rough_cauchy(values, offset: float, norm, schedule: EpsilonSchedule,
                        kind: str = "norm-rough-cauchy") -> Verdict:
    """norm(v_i - v_j) < offset + t for all pairs past some m, per scalar t.

    `values` is an (N, m) array of ambient-space vectors; this is the
    norm-level Cauchy condition on a vector sequence in E rather than a
    cone-order condition.
    """
    v = np.ascontiguousarray(values, dtype=np.float64)
    if v.ndim != 2:
        raise InputError("expected an (N, m) vector sequence")
    horizon = v.shape[0]
    window = schedule.effective_window(horizon)
    if norm.kind == "euclidean":
        M = kernels.pairwise_distance(v, kernels.EUCLIDEAN)
    elif norm.kind == "sup":
        M = kernels.pairwise_distance(v, kernels.SUP)
    else:
        M = norm(v[:, None, :] - v[None, :, :])
    T = M - float(offset)
    crit = kernels.pair_min_index_max(T)
    cut = horizon - window
    pre_max = float(T[:cut, :cut].max()) if cut > 0 else -np.inf
    resolve = _pair_witness_resolver(T)

    def reverify(violation, t):
        i, j = violation
        return float(norm(v[i - 1] - v[j - 1])) < offset + t

    return _scan(kind, crit, pre_max, schedule, horizon, window, resolve,
                 reverify)


def scalar_tail_below(values, schedule: EpsilonSchedule,
                      kind: str = "scalar-tail") -> Verdict:
    """v_n < t eventually, for each scheduled t (v is expected nonnegative)."""
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1:
        raise InputError("expected a scalar sequence")
    horizon = v.shape[0]
    window = schedule.effective_window(horizon)
    crit = v.copy()
    cut = horizon - window
    pre_max = float(crit[:cut].max()) if cut > 0 else -np.inf

    def resolve(k):
        return (k + 1,)

    def reverify(violation, t):
        (n,) = violation
        return v[n - 1] < t

    return _scan(kind, crit, pre_max, schedule, horizon, window, resolve,
                 reverify)
