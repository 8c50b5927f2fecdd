"""Cones in R^m, the orders they induce, and their constants.

A cone here is a closed convex cone given by one of the catalogued
representations (nonnegative orthant, polyhedral facet form, second-order
cone, or a product of those).  Membership is exact (non-strict
inequalities); interior membership clears every defining inequality by
strictly more than the cone's `margin`, which defaults to 0 and exists
only as a robustness knob for noisy inputs.

The induced order:  x <= y  iff  y - x in P;  x << y  iff  y - x in the
interior of P.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ConfigError, DimensionMismatch, InputError, NoExactConstant
from .reports import (
    CheckResult,
    ConstantEstimate,
    StarConditionReport,
    StarViolation,
    ValidationReport,
    as_tuple,
)

__all__ = [
    "NormSpec",
    "Cone",
    "Orthant",
    "Polyhedral",
    "SecondOrder",
    "ProductCone",
    "as_vector",
    "validate_cone",
    "normal_constant",
    "star_constant",
    "verify_star_condition",
]


def as_vector(v, dim: int | None = None) -> np.ndarray:
    """Coerce to a finite 1-D float64 vector, checking the dimension."""
    arr = np.atleast_1d(np.asarray(v, dtype=np.float64))
    if arr.ndim != 1:
        raise InputError("expected a vector, got array of shape %s" % (arr.shape,))
    if not np.all(np.isfinite(arr)):
        raise InputError("vector has non-finite entries: %r" % (arr,))
    if dim is not None and arr.shape[0] != dim:
        raise DimensionMismatch(
            "expected dimension %d, got %d" % (dim, arr.shape[0])
        )
    return arr


# ---------------------------------------------------------------------------
# Norms
# ---------------------------------------------------------------------------

MONOTONE_KINDS = ("euclidean", "sup", "pnorm", "weighted-sup")


@dataclass(frozen=True)
class NormSpec:
    """A norm on the ambient space.

    All catalogued kinds are monotone on the nonnegative orthant
    (0 <= x <= y componentwise implies norm(x) <= norm(y)), which is what
    makes the orthant normal with constant 1 under any of them.
    """

    kind: str
    p: float | None = None
    weights: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.kind not in MONOTONE_KINDS:
            raise InputError("unknown norm kind %r" % (self.kind,))
        if self.kind == "pnorm":
            if self.p is None or not (self.p >= 1.0):
                raise InputError("p-norm exponent must satisfy p >= 1")
        if self.kind == "weighted-sup":
            if not self.weights or any(w <= 0 for w in self.weights):
                raise InputError("weighted-sup weights must all be positive")

    @classmethod
    def euclidean(cls):
        return cls("euclidean")

    @classmethod
    def sup(cls):
        return cls("sup")

    @classmethod
    def pnorm(cls, p: float):
        return cls("pnorm", p=float(p))

    @classmethod
    def weighted_sup(cls, weights):
        return cls("weighted-sup", weights=tuple(float(w) for w in weights))

    def __call__(self, v):
        """Norm of `v`; batched over leading axes (norm taken along the last)."""
        a = np.asarray(v, dtype=np.float64)
        if self.kind == "euclidean":
            return np.sqrt((a * a).sum(axis=-1))
        if self.kind == "sup":
            return np.abs(a).max(axis=-1)
        if self.kind == "pnorm":
            return (np.abs(a) ** self.p).sum(axis=-1) ** (1.0 / self.p)
        w = np.asarray(self.weights, dtype=np.float64)
        if a.shape[-1] != w.shape[0]:
            raise DimensionMismatch(
                "weighted-sup weights have dimension %d, vector has %d"
                % (w.shape[0], a.shape[-1])
            )
        return (w * np.abs(a)).max(axis=-1)


# ---------------------------------------------------------------------------
# Cone representations
# ---------------------------------------------------------------------------


class Cone:
    """Base class: a representable closed convex cone in R^dim."""

    dim: int
    margin: float

    def _init(self, dim: int, margin: float):
        if dim < 1:
            raise InputError("cone dimensions must be >= 1")
        if margin < 0:
            raise InputError("interior margin must be >= 0")
        self.dim = int(dim)
        self.margin = float(margin)

    # -- facet machinery ----------------------------------------------------

    def gaps(self, v) -> np.ndarray:
        """Slack of each defining inequality at `v`; batched over leading axes."""
        raise NotImplementedError

    def _check(self, v) -> np.ndarray:
        a = np.asarray(v, dtype=np.float64)
        if a.shape[-1:] != (self.dim,):
            raise DimensionMismatch(
                "cone has dimension %d, vector has shape %s" % (self.dim, a.shape)
            )
        if not np.all(np.isfinite(a)):
            raise InputError("vector has non-finite entries")
        return a

    # -- membership and order ----------------------------------------------

    def contains(self, v):
        """Exact membership in the closed cone (no margin)."""
        res = np.all(self.gaps(self._check(v)) >= 0.0, axis=-1)
        return bool(res) if res.ndim == 0 else res

    def interior_contains(self, v):
        """Membership in the interior, clearing every inequality by > margin."""
        res = np.all(self.gaps(self._check(v)) > self.margin, axis=-1)
        return bool(res) if res.ndim == 0 else res

    def leq(self, x, y):
        """x <= y in the cone order, i.e. y - x in P."""
        return self.contains(self._check(y) - self._check(x))

    def ll(self, x, y):
        """x << y, i.e. y - x in the interior of P."""
        return self.interior_contains(self._check(y) - self._check(x))

    # -- critical scalars ---------------------------------------------------

    def crit_thresholds(self, base, witness) -> np.ndarray:
        """Per-row infimum t* with base + t*witness interior for all t > t*.

        `base` is (..., dim); `witness` must be an interior direction.
        Used by the analysis layer: ll(d, r + t*e) holds iff
        t > crit_thresholds(r - d, e).
        """
        raise NotImplementedError

    def crit_profile(self, rho, offset, carrier, witness) -> np.ndarray:
        """crit_thresholds(offset - rho*carrier, witness) without materializing.

        `rho` is any-shaped nonnegative array; `offset` and `carrier` are
        single vectors.  This is the hot path for metrics of the form
        d = rho * carrier.
        """
        raise NotImplementedError

    # -- structure ----------------------------------------------------------

    def default_interior_witness(self) -> np.ndarray:
        raise NotImplementedError

    def scaling_sup(self, target, direction) -> float:
        """sup{rho >= 0 : target - rho*direction in P}.

        Requires target in P and direction in P, direction != 0; may be
        +inf when -direction is itself in P.
        """
        raise NotImplementedError

    def member_probes(self):
        """Deterministic candidate members (may include non-members for
        representations where membership is only sampled; callers filter)."""
        raise NotImplementedError

    def sample_members(self, rng, count: int) -> np.ndarray:
        """(count, dim) array of members of P (best effort for polyhedral)."""
        raise NotImplementedError

    def pointedness(self):
        """(pointed, method, witness) with witness a line direction on failure."""
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError


class Orthant(Cone):
    """Nonnegative orthant: v in P iff every coordinate is >= 0."""

    def __init__(self, dim: int, margin: float = 0.0):
        self._init(dim, margin)

    def gaps(self, v):
        return np.asarray(v, dtype=np.float64)

    def crit_thresholds(self, base, witness):
        base = np.asarray(base, dtype=np.float64)
        w = as_vector(witness, self.dim)
        if np.any(w <= 0.0):
            raise InputError("witness is not interior to the orthant")
        lead = base.shape[:-1]
        out = kernels.facet_crit(base.reshape(-1, self.dim), w, self.margin)
        return out.reshape(lead)

    def crit_profile(self, rho, offset, carrier, witness):
        offset = as_vector(offset, self.dim)
        carrier = as_vector(carrier, self.dim)
        w = as_vector(witness, self.dim)
        if np.any(w <= 0.0):
            raise InputError("witness is not interior to the orthant")
        coef0 = (self.margin - offset) / w
        coef1 = carrier / w
        return kernels.affine_row_max(rho, coef0, coef1)

    def default_interior_witness(self):
        return np.ones(self.dim)

    def scaling_sup(self, target, direction):
        t = as_vector(target, self.dim)
        d = as_vector(direction, self.dim)
        pos = d > 0
        if not pos.any():
            return float("inf")
        return float((t[pos] / d[pos]).min())

    def member_probes(self):
        probes = [np.ones(self.dim)]
        probes.extend(np.eye(self.dim))
        return probes

    def sample_members(self, rng, count):
        return np.abs(rng.normal(size=(count, self.dim)))

    def pointedness(self):
        return True, "exact", None

    def describe(self):
        return "orthant(%d)" % self.dim


class Polyhedral(Cone):
    """Facet form: v in P iff rows @ v >= 0 componentwise."""

    def __init__(self, rows, margin: float = 0.0):
        rows = np.atleast_2d(np.asarray(rows, dtype=np.float64))
        if rows.ndim != 2 or rows.size == 0:
            raise InputError("facet matrix must be a nonempty 2-D array")
        if not np.all(np.isfinite(rows)):
            raise InputError("facet matrix has non-finite entries")
        norms = np.sqrt((rows * rows).sum(axis=1))
        if np.any(norms == 0.0):
            raise InputError("facet matrix has a zero row")
        self._init(rows.shape[1], margin)
        rows = rows.copy()
        rows.setflags(write=False)
        self.rows = rows

    def gaps(self, v):
        return np.asarray(v, dtype=np.float64) @ self.rows.T

    def crit_thresholds(self, base, witness):
        base = np.asarray(base, dtype=np.float64)
        w = as_vector(witness, self.dim)
        scale = self.rows @ w
        if np.any(scale <= 0.0):
            raise InputError("witness is not interior to the polyhedral cone")
        lead = base.shape[:-1]
        gaps = base.reshape(-1, self.dim) @ self.rows.T
        return kernels.facet_crit(gaps, scale, self.margin).reshape(lead)

    def crit_profile(self, rho, offset, carrier, witness):
        offset = as_vector(offset, self.dim)
        carrier = as_vector(carrier, self.dim)
        w = as_vector(witness, self.dim)
        scale = self.rows @ w
        if np.any(scale <= 0.0):
            raise InputError("witness is not interior to the polyhedral cone")
        coef0 = (self.margin - self.rows @ offset) / scale
        coef1 = (self.rows @ carrier) / scale
        return kernels.affine_row_max(rho, coef0, coef1)

    def default_interior_witness(self):
        ones = np.ones(self.dim)
        if np.all(self.gaps(ones) > 0.0):
            return ones
        # least-squares attempt at rows @ v = 1
        v, *_ = np.linalg.lstsq(self.rows, np.ones(self.rows.shape[0]), rcond=None)
        if np.all(self.gaps(v) > 0.0):
            return v
        raise ConfigError(
            "no default interior witness found for %s; supply one explicitly"
            % self.describe()
        )

    def scaling_sup(self, target, direction):
        t = self.gaps(as_vector(target, self.dim))
        d = self.gaps(as_vector(direction, self.dim))
        pos = d > 0
        if not pos.any():
            return float("inf")
        return float((t[pos] / d[pos]).min())

    def member_probes(self):
        m = self.dim
        cands = [np.ones(m), -np.ones(m)]
        cands.extend(np.eye(m))
        cands.extend(-np.eye(m))
        v, *_ = np.linalg.lstsq(self.rows, np.ones(self.rows.shape[0]), rcond=None)
        cands.append(v)
        for nv in self._nullspace().T:
            cands.append(nv)
            cands.append(-nv)
        return cands

    def _nullspace(self):
        _, s, vt = np.linalg.svd(self.rows)
        tol = max(self.rows.shape) * np.finfo(np.float64).eps * (s[0] if s.size else 0.0)
        rank = int((s > tol).sum())
        return vt[rank:].T  # (dim, dim - rank)

    def sample_members(self, rng, count):
        found = []
        for _ in range(40):
            draws = rng.normal(size=(max(count, 8), self.dim))
            ok = draws[np.all(self.gaps(draws) >= 0.0, axis=-1)]
            found.extend(ok)
            if len(found) >= count:
                break
        if len(found) < count:
            probes = [p for p in self.member_probes() if self.contains(p)]
            scale = np.abs(rng.normal(size=max(1, count - len(found)))) + 0.1
            for i in range(count - len(found)):
                base = probes[i % len(probes)] if probes else np.zeros(self.dim)
                found.append(scale[i] * base)
        return np.asarray(found[:count])

    def pointedness(self):
        null = self._nullspace()
        if null.shape[1] == 0:
            return True, "exact-rank", None
        w = null[:, 0]
        # deterministic sign: first nonzero coordinate positive
        nz = np.nonzero(w)[0][0]
        if w[nz] < 0:
            w = -w
        return False, "exact-rank", w / np.abs(w).max()

    def describe(self):
        return "polyhedral(%d facets, dim %d)" % (self.rows.shape[0], self.dim)


class SecondOrder(Cone):
    """Second-order (ice cream) cone: (t, u) in P iff t >= ||u||_2."""

    def __init__(self, dim: int, margin: float = 0.0):
        if dim < 2:
            raise InputError("second-order cone needs dimension >= 2")
        self._init(dim, margin)

    def gaps(self, v):
        a = np.asarray(v, dtype=np.float64)
        head = a[..., 0]
        tail = a[..., 1:]
        return (head - np.sqrt((tail * tail).sum(axis=-1)))[..., None]

    def crit_thresholds(self, base, witness):
        base = np.asarray(base, dtype=np.float64)
        w = as_vector(witness, self.dim)
        if not self.interior_contains(w):
            raise InputError("witness is not interior to the second-order cone")
        lead = base.shape[:-1]
        out = kernels.soc_crit(base.reshape(-1, self.dim), w, self.margin)
        return out.reshape(lead)

    def crit_profile(self, rho, offset, carrier, witness):
        rho = np.asarray(rho, dtype=np.float64)
        offset = as_vector(offset, self.dim)
        carrier = as_vector(carrier, self.dim)
        w = as_vector(witness, self.dim)
        if not self.interior_contains(w):
            raise InputError("witness is not interior to the second-order cone")
        # base(rho) = offset - rho*carrier; the quadratic coefficients are
        # polynomials in rho, so everything vectorizes without forming base.
        a0 = (offset[0] - self.margin) - rho * carrier[0]
        ot, ct, wt = offset[1:], carrier[1:], w[1:]
        w0 = w[0]
        bw = float(ot @ wt) - rho * float(ct @ wt)
        bb = float(ot @ ot) - 2.0 * rho * float(ot @ ct) + rho * rho * float(ct @ ct)
        c2 = w0 * w0 - float(wt @ wt)
        c1 = 2.0 * (a0 * w0 - bw)
        c0 = a0 * a0 - bb
        disc = c1 * c1 - 4.0 * c2 * c0
        root = (-c1 + np.sqrt(np.maximum(disc, 0.0))) / (2.0 * c2)
        t_quad = np.where(disc >= 0.0, root, -np.inf)
        return np.maximum(-a0 / w0, t_quad)

    def default_interior_witness(self):
        w = np.zeros(self.dim)
        w[0] = 1.0
        return w

    def scaling_sup(self, target, direction):
        t = as_vector(target, self.dim)
        d = as_vector(direction, self.dim)
        if self.contains(-d):
            return float("inf")
        lo, hi = 0.0, 1.0
        for _ in range(200):
            if not self.contains(t - hi * d):
                break
            lo, hi = hi, hi * 2.0
        else:
            return float("inf")
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if self.contains(t - mid * d):
                lo = mid
            else:
                hi = mid
        return lo

    def member_probes(self):
        probes = [self.default_interior_witness()]
        for c in range(1, self.dim):
            v = np.zeros(self.dim)
            v[0] = 1.0
            v[c] = 0.5
            probes.append(v)
            v2 = v.copy()
            v2[c] = -0.5
            probes.append(v2)
        return probes

    def sample_members(self, rng, count):
        tail = rng.normal(size=(count, self.dim - 1))
        slack = np.abs(rng.normal(size=count))
        head = np.sqrt((tail * tail).sum(axis=1)) + slack
        return np.concatenate([head[:, None], tail], axis=1)

    def pointedness(self):
        return True, "exact", None

    def describe(self):
        return "second-order(%d)" % self.dim


class ProductCone(Cone):
    """Product of cones on concatenated coordinates."""

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise InputError("product cone needs at least one factor")
        dim = sum(f.dim for f in factors)
        # interior tests delegate to the factors, each with its own margin
        self._init(dim, max(f.margin for f in factors))
        self.factors = factors
        starts = np.cumsum([0] + [f.dim for f in factors])
        self._slices = [slice(starts[i], starts[i + 1]) for i in range(len(factors))]

    def gaps(self, v):
        a = np.asarray(v, dtype=np.float64)
        return np.concatenate(
            [f.gaps(a[..., s]) for f, s in zip(self.factors, self._slices)], axis=-1
        )

    def interior_contains(self, v):
        # factor margins may differ from the product margin; delegate
        a = self._check(v)
        res = None
        for f, s in zip(self.factors, self._slices):
            r = f.interior_contains(a[..., s])
            res = r if res is None else np.logical_and(res, r)
        return bool(res) if np.ndim(res) == 0 else res

    def crit_thresholds(self, base, witness):
        base = np.asarray(base, dtype=np.float64)
        w = as_vector(witness, self.dim)
        out = None
        for f, s in zip(self.factors, self._slices):
            t = f.crit_thresholds(base[..., s], w[s])
            out = t if out is None else np.maximum(out, t)
        return out

    def crit_profile(self, rho, offset, carrier, witness):
        offset = as_vector(offset, self.dim)
        carrier = as_vector(carrier, self.dim)
        w = as_vector(witness, self.dim)
        out = None
        for f, s in zip(self.factors, self._slices):
            t = f.crit_profile(rho, offset[s], carrier[s], w[s])
            out = t if out is None else np.maximum(out, t)
        return out

    def default_interior_witness(self):
        return np.concatenate([f.default_interior_witness() for f in self.factors])

    def scaling_sup(self, target, direction):
        t = as_vector(target, self.dim)
        d = as_vector(direction, self.dim)
        return min(
            f.scaling_sup(t[s], d[s]) for f, s in zip(self.factors, self._slices)
        )

    def member_probes(self):
        try:
            probes = [self.default_interior_witness()]
        except ConfigError:
            probes = []
        for f, s in zip(self.factors, self._slices):
            for p in f.member_probes():
                v = np.zeros(self.dim)
                v[s] = p
                probes.append(v)
        return probes

    def sample_members(self, rng, count):
        return np.concatenate(
            [f.sample_members(rng, count) for f in self.factors], axis=1
        )

    def pointedness(self):
        for f, s in zip(self.factors, self._slices):
            ok, method, w = f.pointedness()
            if not ok:
                v = np.zeros(self.dim)
                v[s] = w
                return False, method, v
        methods = {f.pointedness()[1] for f in self.factors}
        return True, "exact-rank" if "exact-rank" in methods else "exact", None

    def describe(self):
        return "product(%s)" % ", ".join(f.describe() for f in self.factors)


# ---------------------------------------------------------------------------
# Cone axiom validation
# ---------------------------------------------------------------------------

_CLOSURE_TOL = 1e-9  # float rounding allowance when recombining members


def _nontrivial_check(cone: Cone, rng, trials: int) -> CheckResult:
    exact = not _has_polyhedral(cone)
    candidates = [p for p in cone.member_probes()]
    if not exact:
        candidates.extend(rng.normal(size=(trials, cone.dim)))
    for v in candidates:
        v = np.asarray(v, dtype=np.float64)
        if np.any(v != 0.0) and cone.contains(v):
            return CheckResult(
                name="nontrivial",
                passed=True,
                method="exact" if exact else "sampled",
                witness=as_tuple(v),
            )
    return CheckResult(
        name="nontrivial",
        passed=False,
        method="exact" if exact else "sampled",
        detail="no nonzero member found; the represented set may be {0}",
    )


def _has_polyhedral(cone: Cone) -> bool:
    if isinstance(cone, Polyhedral):
        return True
    if isinstance(cone, ProductCone):
        return any(_has_polyhedral(f) for f in cone.factors)
    return False


def _closure_check(cone: Cone, rng, trials: int) -> CheckResult:
    vs = cone.sample_members(rng, trials)
    ws = cone.sample_members(rng, trials)
    coef = np.abs(rng.normal(size=(trials, 2)))
    combos = coef[:, :1] * vs + coef[:, 1:] * ws
    gaps = cone.gaps(combos)
    bad = np.nonzero(np.any(gaps < -_CLOSURE_TOL, axis=-1))[0]
    if bad.size:
        i = int(bad[0])
        return CheckResult(
            name="closed-under-nonneg-combinations",
            passed=False,
            method="sampled",
            witness=as_tuple(combos[i]),
            detail="a*v + b*w left the cone (a=%.17g, b=%.17g)"
            % (coef[i, 0], coef[i, 1]),
        )
    return CheckResult(
        name="closed-under-nonneg-combinations",
        passed=True,
        method="sampled",
        detail="%d random nonnegative combinations stayed in the cone" % trials,
    )


def _pointed_check(cone: Cone) -> CheckResult:
    ok, method, witness = cone.pointedness()
    if ok:
        return CheckResult(name="pointed", passed=True, method=method)
    return CheckResult(
        name="pointed",
        passed=False,
        method=method,
        witness=as_tuple(witness),
        detail="witness v has both v and -v in the cone",
    )


def validate_cone(cone: Cone, sampler_seed: int, trials: int) -> ValidationReport:
    """Check nontriviality, closure under nonnegative combinations, and
    pointedness; failures are report entries, never exceptions."""
    if trials < 1:
        raise InputError("trials must be >= 1")
    rng = np.random.default_rng(sampler_seed)
    checks = (
        _nontrivial_check(cone, rng, trials),
        _closure_check(cone, rng, trials),
        _pointed_check(cone),
    )
    return ValidationReport(
        subject=cone.describe(), checks=checks, seed=sampler_seed, trials=trials
    )


# ---------------------------------------------------------------------------
# Normality and dominated-pair constants
# ---------------------------------------------------------------------------


def _sample_ordered_pairs(cone: Cone, rng, trials: int):
    """(x, y) samples with 0 <= x <= y, including the x = y probes."""
    ys = cone.sample_members(rng, trials)
    if isinstance(cone, Orthant):
        xs = rng.uniform(0.0, 1.0, size=ys.shape) * ys
    else:
        xs = rng.uniform(0.0, 1.0, size=(ys.shape[0], 1)) * ys
    probe_y = [p for p in cone.member_probes() if cone.contains(p)]
    ys = np.concatenate([ys, np.asarray(probe_y)]) if probe_y else ys
    xs = np.concatenate([xs, np.asarray(probe_y)]) if probe_y else xs
    return xs, ys


def normal_constant(
    cone: Cone,
    norm: NormSpec,
    mode: str = "exact-if-known",
    sampler_seed: int = 0,
    trials: int = 1000,
) -> ConstantEstimate:
    """Constant K with 0 <= x <= y implying norm(x) <= K*norm(y).

    Exact mode covers the orthant with any catalogued norm (all are
    monotone on the orthant, so K = 1).  Empirical mode reports the
    sampled supremum of norm(x)/norm(y), a lower bound of the true K.
    """
    if mode == "exact-if-known":
        if isinstance(cone, Orthant) and norm.kind in MONOTONE_KINDS:
            return ConstantEstimate(role="normal", value=1.0, provenance="exact-derived")
        raise NoExactConstant(
            "no exact normal constant catalogued for %s with %s norm; "
            "use empirical mode" % (cone.describe(), norm.kind)
        )
    if mode != "empirical":
        raise InputError("mode must be 'exact-if-known' or 'empirical'")
    if trials < 1:
        raise InputError("trials must be >= 1 in empirical mode")
    rng = np.random.default_rng(sampler_seed)
    xs, ys = _sample_ordered_pairs(cone, rng, trials)
    ny = norm(ys)
    nx = norm(xs)
    keep = ny > 0.0
    best = float((nx[keep] / ny[keep]).max()) if keep.any() else 0.0
    return ConstantEstimate(
        role="normal",
        value=best,
        provenance="empirical-lower-bound",
        trials=trials,
        seed=sampler_seed,
    )


def _sample_dominated_pairs(cone: Cone, rng, trials: int):
    """(p, c) samples with p <= c, -p <= c, c in P, plus p = +-c probes."""
    cs = cone.sample_members(rng, trials)
    if isinstance(cone, Orthant):
        ps = rng.uniform(-1.0, 1.0, size=cs.shape) * cs
    else:
        ps = rng.uniform(-1.0, 1.0, size=(cs.shape[0], 1)) * cs
    probe_c = [p for p in cone.member_probes() if cone.contains(p)]
    if probe_c:
        pc = np.asarray(probe_c)
        cs = np.concatenate([cs, pc, pc])
        ps = np.concatenate([ps, pc, -pc])
    return ps, cs


def star_constant(
    cone: Cone,
    norm: NormSpec,
    mode: str = "exact-if-known",
    sampler_seed: int = 0,
    trials: int = 1000,
) -> ConstantEstimate:
    """Constant k with p <= c and -p <= c (c in P) implying norm(p) <= k*norm(c).

    Exact mode is catalogued only for the orthant with the sup norm
    (componentwise |p_i| <= c_i gives k = 1); everything else reports a
    sampled lower bound.
    """
    if mode == "exact-if-known":
        if isinstance(cone, Orthant) and norm.kind == "sup":
            return ConstantEstimate(role="star", value=1.0, provenance="exact-derived")
        raise NoExactConstant(
            "no exact dominated-pair constant catalogued for %s with %s norm; "
            "use empirical mode" % (cone.describe(), norm.kind)
        )
    if mode != "empirical":
        raise InputError("mode must be 'exact-if-known' or 'empirical'")
    if trials < 1:
        raise InputError("trials must be >= 1 in empirical mode")
    rng = np.random.default_rng(sampler_seed)
    ps, cs = _sample_dominated_pairs(cone, rng, trials)
    nc = norm(cs)
    npv = norm(ps)
    keep = nc > 0.0
    best = float((npv[keep] / nc[keep]).max()) if keep.any() else 0.0
    return ConstantEstimate(
        role="star",
        value=best,
        provenance="empirical-lower-bound",
        trials=trials,
        seed=sampler_seed,
    )


def verify_star_condition(
    cone: Cone,
    norm: NormSpec,
    k: float,
    sampler_seed: int = 0,
    trials: int = 1000,
) -> StarConditionReport:
    """Sample dominated pairs and report every norm(p) > k*norm(c) violation."""
    if k <= 0:
        raise InputError("k must be > 0")
    if trials < 1:
        raise InputError("trials must be >= 1")
    rng = np.random.default_rng(sampler_seed)
    ps, cs = _sample_dominated_pairs(cone, rng, trials)
    npv = norm(ps)
    nc = norm(cs)
    bad = np.nonzero(npv > k * nc)[0]
    violations = tuple(
        StarViolation(
            p=as_tuple(ps[i]), c=as_tuple(cs[i]), p_norm=float(npv[i]), c_norm=float(nc[i])
        )
        for i in bad[:16]
    )
    return StarConditionReport(
        k=float(k), trials=trials, seed=sampler_seed, violations=violations
    )
