"""Cone metric spaces: vector-valued metrics d : X x X -> R^m.

Three rule families are built in:

* lifted       - d(x, y) = rho(x, y) * e for a real base metric rho
                 (euclidean / sup / discrete) and a fixed nonzero cone
                 member e.
* two-component - X = R, d(x, y) = (|x - y|, alpha*|x - y|) with the
                 2-orthant; the canonical fully hand-checkable space.
* table        - a finite labeled space with explicitly stored values,
                 validated eagerly over every pair and triple.

The first two have a scalar profile (d = rho * carrier), which the
analysis layer exploits: every pairwise check reduces to arithmetic on
the (N, N) base-metric matrix instead of an (N, N, m) tensor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .cones import Cone, NormSpec, Orthant, as_vector
from .errors import DimensionMismatch, InputError
from .reports import CheckResult, ValidationReport, as_tuple

__all__ = [
    "RealVectorSpace",
    "FiniteLabeledSpace",
    "ConeMetricSpec",
    "LiftedRule",
    "TwoComponentRule",
    "TableRule",
    "eval_d",
    "validate_metric",
    "builtin_space",
]

BASE_METRICS = {"euclidean": kernels.EUCLIDEAN, "sup": kernels.SUP,
                "discrete": kernels.DISCRETE}

EQ_TOL = 1e-12  # per-coordinate absolute tolerance for vector equality


# ---------------------------------------------------------------------------
# Point spaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RealVectorSpace:
    """Points are vectors in R^q."""

    q: int

    def __post_init__(self):
        if self.q < 1:
            raise InputError("point dimension must be >= 1")

    def as_point(self, x) -> np.ndarray:
        return as_vector(x, self.q)

    def as_points(self, xs) -> np.ndarray:
        arr = np.asarray(xs, dtype=np.float64)
        if arr.ndim == 1:
            if self.q == 1:
                arr = arr[:, None]
            else:
                raise DimensionMismatch(
                    "points must have %d coordinates" % self.q
                )
        if arr.ndim != 2 or arr.shape[1] != self.q:
            raise DimensionMismatch(
                "expected points of dimension %d, got shape %s" % (self.q, arr.shape)
            )
        if not np.all(np.isfinite(arr)):
            raise InputError("points contain non-finite coordinates")
        return arr

    def describe(self):
        return "R^%d" % self.q


@dataclass(frozen=True)
class FiniteLabeledSpace:
    """Points are the labels 0 .. n-1."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InputError("a labeled space needs at least one point")

    def as_point(self, x) -> int:
        i = int(x)
        if i != x or not (0 <= i < self.n):
            raise InputError("label %r outside 0..%d" % (x, self.n - 1))
        return i

    def as_points(self, xs) -> np.ndarray:
        return np.asarray([self.as_point(x) for x in xs], dtype=np.intp)

    def describe(self):
        return "labels(%d)" % self.n


# ---------------------------------------------------------------------------
# Rules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LiftedRule:
    base: str
    witness: tuple[float, ...]

    def describe(self):
        return "lifted(%s, e=%s)" % (self.base, list(self.witness))


@dataclass(frozen=True)
class TwoComponentRule:
    alpha: float

    def describe(self):
        return "two-component(alpha=%g)" % self.alpha


class TableRule:
    def __init__(self, values):
        values = np.asarray(values, dtype=np.float64)
        if values.ndim != 3 or values.shape[0] != values.shape[1]:
            raise InputError("table values must have shape (n, n, m)")
        if not np.all(np.isfinite(values)):
            raise InputError("table has non-finite entries")
        values = values.copy()
        values.setflags(write=False)
        self.values = values

    def describe(self):
        return "table(%d points)" % self.values.shape[0]


class ConeMetricSpec:
    """A point space plus a map d : X x X -> E claimed to satisfy the
    cone-metric axioms.  Instances are immutable after construction;
    use `builtin_space` for eagerly validated ones."""

    def __init__(self, space, dim: int, norm: NormSpec, cone: Cone, rule):
        if cone.dim != dim:
            raise DimensionMismatch(
                "cone dimension %d must match ambient dimension %d" % (cone.dim, dim)
            )
        self.space = space
        self.dim = int(dim)
        self.norm = norm
        self.cone = cone
        self.rule = rule
        self._carrier = None
        self._rho_kind = None
        if isinstance(rule, LiftedRule):
            e = as_vector(rule.witness, dim)
            if not cone.contains(e):
                raise InputError("lifted witness must belong to the cone")
            if not np.any(e != 0.0):
                raise InputError("lifted witness must be nonzero")
            if rule.base not in BASE_METRICS:
                raise InputError("unknown base metric %r" % (rule.base,))
            if rule.base != "discrete" and not isinstance(space, RealVectorSpace):
                raise InputError(
                    "base metric %r needs a real-vector point space" % (rule.base,)
                )
            self._carrier = e
            self._rho_kind = BASE_METRICS[rule.base]
        elif isinstance(rule, TwoComponentRule):
            if rule.alpha < 0:
                raise InputError("two-component alpha must be >= 0")
            if dim != 2 or not isinstance(space, RealVectorSpace) or space.q != 1:
                raise InputError("two-component rule needs X = R and E = R^2")
            self._carrier = np.array([1.0, rule.alpha])
            self._rho_kind = kernels.EUCLIDEAN
        elif isinstance(rule, TableRule):
            if not isinstance(space, FiniteLabeledSpace):
                raise InputError("table rule needs a finite labeled space")
            if rule.values.shape != (space.n, space.n, dim):
                raise DimensionMismatch(
                    "table shape %s does not match (n, n, m) = (%d, %d, %d)"
                    % (rule.values.shape, space.n, space.n, dim)
                )
        else:
            raise InputError("unknown metric rule %r" % (rule,))

    # -- scalar profile fast path -------------------------------------------

    @property
    def carrier(self):
        """d = rho * carrier when not None (lifted / two-component rules)."""
        return self._carrier

    def pairwise_rho(self, points) -> np.ndarray:
        if self._carrier is None:
            raise InputError("rule has no scalar profile")
        return kernels.pairwise_distance(points, self._rho_kind)

    def rho_to(self, points, x) -> np.ndarray:
        """Base-metric distances from each point to the single point x."""
        if self._carrier is None:
            raise InputError("rule has no scalar profile")
        pts = np.asarray(points, dtype=np.float64)
        x = np.asarray(x, dtype=np.float64)
        diff = pts - x[None, :]
        if self._rho_kind == kernels.EUCLIDEAN:
            return np.sqrt((diff * diff).sum(axis=1))
        if self._rho_kind == kernels.SUP:
            return np.abs(diff).max(axis=1)
        return np.any(pts != x[None, :], axis=1).astype(np.float64)

    # -- generic evaluation ---------------------------------------------------

    def eval(self, x, y) -> np.ndarray:
        x = self.space.as_point(x)
        y = self.space.as_point(y)
        if isinstance(self.rule, TableRule):
            return self.rule.values[x, y].copy()
        xs = np.atleast_1d(np.asarray(x, dtype=np.float64))
        ys = np.atleast_1d(np.asarray(y, dtype=np.float64))
        diff = xs - ys
        if self._rho_kind == kernels.EUCLIDEAN:
            rho = float(np.sqrt((diff * diff).sum()))
        elif self._rho_kind == kernels.SUP:
            rho = float(np.abs(diff).max())
        else:
            rho = 1.0 if np.any(xs != ys) else 0.0
        return rho * self._carrier

    def distance_tensor(self, points) -> np.ndarray:
        """(N, N, m) tensor of all pairwise metric values."""
        if isinstance(self.rule, TableRule):
            idx = np.asarray(points, dtype=np.intp)
            return self.rule.values[np.ix_(idx, idx)]
        rho = self.pairwise_rho(points)
        return rho[..., None] * self._carrier

    def distances_to(self, points, x) -> np.ndarray:
        """(N, m) metric values d(points[i], x)."""
        if isinstance(self.rule, TableRule):
            idx = np.asarray(points, dtype=np.intp)
            return self.rule.values[idx, self.space.as_point(x)]
        return self.rho_to(points, self.space.as_point(x))[:, None] * self._carrier

    def elementwise_d(self, xs, ys) -> np.ndarray:
        """(N, m) metric values d(xs[i], ys[i]) for paired point arrays."""
        if isinstance(self.rule, TableRule):
            ix = np.asarray(xs, dtype=np.intp)
            iy = np.asarray(ys, dtype=np.intp)
            return self.rule.values[ix, iy]
        a = np.asarray(xs, dtype=np.float64)
        b = np.asarray(ys, dtype=np.float64)
        diff = a - b
        if self._rho_kind == kernels.EUCLIDEAN:
            rho = np.sqrt((diff * diff).sum(axis=1))
        elif self._rho_kind == kernels.SUP:
            rho = np.abs(diff).max(axis=1)
        else:
            rho = np.any(a != b, axis=1).astype(np.float64)
        return rho[:, None] * self._carrier

    def describe(self):
        return "%s over %s in R^%d [%s]" % (
            self.rule.describe(),
            self.space.describe(),
            self.dim,
            self.cone.describe(),
        )


def eval_d(spec: ConeMetricSpec, x, y) -> np.ndarray:
    """The metric value d(x, y) as a vector in the ambient space."""
    return spec.eval(x, y)


# ---------------------------------------------------------------------------
# Axiom validation
# ---------------------------------------------------------------------------


def _points_equal(space, a, b) -> bool:
    if isinstance(space, FiniteLabeledSpace):
        return int(a) == int(b)
    return bool(np.array_equal(np.atleast_1d(a), np.atleast_1d(b)))


def validate_metric(spec: ConeMetricSpec, sample, tol: float = EQ_TOL) -> ValidationReport:
    """Check nonnegativity/identity, symmetry, and the cone triangle
    inequality on every pair and ordered triple of `sample`.

    Rule-based specs must be symmetric bit for bit; tables get `tol`
    slack.  The triangle check allows `tol` on the facet gaps, since a
    valid metric may sit exactly on the cone boundary after rounding.
    """
    pts = list(sample)
    if len(pts) < 3:
        raise InputError("need at least 3 sample points for triangle checks")
    n = len(pts)
    d = [[spec.eval(pts[i], pts[j]) for j in range(n)] for i in range(n)]
    table = isinstance(spec.rule, TableRule)

    nonneg = CheckResult("nonnegativity", True, method="sampled")
    identity = CheckResult("identity", True, method="sampled")
    symmetry = CheckResult("symmetry", True, method="sampled")
    triangle = CheckResult("triangle", True, method="sampled")

    for i in range(n):
        for j in range(n):
            if not spec.cone.contains(d[i][j]):
                nonneg = CheckResult(
                    "nonnegativity", False, method="sampled",
                    witness=(i, j, as_tuple(d[i][j])),
                    detail="d(x, y) is not in the cone",
                )
            zero = bool(np.all(np.abs(d[i][j]) <= tol))
            equal = _points_equal(spec.space, pts[i], pts[j])
            if zero != equal:
                identity = CheckResult(
                    "identity", False, method="sampled",
                    witness=(i, j, as_tuple(d[i][j])),
                    detail="d vanishes exactly on equal points only",
                )
            gap = np.abs(d[i][j] - d[j][i])
            if (table and np.any(gap > tol)) or (not table and np.any(gap != 0.0)):
                symmetry = CheckResult(
                    "symmetry", False, method="sampled",
                    witness=(i, j, as_tuple(d[i][j]), as_tuple(d[j][i])),
                    detail="d(x, y) != d(y, x)",
                )

    for i in range(n):
        for j in range(n):
            for k in range(n):
                defect = d[i][k] + d[k][j] - d[i][j]
                gaps = spec.cone.gaps(defect)
                if np.any(gaps < -tol):
                    triangle = CheckResult(
                        "triangle", False, method="sampled",
                        witness=(i, k, j, as_tuple(defect)),
                        detail="d(x, y) exceeds d(x, z) + d(z, y) in the cone order",
                    )

    return ValidationReport(
        subject=spec.describe(),
        checks=(nonneg, identity, symmetry, triangle),
        trials=n,
    )


# ---------------------------------------------------------------------------
# Built-in spaces
# ---------------------------------------------------------------------------


def _canonical_sample(spec: ConeMetricSpec):
    if isinstance(spec.space, FiniteLabeledSpace):
        return list(range(spec.space.n))
    rng = np.random.default_rng(0)
    pts = list(rng.normal(size=(6, spec.space.q)))
    pts.append(pts[0].copy())  # duplicate exercises the identity axiom
    return pts


def builtin_space(name: str, **params) -> ConeMetricSpec:
    """Construct one of the named spaces and validate it eagerly.

    lifted:        q=1, base="euclidean", witness=(1, 1), cone=Orthant,
                   norm=sup  (all overridable)
    two-component: alpha (required >= 0)
    table:         values (n, n, m), cone=Orthant(m), norm=sup
    """
    if name == "lifted":
        q = int(params.pop("q", 1))
        base = params.pop("base", "euclidean")
        witness = np.asarray(params.pop("witness", (1.0, 1.0)), dtype=np.float64)
        cone = params.pop("cone", None) or Orthant(witness.shape[0])
        norm = params.pop("norm", None) or NormSpec.sup()
        _reject_extra(params)
        spec = ConeMetricSpec(
            RealVectorSpace(q), cone.dim, norm, cone,
            LiftedRule(base=base, witness=tuple(float(w) for w in witness)),
        )
    elif name == "two-component":
        alpha = float(params.pop("alpha"))
        norm = params.pop("norm", None) or NormSpec.sup()
        margin = float(params.pop("margin", 0.0))
        _reject_extra(params)
        spec = ConeMetricSpec(
            RealVectorSpace(1), 2, norm, Orthant(2, margin=margin),
            TwoComponentRule(alpha=alpha),
        )
    elif name == "table":
        values = np.asarray(params.pop("values"), dtype=np.float64)
        if values.ndim != 3:
            raise InputError("table values must have shape (n, n, m)")
        cone = params.pop("cone", None) or Orthant(values.shape[2])
        norm = params.pop("norm", None) or NormSpec.sup()
        _reject_extra(params)
        spec = ConeMetricSpec(
            FiniteLabeledSpace(values.shape[0]), cone.dim, norm, cone,
            TableRule(values),
        )
    else:
        raise InputError("unknown built-in space %r" % (name,))

    report = validate_metric(spec, _canonical_sample(spec))
    if not report.passed:
        failed = ", ".join(c.name for c in report.failures())
        raise InputError(
            "metric axioms fail for %s: %s" % (spec.describe(), failed)
        )
    return spec


def _reject_extra(params):
    if params:
        raise InputError("unknown parameters: %s" % sorted(params))
