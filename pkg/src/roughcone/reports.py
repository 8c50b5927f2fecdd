"""Result containers shared by the validators and checkers.

Everything in here is a plain frozen dataclass holding only hashable
primitives (floats, ints, strings, tuples), so instances compare and
serialize deterministically.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field


def as_tuple(v):
    """Coerce a vector-like to a tuple of floats (report-friendly form)."""
    try:
        return tuple(float(x) for x in v)
    except TypeError:
        return (float(v),)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a single validated property."""

    name: str
    passed: bool
    method: str = "exact"
    witness: tuple | None = None
    detail: str = ""

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class ValidationReport:
    """Pass/fail results for a set of axioms on one subject."""

    subject: str
    checks: tuple[CheckResult, ...]
    seed: int | None = None
    trials: int | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return tuple(c for c in self.checks if not c.passed)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "seed": self.seed,
            "trials": self.trials,
        }


@dataclass(frozen=True)
class ConstantEstimate:
    """A cone/norm constant with its provenance.

    Empirical values are lower bounds of the true supremum; downstream
    checks that need the true constant must refuse them unless
    explicitly overridden.
    """

    role: str  # "normal" | "star"
    value: float
    provenance: str  # "exact-derived" | "empirical-lower-bound"
    trials: int = 0
    seed: int | None = None

    @property
    def exact(self) -> bool:
        return self.provenance == "exact-derived"

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class StarViolation:
    p: tuple
    c: tuple
    p_norm: float
    c_norm: float

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class StarConditionReport:
    """Sampled verification of the dominated-pair norm bound."""

    k: float
    trials: int
    seed: int
    violations: tuple[StarViolation, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self):
        return {
            "k": self.k,
            "trials": self.trials,
            "seed": self.seed,
            "passed": self.passed,
            "violations": [v.to_dict() for v in self.violations],
        }
