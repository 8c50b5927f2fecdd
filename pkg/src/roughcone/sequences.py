"""Deterministic sequence generators over a point space.

Indexing is 1-based throughout.  Every family is a pure function of its
parameters: the same (spec, n) always yields the same point, including
the seeded random walk.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError

__all__ = [
    "Oscillating",
    "Decay",
    "OscDecay",
    "BoundedWalk",
    "TableSequence",
    "generate",
]


def _pt(x):
    arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if not np.all(np.isfinite(arr)):
        raise InputError("sequence parameters must be finite")
    return arr


class SequenceSpec:
    """Base: a deterministic generator of points, indexed from 1."""

    length: int | None = None  # None = unbounded

    def prefix(self, n: int) -> np.ndarray:
        """The first n points as an (n, q) array."""
        raise NotImplementedError

    def point(self, n: int):
        if n < 1:
            raise InputError("sequence indices start at 1")
        if self.length is not None and n > self.length:
            raise InputError("index %d beyond table length %d" % (n, self.length))
        return self.prefix(n)[-1]

    def describe(self) -> str:
        raise NotImplementedError


class Oscillating(SequenceSpec):
    """x_n = a if n is even else b."""

    def __init__(self, a, b):
        self.a = _pt(a)
        self.b = _pt(b)
        if self.a.shape != self.b.shape:
            raise InputError("oscillation endpoints must have equal dimension")

    def prefix(self, n):
        out = np.empty((n, self.a.shape[0]))
        out[0::2] = self.b  # odd 1-based indices
        out[1::2] = self.a
        return out

    def describe(self):
        return "oscillating(%s, %s)" % (list(self.a), list(self.b))


class Decay(SequenceSpec):
    """x_n = center + amplitude * ratio**n * direction."""

    def __init__(self, center, direction, amplitude: float, ratio: float):
        self.center = _pt(center)
        self.direction = _pt(direction)
        if self.center.shape != self.direction.shape:
            raise InputError("center and direction must have equal dimension")
        if not (0.0 < ratio < 1.0):
            raise InputError("decay ratio must lie in (0, 1)")
        self.amplitude = float(amplitude)
        self.ratio = float(ratio)

    def prefix(self, n):
        ns = np.arange(1, n + 1)
        scale = self.amplitude * self.ratio ** ns
        return self.center[None, :] + scale[:, None] * self.direction[None, :]

    def describe(self):
        return "decay(amplitude=%g, ratio=%g)" % (self.amplitude, self.ratio)


class OscDecay(SequenceSpec):
    """Oscillation about a center with a prescribed amplitude profile.

    x_n = center + s_n * a_n * direction with s_n alternating sign and
    a_n drawn from `amplitudes`, cycled when n runs past its length.
    With `direction` at unit base-metric length, the distance profile to
    the center is exactly |a_n|.
    """

    def __init__(self, center, direction, amplitudes):
        self.center = _pt(center)
        self.direction = _pt(direction)
        if self.center.shape != self.direction.shape:
            raise InputError("center and direction must have equal dimension")
        self.amplitudes = tuple(float(a) for a in amplitudes)
        if not self.amplitudes:
            raise InputError("amplitude profile must be nonempty")
        if not all(np.isfinite(self.amplitudes)):
            raise InputError("amplitude profile must be finite")

    def prefix(self, n):
        amps = np.asarray(self.amplitudes)
        idx = np.arange(n) % amps.shape[0]
        signs = np.where(np.arange(1, n + 1) % 2 == 0, 1.0, -1.0)
        scale = signs * amps[idx]
        return self.center[None, :] + scale[:, None] * self.direction[None, :]

    def describe(self):
        return "osc-decay(%d amplitudes)" % len(self.amplitudes)


class BoundedWalk(SequenceSpec):
    """Seeded random walk reflected into the euclidean ball B(center, radius).

    Steps are uniform in [-step_bound, step_bound]^q; a step that exits
    the ball is mirrored back across the sphere.
    """

    def __init__(self, center, step_bound: float, radius: float, seed: int):
        self.center = _pt(center)
        if step_bound <= 0:
            raise InputError("step bound must be > 0")
        if radius <= 0:
            raise InputError("ball radius must be > 0")
        self.step_bound = float(step_bound)
        self.radius = float(radius)
        self.seed = int(seed)

    def prefix(self, n):
        q = self.center.shape[0]
        rng = np.random.default_rng(self.seed)
        steps = rng.uniform(-self.step_bound, self.step_bound, size=(n, q))
        out = np.empty((n, q))
        pos = self.center.copy()
        out[0] = pos
        for i in range(1, n):
            pos = pos + steps[i]
            off = pos - self.center
            dist = float(np.sqrt((off * off).sum()))
            if dist > self.radius:
                scale = (2.0 * self.radius - dist) / dist
                if scale < 0.0:  # a huge step; clamp to the sphere
                    scale = self.radius / dist
                pos = self.center + scale * off
            out[i] = pos
        return out

    def describe(self):
        return "bounded-walk(radius=%g, step=%g, seed=%d)" % (
            self.radius,
            self.step_bound,
            self.seed,
        )


class TableSequence(SequenceSpec):
    """A finite, explicitly listed sequence."""

    def __init__(self, points, labeled: bool = False):
        if labeled:
            self.points = np.asarray([int(p) for p in points], dtype=np.intp)
        else:
            pts = np.asarray(points, dtype=np.float64)
            if pts.ndim == 1:
                pts = pts[:, None]
            if not np.all(np.isfinite(pts)):
                raise InputError("table sequence has non-finite points")
            self.points = pts
        if self.points.shape[0] == 0:
            raise InputError("table sequence must be nonempty")
        self.labeled = bool(labeled)
        self.length = int(self.points.shape[0])

    def prefix(self, n):
        if n > self.length:
            raise InputError("index %d beyond table length %d" % (n, self.length))
        return self.points[:n]

    def describe(self):
        return "table-sequence(%d points)" % self.length


def generate(seq: SequenceSpec, n: int):
    """The n-th point of the sequence (1-based)."""
    return seq.point(n)
