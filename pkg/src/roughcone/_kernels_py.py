"""Pure-numpy implementations of the hot kernels.

These are the reference semantics for `roughcone._speedups`; the two
backends must agree bit-for-bit on float64 inputs.  All functions take
C-contiguous float64 arrays (the dispatcher in `roughcone.kernels`
coerces).

Distance kinds: 0 = euclidean, 1 = sup, 2 = discrete.
"""

import numpy as np

EUCLIDEAN = 0
SUP = 1
DISCRETE = 2


def pairwise_distance(pts, kind):
    """All-pairs distance matrix of the rows of `pts` ((N, q) -> (N, N))."""
    n, q = pts.shape
    if kind == DISCRETE:
        out = np.zeros((n, n))
        for c in range(q):
            col = pts[:, c]
            out = np.maximum(out, (col[:, None] != col[None, :]).astype(np.float64))
        return out
    if kind == EUCLIDEAN:
        acc = np.zeros((n, n))
        for c in range(q):
            diff = pts[:, c][:, None] - pts[:, c][None, :]
            acc += diff * diff
        return np.sqrt(acc)
    if kind == SUP:
        acc = np.zeros((n, n))
        for c in range(q):
            np.maximum(acc, np.abs(pts[:, c][:, None] - pts[:, c][None, :]), out=acc)
        return acc
    raise ValueError("unknown distance kind %r" % (kind,))


def facet_crit(gaps, scale, delta):
    """Critical scalars for facet inequalities.

    Row p of `gaps` holds the facet values of some vector v_p; `scale`
    holds the (positive) facet values of the schedule witness.  Returns,
    per row, the infimum t* such that every facet of v_p + t*e clears
    `delta`:  t*_p = max_r (delta - gaps[p, r]) / scale[r].
    """
    return ((delta - gaps) / scale).max(axis=1)


def soc_crit(base, witness, delta):
    """Critical scalars for the second-order cone.

    For each row b of `base`, the margin f(t) = head(b + t*w) -
    ||tail(b + t*w)|| is concave and eventually increasing (w interior),
    so {t : f(t) > delta} = (t*, inf).  Solving f(t) = delta reduces to a
    quadratic with positive leading coefficient.
    """
    m = base.shape[1]
    b0 = base[:, 0]
    w0 = witness[0]
    a0 = b0 - delta
    # head positivity: a0 + t*w0 > 0  iff  t > -a0/w0
    t_head = -a0 / w0
    # sequential accumulation (matches the compiled backend bit for bit)
    ww = 0.0
    for c in range(1, m):
        ww += witness[c] * witness[c]
    bw = np.zeros(base.shape[0])
    bb = np.zeros(base.shape[0])
    for c in range(1, m):
        bw += base[:, c] * witness[c]
        bb += base[:, c] * base[:, c]
    c2 = w0 * w0 - ww
    c1 = 2.0 * (a0 * w0 - bw)
    c0 = a0 * a0 - bb
    disc = c1 * c1 - 4.0 * c2 * c0
    root = (-c1 + np.sqrt(np.maximum(disc, 0.0))) / (2.0 * c2)
    t_quad = np.where(disc >= 0.0, root, -np.inf)
    return np.maximum(t_head, t_quad)


def affine_row_max(rho, coef0, coef1):
    """Elementwise max_r(coef0[r] + rho * coef1[r]) over an array `rho`.

    This is the critical-scalar map for scalar-profile metrics on facet
    cones: each facet contributes an affine function of the base-metric
    value, and the threshold is their upper envelope.
    """
    out = np.full(rho.shape, -np.inf)
    for r in range(coef0.shape[0]):
        np.maximum(out, coef0[r] + rho * coef1[r], out=out)
    return out


def pair_min_index_max(T):
    """Per-index maximum over all pairs whose smaller index equals k.

    M[k] = max( max_{j >= k} T[k, j], max_{i > k} T[i, k] ).  A pair
    (i, j) with i, j >= m exists with T >= t iff M[k] >= t for some
    k >= m-? ... concretely: the tail {i, j >= m} violates threshold t
    iff max(M[m:]) >= t, and the violating "index" of a pair is
    min(i, j).
    """
    n = T.shape[0]
    out = np.empty(n)
    for k in range(n):
        row = T[k, k:].max()
        col = T[k + 1:, k].max() if k + 1 < n else -np.inf
        out[k] = row if row >= col else col
    return out
