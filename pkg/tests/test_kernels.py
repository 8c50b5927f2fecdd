import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from roughcone import kernels

BACKENDS = kernels.available_backends()
needs_compiled = pytest.mark.skipif(
    "compiled" not in BACKENDS, reason="compiled kernels not built"
)


def rng():
    return np.random.default_rng(1234)


# ---------------------------------------------------------------------------
# oracles: naive reimplementations
# ---------------------------------------------------------------------------


def brute_pairwise(pts, kind):
    n = pts.shape[0]
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            d = pts[i] - pts[j]
            if kind == kernels.EUCLIDEAN:
                out[i, j] = np.sqrt((d * d).sum())
            elif kind == kernels.SUP:
                out[i, j] = np.abs(d).max()
            else:
                out[i, j] = 1.0 if np.any(pts[i] != pts[j]) else 0.0
    return out


def brute_pair_min_index_max(T):
    n = T.shape[0]
    out = np.full(n, -np.inf)
    for i in range(n):
        for j in range(n):
            k = min(i, j)
            out[k] = max(out[k], T[i, j])
    return out


def brute_facet_crit(gaps, scale, delta):
    return np.array(
        [max((delta - g[r]) / scale[r] for r in range(len(scale))) for g in gaps]
    )


# ---------------------------------------------------------------------------
# oracle agreement (default backend)
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("kind", [kernels.EUCLIDEAN, kernels.SUP, kernels.DISCRETE])
def test_pairwise_matches_bruteforce(kind):
    pts = rng().normal(size=(17, 3))
    pts[3] = pts[11]  # exercise exact equality for the discrete metric
    assert np.allclose(
        kernels.pairwise_distance(pts, kind), brute_pairwise(pts, kind),
        rtol=0, atol=0,
    )


def test_pair_min_index_max_matches_bruteforce():
    T = rng().normal(size=(23, 23))
    assert np.array_equal(kernels.pair_min_index_max(T), brute_pair_min_index_max(T))


def test_facet_crit_matches_bruteforce():
    g = rng().normal(size=(40, 3))
    scale = np.array([1.0, 0.5, 2.0])
    assert np.allclose(
        kernels.facet_crit(g, scale, 0.1), brute_facet_crit(g, scale, 0.1),
        rtol=0, atol=0,
    )


def test_affine_row_max_matches_direct():
    r = np.abs(rng().normal(size=(9, 9)))
    c0 = np.array([-1.0, 0.5])
    c1 = np.array([2.0, 0.25])
    want = np.maximum(c0[0] + r * c1[0], c0[1] + r * c1[1])
    assert np.array_equal(kernels.affine_row_max(r, c0, c1), want)


def test_soc_crit_characterizes_interior():
    # oracle: scan t around the returned threshold and evaluate the margin
    base = rng().normal(size=(50, 4))
    w = np.array([1.0, 0.2, -0.1, 0.3])
    delta = 0.05
    tstar = kernels.soc_crit(base, w, delta)

    def margin(b, t):
        v = b + t * w
        return v[0] - np.sqrt((v[1:] * v[1:]).sum())

    for i in range(base.shape[0]):
        eps = 1e-9 * max(1.0, abs(tstar[i]))
        assert margin(base[i], tstar[i] + eps) > delta
        assert margin(base[i], tstar[i] - eps) <= delta + 1e-12


@given(
    T=hnp.arrays(
        np.float64,
        hnp.array_shapes(min_dims=2, max_dims=2, min_side=1, max_side=12).filter(
            lambda s: s[0] == s[1]
        ),
        elements=st.floats(min_value=-1e6, max_value=1e6),
    )
)
@settings(max_examples=100, deadline=None)
def test_pair_min_index_max_property(T):
    got = kernels.pair_min_index_max(T)
    want = brute_pair_min_index_max(T)
    assert np.array_equal(got, want)


# ---------------------------------------------------------------------------
# backend parity: bitwise agreement
# ---------------------------------------------------------------------------


@needs_compiled
def test_backends_agree_bitwise():
    py = kernels.get_backend("python")
    cc = kernels.get_backend("compiled")
    r = rng()
    pts = r.normal(size=(31, 4))
    for kind in (kernels.EUCLIDEAN, kernels.SUP, kernels.DISCRETE):
        a = kernels.pairwise_distance(pts, kind, impl=py)
        b = kernels.pairwise_distance(pts, kind, impl=cc)
        assert np.array_equal(a, b)
    gaps = r.normal(size=(64, 5))
    scale = np.abs(r.normal(size=5)) + 0.1
    assert np.array_equal(
        kernels.facet_crit(gaps, scale, 1e-3, impl=py),
        kernels.facet_crit(gaps, scale, 1e-3, impl=cc),
    )
    base = r.normal(size=(64, 4))
    w = np.array([2.0, 0.5, 0.25, -0.5])
    assert np.array_equal(
        kernels.soc_crit(base, w, 0.0, impl=py),
        kernels.soc_crit(base, w, 0.0, impl=cc),
    )
    rho = np.abs(r.normal(size=(21, 21)))
    c0 = r.normal(size=3)
    c1 = r.normal(size=3)
    assert np.array_equal(
        kernels.affine_row_max(rho, c0, c1, impl=py),
        kernels.affine_row_max(rho, c0, c1, impl=cc),
    )
    T = r.normal(size=(33, 33))
    assert np.array_equal(
        kernels.pair_min_index_max(T, impl=py),
        kernels.pair_min_index_max(T, impl=cc),
    )


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        kernels.pairwise_distance(np.zeros((2, 1)), 9)
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")
