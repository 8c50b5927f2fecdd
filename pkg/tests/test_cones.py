import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from roughcone.cones import (
    NormSpec,
    Orthant,
    Polyhedral,
    ProductCone,
    SecondOrder,
    normal_constant,
    star_constant,
    validate_cone,
    verify_star_condition,
)
from roughcone.errors import DimensionMismatch, InputError, NoExactConstant

finite_coords = st.floats(
    min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False
)


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------


def test_orthant_contains_boundary_and_negative():
    cone = Orthant(2)
    assert cone.contains([1.0, 0.0])
    assert not cone.contains([1.0, -0.5])


def test_second_order_contains_hand_checked():
    # oracle: head must dominate the euclidean tail norm
    assert math.hypot(3.0, 4.0) == 5.0
    cone = SecondOrder(3)
    assert cone.contains([5.0, 3.0, 4.0])
    assert not cone.contains([4.9, 3.0, 4.0])


def test_interior_needs_strict_slack():
    cone = Orthant(2)
    assert cone.interior_contains([1.0, 1.0])
    assert not cone.interior_contains([1.0, 0.0])
    assert not cone.interior_contains([0.0, 0.0])  # 0 is never interior


def test_interior_margin_policy():
    assert not Orthant(2, margin=0.1).interior_contains([1.0, 0.05])
    assert Orthant(2, margin=0.1).interior_contains([1.0, 0.2])


def test_leq_and_ll_reduce_to_differences():
    cone = Orthant(2)
    assert cone.leq([1.0, 2.0], [2.0, 3.0])
    assert not cone.leq([1.0, 2.0], [2.0, 1.0])
    assert cone.leq([1.0, 2.0], [1.0, 2.0])  # 0 in P
    assert cone.ll([1.0, 1.0], [2.0, 2.0])
    assert not cone.ll([1.0, 1.0], [2.0, 1.0])
    assert not cone.ll([1.0, 1.0], [1.0, 1.0])  # 0 not in int P


def test_dimension_mismatch_rejected():
    cone = Orthant(2)
    with pytest.raises(DimensionMismatch):
        cone.contains([1.0, 2.0, 3.0])
    with pytest.raises(InputError):
        cone.contains([np.nan, 0.0])


def test_polyhedral_matches_orthant_when_identity_rows():
    cone = Polyhedral(np.eye(3))
    rng = np.random.default_rng(5)
    vs = rng.normal(size=(100, 3))
    expect = np.all(vs >= 0.0, axis=1)
    got = cone.contains(vs)
    assert np.array_equal(got, expect)


def test_product_cone_membership():
    cone = ProductCone([Orthant(2), SecondOrder(3)])
    assert cone.contains([1.0, 0.0, 5.0, 3.0, 4.0])
    assert not cone.contains([1.0, -1.0, 5.0, 3.0, 4.0])
    assert not cone.contains([1.0, 0.0, 4.0, 3.0, 4.0])


# ---------------------------------------------------------------------------
# cone axiom validation
# ---------------------------------------------------------------------------


def test_validate_orthant_passes_all_axioms():
    report = validate_cone(Orthant(3), sampler_seed=1, trials=200)
    assert report.passed
    assert [c.name for c in report.checks] == [
        "nontrivial",
        "closed-under-nonneg-combinations",
        "pointed",
    ]


def test_validate_halfplane_fails_pointedness_with_line_witness():
    # oracle: (0, 1) and (0, -1) both satisfy the single facet (1, 0) . v >= 0
    report = validate_cone(Polyhedral([[1.0, 0.0]]), sampler_seed=1, trials=100)
    check = report["pointed"]
    assert not check.passed
    w = np.asarray(check.witness)
    cone = Polyhedral([[1.0, 0.0]])
    assert np.any(w != 0)
    assert cone.contains(w) and cone.contains(-w)


def test_validate_degenerate_polyhedral_fails_nontriviality():
    rows = [[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]]
    report = validate_cone(Polyhedral(rows), sampler_seed=3, trials=500)
    assert not report["nontrivial"].passed
    assert report["pointed"].passed  # {0} contains no line


def test_validate_second_order_passes():
    report = validate_cone(SecondOrder(3), sampler_seed=2, trials=200)
    assert report.passed


def test_zero_facet_row_rejected():
    with pytest.raises(InputError):
        Polyhedral([[1.0, 0.0], [0.0, 0.0]])


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------


def test_normal_constant_exact_is_one_for_orthant():
    for norm in (NormSpec.sup(), NormSpec.euclidean(), NormSpec.pnorm(3),
                 NormSpec.weighted_sup([1.0, 2.0])):
        est = normal_constant(Orthant(2), norm)
        assert est.value == 1.0
        assert est.exact


def test_normal_constant_no_catalogue_for_soc():
    with pytest.raises(NoExactConstant):
        normal_constant(SecondOrder(3), NormSpec.sup())


@pytest.mark.parametrize("seed", [0, 7, 19])
def test_empirical_normal_constant_is_lower_bound(seed):
    est = normal_constant(
        Orthant(2), NormSpec.sup(), mode="empirical", sampler_seed=seed, trials=1000
    )
    assert est.provenance == "empirical-lower-bound"
    assert 1.0 <= est.value <= 1.0 + 1e-9  # probes attain the supremum


def test_star_constant_exact_sup_only():
    est = star_constant(Orthant(2), NormSpec.sup())
    assert est.value == 1.0 and est.exact
    with pytest.raises(NoExactConstant):
        star_constant(Orthant(2), NormSpec.euclidean())


def test_star_constant_empirical_euclidean_range():
    est = star_constant(
        Orthant(2), NormSpec.euclidean(), mode="empirical", sampler_seed=11,
        trials=2000,
    )
    assert 1.0 <= est.value <= math.sqrt(2.0) + 1e-9


def test_verify_star_condition():
    ok = verify_star_condition(Orthant(2), NormSpec.sup(), k=1.0, sampler_seed=4,
                               trials=1000)
    assert ok.passed
    bad = verify_star_condition(Orthant(2), NormSpec.sup(), k=0.5, sampler_seed=4,
                                trials=1000)
    assert not bad.passed
    v = bad.violations[0]
    assert v.p_norm > 0.5 * v.c_norm
    with pytest.raises(InputError):
        verify_star_condition(Orthant(2), NormSpec.sup(), k=1.0, trials=0)


# ---------------------------------------------------------------------------
# order properties (randomized; the acceptance suite runs the bulk version)
# ---------------------------------------------------------------------------

CONES = [
    Orthant(2),
    Orthant(4),
    Polyhedral([[1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]),
    SecondOrder(3),
    ProductCone([Orthant(1), SecondOrder(2)]),
]


@pytest.mark.parametrize("cone", CONES, ids=lambda c: c.describe())
def test_order_consistency_and_translation(cone):
    rng = np.random.default_rng(42)
    for _ in range(200):
        x = rng.normal(size=cone.dim)
        y = rng.normal(size=cone.dim)
        z = rng.normal(size=cone.dim)
        if cone.ll(x, y):
            assert cone.leq(x, y)
            assert np.any(x != y)
        assert cone.leq(x, y) == cone.leq(x + z, y + z)


@pytest.mark.parametrize("cone", CONES, ids=lambda c: c.describe())
def test_scaling_invariance(cone):
    rng = np.random.default_rng(43)
    for _ in range(200):
        v = rng.normal(size=cone.dim)
        t = float(np.exp(rng.normal()))
        assert cone.contains(v) == cone.contains(t * v)
        assert cone.interior_contains(v) == cone.interior_contains(t * v)


@pytest.mark.parametrize("cone", CONES, ids=lambda c: c.describe())
def test_interior_additivity(cone):
    rng = np.random.default_rng(44)
    members = cone.sample_members(rng, 100)
    for u in members:
        v = cone.default_interior_witness() * float(np.abs(rng.normal()) + 0.01)
        if cone.contains(u) and cone.interior_contains(v):
            assert cone.interior_contains(u + v)


@given(
    x=st.lists(finite_coords, min_size=2, max_size=2),
    y=st.lists(finite_coords, min_size=2, max_size=2),
)
@settings(max_examples=200, deadline=None)
def test_orthant_order_agrees_with_componentwise(x, y):
    cone = Orthant(2)
    x = np.asarray(x)
    y = np.asarray(y)
    assert cone.leq(x, y) == bool(np.all(y - x >= 0))
    assert cone.ll(x, y) == bool(np.all(y - x > 0))


# ---------------------------------------------------------------------------
# critical thresholds: the contract the analysis layer relies on
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("cone", CONES, ids=lambda c: c.describe())
def test_crit_thresholds_characterize_ll(cone):
    rng = np.random.default_rng(45)
    e = cone.default_interior_witness()
    base = rng.normal(size=(300, cone.dim))
    tstar = cone.crit_thresholds(base, e)
    for i in range(base.shape[0]):
        above = tstar[i] + max(1e-9, 1e-9 * abs(tstar[i]))
        below = tstar[i] - max(1e-9, 1e-9 * abs(tstar[i]))
        assert cone.interior_contains(base[i] + above * e)
        assert not cone.interior_contains(base[i] + below * e)


@pytest.mark.parametrize("cone", CONES, ids=lambda c: c.describe())
def test_crit_profile_matches_crit_thresholds(cone):
    rng = np.random.default_rng(46)
    e = cone.default_interior_witness()
    offset = np.abs(rng.normal(size=cone.dim)) + 0.5
    carrier = cone.sample_members(rng, 1)[0]
    rho = np.abs(rng.normal(size=(6, 6)))
    via_profile = cone.crit_profile(rho, offset, carrier, e)
    base = offset - rho[..., None] * carrier
    via_base = cone.crit_thresholds(base, e)
    assert np.allclose(via_profile, via_base, rtol=1e-12, atol=1e-12)


def test_scaling_sup_closed_forms():
    cone = Orthant(2)
    assert cone.scaling_sup([0.5, 0.5], [1.0, 1.0]) == 0.5
    assert cone.scaling_sup([1.0, 3.0], [1.0, 1.0]) == 1.0
    assert cone.scaling_sup([1.0, 1.0], [0.0, 1.0]) == 1.0
    soc = SecondOrder(3)
    # oracle by bisection against soc.contains
    target = np.array([2.0, 0.0, 0.0])
    direction = np.array([1.0, 0.5, 0.0])
    got = soc.scaling_sup(target, direction)
    # sup rho with (2 - rho) >= rho*0.5  ->  rho = 4/3
    assert got == pytest.approx(4.0 / 3.0, abs=1e-9)


# ---------------------------------------------------------------------------
# norms
# ---------------------------------------------------------------------------


def test_norm_values():
    v = np.array([3.0, -4.0])
    assert NormSpec.euclidean()(v) == 5.0
    assert NormSpec.sup()(v) == 4.0
    assert NormSpec.pnorm(1)(v) == 7.0
    assert NormSpec.weighted_sup([2.0, 1.0])(v) == 6.0


def test_norm_parameter_validation():
    with pytest.raises(InputError):
        NormSpec.pnorm(0.5)
    with pytest.raises(InputError):
        NormSpec.weighted_sup([1.0, -1.0])
    with pytest.raises(InputError):
        NormSpec("taxicab")


# desk-scale magnitudes: the catalogued norms use the direct formulas, so
# homogeneity is only claimed away from underflow/overflow territory
desk_coords = st.one_of(
    st.just(0.0),
    st.floats(min_value=1e-3, max_value=1e3),
    st.floats(min_value=-1e3, max_value=-1e-3),
)


@given(
    v=st.lists(desk_coords, min_size=3, max_size=3),
    w=st.lists(desk_coords, min_size=3, max_size=3),
    t=st.one_of(
        st.just(0.0),
        st.floats(min_value=0.01, max_value=100),
        st.floats(min_value=-100, max_value=-0.01),
    ),
)
@settings(max_examples=200, deadline=None)
def test_norm_axioms_sampled(v, w, t):
    v = np.asarray(v)
    w = np.asarray(w)
    for norm in (NormSpec.euclidean(), NormSpec.sup(), NormSpec.pnorm(3),
                 NormSpec.weighted_sup([1.0, 0.5, 2.0])):
        nv = norm(v)
        assert nv >= 0.0
        if np.all(v == 0.0):
            assert nv == 0.0
        elif nv == 0.0:
            pytest.fail("norm vanished on a nonzero vector")
        assert norm(v + w) <= norm(v) + norm(w) + 1e-9 * (1 + norm(v) + norm(w))
        assert norm(t * v) == pytest.approx(abs(t) * nv, rel=1e-12, abs=1e-300)
