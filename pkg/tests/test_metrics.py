import numpy as np
import pytest

from roughcone.cones import NormSpec, Orthant
from roughcone.errors import InputError
from roughcone.metrics import (
    ConeMetricSpec,
    FiniteLabeledSpace,
    RealVectorSpace,
    TableRule,
    builtin_space,
    eval_d,
    validate_metric,
)


def test_two_component_formula():
    spec = builtin_space("two-component", alpha=2.0)
    assert np.array_equal(eval_d(spec, 1.0, 3.0), [2.0, 4.0])
    assert np.array_equal(eval_d(spec, 5.0, 5.0), [0.0, 0.0])


def test_lifted_euclidean_formula():
    spec = builtin_space("lifted", q=2, base="euclidean", witness=(1.0, 1.0))
    # oracle: 3-4-5 triangle
    assert np.array_equal(eval_d(spec, (0.0, 0.0), (3.0, 4.0)), [5.0, 5.0])
    assert np.array_equal(eval_d(spec, (1.0, 1.0), (1.0, 1.0)), [0.0, 0.0])


def test_lifted_is_exactly_rho_times_witness():
    spec = builtin_space("lifted", q=3, base="sup", witness=(2.0, 0.5))
    rng = np.random.default_rng(1)
    for _ in range(50):
        x, y = rng.normal(size=(2, 3))
        rho = np.abs(x - y).max()
        assert np.array_equal(eval_d(spec, x, y), rho * np.array([2.0, 0.5]))


def test_symmetry_is_bitwise_for_rule_based():
    spec = builtin_space("lifted", q=2, base="euclidean", witness=(1.0, 3.0))
    rng = np.random.default_rng(2)
    for _ in range(50):
        x, y = rng.normal(size=(2, 2))
        assert np.array_equal(eval_d(spec, x, y), eval_d(spec, y, x))


def test_validate_lifted_passes():
    spec = builtin_space("lifted", q=2, base="euclidean", witness=(1.0, 1.0))
    rng = np.random.default_rng(3)
    report = validate_metric(spec, list(rng.normal(size=(8, 2))))
    assert report.passed


def test_triangle_defect_stays_in_cone():
    spec = builtin_space("two-component", alpha=0.5)
    rng = np.random.default_rng(4)
    pts = rng.normal(size=9)
    for x in pts:
        for y in pts:
            for z in pts:
                defect = eval_d(spec, x, z) + eval_d(spec, z, y) - eval_d(spec, x, y)
                assert np.all(spec.cone.gaps(defect) >= -1e-12)


def test_asymmetric_table_flagged():
    e = np.array([1.0, 1.0])
    vals = np.zeros((2, 2, 2))
    vals[0, 1] = 2.0 * e
    vals[1, 0] = 1.0 * e
    spec = ConeMetricSpec(
        FiniteLabeledSpace(2), 2, NormSpec.sup(), Orthant(2), TableRule(vals)
    )
    report = validate_metric(spec, [0, 1, 0])
    assert not report["symmetry"].passed


def test_triangle_violation_flagged_with_witness():
    # d(0,2) = 5e while d(0,1) = d(1,2) = e: the defect -3e leaves the cone
    e = np.array([1.0, 1.0])
    vals = np.zeros((3, 3, 2))
    for i, j, v in [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 5.0)]:
        vals[i, j] = v * e
        vals[j, i] = v * e
    spec = ConeMetricSpec(
        FiniteLabeledSpace(3), 2, NormSpec.sup(), Orthant(2), TableRule(vals)
    )
    report = validate_metric(spec, [0, 1, 2])
    tri = report["triangle"]
    assert not tri.passed
    i, k, j, defect = tri.witness
    assert not spec.cone.contains(np.asarray(defect))


def test_zero_distance_between_distinct_points_flagged():
    vals = np.zeros((2, 2, 1))  # d == 0 everywhere but the points differ
    spec = ConeMetricSpec(
        FiniteLabeledSpace(2), 1, NormSpec.sup(), Orthant(1), TableRule(vals)
    )
    report = validate_metric(spec, [0, 1, 0])
    assert not report["identity"].passed


def test_builtin_space_parameter_validation():
    with pytest.raises(InputError):
        builtin_space("two-component", alpha=-1.0)
    with pytest.raises(InputError):
        builtin_space("lifted", witness=(0.0, 0.0))
    with pytest.raises(InputError):
        builtin_space("lifted", witness=(-1.0, 1.0))  # not in the orthant
    with pytest.raises(InputError):
        builtin_space("nosuch")
    with pytest.raises(InputError):
        builtin_space("two-component", alpha=1.0, bogus=3)


def test_boundary_witness_is_permitted():
    # e on the cone boundary still yields a valid metric (only leq is needed)
    spec = builtin_space("lifted", q=1, base="euclidean", witness=(1.0, 0.0))
    rng = np.random.default_rng(5)
    report = validate_metric(spec, list(rng.normal(size=(6, 1))))
    assert report.passed


def test_invalid_table_rejected_at_load():
    vals = np.zeros((2, 2, 1))
    vals[0, 1] = [1.0]
    vals[1, 0] = [-1.0]  # negative component: not in the orthant
    with pytest.raises(InputError):
        builtin_space("table", values=vals)


def test_valid_table_loads():
    e = np.array([1.0, 2.0])
    vals = np.zeros((3, 3, 2))
    for i, j, v in [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.5)]:
        vals[i, j] = v * e
        vals[j, i] = v * e
    spec = builtin_space("table", values=vals)
    assert np.array_equal(eval_d(spec, 0, 2), 1.5 * e)


def test_distance_helpers_match_eval():
    spec = builtin_space("lifted", q=2, base="euclidean", witness=(1.0, 2.0))
    rng = np.random.default_rng(6)
    pts = rng.normal(size=(7, 2))
    tensor = spec.distance_tensor(pts)
    x = rng.normal(size=2)
    to_x = spec.distances_to(pts, x)
    for i in range(7):
        assert np.array_equal(to_x[i], eval_d(spec, pts[i], x))
        for j in range(7):
            assert np.array_equal(tensor[i, j], eval_d(spec, pts[i], pts[j]))


def test_point_space_validation():
    with pytest.raises(InputError):
        RealVectorSpace(0)
    with pytest.raises(InputError):
        FiniteLabeledSpace(2).as_point(5)
    s = RealVectorSpace(2)
    with pytest.raises(InputError):
        s.as_point((1.0,))
