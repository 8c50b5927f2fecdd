import pytest

from roughcone.analysis import EpsilonSchedule, Roughness, Verdict
from roughcone.cones import NormSpec
from roughcone.errors import ConfigError, InputError
from roughcone.metrics import builtin_space
from roughcone.reports import ConstantEstimate
from roughcone.theorems import (
    check_thm_3_3,
    check_thm_3_4,
    check_thm_3_5,
    check_thm_3_6,
    counterexample_search,
)

SCHED = EpsilonSchedule(horizon=300)


def bucket_sum(report):
    return (
        report.confirmed
        + report.premise_violated
        + report.vacuous
        + report.inconclusive
        + report.counterexamples
    )


def test_t33_constructed_instances_confirm():
    r = check_thm_3_3(12, seed=7, schedule=SCHED)
    sampled = [x for x in r.instances if x.kind == "sampled"]
    assert len(sampled) == 12
    assert all(x.premises == "satisfied" for x in sampled)
    assert all(x.classification == "confirmed" for x in sampled)
    assert r.counterexamples == 0
    assert bucket_sum(r) == len(r.instances)


def test_t33_zero_roughness_reduces_to_plain_convergence():
    r = check_thm_3_3(6, seed=8, roughness=Roughness.zero(2), schedule=SCHED)
    assert r.confirmed == 6
    assert r.counterexamples == 0


def test_t33_control_is_premise_violated():
    r = check_thm_3_3(3, seed=9, schedule=SCHED)
    controls = [x for x in r.instances if x.kind == "control-r-amplitude"]
    assert len(controls) == 1
    assert controls[0].classification == "premise-violated"
    assert controls[0].premises == "violated"


def test_t34_walks_confirm_and_drift_is_vacuous():
    r = check_thm_3_4(8, seed=10, witness_horizon=200,
                      verification_horizon=400)
    drift = [x for x in r.instances if x.kind == "control-drift"]
    assert len(drift) == 1
    assert drift[0].classification == "premise-violated"
    assert r.counterexamples == 0
    assert bucket_sum(r) == len(r.instances)


def test_t34_horizon_ordering_enforced():
    with pytest.raises(InputError):
        check_thm_3_4(2, seed=1, witness_horizon=400, verification_horizon=400)


def test_t35_constructed_pairs_confirm():
    r = check_thm_3_5(10, seed=11, schedule=SCHED)
    sampled = [x for x in r.instances if x.kind == "sampled"]
    assert all(x.classification == "confirmed" for x in sampled)
    assert r.counterexamples == 0
    controls = [x for x in r.instances if x.kind == "control-constant"]
    assert controls and controls[0].classification == "confirmed"


def test_t35_refuses_empirical_constants():
    space = builtin_space(
        "lifted", q=1, base="euclidean", witness=(1.0, 1.0),
    )
    fake = ConstantEstimate(role="star", value=1.0,
                            provenance="empirical-lower-bound", trials=10)
    with pytest.raises(ConfigError):
        check_thm_3_5(2, seed=1, space=space, star=fake, schedule=SCHED)
    # override flag lets it run
    r = check_thm_3_5(2, seed=1, space=space, star=fake, allow_empirical=True,
                      schedule=SCHED)
    assert r.counterexamples == 0


def test_t35_scaled_roughness_still_confirms():
    r = check_thm_3_5(5, seed=12, roughness=Roughness.interior((10.0, 10.0)),
                      schedule=SCHED)
    assert r.counterexamples == 0
    assert r.confirmed >= 5


def test_t36_zero_roughness_all_provisions_hold():
    r = check_thm_3_6(10, seed=13, schedule=SCHED)
    assert r.provision_satisfaction_rate == 1.0
    assert r.confirmed == 10
    assert r.counterexamples == 0
    assert all(x.final_gap is not None and x.final_gap < 1e-6
               for x in r.instances if x.kind == "sampled")


def test_t36_interior_roughness_reports_vacuity():
    r = check_thm_3_6(10, seed=14, roughness=Roughness.interior((1.0, 1.0)),
                      schedule=SCHED)
    assert r.provision_satisfaction_rate == 0.0
    assert r.vacuous == 10
    assert r.counterexamples == 0
    sampled = [x for x in r.instances if x.kind == "sampled"]
    assert all(x.provision == "violated" for x in sampled)
    ctrl = [x for x in r.instances if x.kind == "control-nonconvergent"]
    assert ctrl and ctrl[0].classification == "premise-violated"
    assert bucket_sum(r) == len(r.instances)


def test_t36_refuses_empirical_normal_constant():
    fake = ConstantEstimate(role="normal", value=1.0,
                            provenance="empirical-lower-bound", trials=10)
    with pytest.raises(ConfigError):
        check_thm_3_6(2, seed=1, normal=fake, schedule=SCHED)


@pytest.mark.parametrize("tid", ["T33", "T34", "T35", "T36"])
def test_search_finds_no_counterexamples(tid):
    r = counterexample_search(tid, budget=40, seed=21,
                              schedule=EpsilonSchedule(horizon=200))
    assert r.counterexamples == 0
    assert bucket_sum(r) == len(r.instances)


def test_search_rejects_unknown_theorem():
    with pytest.raises(InputError):
        counterexample_search("T99", budget=1, seed=0)


def test_suites_reject_table_spaces():
    import numpy as np

    e = np.array([1.0, 1.0])
    vals = np.zeros((3, 3, 2))
    for i, j, v in [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.5)]:
        vals[i, j] = v * e
        vals[j, i] = v * e
    spec = builtin_space("table", values=vals)
    with pytest.raises(InputError, match="scalar-profile"):
        check_thm_3_3(1, seed=0, space=spec)
    with pytest.raises(InputError, match="scalar-profile"):
        counterexample_search("T36", budget=1, seed=0, space=spec)


def test_search_t35_refuses_empirical_constants_too():
    # a space whose norm has no catalogued dominated-pair constant falls
    # back to an empirical lower bound, which the run must refuse
    space = builtin_space(
        "lifted", q=1, base="euclidean", witness=(1.0, 1.0),
        norm=NormSpec.euclidean(),
    )
    with pytest.raises(ConfigError):
        counterexample_search("T35", budget=2, seed=3, space=space,
                              schedule=EpsilonSchedule(horizon=100))
    r = counterexample_search("T35", budget=2, seed=3, space=space,
                              schedule=EpsilonSchedule(horizon=100),
                              allow_empirical=True)
    assert r.counterexamples == 0


def test_horizon_artifact_relabeling():
    # white-box check of the doubled-horizon rule: a refuted conclusion
    # under satisfied premises is a counterexample only if the recheck
    # still refutes; otherwise it is inconclusive and flagged
    from roughcone.theorems import _classify

    refuted = Verdict(kind="rough-cauchy", outcome="refuted", horizon=100,
                      window=10, results=())
    holds = Verdict(kind="rough-cauchy", outcome="holds", horizon=200,
                    window=20, results=())
    premises = (("premise", "holds"),)

    vanishes = _classify(0, "sampled", premises, refuted,
                         recheck=lambda: (premises, holds),
                         rerun={"mode": "theorems"})
    assert vanishes.classification == "inconclusive"
    assert vanishes.horizon_artifact

    persists = _classify(0, "sampled", premises, refuted,
                         recheck=lambda: (premises, refuted),
                         rerun={"mode": "theorems"})
    assert persists.classification == "counterexample"
    assert not persists.horizon_artifact
    assert persists.rerun == {"mode": "theorems"}


def test_reports_are_deterministic():
    a = check_thm_3_3(5, seed=33, schedule=SCHED)
    b = check_thm_3_3(5, seed=33, schedule=SCHED)
    assert a == b
    c = counterexample_search("T34", budget=10, seed=33,
                              schedule=EpsilonSchedule(horizon=150))
    d = counterexample_search("T34", budget=10, seed=33,
                              schedule=EpsilonSchedule(horizon=150))
    assert c == d


def test_single_instances_rerun_via_spawn_offset():
    # rerun configs embed (seed, spawn_offset); any instance must reproduce
    # as a one-trial suite at its offset
    r = check_thm_3_3(3, seed=40, schedule=SCHED)
    for rec in r.instances:
        if rec.kind != "sampled":
            continue
        again = check_thm_3_3(1, seed=40, schedule=SCHED,
                              spawn_offset=rec.index,
                              include_controls=False)
        assert again.instances[0].premises == rec.premises
        assert again.instances[0].classification == rec.classification
        assert again.instances[0].conclusion == rec.conclusion
