import _blotto as blotto
import pytest


def median_instance(n_a, n_b, m, cu="11/10"):
    return blotto.Instance(
        num_items=m,
        classes=[("-1", n_a), ("1", n_b)],
        unlabeled_cost=cu,
        outcome="median",
    )


def test_instance_fields():
    inst = median_instance(3, 1, 2)
    assert inst.num_items == 2
    assert inst.num_classes == 2
    assert inst.total_agents == 4
    assert inst.counts == [3, 1]
    assert inst.biases == [-1.0, 1.0]
    assert inst.unlabeled_cost == pytest.approx(1.1)


def test_outcomes_and_cost():
    assert blotto.median_outcome([1.0, -0.5, -0.5]) == pytest.approx(-0.5)
    assert blotto.mean_outcome([1.0, -1.0]) == pytest.approx(0.0)
    inst = median_instance(2, 2, 3, cu=0)
    cost = blotto.class_cost(inst, [[1, 1], [0, 1], [1, 0]], 1)
    assert cost == pytest.approx(3.0)


def test_stability_and_search():
    inst = median_instance(2, 1, 2, cu=2)
    stable, witness = blotto.is_stable(inst, [[1, 1], [1, 0]])
    assert stable and witness is None

    critical = median_instance(4, 1, 3)
    assert blotto.find_stable(critical) == []
    assert blotto.count_arrangements(critical) == 45

    fine = median_instance(3, 2, 2)
    found = blotto.find_stable(fine, mode="first")
    assert len(found) == 1


def test_constructors():
    assert blotto.construct_many_agents(5, 3, 3) == [[0, 3], [2, 0], [3, 0]]
    assert blotto.construct_tie_based(3, 3, 4) == [[1, 1], [1, 1], [1, 0], [0, 1]]
    assert blotto.stable_exists_median(4, 1, 3) is False
    assert blotto.in_median_critical_region(4, 1, 3) is True
    assert blotto.in_median_critical_region(4, 1, 3, inclusive=False) is False
    w1, w2, arrangement = blotto.stabilizing_weights(3, 1)
    assert w2 / w1 == pytest.approx(1 / 3)
    assert arrangement == [[2, 1], [1, 0]]


def test_errors_surface_as_exceptions():
    with pytest.raises(blotto.BlottoError):
        blotto.construct_many_agents(3, 2, 3)
    with pytest.raises(blotto.BlottoError):
        blotto.scenario_no_ne_median(2, 3)


def test_analysis():
    inst = blotto.Instance(2, [("-1", 4), ("1", 2)], 1, "mean")
    effort, per_item = blotto.misallocated_effort(inst, [[4, 0], [0, 2]])
    assert effort == pytest.approx(6.0)
    assert len(per_item) == 2
    assert not blotto.check_close_to_proportional(inst, [[4, 0], [0, 2]])
    alloc = blotto.fractional_equilibrium(inst)
    assert alloc == [[2.0, 1.0], [2.0, 1.0]]
    assert blotto.fractional_foc_residual(inst, alloc) < 1e-9
    assert blotto.three_agent_regime(3.0, 1.0) == "pair-plus-one"


def test_dynamics_cycle():
    inst = blotto.scenario_no_ne_median(3, 4)
    # class 0 is the bias -1/2 pair; put the bias-1 agent alone on item 0
    start = [[0, 1], [1, 0], [1, 0], [0, 0]]
    result = blotto.best_response_dynamics(inst, start, policy="first", max_steps=30)
    assert result["terminal"] == "cycle-detected"


def test_scenario_round_trip():
    inst = blotto.scenario_no_ne_mean(4, 5)
    again = blotto.parse_instance_json(inst.to_json())
    assert again.counts == inst.counts
    assert again.biases == inst.biases
    assert again.outcome == "mean"


def test_scan_export():
    csv = blotto.scan_export(2, "mean", 4, cu="auto", workers=2)
    lines = csv.strip().splitlines()
    assert lines[0] == "n_a,n_b,stable_exists,num_stable_canonical"
    assert "3,1,0,0" in lines
    cells = blotto.scan_region(2, "median", 3)
    for c in cells:
        expected = not (c["n_a"] == 3 and c["n_b"] == 1)
        assert c["stable_exists"] == expected
