"""The four polynomial solvers and the dispatcher."""

from __future__ import annotations

import random
from dataclasses import replace

import pytest

from gen import random_instance
from hrrc.exhaustive import exists_strongly_stable, strongly_stable_set
from hrrc.hr_core import rgs
from hrrc.model import Assignment, Region, example_g2, make_instance
from hrrc.poly_solvers import (
    dispatch,
    find_2x2_subinstances,
    solve_222_disjoint,
    solve_2x2_free,
    solve_hosp_len1,
    solve_regions_size1,
    solve_res_len1,
)
from hrrc.stability import blocking_pairs, is_strongly_stable, strong_blocking_pairs


def g2_with_cap(cap):
    g2 = example_g2()
    return replace(g2, regions=(Region(frozenset({"h1", "h2"}), cap),))


# --- singleton regions -----------------------------------------------------


def test_regions_size1_folds_cap_into_capacity():
    inst = make_instance(
        residents=[("r1", ["h"]), ("r2", ["h"])],
        hospitals=[("h", 2, ["r1", "r2"])],
        regions=[({"h"}, 1)],
    )
    assert solve_regions_size1(inst) == Assignment.of([("r1", "h")])
    assert strongly_stable_set(inst) == {Assignment.of([("r1", "h")])}


def test_regions_size1_without_regions_equals_rgs():
    rng = random.Random(3)
    for _ in range(50):
        inst = random_instance(rng, gamma=0)
        assert solve_regions_size1(inst) == rgs(inst)


def test_regions_size1_equals_rgs_on_trimmed_instance():
    rng = random.Random(5)
    for _ in range(50):
        inst = random_instance(rng, gamma=1)
        caps = dict(inst.capacities)
        for reg in inst.regions:
            (h,) = reg.hospitals
            caps[h] = min(caps[h], reg.cap)
        assert solve_regions_size1(inst) == rgs(
            replace(inst, capacities=caps), ignore_regions=True
        )


def test_regions_size1_rejects_g2():
    with pytest.raises(ValueError, match="gamma"):
        solve_regions_size1(example_g2())


# --- unit resident lists ---------------------------------------------------


def test_res_len1_takes_best_resident():
    inst = make_instance(
        residents=[("r1", ["h"]), ("r2", ["h"])],
        hospitals=[("h", 1, ["r2", "r1"])],
    )
    assert solve_res_len1(inst) == Assignment.of([("r2", "h")])


def test_res_len1_region_blocks_second_hospital():
    inst = make_instance(
        residents=[("r1", ["h1"]), ("r2", ["h2"])],
        hospitals=[("h1", 1, ["r1"]), ("h2", 1, ["r2"])],
        regions=[({"h1", "h2"}, 1)],
    )
    m = solve_res_len1(inst)
    assert m == Assignment.of([("r1", "h1")])
    assert ("r2", "h2") in blocking_pairs(inst, m)
    assert strong_blocking_pairs(inst, m) == []


def test_res_len1_zero_capacities():
    inst = make_instance(
        residents=[("r1", ["h1"]), ("r2", ["h2"])],
        hospitals=[("h1", 0, ["r1"]), ("h2", 0, ["r2"])],
    )
    assert solve_res_len1(inst) == Assignment()


def test_res_len1_rejects_long_lists():
    with pytest.raises(ValueError, match="alpha"):
        solve_res_len1(example_g2())


# --- unit hospital lists ---------------------------------------------------


def test_hosp_len1_skips_region_capped_first_choice():
    inst = make_instance(
        residents=[("r", ["h1", "h2"])],
        hospitals=[("h1", 1, ["r"]), ("h2", 1, ["r"])],
        regions=[({"h1"}, 0)],
    )
    m = solve_hosp_len1(inst)
    assert m == Assignment.of([("r", "h2")])
    assert ("r", "h1") in blocking_pairs(inst, m)
    assert strong_blocking_pairs(inst, m) == []


def test_hosp_len1_zero_capacity_and_independent_residents():
    inst = make_instance(residents=[("r", ["h"])], hospitals=[("h", 0, ["r"])])
    assert solve_hosp_len1(inst) == Assignment()
    pair = make_instance(
        residents=[("r1", ["h1"]), ("r2", ["h2"])],
        hospitals=[("h1", 1, ["r1"]), ("h2", 1, ["r2"])],
    )
    assert solve_hosp_len1(pair) == Assignment.of([("r1", "h1"), ("r2", "h2")])


def test_hosp_len1_rejects_long_lists():
    with pytest.raises(ValueError, match="beta"):
        solve_hosp_len1(example_g2())


# --- 2x2 blocks ------------------------------------------------------------


def test_find_2x2_subinstances_on_g2():
    subs = find_2x2_subinstances(example_g2())
    assert len(subs) == 1
    assert subs[0].residents == ("r1", "r2")
    assert subs[0].hospitals == ("h1", "h2")


def test_find_2x2_subinstances_empty_cases():
    no_regions = make_instance(
        residents=[("r", ["h"])], hospitals=[("h", 1, ["r"])]
    )
    assert find_2x2_subinstances(no_regions) == []
    one_common = make_instance(
        residents=[("r1", ["h1", "h2"]), ("r2", ["h1"])],
        hospitals=[("h1", 1, ["r2", "r1"]), ("h2", 1, ["r1"])],
        regions=[({"h1", "h2"}, 1)],
    )
    assert find_2x2_subinstances(one_common) == []


def test_solve_2x2_free_decrements_once():
    inst = make_instance(
        residents=[("r1", ["h1", "h2"]), ("r2", ["h1"])],
        hospitals=[("h1", 1, ["r2", "r1"]), ("h2", 1, ["r1"])],
        regions=[({"h1", "h2"}, 1)],
    )
    m = solve_2x2_free(inst)
    assert m == Assignment.of([("r2", "h1")])
    assert is_strongly_stable(inst, m)


def test_solve_2x2_free_no_overload_returns_rgs():
    inst = make_instance(
        residents=[("r1", ["h1"]), ("r2", ["h2"])],
        hospitals=[("h1", 1, ["r1"]), ("h2", 1, ["r2"])],
        regions=[({"h1"}, 1), ({"h2"}, 1)],
    )
    assert solve_2x2_free(inst) == rgs(inst, ignore_regions=True)


def test_solve_2x2_free_drives_capacity_to_zero():
    inst = make_instance(
        residents=[("r", ["h"])],
        hospitals=[("h", 1, ["r"])],
        regions=[({"h"}, 0)],
    )
    m = solve_2x2_free(inst)
    assert m == Assignment()
    assert ("r", "h") in blocking_pairs(inst, m)
    assert is_strongly_stable(inst, m)


def test_solve_2x2_free_rejects_blocks_and_big_caps():
    with pytest.raises(ValueError, match="common residents"):
        solve_2x2_free(example_g2())
    big = make_instance(
        residents=[("r", ["h"])], hospitals=[("h", 3, ["r"])]
    )
    with pytest.raises(ValueError, match="capacities"):
        solve_2x2_free(big)


# --- full disjoint (2,2,2) solver -------------------------------------------


def test_solve_222_disjoint_on_g2():
    assert solve_222_disjoint(example_g2()).status == "none-exists"


def test_solve_222_disjoint_cap2_finds_perfect_matching():
    out = solve_222_disjoint(g2_with_cap(2))
    assert out.is_found
    assert out.matching == Assignment.of([("r1", "h1"), ("r2", "h2")])


def test_solve_222_disjoint_two_disjoint_blocks():
    inst = make_instance(
        residents=[
            ("r1", ["h1", "h2"]),
            ("r2", ["h2", "h1"]),
            ("s1", ["k1", "k2"]),
            ("s2", ["k2", "k1"]),
        ],
        hospitals=[
            ("h1", 1, ["r2", "r1"]),
            ("h2", 1, ["r1", "r2"]),
            ("k1", 1, ["s2", "s1"]),
            ("k2", 1, ["s1", "s2"]),
        ],
        regions=[({"h1", "h2"}, 2), ({"k1", "k2"}, 2)],
    )
    out = solve_222_disjoint(inst)
    assert out.is_found
    assert len(out.matching) == 4
    assert is_strongly_stable(inst, out.matching)


def test_solve_222_disjoint_rejects_wrong_class():
    overlapping = make_instance(
        residents=[("r", ["h1", "h2"])],
        hospitals=[("h1", 1, ["r"]), ("h2", 1, ["r"])],
        regions=[({"h1", "h2"}, 1), ({"h1"}, 1)],
    )
    with pytest.raises(ValueError, match="disjoint"):
        solve_222_disjoint(overlapping)


def test_solve_222_disjoint_agrees_with_oracle():
    rng = random.Random(41)
    found = nones = 0
    for _ in range(300):
        inst = random_instance(
            rng, max_residents=5, max_hospitals=5, alpha=2, beta=2, gamma=2, disjoint=True
        )
        out = solve_222_disjoint(inst)
        oracle = exists_strongly_stable(inst)
        assert out.status == oracle.status
        if out.is_found:
            found += 1
            assert is_strongly_stable(inst, out.matching)
        else:
            nones += 1
    assert found and nones, "sweep should hit both verdicts"


# --- per-class random sweeps ------------------------------------------------


@pytest.mark.parametrize(
    "solver,params",
    [
        (solve_regions_size1, dict(gamma=1)),
        (solve_res_len1, dict(alpha=1)),
        (solve_hosp_len1, dict(beta=1)),
    ],
)
def test_class_solvers_always_return_strongly_stable(solver, params):
    rng = random.Random(43)
    for _ in range(300):
        inst = random_instance(rng, **params)
        m = solver(inst)
        assert is_strongly_stable(inst, m)


def test_solve_2x2_free_random_sweep():
    rng = random.Random(47)
    checked = 0
    for _ in range(500):
        inst = random_instance(
            rng, max_residents=5, max_hospitals=5, alpha=2, beta=2, gamma=2,
            disjoint=True, max_capacity=2,
        )
        if find_2x2_subinstances(inst):
            continue
        m = solve_2x2_free(inst)
        assert is_strongly_stable(inst, m)
        checked += 1
    assert checked > 200


# --- dispatcher --------------------------------------------------------------


def test_dispatch_routes_g2_to_the_disjoint_solver():
    out = dispatch(example_g2())
    assert out.status == "none-exists"


def test_dispatch_priority_gamma_first():
    inst = make_instance(
        residents=[("r", ["h"])],
        hospitals=[("h", 1, ["r"])],
        regions=[({"h"}, 1)],
    )
    # gamma=1 and alpha=1 both hold; the singleton-region solver wins and
    # both routes give the same strongly stable matching here.
    assert dispatch(inst).matching == solve_regions_size1(inst)


def test_dispatch_falls_back_to_brute_force_within_limit():
    overlapping = make_instance(
        residents=[("r1", ["h1", "h2"]), ("r2", ["h2", "h1"])],
        hospitals=[("h1", 1, ["r1", "r2"]), ("h2", 1, ["r2", "r1"])],
        regions=[({"h1", "h2"}, 2), ({"h1"}, 1)],
    )
    out = dispatch(overlapping)
    assert out.is_found
    assert is_strongly_stable(overlapping, out.matching)


def test_dispatch_reports_unknown_above_limit():
    residents = [(f"r{i}", [f"h{i}"]) for i in range(1, 8)]
    residents[0] = ("r1", ["h1", "h2"])
    hospitals = [(f"h{i}", 1, [f"r{i}"]) for i in range(1, 8)]
    hospitals[0] = ("h1", 1, ["r1"])
    hospitals[1] = ("h2", 1, ["r2", "r1"])
    residents[1] = ("r2", ["h2"])
    inst = make_instance(
        residents, hospitals,
        regions=[({"h1", "h2"}, 1), ({"h2", "h3"}, 1)],
    )
    out = dispatch(inst, brute_limit=4)
    assert out.status == "unknown"
    assert "NP-hard" in out.reason
    # The same instance is decidable when the limit allows it.
    assert dispatch(inst, brute_limit=64).status in ("found", "none-exists")


def test_dispatch_outcomes_match_oracle_on_mixed_instances():
    rng = random.Random(53)
    for _ in range(150):
        inst = random_instance(rng, max_residents=4, max_hospitals=4)
        out = dispatch(inst, brute_limit=64)
        oracle = exists_strongly_stable(inst)
        assert out.status == oracle.status
        if out.is_found:
            assert is_strongly_stable(inst, out.matching)
