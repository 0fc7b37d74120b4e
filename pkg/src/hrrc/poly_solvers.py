"""Polynomial-time solvers for the tractable parameter classes, plus a dispatcher.

Each solver targets one class in which a strongly stable matching provably
exists (or, for the disjoint (2,2,2) class, can be decided):

* ``solve_regions_size1``  -- every region is a single hospital;
* ``solve_res_len1``       -- every resident lists at most one hospital;
* ``solve_hosp_len1``      -- every hospital lists at most one resident;
* ``solve_2x2_free``       -- disjoint (2,2,2) instances whose size-2 regions
  have at most one common acceptable resident;
* ``solve_222_disjoint``   -- general disjoint (2,2,2) instances, handled by
  splitting off independent 2x2 blocks and solving the remainder.

``dispatch`` routes an arbitrary instance to the first applicable solver and
falls back to exhaustive search on small instances.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .exhaustive import exists_strongly_stable
from .hr_core import rgs, shrink
from .model import (
    Assignment,
    Instance,
    InstanceClass,
    Region,
    SolveOutcome,
    classify,
    common_residents,
    require_valid,
)
from .stability import is_feasible, is_matching, is_strongly_stable

DEFAULT_BRUTE_LIMIT = 12


@dataclass(frozen=True)
class SubInstance2x2:
    """Two residents and two hospitals that list only each other, tied by a region.

    Under disjoint regions such a block cannot interact with the rest of the
    instance, so it can be solved in isolation.
    """

    residents: tuple[str, str]
    hospitals: tuple[str, str]
    region: Region


def _certified(instance: Instance, matching: Assignment, solver: str) -> Assignment:
    if not is_strongly_stable(instance, matching):
        raise RuntimeError(f"{solver} produced a matching that is not strongly stable")
    return matching


def solve_regions_size1(instance: Instance) -> Assignment:
    """Solve instances whose regions are all singletons.

    Folding each singleton cap into its hospital's capacity reduces the
    problem to plain deferred acceptance.
    """
    cls = classify(instance)
    if cls.gamma > 1:
        raise ValueError(f"solver requires regions of size at most 1, got gamma={cls.gamma}")
    capacities = dict(instance.capacities)
    for reg in instance.regions:
        (h,) = reg.hospitals
        capacities[h] = min(capacities[h], reg.cap)
    trimmed = replace(instance, capacities=capacities)
    return rgs(trimmed, ignore_regions=True)


def solve_res_len1(instance: Instance) -> Assignment:
    """Solve instances where every resident lists at most one hospital.

    Each hospital greedily takes the best residents on its list while its own
    capacity and every region containing it stay strictly under their caps.
    """
    cls = classify(instance)
    if cls.alpha > 1:
        raise ValueError(f"solver requires resident lists of length at most 1, got alpha={cls.alpha}")
    regions_of = {h: [] for h in instance.hospitals}
    for k, reg in enumerate(instance.regions):
        for h in reg.hospitals:
            regions_of[h].append(k)
    region_load = [0] * len(instance.regions)
    hospital_load = {h: 0 for h in instance.hospitals}
    pairs = []
    for h in instance.hospitals:
        for r in instance.hospital_prefs[h]:
            if hospital_load[h] >= instance.capacities[h]:
                continue
            if any(region_load[k] >= instance.regions[k].cap for k in regions_of[h]):
                continue
            pairs.append((r, h))
            hospital_load[h] += 1
            for k in regions_of[h]:
                region_load[k] += 1
    return Assignment.of(pairs)


def solve_hosp_len1(instance: Instance) -> Assignment:
    """Solve instances where every hospital lists at most one resident.

    Each resident takes the best hospital on its list whose capacity and
    containing regions all have room.
    """
    cls = classify(instance)
    if cls.beta > 1:
        raise ValueError(f"solver requires hospital lists of length at most 1, got beta={cls.beta}")
    regions_of = {h: [] for h in instance.hospitals}
    for k, reg in enumerate(instance.regions):
        for h in reg.hospitals:
            regions_of[h].append(k)
    region_load = [0] * len(instance.regions)
    hospital_load = {h: 0 for h in instance.hospitals}
    pairs = []
    for r in instance.residents:
        for h in instance.resident_prefs[r]:
            if hospital_load[h] >= instance.capacities[h]:
                continue
            if any(region_load[k] >= instance.regions[k].cap for k in regions_of[h]):
                continue
            pairs.append((r, h))
            hospital_load[h] += 1
            for k in regions_of[h]:
                region_load[k] += 1
            break
    return Assignment.of(pairs)


def find_2x2_subinstances(instance: Instance) -> list[SubInstance2x2]:
    """Locate every independent 2x2 block, in region declaration order.

    A size-2 region forms a block exactly when two residents are acceptable
    to both member hospitals.
    """
    require_valid(instance)
    cls = classify(instance)
    if not cls.disjoint:
        raise ValueError("2x2 block extraction requires disjoint regions")
    hospital_index = instance.hospital_index()
    resident_index = instance.resident_index()
    out = []
    for reg in instance.regions:
        if len(reg.hospitals) != 2:
            continue
        common = common_residents(instance, reg.hospitals)
        if len(common) != 2:
            continue
        r1, r2 = sorted(common, key=resident_index.__getitem__)
        if not all(
            h in instance.resident_prefs[r] for r in (r1, r2) for h in reg.hospitals
        ):
            continue
        h1, h2 = sorted(reg.hospitals, key=hospital_index.__getitem__)
        out.append(SubInstance2x2((r1, r2), (h1, h2), reg))
    return out


def _block_instance(instance: Instance, sub: SubInstance2x2) -> Instance:
    keep = set(sub.residents) | set(sub.hospitals)
    return Instance(
        residents=sub.residents,
        hospitals=sub.hospitals,
        capacities={h: instance.capacities[h] for h in sub.hospitals},
        resident_prefs={
            r: tuple(h for h in instance.resident_prefs[r] if h in keep) for r in sub.residents
        },
        hospital_prefs={
            h: tuple(r for r in instance.hospital_prefs[h] if r in keep) for h in sub.hospitals
        },
        regions=(sub.region,),
    )


def _solve_block(block: Instance) -> Assignment | None:
    """Brute-force one 2x2 block: first strongly stable matching in canonical order."""
    r1, r2 = block.residents
    options1 = list(block.resident_prefs[r1]) + [None]
    options2 = list(block.resident_prefs[r2]) + [None]
    hospital_index = block.hospital_index()
    options1.sort(key=lambda h: len(block.hospitals) if h is None else hospital_index[h])
    options2.sort(key=lambda h: len(block.hospitals) if h is None else hospital_index[h])
    for h1 in options1:
        for h2 in options2:
            pairs = [(r, h) for r, h in ((r1, h1), (r2, h2)) if h is not None]
            candidate = Assignment.of(pairs)
            if not is_matching(block, candidate) or not is_feasible(block, candidate):
                continue
            if is_strongly_stable(block, candidate):
                return candidate
    return None


def _remove_blocks(instance: Instance, subs: list[SubInstance2x2]) -> Instance:
    removed_residents = {r for sub in subs for r in sub.residents}
    removed_hospitals = {h for sub in subs for h in sub.hospitals}
    removed_regions = {sub.region.hospitals for sub in subs}
    residents = tuple(r for r in instance.residents if r not in removed_residents)
    hospitals = tuple(h for h in instance.hospitals if h not in removed_hospitals)
    rest = Instance(
        residents=residents,
        hospitals=hospitals,
        capacities={h: instance.capacities[h] for h in hospitals},
        resident_prefs={r: instance.resident_prefs[r] for r in residents},
        hospital_prefs={h: instance.hospital_prefs[h] for h in hospitals},
        regions=tuple(reg for reg in instance.regions if reg.hospitals not in removed_regions),
    )
    # Blocks are closed under acceptability, so no surviving list or region
    # may mention a removed agent.
    for r in rest.residents:
        assert not set(rest.resident_prefs[r]) & removed_hospitals
    for h in rest.hospitals:
        assert not set(rest.hospital_prefs[h]) & removed_residents
    for reg in rest.regions:
        assert not reg.hospitals & removed_hospitals
    return rest


def solve_2x2_free(instance: Instance) -> Assignment:
    """Solve disjoint (2,2,2) instances that contain no 2x2 block.

    Runs deferred acceptance ignoring regions, then repeatedly picks an
    overloaded region, lowers the capacity of one of its hospitals, and
    reruns, until every cap holds.  The hospital to squeeze is the region's
    sole member, or (when one resident is acceptable to both members) that
    resident's less-preferred member while it still has capacity, or any
    member with capacity left.
    """
    cls = classify(instance)
    if not cls.disjoint:
        raise ValueError("solver requires disjoint regions")
    if cls.alpha > 2:
        raise ValueError(f"solver requires resident lists of length at most 2, got alpha={cls.alpha}")
    if cls.beta > 2:
        raise ValueError(f"solver requires hospital lists of length at most 2, got beta={cls.beta}")
    if cls.gamma > 2:
        raise ValueError(f"solver requires regions of size at most 2, got gamma={cls.gamma}")
    if any(instance.capacities[h] > 2 for h in instance.hospitals):
        raise ValueError("solver requires hospital capacities of at most 2")
    common: dict[frozenset[str], set[str]] = {}
    for reg in instance.regions:
        if len(reg.hospitals) == 2:
            common[reg.hospitals] = common_residents(instance, reg.hospitals)
            if len(common[reg.hospitals]) > 1:
                raise ValueError(
                    f"region {sorted(reg.hospitals)} has two common residents; "
                    "extract its 2x2 block first"
                )

    capacities = dict(instance.capacities)
    hospital_index = instance.hospital_index()
    budget = sum(capacities.values()) + 1
    for _ in range(budget):
        current = replace(instance, capacities=dict(capacities))
        matching = rgs(current, ignore_regions=True)
        overloaded = next(
            (
                reg
                for reg in instance.regions
                if len({r for r, h in matching.pairs if h in reg.hospitals}) > reg.cap
            ),
            None,
        )
        if overloaded is None:
            return matching
        members = sorted(overloaded.hospitals, key=hospital_index.__getitem__)
        if len(members) == 1:
            squeeze = members[0]
        elif len(common[overloaded.hospitals]) == 1:
            (r,) = common[overloaded.hospitals]
            prefs = instance.resident_prefs[r]
            h_plus, h_minus = sorted(members, key=prefs.index)
            squeeze = h_minus if capacities[h_minus] > 0 else h_plus
        else:
            squeeze = next(h for h in members if capacities[h] > 0)
        assert capacities[squeeze] > 0
        capacities[squeeze] -= 1
    raise RuntimeError("capacity reduction failed to terminate")


def solve_222_disjoint(instance: Instance) -> SolveOutcome:
    """Decide disjoint (2,2,2) instances.

    Every 2x2 block is independent of the rest, so the instance has a
    strongly stable matching exactly when each block has one and the
    block-free remainder (which always does) is solved alongside.
    """
    cls = classify(instance)
    if not (cls.alpha <= 2 and cls.beta <= 2 and cls.gamma <= 2 and cls.disjoint):
        raise ValueError(f"solver requires a disjoint (2,2,2) instance, got {cls}")
    subs = find_2x2_subinstances(instance)
    block_pairs: list[tuple[str, str]] = []
    for sub in subs:
        solved = _solve_block(_block_instance(instance, sub))
        if solved is None:
            return SolveOutcome.none_exists()
        block_pairs.extend(solved.pairs)
    rest = _remove_blocks(instance, subs)
    core = solve_2x2_free(shrink(rest))
    matching = Assignment.of(block_pairs + list(core.pairs))
    return SolveOutcome.found(_certified(instance, matching, "solve_222_disjoint"))


def _hardness_note(cls: InstanceClass) -> str:
    if not cls.disjoint:
        witness = "overlapping regions with all parameters at 2"
    elif cls.gamma >= 3:
        witness = "disjoint regions at parameters (2, 2, 3)"
    elif cls.beta >= 3:
        witness = "disjoint regions at parameters (2, 3, 2)"
    else:
        witness = "disjoint regions at parameters (3, 2, 2)"
    return (
        f"no polynomial-time solver covers class {cls}: deciding existence of a "
        f"strongly stable matching is NP-hard already for {witness}"
    )


def dispatch(instance: Instance, brute_limit: int = DEFAULT_BRUTE_LIMIT) -> SolveOutcome:
    """Route an instance to the first applicable solver.

    Priority: singleton regions, unit resident lists, unit hospital lists,
    disjoint (2,2,2), then exhaustive search when the instance has at most
    ``brute_limit`` agents in total.
    """
    require_valid(instance)
    cls = classify(instance)
    if cls.gamma <= 1:
        return SolveOutcome.found(
            _certified(instance, solve_regions_size1(instance), "solve_regions_size1")
        )
    if cls.alpha <= 1:
        return SolveOutcome.found(
            _certified(instance, solve_res_len1(instance), "solve_res_len1")
        )
    if cls.beta <= 1:
        return SolveOutcome.found(
            _certified(instance, solve_hosp_len1(instance), "solve_hosp_len1")
        )
    if cls.alpha <= 2 and cls.beta <= 2 and cls.gamma <= 2 and cls.disjoint:
        return solve_222_disjoint(instance)
    if len(instance.residents) + len(instance.hospitals) <= brute_limit:
        return exists_strongly_stable(instance)
    return SolveOutcome.unknown(
        _hardness_note(cls)
        + f"; instance has {len(instance.residents) + len(instance.hospitals)} agents, "
        + f"above the brute-force limit of {brute_limit}"
    )
