"""Feasibility, blocking pairs, and strong blocking pairs.

A blocking pair (r, h) is an acceptable pair where r is unassigned or prefers
h to its current hospital, and h is undersubscribed or prefers r to one of
its current assignees.  A blocking pair blocks *strongly* when moving r to h
keeps every regional cap satisfied, or when h prefers r to a current
assignee.  A feasible matching with no strong blocking pair is strongly
stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .model import Assignment, Instance

KIND_BP = "BP"
KIND_SBP = "SBP"


@dataclass(frozen=True)
class BlockingWitness:
    """A blocking pair annotated with the strong-blocking conditions it meets.

    ``move_feasible`` records that reassigning the resident to the hospital
    keeps all regional caps; ``displaced`` names the hospital's worst current
    assignee the resident outranks.  Both are recorded when both hold.
    """

    resident: str
    hospital: str
    kind: str = KIND_BP
    move_feasible: bool = False
    displaced: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in (KIND_BP, KIND_SBP):
            raise ValueError(f"unknown witness kind {self.kind!r}")
        if self.kind == KIND_SBP and not (self.move_feasible or self.displaced is not None):
            raise ValueError("an SBP witness must satisfy at least one condition")

    @property
    def pair(self) -> tuple[str, str]:
        return (self.resident, self.hospital)

    def conditions(self) -> list[str]:
        out = []
        if self.displaced is not None:
            out.append(f"preferred-over-assignee({self.displaced})")
        if self.move_feasible:
            out.append("move-feasible")
        return out


def matching_violations(instance: Instance, assignment: Assignment) -> list[str]:
    """Why ``assignment`` is not a matching of ``instance`` (empty if it is)."""
    out: list[str] = []
    seen_residents: set[str] = set()
    for r, h in assignment.sorted_pairs():
        if r not in instance.resident_prefs:
            out.append(f"unknown resident {r!r}")
        elif h not in instance.resident_prefs[r]:
            out.append(f"pair ({r!r}, {h!r}) is not acceptable")
        if h not in instance.hospital_prefs:
            out.append(f"unknown hospital {h!r}")
        if r in seen_residents:
            out.append(f"resident {r!r} is assigned more than once")
        seen_residents.add(r)
    for h in instance.hospitals:
        load = len(assignment.residents_of(h))
        if load > instance.capacities[h]:
            out.append(f"hospital {h!r} holds {load} residents, capacity {instance.capacities[h]}")
    return out


def is_matching(instance: Instance, assignment: Assignment) -> bool:
    return not matching_violations(instance, assignment)


def _require_matching(instance: Instance, assignment: Assignment) -> None:
    violations = matching_violations(instance, assignment)
    if violations:
        raise ValueError("not a matching: " + "; ".join(violations))


def region_load(instance: Instance, assignment: Assignment, region: Iterable[str]) -> int:
    """Number of distinct residents assigned inside a declared region."""
    members = frozenset(region)
    if not any(reg.hospitals == members for reg in instance.regions):
        raise ValueError(f"unknown region {sorted(members)}")
    return len({r for r, h in assignment.pairs if h in members})


def _loads(instance: Instance, pairs: frozenset[tuple[str, str]]) -> list[int]:
    return [
        len({r for r, h in pairs if h in reg.hospitals}) for reg in instance.regions
    ]


def is_feasible(instance: Instance, matching: Assignment) -> bool:
    """Whether every regional cap holds.  Rejects non-matching assignments."""
    _require_matching(instance, matching)
    return all(
        load <= reg.cap for load, reg in zip(_loads(instance, matching.pairs), instance.regions)
    )


def _assignment_maps(
    instance: Instance, matching: Assignment
) -> tuple[dict[str, str], dict[str, list[str]]]:
    hospital_of: dict[str, str] = {}
    residents_of: dict[str, list[str]] = {h: [] for h in instance.hospitals}
    for r, h in matching.sorted_pairs():
        hospital_of[r] = h
        residents_of[h].append(r)
    return hospital_of, residents_of


def blocking_pairs(instance: Instance, matching: Assignment) -> list[tuple[str, str]]:
    """All blocking pairs, in (resident-declaration, hospital-declaration) order."""
    _require_matching(instance, matching)
    hospital_of, residents_of = _assignment_maps(instance, matching)
    hrank = {h: {r: i for i, r in enumerate(prefs)} for h, prefs in instance.hospital_prefs.items()}
    out: list[tuple[str, str]] = []
    for r in instance.residents:
        prefs = instance.resident_prefs[r]
        current = hospital_of.get(r)
        # Hospitals r would rather have: its whole list when unassigned,
        # otherwise the strict prefix before its current hospital.
        better = prefs if current is None else prefs[: prefs.index(current)]
        better_set = set(better)
        for h in instance.hospitals:
            if h not in better_set:
                continue
            assigned = residents_of[h]
            if len(assigned) < instance.capacities[h] or any(
                hrank[h][r] < hrank[h][r2] for r2 in assigned
            ):
                out.append((r, h))
    return out


def _move_is_feasible(instance: Instance, matching: Assignment, r: str, h: str) -> bool:
    old = matching.hospital_of(r)
    moved = set(matching.pairs)
    if old is not None:
        moved.discard((r, old))
    moved.add((r, h))
    pairs = frozenset(moved)
    return all(load <= reg.cap for load, reg in zip(_loads(instance, pairs), instance.regions))


def strong_blocking_pairs(instance: Instance, matching: Assignment) -> list[BlockingWitness]:
    """Witnesses for every strong blocking pair of a feasible matching."""
    if not is_feasible(instance, matching):
        raise ValueError("strong blocking pairs are defined only for feasible matchings")
    hrank = {h: {r: i for i, r in enumerate(prefs)} for h, prefs in instance.hospital_prefs.items()}
    out: list[BlockingWitness] = []
    for r, h in blocking_pairs(instance, matching):
        assigned = matching.residents_of(h)
        worse = [r2 for r2 in assigned if hrank[h][r] < hrank[h][r2]]
        displaced = max(worse, key=lambda r2: hrank[h][r2]) if worse else None
        move_ok = _move_is_feasible(instance, matching, r, h)
        if displaced is not None or move_ok:
            out.append(
                BlockingWitness(r, h, KIND_SBP, move_feasible=move_ok, displaced=displaced)
            )
    return out


def is_strongly_stable(instance: Instance, matching: Assignment) -> bool:
    """Whether ``matching`` is feasible and admits no strong blocking pair."""
    if not is_feasible(instance, matching):
        return False
    return not strong_blocking_pairs(instance, matching)
