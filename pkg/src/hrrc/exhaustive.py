"""Brute-force oracle over small instances.

Feasible matchings are enumerated by assigning residents one at a time in
declaration order; each resident tries its acceptable hospitals in hospital
declaration order and "unassigned" last, so matchings stream out in a fixed
lexicographic order.  Hospital and region loads are tracked incrementally and
prune infeasible prefixes.

The existence check additionally cuts a branch as soon as some pair is a
strong blocking pair in every completion of the current prefix, which keeps
the search tractable on the structured instances the reductions emit.  The
pruned branches never contain a strongly stable matching, so the first
surviving leaf is still the lexicographically least one.
"""

from __future__ import annotations

import warnings
from typing import Iterator

from .model import Assignment, Instance, SolveOutcome, require_valid
from .stability import is_strongly_stable

DEFAULT_WARN_LIMIT = 1_000_000


class _SearchState:
    """Shared incremental bookkeeping for the enumeration walks."""

    def __init__(self, instance: Instance):
        require_valid(instance)
        self.instance = instance
        self.residents = instance.residents
        self.capacities = instance.capacities
        hospital_index = instance.hospital_index()
        # Per resident: acceptable hospitals in declaration order.
        self.choices = {
            r: sorted(instance.resident_prefs[r], key=hospital_index.__getitem__)
            for r in self.residents
        }
        self.region_caps = [reg.cap for reg in instance.regions]
        self.regions_of = {h: [] for h in instance.hospitals}
        for k, reg in enumerate(instance.regions):
            for h in reg.hospitals:
                self.regions_of[h].append(k)
        self.hospital_load = {h: 0 for h in instance.hospitals}
        self.region_load = [0] * len(instance.regions)
        self.assigned: list[str | None] = [None] * len(self.residents)

    def fits(self, h: str) -> bool:
        if self.hospital_load[h] >= self.capacities[h]:
            return False
        return all(self.region_load[k] < self.region_caps[k] for k in self.regions_of[h])

    def place(self, i: int, h: str) -> None:
        self.assigned[i] = h
        self.hospital_load[h] += 1
        for k in self.regions_of[h]:
            self.region_load[k] += 1

    def unplace(self, i: int, h: str) -> None:
        self.assigned[i] = None
        self.hospital_load[h] -= 1
        for k in self.regions_of[h]:
            self.region_load[k] -= 1

    def current(self) -> Assignment:
        return Assignment.of(
            (r, h) for r, h in zip(self.residents, self.assigned) if h is not None
        )


def enumerate_feasible(
    instance: Instance, *, warn_limit: int = DEFAULT_WARN_LIMIT
) -> Iterator[Assignment]:
    """Yield every feasible matching exactly once, in canonical order."""
    state = _SearchState(instance)
    n = len(state.residents)
    emitted = 0

    def walk(i: int) -> Iterator[Assignment]:
        nonlocal emitted
        if i == n:
            emitted += 1
            if emitted == warn_limit + 1:
                warnings.warn(
                    f"feasible-matching enumeration passed {warn_limit} matchings",
                    RuntimeWarning,
                    stacklevel=3,
                )
            yield state.current()
            return
        r = state.residents[i]
        for h in state.choices[r]:
            if state.fits(h):
                state.place(i, h)
                yield from walk(i + 1)
                state.unplace(i, h)
        yield from walk(i + 1)

    yield from walk(0)


def strongly_stable_set(instance: Instance) -> set[Assignment]:
    """All strongly stable matchings: the feasible ones the checker accepts."""
    return {m for m in enumerate_feasible(instance) if is_strongly_stable(instance, m)}


class _ExistenceSearch(_SearchState):
    """Depth-first existence search with determined-blocking-pair cutoffs.

    A pair (r, h) is fully determined once every resident that can still
    change r's assignment, h's assignees, or the load of a region containing
    h has been placed.  From that point its strong-blocking status is final,
    so a prefix exhibiting such a pair can be abandoned.
    """

    def __init__(self, instance: Instance):
        super().__init__(instance)
        resident_pos = {r: i for i, r in enumerate(self.residents)}
        self.rrank = {
            r: {h: i for i, h in enumerate(prefs)}
            for r, prefs in instance.resident_prefs.items()
        }
        self.hrank = {
            h: {r: i for i, r in enumerate(prefs)}
            for h, prefs in instance.hospital_prefs.items()
        }
        self.resident_pos = resident_pos
        n = len(self.residents)
        self.determined_at: list[list[str]] = [[] for _ in range(n)]
        for h in instance.hospitals:
            watchers = set(instance.hospital_prefs[h])
            for k in self.regions_of[h]:
                for h2 in instance.regions[k].hospitals:
                    watchers.update(instance.hospital_prefs[h2])
            if not instance.hospital_prefs[h] or not watchers:
                continue
            depth = max(resident_pos[r] for r in watchers)
            self.determined_at[depth].append(h)

    def _is_settled_sbp(self, r: str, h: str) -> bool:
        i = self.resident_pos[r]
        current = self.assigned[i]
        if current == h:
            return False
        if current is not None and self.rrank[r][current] < self.rrank[r][h]:
            return False
        # r wants h; does h want r back?
        rank = self.hrank[h][r]
        assigned_here = [
            r2
            for r2, h2 in zip(self.residents, self.assigned)
            if h2 == h
        ]
        undersubscribed = len(assigned_here) < self.capacities[h]
        beats_someone = any(rank < self.hrank[h][r2] for r2 in assigned_here)
        if not (undersubscribed or beats_someone):
            return False
        if beats_someone:
            return True
        # Move feasibility: only regions containing h but not r's hospital gain load.
        for k in self.regions_of[h]:
            if current is not None and current in self.instance.regions[k].hospitals:
                continue
            if self.region_load[k] >= self.region_caps[k]:
                break
        else:
            return True
        return False

    def doomed(self, depth: int) -> bool:
        for h in self.determined_at[depth]:
            for r in self.instance.hospital_prefs[h]:
                if self._is_settled_sbp(r, h):
                    return True
        return False


def exists_strongly_stable(instance: Instance) -> SolveOutcome:
    """Decide existence; a found matching is the canonically first one."""
    search = _ExistenceSearch(instance)
    n = len(search.residents)

    def walk(i: int) -> Assignment | None:
        if i == n:
            return search.current()
        r = search.residents[i]
        for h in search.choices[r]:
            if search.fits(h):
                search.place(i, h)
                if not search.doomed(i):
                    found = walk(i + 1)
                    if found is not None:
                        return found
                search.unplace(i, h)
        if search.doomed(i):
            return None
        return walk(i + 1)

    found = walk(0)
    if found is None:
        return SolveOutcome.none_exists()
    assert is_strongly_stable(instance, found)
    return SolveOutcome.found(found)
