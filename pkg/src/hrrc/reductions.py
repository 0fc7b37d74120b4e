"""CNF formulas and their translations into matching instances.

Two formula families are handled:

* *positive exactly-one* formulas: every clause has three distinct positive
  literals and is satisfied when exactly one of them is true;
* *2-positive/1-negative* (PPN) formulas: clauses of two or three literals in
  which every variable occurs exactly twice positively and once negatively.

``to_ppn`` rewrites any small CNF into an equisatisfiable PPN formula.  The
``reduce_*`` builders emit matching instances whose strongly stable matchings
correspond exactly to satisfying assignments, and ``encode_assignment`` /
``decode_matching`` translate witnesses across that correspondence.

Gadget ids embed their indices (``x'_2_1``, ``c'_3_2``, ...) so emitted
instance documents can be read against the source formula; the occurrence
table ties clause positions to variable occurrence slots and is what the
cross-gadget wiring and the decoders navigate by.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product

from .model import Assignment, Instance, make_instance, require_valid


class DimacsError(ValueError):
    """A DIMACS CNF document could not be parsed."""


@dataclass(frozen=True)
class CnfFormula:
    """A CNF formula over variables 1..num_vars.

    Each clause is a tuple of non-zero literals: ``+v`` for the variable,
    ``-v`` for its negation.
    """

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.num_vars < 0:
            raise ValueError("num_vars must be nonnegative")
        for j, clause in enumerate(self.clauses, start=1):
            if not clause:
                raise ValueError(f"clause {j} is empty")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"clause {j} has out-of-range literal {lit}")


SatAssignment = dict[int, bool]

MODE_ORDINARY = "ordinary"
MODE_ONE_IN_THREE = "one_in_three"


def parse_dimacs(text: str) -> CnfFormula:
    """Parse standard DIMACS CNF: a ``p cnf`` header, 0-terminated clauses, ``c`` comments."""
    num_vars: int | None = None
    declared_clauses: int | None = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if num_vars is not None:
                raise DimacsError(f"line {lineno}: duplicate header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                num_vars, declared_clauses = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from exc
            if num_vars < 0 or declared_clauses < 0:
                raise DimacsError(f"line {lineno}: negative counts in header")
            continue
        if num_vars is None:
            raise DimacsError(f"line {lineno}: clause data before 'p cnf' header")
        for token in line.split():
            try:
                lit = int(token)
            except ValueError as exc:
                raise DimacsError(f"line {lineno}: invalid literal {token!r}") from exc
            if lit == 0:
                if not current:
                    raise DimacsError(f"line {lineno}: empty clause")
                clauses.append(tuple(current))
                current = []
            else:
                if abs(lit) > num_vars:
                    raise DimacsError(
                        f"line {lineno}: literal {lit} exceeds declared {num_vars} variables"
                    )
                current.append(lit)
    if num_vars is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        raise DimacsError("last clause is not terminated by 0")
    if declared_clauses is not None and len(clauses) != declared_clauses:
        raise DimacsError(
            f"header declares {declared_clauses} clauses but {len(clauses)} were read"
        )
    return CnfFormula(num_vars, tuple(clauses))


def check_ppn(formula: CnfFormula) -> list[str]:
    """Violations of the 2-positive/1-negative shape (empty report = compliant).

    Clauses must have two or three literals and may not repeat a variable
    with the same sign; a complementary pair inside one clause is allowed.
    Every variable must occur exactly twice positively and once negatively.
    """
    out: list[str] = []
    positive = {i: 0 for i in range(1, formula.num_vars + 1)}
    negative = {i: 0 for i in range(1, formula.num_vars + 1)}
    for j, clause in enumerate(formula.clauses, start=1):
        if len(clause) not in (2, 3):
            out.append(f"clause {j} has {len(clause)} literals (needs 2 or 3)")
        if len(set(clause)) != len(clause):
            out.append(f"clause {j} repeats a literal")
        for lit in clause:
            if lit > 0:
                positive[lit] += 1
            else:
                negative[-lit] += 1
    for i in range(1, formula.num_vars + 1):
        if positive[i] != 2 or negative[i] != 1:
            out.append(
                f"variable {i} occurs {positive[i]} times positively and "
                f"{negative[i]} negatively (needs 2 and 1)"
            )
    return out


def check_one_in_three_positive(formula: CnfFormula) -> list[str]:
    """Violations of the positive exactly-one shape (empty report = compliant)."""
    out: list[str] = []
    for j, clause in enumerate(formula.clauses, start=1):
        if len(clause) != 3:
            out.append(f"clause {j} has {len(clause)} literals (needs 3)")
        negated = [lit for lit in clause if lit < 0]
        if negated:
            out.append(f"clause {j} contains negated literals {negated}")
        if len({abs(lit) for lit in clause}) != len(clause):
            out.append(f"clause {j} repeats a variable")
    return out


def literal_value(lit: int, assignment: SatAssignment) -> bool:
    value = assignment[abs(lit)]
    return value if lit > 0 else not value


def satisfies(formula: CnfFormula, assignment: SatAssignment, mode: str = MODE_ORDINARY) -> bool:
    if mode == MODE_ORDINARY:
        return all(any(literal_value(lit, assignment) for lit in c) for c in formula.clauses)
    if mode == MODE_ONE_IN_THREE:
        return all(
            sum(literal_value(lit, assignment) for lit in c) == 1 for c in formula.clauses
        )
    raise ValueError(f"unknown satisfaction mode {mode!r}")


def sat_brute(
    formula: CnfFormula, mode: str = MODE_ORDINARY, max_vars: int = 20
) -> SatAssignment | None:
    """Lexicographically least satisfying assignment (false < true), or None."""
    if mode not in (MODE_ORDINARY, MODE_ONE_IN_THREE):
        raise ValueError(f"unknown satisfaction mode {mode!r}")
    if formula.num_vars > max_vars:
        raise ValueError(
            f"formula has {formula.num_vars} variables, above the brute-force bound {max_vars}"
        )
    variables = range(1, formula.num_vars + 1)
    for values in product((False, True), repeat=formula.num_vars):
        assignment = dict(zip(variables, values))
        if satisfies(formula, assignment, mode):
            return assignment
    return None


# ---------------------------------------------------------------------------
# Normalization to the PPN shape


@dataclass(frozen=True)
class VariableOrigin:
    """Where a normalized variable came from.

    ``source`` is the original variable (None for padding variables invented
    for 1-literal clauses), ``occurrence`` the 1-based occurrence it replaced,
    and ``flipped`` whether its polarity was inverted to restore the
    2-positive/1-negative counts.
    """

    source: int | None
    occurrence: int
    flipped: bool


def to_ppn(formula: CnfFormula) -> tuple[CnfFormula, dict[int, VariableOrigin]]:
    """Rewrite a CNF with clauses of at most three literals into PPN shape.

    Every variable is split into one fresh variable per occurrence, chained
    by cyclic two-literal implication clauses that force all copies to agree;
    fresh variables standing for negative occurrences are then renamed with
    inverted polarity.  1-literal clauses are first padded into two 2-literal
    clauses over a fresh throwaway variable.  The result is equisatisfiable
    with the input.
    """
    for j, clause in enumerate(formula.clauses, start=1):
        if len(clause) > 3:
            raise ValueError(f"clause {j} has {len(clause)} literals; at most 3 supported")

    # Pad unit clauses: (l) becomes (l or w) and (l or not w).
    padded: list[list[int]] = []
    pad_sources: dict[int, VariableOrigin] = {}
    next_var = formula.num_vars + 1
    for clause in formula.clauses:
        if len(clause) == 1:
            w = next_var
            next_var += 1
            pad_sources[w] = VariableOrigin(None, 0, False)
            padded.append([clause[0], w])
            padded.append([clause[0], -w])
        else:
            padded.append(list(clause))

    # One fresh variable per occurrence, in (variable, occurrence) order.
    occurrences: dict[int, list[tuple[int, int]]] = {v: [] for v in range(1, next_var)}
    for cj, clause in enumerate(padded):
        for pos, lit in enumerate(clause):
            occurrences[abs(lit)].append((cj, pos))

    fresh = 0
    origins: dict[int, VariableOrigin] = {}
    host_clauses = [list(c) for c in padded]
    cycle_clauses: list[tuple[int, ...]] = []
    for v in range(1, next_var):
        slots = occurrences[v]
        if not slots:
            continue
        ids = []
        flips = []
        for t, (cj, pos) in enumerate(slots, start=1):
            fresh += 1
            sign = 1 if host_clauses[cj][pos] > 0 else -1
            # Copies standing for negative occurrences are renamed with
            # inverted polarity, which turns their host literal positive and
            # leaves every copy with two positive and one negative occurrence.
            origin_source = pad_sources[v].source if v in pad_sources else v
            origins[fresh] = VariableOrigin(origin_source, t, sign < 0)
            host_clauses[cj][pos] = fresh
            ids.append(fresh)
            flips.append(sign)
        k = len(ids)
        for t in range(k):
            # Cyclic chain forcing every copy to mirror one shared variable:
            # pre-renaming this is (f_t or not f_{t+1}); the renaming factors
            # carry through so the constraint's meaning is unchanged.
            u, w = t, (t + 1) % k
            cycle_clauses.append((flips[u] * ids[u], -flips[w] * ids[w]))

    clauses = tuple(tuple(c) for c in host_clauses) + tuple(cycle_clauses)
    result = CnfFormula(fresh, clauses)
    return result, origins


# ---------------------------------------------------------------------------
# Occurrence bookkeeping for PPN formulas


@dataclass(frozen=True)
class OccurrenceTable:
    """Bidirectional index between variables' occurrence slots and clause positions.

    ``positive[i]`` gives the two (clause, position) slots of variable i's
    positive occurrences in order, ``negative[i]`` the slot of its negation;
    ``slots[(clause, position)]`` gives back (variable, kind) with kind 1 and
    2 for the positive occurrences and 3 for the negative one.  Clause and
    position indices are 1-based.
    """

    positive: dict[int, tuple[tuple[int, int], tuple[int, int]]]
    negative: dict[int, tuple[int, int]]
    slots: dict[tuple[int, int], tuple[int, int]]

    def to_doc(self) -> dict:
        return {
            "variables": [
                {
                    "variable": i,
                    "positive": [list(s) for s in self.positive[i]],
                    "negative": list(self.negative[i]),
                }
                for i in sorted(self.positive)
            ]
        }


def occurrence_table(formula: CnfFormula) -> OccurrenceTable:
    violations = check_ppn(formula)
    if violations:
        raise ValueError("formula is not in PPN shape: " + "; ".join(violations))
    pos: dict[int, list[tuple[int, int]]] = {i: [] for i in range(1, formula.num_vars + 1)}
    neg: dict[int, tuple[int, int]] = {}
    slots: dict[tuple[int, int], tuple[int, int]] = {}
    for j, clause in enumerate(formula.clauses, start=1):
        for ell, lit in enumerate(clause, start=1):
            i = abs(lit)
            if lit > 0:
                pos[i].append((j, ell))
                slots[(j, ell)] = (i, len(pos[i]))
            else:
                neg[i] = (j, ell)
                slots[(j, ell)] = (i, 3)
    return OccurrenceTable(
        positive={i: (pos[i][0], pos[i][1]) for i in pos},
        negative=neg,
        slots=slots,
    )


# ---------------------------------------------------------------------------
# Instance builders


class ReductionVariant(Enum):
    """Target parameter class of a formula-to-instance reduction."""

    ONE_IN_THREE_222 = "one-in-three-222"
    PPN_223 = "ppn-223"
    PPN_232 = "ppn-232"
    PPN_322 = "ppn-322"


class _Builder:
    def __init__(self) -> None:
        self.residents: list[tuple[str, list[str]]] = []
        self.hospitals: list[tuple[str, int, list[str]]] = []
        self.regions: list[tuple[frozenset[str], int]] = []
        self._region_sets: set[frozenset[str]] = set()

    def resident(self, rid: str, prefs: list[str]) -> None:
        self.residents.append((rid, prefs))

    def hospital(self, hid: str, capacity: int, prefs: list[str]) -> None:
        self.hospitals.append((hid, capacity, prefs))

    def region(self, members: tuple[str, ...], cap: int) -> None:
        key = frozenset(members)
        if key in self._region_sets:
            return
        self._region_sets.add(key)
        self.regions.append((key, cap))

    def build(self) -> Instance:
        instance = make_instance(self.residents, self.hospitals, self.regions)
        require_valid(instance)
        return instance


def _y1(i: int) -> str:
    return f"y'_{i}"


def _x1(i: int) -> str:
    return f"x'_{i}"


def _g(j: int, k: int) -> str:
    return f"g'_{j}_{k}"


def _e(i: int, k: int) -> str:
    return f"e'_{i}_{k}"


def _b(i: int, k: int) -> str:
    return f"b'_{i}_{k}"


def _x(i: int, k: int) -> str:
    return f"x'_{i}_{k}"


def _c(j: int, ell: int) -> str:
    return f"c'_{j}_{ell}"


def _a(j: int, k: int) -> str:
    return f"a'_{j}_{k}"


def _u(j: int, k: int) -> str:
    return f"u'_{j}_{k}"


def _y(j: int) -> str:
    return f"y'_{j}"


def _d(j: int) -> str:
    return f"d'_{j}"


def _z(j: int) -> str:
    return f"z'_{j}"


def _t(j: int) -> str:
    return f"t'_{j}"


def _w(j: int) -> str:
    return f"w'_{j}"


def _require_all_variables_used(formula: CnfFormula) -> None:
    used = {abs(lit) for clause in formula.clauses for lit in clause}
    missing = sorted(set(range(1, formula.num_vars + 1)) - used)
    if missing:
        raise ValueError(
            f"variables {missing} occur in no clause; a variable block without a "
            "region cannot be kept stable while empty, so such formulas are rejected"
        )


def reduce_oneinthree(formula: CnfFormula) -> Instance:
    """Translate a positive exactly-one formula into an overlapping-regions instance.

    Per variable: one resident/hospital pair that is matched exactly when the
    variable is true.  Per clause: a 2x2 block with no stable configuration
    of its own, plus cap-1 regions over every pair drawn from the block's
    hospitals and the clause's three variable hospitals.  The caps make the
    block harmless exactly when exactly one variable hospital is filled.
    """
    violations = check_one_in_three_positive(formula)
    if violations:
        raise ValueError("formula is not positive exactly-one: " + "; ".join(violations))
    _require_all_variables_used(formula)
    b = _Builder()
    for i in range(1, formula.num_vars + 1):
        b.resident(_y1(i), [_x1(i)])
        b.hospital(_x1(i), 1, [_y1(i)])
    for j, clause in enumerate(formula.clauses, start=1):
        b.resident(_g(j, 1), [_g(j, 2), _g(j, 4)])
        b.resident(_g(j, 3), [_g(j, 4), _g(j, 2)])
        b.hospital(_g(j, 2), 1, [_g(j, 3), _g(j, 1)])
        b.hospital(_g(j, 4), 1, [_g(j, 1), _g(j, 3)])
        members = [_g(j, 2), _g(j, 4)] + [_x1(lit) for lit in clause]
        for pair in combinations(members, 2):
            b.region(pair, 1)
    return b.build()


def _slot_hospital(table: OccurrenceTable, j: int, ell: int) -> str:
    i, kind = table.slots[(j, ell)]
    return _x(i, kind)


def _build_ppn_223(formula: CnfFormula, table: OccurrenceTable) -> Instance:
    b = _Builder()
    for i in range(1, formula.num_vars + 1):
        b.resident(_e(i, 1), [_b(i, 1), _b(i, 3)])
        b.resident(_e(i, 2), [_b(i, 2), _b(i, 4)])
        b.hospital(_b(i, 1), 1, [_e(i, 1)])
        b.hospital(_x(i, 1), 1, [_c(*table.positive[i][0])])
        b.hospital(_b(i, 2), 1, [_e(i, 2)])
        b.hospital(_x(i, 2), 1, [_c(*table.positive[i][1])])
        b.hospital(_b(i, 3), 1, [_e(i, 1)])
        b.hospital(_b(i, 4), 1, [_e(i, 2)])
        b.hospital(_x(i, 3), 1, [_c(*table.negative[i])])
        b.region((_b(i, 1), _x(i, 1)), 1)
        b.region((_b(i, 2), _x(i, 2)), 1)
        b.region((_b(i, 3), _b(i, 4), _x(i, 3)), 2)
    for j, clause in enumerate(formula.clauses, start=1):
        if len(clause) == 2:
            b.resident(_c(j, 1), [_slot_hospital(table, j, 1), _a(j, 1)])
            b.resident(_c(j, 2), [_slot_hospital(table, j, 2), _a(j, 1)])
            b.hospital(_a(j, 1), 1, [_c(j, 1), _c(j, 2)])
            b.hospital(_y(j), 1, [_z(j)])
            b.region((_a(j, 1), _y(j)), 1)
        else:
            b.resident(_c(j, 1), [_slot_hospital(table, j, 1), _a(j, 1)])
            b.resident(_c(j, 2), [_slot_hospital(table, j, 2), _a(j, 1)])
            b.resident(_d(j), [_a(j, 2), _a(j, 3)])
            b.resident(_c(j, 3), [_slot_hospital(table, j, 3), _a(j, 3)])
            b.hospital(_a(j, 1), 1, [_c(j, 1), _c(j, 2)])
            b.hospital(_a(j, 2), 1, [_d(j)])
            b.hospital(_a(j, 3), 1, [_d(j), _c(j, 3)])
            b.hospital(_y(j), 1, [_z(j)])
            b.region((_a(j, 1), _a(j, 2)), 1)
            b.region((_a(j, 3), _y(j)), 1)
    for j in range(1, len(formula.clauses) + 1):
        b.resident(_g(j, 1), [_g(j, 2), _g(j, 4)])
        b.resident(_g(j, 3), [_g(j, 4), _g(j, 2)])
        b.resident(_z(j), [_y(j), _t(j)])
        b.hospital(_g(j, 2), 1, [_g(j, 3), _g(j, 1)])
        b.hospital(_g(j, 4), 1, [_g(j, 1), _g(j, 3)])
        b.hospital(_t(j), 1, [_z(j)])
        b.region((_g(j, 2), _g(j, 4), _t(j)), 1)
    return b.build()


def _build_ppn_232(formula: CnfFormula, table: OccurrenceTable) -> Instance:
    b = _Builder()
    for i in range(1, formula.num_vars + 1):
        b.resident(_e(i, 1), [_b(i, 1), _x(i, 3)])
        b.resident(_e(i, 2), [_b(i, 2), _x(i, 3)])
        b.hospital(_b(i, 1), 1, [_e(i, 1)])
        b.hospital(_x(i, 1), 1, [_c(*table.positive[i][0])])
        b.hospital(_b(i, 2), 1, [_e(i, 2)])
        b.hospital(_x(i, 2), 1, [_c(*table.positive[i][1])])
        b.hospital(_x(i, 3), 2, [_e(i, 1), _e(i, 2), _c(*table.negative[i])])
        b.region((_b(i, 1), _x(i, 1)), 1)
        b.region((_b(i, 2), _x(i, 2)), 1)
    for j, clause in enumerate(formula.clauses, start=1):
        if len(clause) == 2:
            b.resident(_c(j, 1), [_slot_hospital(table, j, 1), _a(j, 1)])
            b.resident(_c(j, 2), [_slot_hospital(table, j, 2), _a(j, 1)])
            b.hospital(_a(j, 1), 1, [_c(j, 1), _c(j, 2)])
            b.hospital(_y(j), 1, [_z(j)])
            b.region((_a(j, 1), _y(j)), 1)
        else:
            b.resident(_c(j, 1), [_slot_hospital(table, j, 1), _a(j, 1)])
            b.resident(_c(j, 2), [_slot_hospital(table, j, 2), _a(j, 1)])
            b.resident(_d(j), [_a(j, 2), _a(j, 3)])
            b.resident(_c(j, 3), [_slot_hospital(table, j, 3), _a(j, 3)])
            b.hospital(_a(j, 1), 1, [_c(j, 1), _c(j, 2)])
            b.hospital(_a(j, 2), 1, [_d(j)])
            b.hospital(_a(j, 3), 1, [_d(j), _c(j, 3)])
            b.hospital(_y(j), 1, [_z(j)])
            b.region((_a(j, 1), _a(j, 2)), 1)
            b.region((_a(j, 3), _y(j)), 1)
    for j in range(1, len(formula.clauses) + 1):
        b.resident(_g(j, 1), [_g(j, 2), _g(j, 4)])
        b.resident(_g(j, 3), [_g(j, 4), _g(j, 2)])
        b.resident(_z(j), [_y(j), _g(j, 2)])
        b.hospital(_g(j, 2), 1, [_z(j), _g(j, 3), _g(j, 1)])
        b.hospital(_g(j, 4), 1, [_g(j, 1), _g(j, 3)])
        b.region((_g(j, 2), _g(j, 4)), 1)
    return b.build()


def _build_ppn_322(formula: CnfFormula, table: OccurrenceTable) -> Instance:
    b = _Builder()
    for i in range(1, formula.num_vars + 1):
        b.resident(_e(i, 1), [_b(i, 1), _x(i, 1)])
        b.resident(_e(i, 2), [_b(i, 1), _x(i, 2)])
        b.resident(_e(i, 3), [_b(i, 2), _x(i, 3)])
        b.resident(_e(i, 4), [_b(i, 2)])
        b.hospital(_x(i, 1), 1, [_e(i, 1), _c(*table.positive[i][0])])
        b.hospital(_x(i, 2), 1, [_e(i, 2), _c(*table.positive[i][1])])
        b.hospital(_x(i, 3), 1, [_e(i, 3), _c(*table.negative[i])])
        b.hospital(_b(i, 1), 2, [_e(i, 2), _e(i, 1)])
        b.hospital(_b(i, 2), 2, [_e(i, 4), _e(i, 3)])
        b.region((_b(i, 1), _b(i, 2)), 2)
    for j, clause in enumerate(formula.clauses, start=1):
        if len(clause) == 2:
            b.resident(_c(j, 1), [_slot_hospital(table, j, 1), _a(j, 1)])
            b.resident(_c(j, 2), [_slot_hospital(table, j, 2), _a(j, 2)])
            b.resident(_u(j, 1), [_a(j, 1), _a(j, 2), _y(j)])
            b.hospital(_a(j, 1), 1, [_c(j, 1), _u(j, 1)])
            b.hospital(_a(j, 2), 1, [_c(j, 2), _u(j, 1)])
            b.hospital(_y(j), 1, [_u(j, 1), _z(j)])
        else:
            b.resident(_c(j, 1), [_slot_hospital(table, j, 1), _a(j, 1)])
            b.resident(_c(j, 2), [_slot_hospital(table, j, 2), _a(j, 2)])
            b.resident(_u(j, 1), [_a(j, 1), _a(j, 2), _w(j)])
            b.resident(_d(j), [_w(j), _a(j, 4)])
            b.resident(_c(j, 3), [_slot_hospital(table, j, 3), _a(j, 3)])
            b.resident(_u(j, 2), [_a(j, 4), _a(j, 3), _y(j)])
            b.hospital(_a(j, 1), 1, [_c(j, 1), _u(j, 1)])
            b.hospital(_a(j, 2), 1, [_c(j, 2), _u(j, 1)])
            b.hospital(_w(j), 1, [_u(j, 1), _d(j)])
            b.hospital(_a(j, 4), 1, [_d(j), _u(j, 2)])
            b.hospital(_a(j, 3), 1, [_c(j, 3), _u(j, 2)])
            b.hospital(_y(j), 1, [_u(j, 2), _z(j)])
    for j in range(1, len(formula.clauses) + 1):
        b.resident(_z(j), [_y(j), _g(j, 2), _g(j, 4)])
        b.resident(_g(j, 3), [_g(j, 4), _g(j, 2)])
        b.hospital(_g(j, 2), 1, [_g(j, 3), _z(j)])
        b.hospital(_g(j, 4), 1, [_z(j), _g(j, 3)])
        b.region((_g(j, 2), _g(j, 4)), 1)
    return b.build()


_PPN_BUILDERS = {
    ReductionVariant.PPN_223: _build_ppn_223,
    ReductionVariant.PPN_232: _build_ppn_232,
    ReductionVariant.PPN_322: _build_ppn_322,
}


def reduce_ppn(
    formula: CnfFormula, variant: ReductionVariant
) -> tuple[Instance, OccurrenceTable]:
    """Translate a PPN formula into a disjoint-regions instance of the target class."""
    if variant not in _PPN_BUILDERS:
        raise ValueError(f"variant {variant} is not a PPN reduction target")
    violations = check_ppn(formula)
    if violations:
        raise ValueError("formula is not in PPN shape: " + "; ".join(violations))
    table = occurrence_table(formula)
    return _PPN_BUILDERS[variant](formula, table), table


# ---------------------------------------------------------------------------
# Witness translation


def _clause_values(
    clause: tuple[int, ...], assignment: SatAssignment
) -> tuple[bool, ...]:
    return tuple(literal_value(lit, assignment) for lit in clause)


def _encode_common_clause(
    j: int, clause: tuple[int, ...], values: tuple[bool, ...], table: OccurrenceTable
) -> list[tuple[str, str]]:
    """Clause-block pairs shared by the 223 and 232 encodings.

    A false literal sends its clause resident to the variable block (the slot
    hospital must not stay empty); true literals free the clause residents to
    fill the block's own hospitals.
    """
    xs = [_slot_hospital(table, j, ell) for ell in range(1, len(clause) + 1)]
    if len(clause) == 2:
        case = {
            (False, True): [(_c(j, 1), xs[0]), (_c(j, 2), _a(j, 1))],
            (True, False): [(_c(j, 1), _a(j, 1)), (_c(j, 2), xs[1])],
            (True, True): [(_c(j, 1), _a(j, 1))],
        }
        return case[values]
    case3 = {
        (False, False, True): [
            (_c(j, 1), xs[0]), (_c(j, 2), xs[1]), (_d(j), _a(j, 2)), (_c(j, 3), _a(j, 3)),
        ],
        (False, True, False): [
            (_c(j, 1), xs[0]), (_c(j, 2), _a(j, 1)), (_d(j), _a(j, 3)), (_c(j, 3), xs[2]),
        ],
        (True, False, False): [
            (_c(j, 1), _a(j, 1)), (_c(j, 2), xs[1]), (_d(j), _a(j, 3)), (_c(j, 3), xs[2]),
        ],
        (False, True, True): [
            (_c(j, 1), xs[0]), (_c(j, 2), _a(j, 1)), (_d(j), _a(j, 3)),
        ],
        (True, False, True): [
            (_c(j, 1), _a(j, 1)), (_c(j, 2), xs[1]), (_d(j), _a(j, 3)),
        ],
        (True, True, False): [
            (_c(j, 1), _a(j, 1)), (_d(j), _a(j, 3)), (_c(j, 3), xs[2]),
        ],
        (True, True, True): [
            (_c(j, 1), _a(j, 1)), (_d(j), _a(j, 3)),
        ],
    }
    return case3[values]


def _encode_322_clause(
    j: int, clause: tuple[int, ...], values: tuple[bool, ...], table: OccurrenceTable
) -> list[tuple[str, str]]:
    """Clause-block pairs for the 322 encoding.

    Opposite convention from the other two: a true literal sends its clause
    resident to the (now vacant) variable-block hospital.
    """
    xs = [_slot_hospital(table, j, ell) for ell in range(1, len(clause) + 1)]
    if len(clause) == 2:
        case = {
            (False, True): [(_c(j, 1), _a(j, 1)), (_c(j, 2), xs[1]), (_u(j, 1), _a(j, 2))],
            (True, False): [(_c(j, 1), xs[0]), (_c(j, 2), _a(j, 2)), (_u(j, 1), _a(j, 1))],
            (True, True): [(_c(j, 1), xs[0]), (_c(j, 2), xs[1]), (_u(j, 1), _a(j, 1))],
        }
        return case[values]
    case3 = {
        (False, False, True): [
            (_c(j, 1), _a(j, 1)), (_c(j, 2), _a(j, 2)), (_u(j, 1), _w(j)),
            (_d(j), _a(j, 4)), (_c(j, 3), xs[2]), (_u(j, 2), _a(j, 3)),
        ],
        (False, True, False): [
            (_c(j, 1), _a(j, 1)), (_c(j, 2), xs[1]), (_u(j, 1), _a(j, 2)),
            (_d(j), _w(j)), (_c(j, 3), _a(j, 3)), (_u(j, 2), _a(j, 4)),
        ],
        (True, False, False): [
            (_c(j, 1), xs[0]), (_c(j, 2), _a(j, 2)), (_u(j, 1), _a(j, 1)),
            (_d(j), _w(j)), (_c(j, 3), _a(j, 3)), (_u(j, 2), _a(j, 4)),
        ],
        (False, True, True): [
            (_c(j, 1), _a(j, 1)), (_c(j, 2), xs[1]), (_u(j, 1), _a(j, 2)),
            (_d(j), _w(j)), (_c(j, 3), xs[2]), (_u(j, 2), _a(j, 4)),
        ],
        (True, False, True): [
            (_c(j, 1), xs[0]), (_c(j, 2), _a(j, 2)), (_u(j, 1), _a(j, 1)),
            (_d(j), _w(j)), (_c(j, 3), xs[2]), (_u(j, 2), _a(j, 4)),
        ],
        (True, True, False): [
            (_c(j, 1), xs[0]), (_c(j, 2), xs[1]), (_u(j, 1), _a(j, 1)),
            (_d(j), _w(j)), (_c(j, 3), _a(j, 3)), (_u(j, 2), _a(j, 4)),
        ],
        (True, True, True): [
            (_c(j, 1), xs[0]), (_c(j, 2), xs[1]), (_u(j, 1), _a(j, 1)),
            (_d(j), _w(j)), (_c(j, 3), xs[2]), (_u(j, 2), _a(j, 4)),
        ],
    }
    return case3[values]


def encode_assignment(
    formula: CnfFormula, assignment: SatAssignment, variant: ReductionVariant
) -> Assignment:
    """Build the strongly stable matching that a satisfying assignment induces."""
    if variant is ReductionVariant.ONE_IN_THREE_222:
        if not satisfies(formula, assignment, MODE_ONE_IN_THREE):
            raise ValueError("assignment does not satisfy the formula (exactly-one semantics)")
        return Assignment.of(
            (_y1(i), _x1(i)) for i in range(1, formula.num_vars + 1) if assignment[i]
        )

    if not satisfies(formula, assignment, MODE_ORDINARY):
        raise ValueError("assignment does not satisfy the formula")
    table = occurrence_table(formula)
    pairs: list[tuple[str, str]] = []
    if variant is ReductionVariant.PPN_223:
        for i in range(1, formula.num_vars + 1):
            if assignment[i]:
                pairs += [(_e(i, 1), _b(i, 1)), (_e(i, 2), _b(i, 2))]
            else:
                pairs += [(_e(i, 1), _b(i, 3)), (_e(i, 2), _b(i, 4))]
        for j, clause in enumerate(formula.clauses, start=1):
            pairs += _encode_common_clause(j, clause, _clause_values(clause, assignment), table)
        for j in range(1, len(formula.clauses) + 1):
            pairs.append((_z(j), _t(j)))
    elif variant is ReductionVariant.PPN_232:
        for i in range(1, formula.num_vars + 1):
            if assignment[i]:
                pairs += [(_e(i, 1), _b(i, 1)), (_e(i, 2), _b(i, 2))]
            else:
                pairs += [(_e(i, 1), _x(i, 3)), (_e(i, 2), _x(i, 3))]
        for j, clause in enumerate(formula.clauses, start=1):
            pairs += _encode_common_clause(j, clause, _clause_values(clause, assignment), table)
        for j in range(1, len(formula.clauses) + 1):
            pairs.append((_z(j), _g(j, 2)))
    elif variant is ReductionVariant.PPN_322:
        for i in range(1, formula.num_vars + 1):
            if assignment[i]:
                pairs += [(_e(i, 1), _b(i, 1)), (_e(i, 2), _b(i, 1)), (_e(i, 3), _x(i, 3))]
            else:
                pairs += [
                    (_e(i, 1), _x(i, 1)),
                    (_e(i, 2), _x(i, 2)),
                    (_e(i, 3), _b(i, 2)),
                    (_e(i, 4), _b(i, 2)),
                ]
        for j, clause in enumerate(formula.clauses, start=1):
            pairs += _encode_322_clause(j, clause, _clause_values(clause, assignment), table)
        for j in range(1, len(formula.clauses) + 1):
            pairs += [(_z(j), _y(j)), (_g(j, 3), _g(j, 4))]
    else:
        raise ValueError(f"unknown reduction variant {variant}")
    return Assignment.of(pairs)


def decode_matching(
    formula: CnfFormula, matching: Assignment, variant: ReductionVariant
) -> SatAssignment:
    """Read a satisfying assignment off a strongly stable matching.

    The caller is responsible for the matching actually being strongly stable
    on the reduced instance; only then is the result guaranteed to satisfy
    the formula.
    """
    if variant is ReductionVariant.ONE_IN_THREE_222:
        return {
            i: matching.residents_of(_x1(i)) != frozenset()
            for i in range(1, formula.num_vars + 1)
        }
    table = occurrence_table(formula)
    out: SatAssignment = {}
    for i in range(1, formula.num_vars + 1):
        j, ell = table.negative[i]
        slot_filled = (_c(j, ell), _x(i, 3)) in matching
        if variant in (ReductionVariant.PPN_223, ReductionVariant.PPN_232):
            out[i] = slot_filled
        elif variant is ReductionVariant.PPN_322:
            out[i] = not slot_filled
        else:
            raise ValueError(f"unknown reduction variant {variant}")
    return out
