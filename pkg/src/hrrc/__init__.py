"""Strong stability for hospitals/residents matching under regional caps.

The package exposes the instance model and checkers, polynomial solvers for
the tractable parameter classes, a brute-force oracle, and reductions from
SAT variants whose strongly stable matchings encode satisfying assignments.
"""

from .exhaustive import enumerate_feasible, exists_strongly_stable, strongly_stable_set
from .hr_core import rgs, shrink
from .model import (
    Assignment,
    Instance,
    InstanceClass,
    InstanceError,
    Region,
    SolveOutcome,
    acceptables,
    classify,
    common_residents,
    example_g2,
    load_instance,
    load_matching,
    make_instance,
    save_instance,
    save_matching,
    validate,
)
from .poly_solvers import (
    SubInstance2x2,
    dispatch,
    find_2x2_subinstances,
    solve_222_disjoint,
    solve_2x2_free,
    solve_hosp_len1,
    solve_regions_size1,
    solve_res_len1,
)
from .reductions import (
    CnfFormula,
    OccurrenceTable,
    ReductionVariant,
    check_one_in_three_positive,
    check_ppn,
    decode_matching,
    encode_assignment,
    occurrence_table,
    parse_dimacs,
    reduce_oneinthree,
    reduce_ppn,
    sat_brute,
    to_ppn,
)
from .stability import (
    BlockingWitness,
    blocking_pairs,
    is_feasible,
    is_matching,
    is_strongly_stable,
    region_load,
    strong_blocking_pairs,
)

__all__ = [
    "Assignment",
    "BlockingWitness",
    "CnfFormula",
    "Instance",
    "InstanceClass",
    "InstanceError",
    "OccurrenceTable",
    "ReductionVariant",
    "Region",
    "SolveOutcome",
    "SubInstance2x2",
    "acceptables",
    "blocking_pairs",
    "check_one_in_three_positive",
    "check_ppn",
    "classify",
    "common_residents",
    "decode_matching",
    "dispatch",
    "encode_assignment",
    "enumerate_feasible",
    "example_g2",
    "exists_strongly_stable",
    "find_2x2_subinstances",
    "is_feasible",
    "is_matching",
    "is_strongly_stable",
    "load_instance",
    "load_matching",
    "make_instance",
    "occurrence_table",
    "parse_dimacs",
    "reduce_oneinthree",
    "reduce_ppn",
    "region_load",
    "rgs",
    "sat_brute",
    "save_instance",
    "save_matching",
    "shrink",
    "solve_222_disjoint",
    "solve_2x2_free",
    "solve_hosp_len1",
    "solve_regions_size1",
    "solve_res_len1",
    "strong_blocking_pairs",
    "strongly_stable_set",
    "to_ppn",
    "validate",
]
