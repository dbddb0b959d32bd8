"""Hamming and l-infinity distances on permutations that share a descent set."""

from .classes import (
    ClassSpec,
    count,
    enumerate_class,
    enumerate_naive,
    materialize,
)
from .errors import (
    BudgetExceeded,
    DegenerateClass,
    DescentMetricsError,
    DomainError,
    IncomparablePermutations,
    InvalidDescentSet,
    InvalidPermutation,
    InvariantViolation,
    OpenProblem,
)
from .extremal import (
    NOT_COVERED,
    FormulaResult,
    WitnessPair,
    forced_entries,
    hamming_formula,
    hamming_witness,
    linf_formula_via_complement,
    linf_prefix_formula,
    linf_prefix_witness,
    linf_singleton_formula,
    linf_singleton_witness,
)
from .perm import (
    DescentSet,
    MetricKind,
    Permutation,
    all_descent_sets,
    complement,
    descent_set,
    hamming,
    linf,
    phi,
)
from .solver import (
    ClassReport,
    brute_max,
    brute_min,
    class_report,
    explore_linf,
    verify_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "ClassSpec",
    "count",
    "enumerate_class",
    "enumerate_naive",
    "materialize",
    "BudgetExceeded",
    "DegenerateClass",
    "DescentMetricsError",
    "DomainError",
    "IncomparablePermutations",
    "InvalidDescentSet",
    "InvalidPermutation",
    "InvariantViolation",
    "OpenProblem",
    "NOT_COVERED",
    "FormulaResult",
    "WitnessPair",
    "forced_entries",
    "hamming_formula",
    "hamming_witness",
    "linf_formula_via_complement",
    "linf_prefix_formula",
    "linf_prefix_witness",
    "linf_singleton_formula",
    "linf_singleton_witness",
    "DescentSet",
    "MetricKind",
    "Permutation",
    "all_descent_sets",
    "complement",
    "descent_set",
    "hamming",
    "linf",
    "phi",
    "ClassReport",
    "brute_max",
    "brute_min",
    "class_report",
    "explore_linf",
    "verify_sweep",
]
