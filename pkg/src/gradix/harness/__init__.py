"""Random generators, independent oracles, lattice search, and the
executable theorem suites."""

from .gen import GenConfig, gen_instance, gen_ptc_expr, gen_rdt, sub_rng
from .latsearch import (
    enumerate_residuated_lattices,
    search_distributivity_counterexample,
)
from .suites import (
    DEFAULT_INSTANCES,
    THEOREM_IDS,
    Counterexample,
    EquivalenceReport,
    run_theorem_suite,
)

__all__ = [
    "GenConfig",
    "gen_instance",
    "gen_ptc_expr",
    "gen_rdt",
    "sub_rng",
    "enumerate_residuated_lattices",
    "search_distributivity_counterexample",
    "DEFAULT_INSTANCES",
    "THEOREM_IDS",
    "Counterexample",
    "EquivalenceReport",
    "run_theorem_suite",
]
