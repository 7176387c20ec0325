"""Envy-freeness up to hidden goods."""

import json

from ._hefk import (
    CapacityError,
    Instance,
    PreconditionError,
    StructuralError,
    aggregate_envy,
    exact_min_hide,
    generate_bernoulli,
    greedy_hide,
    is_ef,
    is_ef1,
    is_hef,
    is_pareto_optimal,
    is_sef1,
    is_uhef,
    kappa,
    normalized_regret,
    optimal_kappa,
    run_algorithm,
)
from . import _hefk

ALGORITHMS = ("round-robin", "envy-graph", "mnw", "ef1-po")


def reduce(problem, source):
    """Gadget for a source-problem dict; returns a dict with the instance JSON."""
    return json.loads(_hefk.reduce(problem, json.dumps(source)))


def run_sweep(config):
    """Runs a sweep from a config dict; returns (csv_text, summary_dict)."""
    csv_text, summary = _hefk.run_sweep(json.dumps(config))
    return csv_text, json.loads(summary)


__all__ = [
    "ALGORITHMS",
    "CapacityError",
    "Instance",
    "PreconditionError",
    "StructuralError",
    "aggregate_envy",
    "exact_min_hide",
    "generate_bernoulli",
    "greedy_hide",
    "is_ef",
    "is_ef1",
    "is_hef",
    "is_pareto_optimal",
    "is_sef1",
    "is_uhef",
    "kappa",
    "normalized_regret",
    "optimal_kappa",
    "reduce",
    "run_algorithm",
    "run_sweep",
]
