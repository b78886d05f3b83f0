"""Cooperative-coevolutionary multi-objective optimization toolkit.

Variable grouping by linkage-measurement minimization (plus differential
grouping, monotonicity detection, and random grouping baselines), an
NSGA-II core with an optional convergence-point Gaussian sampling operator,
a cooperative-coevolution runner, hypervolume/IGD indicators, scalable
benchmark problems, and a reproducible experiment harness.
"""

from ccmo.budget import BudgetExhausted, EvaluationBudget
from ccmo.problems import ProblemSpec, make_problem, problem_names, sample_true_pf

__all__ = [
    "BudgetExhausted",
    "EvaluationBudget",
    "ProblemSpec",
    "make_problem",
    "problem_names",
    "sample_true_pf",
]

__version__ = "0.1.0"
