"""Cooperative-coevolution runner.

Splits the decision space by a Grouping and optimizes the sub-problems in
turn with NSGA-II. The population carries complete solutions: each member
owns a full decision vector, and a sub-problem visit varies only that
group's coordinate block (offspring inherit the remaining coordinates from
their winning parent). This keeps every cached objective consistent with
its own vector and preserves front diversity across sub-problem visits.

Every evaluated full solution feeds a bounded Pareto archive; the
evaluation budget is enforced globally. With the hybrid flag on, each
generation additionally evaluates elite Gaussian samples centered on the
estimated convergence point of the offspring front (full-dimension draws)
and merges them into environmental selection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ccmo.budget import EvaluationBudget
from ccmo.grouping import Grouping
from ccmo.hybrid import (
    SingularDirectionsError,
    estimate_point_average,
    estimate_point_least_squares,
    gaussian_samples,
    make_move_pair,
)
from ccmo.nsga2 import (
    Population,
    VariationParams,
    assign_ranks,
    crowding_distance,
    environmental_selection,
    make_offspring,
    nondominated_mask,
    quick_search,
)
from ccmo.problems import ProblemSpec

__all__ = [
    "ContextPopulation",
    "ParetoArchive",
    "CcParams",
    "assemble",
    "update_archive",
    "cc_optimize",
]

DEFAULT_ARCHIVE_CAPACITY = 200


@dataclass
class ContextPopulation:
    """Slot-aligned full-dimension context vectors.

    vectors holds one complete decision vector per population slot;
    provenance[i] records which group last varied coordinate i (-1 before
    any sub-problem touched it).
    """

    vectors: np.ndarray
    provenance: np.ndarray

    @classmethod
    def initial(cls, vectors: np.ndarray) -> "ContextPopulation":
        vectors = np.atleast_2d(np.asarray(vectors, dtype=float)).copy()
        return cls(vectors, np.full(vectors.shape[1], -1, dtype=int))

    def mark(self, indices: np.ndarray, group_index: int) -> None:
        self.provenance[indices] = group_index


def assemble(sub_solution: np.ndarray, indices: np.ndarray, context: np.ndarray) -> np.ndarray:
    """Full decision vector: the context with the group's coordinates
    overwritten by sub_solution."""
    indices = np.asarray(indices, dtype=int)
    sub_solution = np.asarray(sub_solution, dtype=float)
    if len(indices) != len(sub_solution):
        raise ValueError(
            f"group has {len(indices)} coordinates but sub-solution has {len(sub_solution)}"
        )
    full = np.asarray(context, dtype=float).copy()
    full[indices] = sub_solution
    return full


class ParetoArchive:
    """Bounded mutually non-dominated set of full solutions.

    Updates keep the non-dominated union (exact duplicates collapsed) and
    truncate to capacity by descending crowding distance.
    """

    def __init__(self, capacity: int = DEFAULT_ARCHIVE_CAPACITY, dim: int | None = None, n_obj: int | None = None):
        self.capacity = capacity
        self.X: np.ndarray | None = None if dim is None else np.empty((0, dim))
        self.F: np.ndarray | None = None if n_obj is None else np.empty((0, n_obj))

    def __len__(self) -> int:
        return 0 if self.F is None else len(self.F)

    @property
    def objectives(self) -> np.ndarray:
        if self.F is None:
            return np.empty((0, 0))
        return self.F.copy()

    @property
    def solutions(self) -> np.ndarray:
        if self.X is None:
            return np.empty((0, 0))
        return self.X.copy()

    def update(self, X: np.ndarray, F: np.ndarray) -> None:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        F = np.atleast_2d(np.asarray(F, dtype=float))
        if len(X) == 0:
            return
        if self.X is not None and len(self.X) > 0:
            X = np.vstack([self.X, X])
            F = np.vstack([self.F, F])
        joint = np.unique(np.hstack([X, F]), axis=0)
        X, F = joint[:, : X.shape[1]], joint[:, X.shape[1] :]
        keep = nondominated_mask(F)
        X, F = X[keep], F[keep]
        if len(X) > self.capacity:
            order = np.argsort(-crowding_distance(F), kind="stable")[: self.capacity]
            order.sort()
            X, F = X[order], F[order]
        self.X, self.F = X, F


def update_archive(archive: ParetoArchive, X: np.ndarray, F: np.ndarray) -> ParetoArchive:
    """Merge candidates into the archive (non-dominated union, truncation)."""
    archive.update(X, F)
    return archive


@dataclass
class CcParams:
    """Optimization-stage settings.

    Per-group generation caps are derived from the remaining budget
    (remaining // (cells_left * evals_per_generation), recomputed per
    sub-problem visit) so the whole budget is spent; max_generations
    optionally caps them. passes > 1 revisits the groups round-robin.
    """

    pop_size: int = 50
    variation: VariationParams = field(default_factory=VariationParams)
    hybrid: bool = False
    sigma_fraction: float = 0.05
    estimator: str = "average"  # or "least-squares"
    max_generations: int | None = None
    passes: int = 1
    archive_capacity: int = DEFAULT_ARCHIVE_CAPACITY


def cc_optimize(
    problem: ProblemSpec,
    grouping: Grouping,
    params: CcParams,
    budget: EvaluationBudget,
    rng: np.random.Generator,
    initial_points: tuple[np.ndarray, np.ndarray] | None = None,
    regroup: Callable[[np.random.Generator], Grouping] | None = None,
    observer: Callable[[dict], None] | None = None,
) -> ParetoArchive:
    """Optimize `problem` by cooperative coevolution over `grouping`.

    One full-solution population of size params.pop_size is initialized at
    startup; sub-problems are then visited in ascending group order
    (round-robin over `passes`), each visit running NSGA-II generations
    whose variation is restricted to the group's coordinates. The archive
    absorbs every evaluated solution and is returned when the budget is
    exhausted or all visits finish.

    initial_points (already-evaluated full solutions, e.g. decomposition
    sample base points) seed the archive without further charges. regroup,
    when given, replaces the grouping at the start of every pass after the
    first (dynamic random grouping). observer receives per-generation
    progress events. Identical (inputs, seed) reruns are bit-identical.
    """
    if grouping.dim != problem.dim:
        raise ValueError(
            f"grouping covers {grouping.dim} variables, problem has {problem.dim}"
        )
    s = params.pop_size
    archive = ParetoArchive(params.archive_capacity, problem.dim, problem.n_obj)
    if initial_points is not None and len(initial_points[0]) > 0:
        archive.update(*initial_points)

    def evaluate_full(X: np.ndarray) -> np.ndarray:
        budget.charge_optimization(len(X))
        F = problem.evaluate_batch(X)
        archive.update(X, F)
        return F

    n_init = min(s, budget.remaining)
    if n_init == 0:
        return archive
    X0 = rng.uniform(problem.lower, problem.upper, size=(s, problem.dim))
    if n_init < s:
        evaluate_full(X0[:n_init])
        return archive
    pop = assign_ranks(Population(X0, evaluate_full(X0)))
    context = ContextPopulation.initial(pop.X)

    per_gen = s + (s // 10 if params.hybrid else 0)

    for pass_index in range(params.passes):
        if regroup is not None and pass_index > 0:
            grouping = regroup(rng)
        m = grouping.group_count
        for gi, group in enumerate(grouping.groups):
            cells_left = (params.passes - pass_index - 1) * m + (m - gi)
            gens = budget.remaining // (cells_left * per_gen)
            if params.max_generations is not None:
                gens = min(gens, params.max_generations)
            for gen in range(gens):
                if budget.remaining < per_gen:
                    break
                pop = _cc_generation(
                    problem, pop, group, params, budget, rng, evaluate_full, archive
                )
                if observer is not None:
                    observer(
                        {
                            "pass": pass_index,
                            "group": gi,
                            "generation": gen,
                            "archive": archive,
                            "budget_used": budget.used_total,
                        }
                    )
            context.vectors = pop.X
            context.mark(group, gi)
    return archive


def _cc_generation(
    problem: ProblemSpec,
    pop: Population,
    group: np.ndarray,
    params: CcParams,
    budget: EvaluationBudget,
    rng: np.random.Generator,
    evaluate_full: Callable[[np.ndarray], np.ndarray],
    archive: ParetoArchive,
) -> Population:
    """One NSGA-II generation restricted to `group`'s coordinate block.

    Offspring inherit all other coordinates from their winning parent.
    Draw order matches nsga2_generation exactly, so a single whole-space
    group reproduces plain NSGA-II bit for bit.
    """
    sub_view = Population(pop.X[:, group], pop.F, pop.rank, pop.crowding, pop.generation)
    Q_sub, winner_idx, loser_idx = make_offspring(
        sub_view, problem.lower[group], problem.upper[group], params.variation, rng
    )
    Q_full = pop.X[winner_idx].copy()
    Q_full[:, group] = Q_sub
    Q_F = evaluate_full(Q_full)

    pool_X = [pop.X, Q_full]
    pool_F = [pop.F, Q_F]
    if params.hybrid:
        n_samples = max(1, params.pop_size // 10)
        if budget.remaining >= n_samples:
            front = quick_search(Q_F)
            center = _estimate_center(pop, Q_full, Q_F, front, loser_idx, params)
            sigma = params.sigma_fraction * (problem.upper - problem.lower)
            S = gaussian_samples(center, n_samples, sigma, problem.lower, problem.upper, rng)
            S_F = evaluate_full(S)
            pool_X.append(S)
            pool_F.append(S_F)

    R_X = np.vstack(pool_X)
    R_F = np.vstack(pool_F)
    idx, rank, crowd = environmental_selection(R_F, len(pop))
    return Population(R_X[idx], R_F[idx], rank, crowd, pop.generation + 1)


def _estimate_center(pop, Q_full, Q_F, front, loser_idx, params) -> np.ndarray:
    """Convergence point of the offspring front: averaged full decision
    vectors, or the movement-line least-squares estimate when selected
    (falling back to averaging on degenerate geometry)."""
    if params.estimator == "least-squares":
        pairs = []
        for child in front:
            loser = int(loser_idx[child])
            try:
                pair = make_move_pair(pop.X[loser], Q_full[child])
            except ValueError:
                continue
            if np.all(Q_F[child] <= pop.F[loser]) and np.any(Q_F[child] < pop.F[loser]):
                pairs.append(pair)
        if len(pairs) >= 2:
            try:
                return estimate_point_least_squares(pairs).point
            except SingularDirectionsError:
                pass
    return estimate_point_average(Q_full[front]).point
