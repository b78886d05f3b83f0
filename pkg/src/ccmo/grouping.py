"""Variable grouping for cooperative coevolution.

A Grouping partitions the decision variables into disjoint sub-problems.
The primary grouper searches the space of groupings with an elitist GA,
minimizing a penalized linkage measure built from perturbation deltas:
the residual between the joint perturbation delta and the sum of per-group
deltas, averaged over objectives with normalized weights, divided by the
group count. Baselines: random (permutation chunking), pairwise
nonlinearity detection (DG), and pairwise monotonicity detection (LIMD).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ccmo.budget import BudgetExhausted, EvaluationBudget
from ccmo.problems import ProblemSpec

__all__ = [
    "Grouping",
    "LinkageSample",
    "LmmParams",
    "DecompositionResult",
    "DegenerateGroupingError",
    "perturb",
    "make_linkage_sample",
    "group_deltas",
    "linkage_residual",
    "linkage_measure",
    "lmm_decompose",
    "ega_generation",
    "random_grouping",
    "dg_decompose",
    "limd_decompose",
    "decomposition_to_json",
]


class DegenerateGroupingError(ValueError):
    """A single-group partition has an identically-zero linkage residual."""


@dataclass(frozen=True)
class Grouping:
    """Partition of variable indices 0..dim-1 encoded as per-index labels.

    Indices with equal labels form one group; groups are ordered by their
    smallest member. GA-encoded candidates use labels in [0, 2**L - 1];
    directly constructed groupings (e.g. all singletons) may use any
    nonnegative labels.
    """

    labels: np.ndarray

    def __post_init__(self) -> None:
        labels = np.asarray(self.labels, dtype=int)
        if labels.ndim != 1 or len(labels) == 0:
            raise ValueError("labels must be a non-empty 1-D integer array")
        if (labels < 0).any():
            raise ValueError("labels must be nonnegative")
        object.__setattr__(self, "labels", labels)

    @cached_property
    def groups(self) -> tuple[np.ndarray, ...]:
        _, inverse = np.unique(self.labels, return_inverse=True)
        parts = [np.flatnonzero(inverse == g) for g in range(inverse.max() + 1)]
        parts.sort(key=lambda g: int(g[0]))
        return tuple(parts)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def group_count(self) -> int:
        return len(self.groups)

    @classmethod
    def singletons(cls, dim: int) -> "Grouping":
        return cls(np.arange(dim))

    @classmethod
    def single_group(cls, dim: int) -> "Grouping":
        return cls(np.zeros(dim, dtype=int))

    @classmethod
    def from_groups(cls, groups, dim: int) -> "Grouping":
        labels = np.full(dim, -1, dtype=int)
        for g, members in enumerate(groups):
            for i in members:
                if labels[i] != -1:
                    raise ValueError(f"index {i} appears in more than one group")
                labels[i] = g
        if (labels == -1).any():
            missing = np.flatnonzero(labels == -1)
            raise ValueError(f"indices not covered by any group: {missing.tolist()}")
        return cls(labels)


def perturb(s: np.ndarray, indices, delta, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    """Shift the given coordinates of s by delta, flipping the sign of any
    step that would leave the box bounds.

    delta may be a scalar or a per-variable array (indexed by variable).
    """
    s = np.asarray(s, dtype=float)
    indices = np.asarray(indices, dtype=int)
    if len(indices) and (indices.min() < 0 or indices.max() >= len(s)):
        raise IndexError(f"perturbation index out of range for dim {len(s)}")
    delta_arr = np.asarray(delta, dtype=float)
    d = np.full(len(indices), float(delta_arr)) if delta_arr.ndim == 0 else delta_arr[indices]
    if np.any(d == 0.0):
        raise ValueError("perturbation delta must be nonzero")
    out = s.copy()
    stepped = out[indices] + d
    flip = (stepped > upper[indices]) | (stepped < lower[indices])
    stepped = np.where(flip, out[indices] - d, stepped)
    out[indices] = stepped
    if ((out < lower) | (out > upper)).any():
        raise ValueError("perturbation magnitude exceeds the box width")
    return out


@dataclass
class LinkageSample:
    """A base point with cached perturbation evaluations.

    delta is per-variable and pre-flipped so x + delta stays in bounds.
    f_single[i] caches the objectives of the single-coordinate perturbation
    of variable i; f_joint caches the all-coordinates perturbation.
    """

    x: np.ndarray
    delta: np.ndarray
    f_base: np.ndarray
    f_single: np.ndarray
    f_joint: np.ndarray | None = None


def make_linkage_sample(
    problem: ProblemSpec,
    rng: np.random.Generator,
    budget: EvaluationBudget,
    delta_fraction: float = 0.1,
    with_joint: bool = True,
) -> LinkageSample:
    """Draw a random in-bounds base point and cache its perturbation table.

    Charges 1 + dim (+1 with the joint perturbation) evaluations. The base
    evaluation is charged to the optimization counter: the evaluated point
    seeds the Pareto archive, while the decomposition counter keeps only
    interaction-probing evaluations.
    """
    d = problem.dim
    x = rng.uniform(problem.lower, problem.upper)
    step = delta_fraction * (problem.upper - problem.lower)
    delta = np.where(x + step <= problem.upper, step, -step)
    budget.charge_optimization(1)
    f_base = problem.evaluate(x)
    budget.charge_decomposition(d)
    X = np.tile(x, (d, 1))
    X[np.arange(d), np.arange(d)] += delta
    f_single = problem.evaluate_batch(X)
    f_joint = None
    if with_joint:
        budget.charge_decomposition(1)
        f_joint = problem.evaluate(x + delta)
    return LinkageSample(x, delta, f_base, f_single, f_joint)


def group_deltas(
    problem: ProblemSpec,
    sample: LinkageSample,
    grouping: Grouping,
    budget: EvaluationBudget,
) -> np.ndarray:
    """Per-group objective deltas f(perturb(s, group)) - f(s), shape (m, M).

    Single-variable groups reuse the cached single perturbations; each
    multi-variable group costs one fresh evaluation.
    """
    m = grouping.group_count
    out = np.empty((m, problem.n_obj))
    for gi, g in enumerate(grouping.groups):
        if len(g) == 1:
            out[gi] = sample.f_single[g[0]] - sample.f_base
        else:
            budget.charge_decomposition(1)
            x = sample.x.copy()
            x[g] += sample.delta[g]
            out[gi] = problem.evaluate(x) - sample.f_base
    return out


def linkage_residual(
    problem: ProblemSpec,
    sample: LinkageSample,
    grouping: Grouping,
    budget: EvaluationBudget,
) -> np.ndarray:
    """Per-objective |joint delta - sum of group deltas| for one sample."""
    if grouping.group_count < 2:
        raise DegenerateGroupingError(
            "a single-group partition has zero residual by construction"
        )
    if sample.f_joint is None:
        raise ValueError("sample was built without the joint perturbation")
    joint = sample.f_joint - sample.f_base
    return np.abs(joint - group_deltas(problem, sample, grouping, budget).sum(axis=0))


def linkage_measure(
    problem: ProblemSpec,
    samples: list[LinkageSample],
    grouping: Grouping,
    weights: np.ndarray,
    budget: EvaluationBudget,
) -> float:
    """Penalized linkage measure: summed weighted residuals over samples,
    divided by the group count (finer valid decompositions score lower)."""
    weights = np.asarray(weights, dtype=float)
    if not samples:
        raise ValueError("need at least one linkage sample")
    if weights.shape != (problem.n_obj,) or (weights < 0).any() or not np.isclose(weights.sum(), 1.0):
        raise ValueError("weights must be nonnegative and sum to 1")
    total = 0.0
    for sample in samples:
        res = linkage_residual(problem, sample, grouping, budget)
        total += float(weights @ res)
    return total / grouping.group_count


@dataclass
class LmmParams:
    """Settings for the grouping GA (population 20, 20 generations,
    6-bit labels by default)."""

    pop_size: int = 20
    generations: int = 20
    gene_length: int = 6
    sample_count: int = 3
    delta_fraction: float = 0.1
    crossover_rate: float = 0.9
    mutation_prob: float | None = None  # default 1/dim
    separable_threshold: float = 0.01
    seed: int | None = None


@dataclass
class DecompositionResult:
    """Outcome of a grouping run.

    fes_consumed counts decomposition-stage evaluations (interaction
    probes); the evaluated sample base points ride along in `samples` so
    the optimizer can seed its archive with them. measure_history holds
    the best measure seen at each GA generation and is non-increasing.
    """

    grouping: Grouping
    fes_consumed: int
    detected_fully_separable: bool
    measure_history: list[float] = field(default_factory=list)
    budget_truncated: bool = False
    samples: list[LinkageSample] = field(default_factory=list)
    method: str = "lmm"


def _better(measure_a: float, count_a: int, measure_b: float, count_b: int) -> bool:
    """Candidate order: smaller measure wins; ties prefer more groups."""
    if measure_a != measure_b:
        return measure_a < measure_b
    return count_a > count_b


def ega_generation(
    population: np.ndarray,
    fitnesses: np.ndarray,
    group_counts: np.ndarray,
    elite: np.ndarray,
    elite_fitness: float,
    elite_group_count: int,
    evaluate_labels,
    rng: np.random.Generator,
    *,
    n_labels: int,
    crossover_rate: float = 0.9,
    mutation_prob: float | None = None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One elitist-GA generation over label vectors.

    Tournament selection (size 2), one-point crossover, per-gene uniform
    relabeling, offspring evaluation via `evaluate_labels(labels) ->
    (measure, group_count)`, then the elite replaces the worst offspring
    unchanged. Returns (population, fitnesses, group_counts).
    """
    s, d = population.shape
    if mutation_prob is None:
        mutation_prob = 1.0 / d
    a = rng.integers(0, s, size=s)
    b = rng.integers(0, s, size=s)
    pick_a = np.array(
        [_better(fitnesses[i], group_counts[i], fitnesses[j], group_counts[j]) for i, j in zip(a, b)]
    )
    parents = population[np.where(pick_a, a, b)]
    children = parents.copy()
    do_cross = rng.random(s // 2) <= crossover_rate
    points = rng.integers(1, d, size=s // 2)
    for p in range(s // 2):
        if not do_cross[p]:
            continue
        cut = points[p]
        c1 = children[2 * p]
        c2 = children[2 * p + 1]
        c1[cut:], c2[cut:] = c2[cut:].copy(), c1[cut:].copy()
    mut_mask = rng.random(children.shape) < mutation_prob
    new_labels = rng.integers(0, n_labels, size=children.shape)
    children = np.where(mut_mask, new_labels, children)

    new_fit = np.empty(s)
    new_counts = np.empty(s, dtype=int)
    for i in range(s):
        new_fit[i], new_counts[i] = evaluate_labels(children[i])
    worst = 0
    for i in range(1, s):
        if _better(new_fit[worst], new_counts[worst], new_fit[i], new_counts[i]):
            worst = i
    children[worst] = elite
    new_fit[worst] = elite_fitness
    new_counts[worst] = elite_group_count
    return children, new_fit, new_counts


def lmm_decompose(
    problem: ProblemSpec,
    params: LmmParams,
    budget: EvaluationBudget,
    rng: np.random.Generator | None = None,
) -> DecompositionResult:
    """Search for a variable grouping by minimizing the linkage measure.

    Builds the perturbation samples, checks the all-singletons partition
    first (measure below the threshold means the problem is treated as
    fully separable, costing sample_count * (dim + 1) probe evaluations),
    and otherwise runs the elitist GA over label vectors, returning the
    best grouping ever seen. If the budget runs out mid-search the best
    grouping so far is returned with budget_truncated set.
    """
    if rng is None:
        rng = np.random.default_rng(params.seed)
    d = problem.dim
    weights = np.full(problem.n_obj, 1.0 / problem.n_obj)
    decomp_start = budget.used_decomposition

    samples = [
        make_linkage_sample(problem, rng, budget, params.delta_fraction)
        for _ in range(params.sample_count)
    ]
    singletons = Grouping.singletons(d)
    pre_measure = linkage_measure(problem, samples, singletons, weights, budget)
    if pre_measure < params.separable_threshold:
        return DecompositionResult(
            singletons,
            budget.used_decomposition - decomp_start,
            True,
            [pre_measure],
            samples=samples,
        )

    n_labels = 2**params.gene_length

    def evaluate_labels(labels: np.ndarray) -> tuple[float, int]:
        g = Grouping(labels.copy())
        if g.group_count < 2:
            return np.inf, 1
        return linkage_measure(problem, samples, g, weights, budget), g.group_count

    truncated = False
    population = rng.integers(0, n_labels, size=(params.pop_size, d))
    fitnesses = np.empty(params.pop_size)
    counts = np.empty(params.pop_size, dtype=int)
    elite_labels = singletons.labels.copy()
    elite_fit = pre_measure
    elite_count = d
    history: list[float] = []
    try:
        for i in range(params.pop_size):
            fitnesses[i], counts[i] = evaluate_labels(population[i])
        for i in range(params.pop_size):
            if _better(fitnesses[i], counts[i], elite_fit, elite_count):
                elite_labels = population[i].copy()
                elite_fit = float(fitnesses[i])
                elite_count = int(counts[i])
        history.append(elite_fit)
        for _ in range(params.generations):
            population, fitnesses, counts = ega_generation(
                population,
                fitnesses,
                counts,
                elite_labels,
                elite_fit,
                elite_count,
                evaluate_labels,
                rng,
                n_labels=n_labels,
                crossover_rate=params.crossover_rate,
                mutation_prob=params.mutation_prob,
            )
            for i in range(params.pop_size):
                if _better(fitnesses[i], counts[i], elite_fit, elite_count):
                    elite_labels = population[i].copy()
                    elite_fit = float(fitnesses[i])
                    elite_count = int(counts[i])
            history.append(elite_fit)
    except BudgetExhausted:
        truncated = True

    return DecompositionResult(
        Grouping(elite_labels),
        budget.used_decomposition - decomp_start,
        False,
        history,
        budget_truncated=truncated,
        samples=samples,
    )


def random_grouping(dim: int, m: int, seed) -> Grouping:
    """Random permutation split into m contiguous chunks (all non-empty,
    sizes differing by at most one)."""
    if not 1 <= m <= dim:
        raise ValueError(f"group count must be in [1, {dim}], got {m}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    perm = rng.permutation(dim)
    labels = np.empty(dim, dtype=int)
    for g, chunk in enumerate(np.array_split(perm, m)):
        labels[chunk] = g
    return Grouping(labels)


class _DisjointSets:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)

    def labels(self) -> np.ndarray:
        return np.array([self.find(i) for i in range(len(self.parent))])


def _pair_blocks(dim: int, include_diagonal: bool, chunk: int):
    pairs = [(i, j) for i in range(dim) for j in range(i if include_diagonal else i + 1, dim)]
    for start in range(0, len(pairs), chunk):
        yield pairs[start : start + chunk]


def dg_decompose(
    problem: ProblemSpec,
    epsilon: float = 0.01,
    budget: EvaluationBudget | None = None,
    rng: np.random.Generator | None = None,
    delta_fraction: float = 0.1,
) -> DecompositionResult:
    """Pairwise nonlinearity detection on one base sample.

    Variables i and j are merged when |d_ij - (d_i + d_j)| > epsilon in any
    objective; connected components become the groups.
    """
    if budget is None or rng is None:
        raise ValueError("dg_decompose requires a budget and a generator")
    d = problem.dim
    decomp_start = budget.used_decomposition
    sample = make_linkage_sample(problem, rng, budget, delta_fraction, with_joint=False)
    singles = sample.f_single - sample.f_base
    dsu = _DisjointSets(d)
    truncated = False
    for block in _pair_blocks(d, include_diagonal=False, chunk=2048):
        take = min(len(block), budget.remaining)
        if take < len(block):
            truncated = True
            block = block[:take]
        if not block:
            break
        budget.charge_decomposition(len(block))
        X = np.tile(sample.x, (len(block), 1))
        rows = np.arange(len(block))
        ii = np.array([p[0] for p in block])
        jj = np.array([p[1] for p in block])
        X[rows, ii] += sample.delta[ii]
        X[rows, jj] += sample.delta[jj]
        F = problem.evaluate_batch(X)
        resid = np.abs((F - sample.f_base) - singles[ii] - singles[jj])
        for r in np.flatnonzero((resid > epsilon).any(axis=1)):
            dsu.union(int(ii[r]), int(jj[r]))
        if truncated:
            break
    grouping = Grouping(dsu.labels())
    return DecompositionResult(
        grouping,
        budget.used_decomposition - decomp_start,
        grouping.group_count == d,
        budget_truncated=truncated,
        samples=[sample],
        method="dg",
    )


def limd_decompose(
    problem: ProblemSpec,
    budget: EvaluationBudget,
    rng: np.random.Generator,
    delta_fraction: float = 0.1,
    sample_count: int = 2,
) -> DecompositionResult:
    """Pairwise monotonicity detection over sample individuals.

    Variables i and j are merged when the simultaneous strict
    increase/decrease chains through the single and joint perturbations
    fail in any objective on at least one sample. The joint sweep runs
    over i <= j (the diagonal doubles the step of one variable), fixing
    the per-sample cost at (dim + 1) * (dim + 2) / 2 evaluations.
    """
    d = problem.dim
    decomp_start = budget.used_decomposition
    dsu = _DisjointSets(d)
    truncated = False
    samples: list[LinkageSample] = []
    try:
        for _ in range(sample_count):
            sample = make_linkage_sample(problem, rng, budget, delta_fraction, with_joint=False)
            samples.append(sample)
            fb = sample.f_base
            fs = sample.f_single
            for block in _pair_blocks(d, include_diagonal=True, chunk=2048):
                take = min(len(block), budget.remaining)
                if take < len(block):
                    truncated = True
                    block = block[:take]
                if not block:
                    break
                budget.charge_decomposition(len(block))
                X = np.tile(sample.x, (len(block), 1))
                rows = np.arange(len(block))
                ii = np.array([p[0] for p in block])
                jj = np.array([p[1] for p in block])
                X[rows, ii] += sample.delta[ii]
                X[rows, jj] += sample.delta[jj]
                F = problem.evaluate_batch(X)
                off = ii != jj
                fi, fj, fij = fs[ii[off]], fs[jj[off]], F[off]
                inc = (fb < fi) & (fi < fij) & (fb < fj) & (fj < fij)
                dec = (fb > fi) & (fi > fij) & (fb > fj) & (fj > fij)
                merge = (~(inc | dec)).any(axis=1)
                for r in np.flatnonzero(merge):
                    dsu.union(int(ii[off][r]), int(jj[off][r]))
                if truncated:
                    break
            if truncated:
                break
    except BudgetExhausted:
        truncated = True
    grouping = Grouping(dsu.labels())
    return DecompositionResult(
        grouping,
        budget.used_decomposition - decomp_start,
        grouping.group_count == d,
        budget_truncated=truncated,
        samples=samples,
        method="limd",
    )


def decomposition_to_json(result: DecompositionResult, problem: ProblemSpec) -> dict:
    """Grouping export schema used by the CLI and the harness."""
    return {
        "problem": problem.name,
        "dim": problem.dim,
        "groups": [g.tolist() for g in result.grouping.groups],
        "fes": result.fes_consumed,
        "fully_separable": bool(result.detected_fully_separable),
    }
