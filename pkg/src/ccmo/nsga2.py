"""NSGA-II core: dominance, sorting, crowding, variation, one generation.

Populations are stored as arrays (decision matrix X, objective matrix F,
per-member rank and crowding). All randomness flows through an explicit
numpy Generator with an unconditional draw order, so runs with the same
seed are bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "Individual",
    "Population",
    "VariationParams",
    "dominate",
    "nondominated_mask",
    "quick_search",
    "quick_search_counted",
    "fast_nondominated_sort",
    "crowding_distance",
    "environmental_selection",
    "assign_ranks",
    "binary_tournament",
    "sbx_crossover",
    "polynomial_mutation",
    "make_offspring",
    "nsga2_generation",
]


@dataclass
class Individual:
    """One solution: decision vector, cached objectives, selection metadata."""

    x: np.ndarray
    objectives: np.ndarray
    rank: int | None = None
    crowding: float | None = None


@dataclass
class Population:
    """A fixed-size generation of solutions.

    X is (s, d) decision vectors, F is (s, M) cached objectives. rank and
    crowding are populated by environmental selection / assign_ranks.
    """

    X: np.ndarray
    F: np.ndarray
    rank: np.ndarray | None = None
    crowding: np.ndarray | None = None
    generation: int = 0

    def __len__(self) -> int:
        return len(self.X)

    def member(self, i: int) -> Individual:
        return Individual(
            self.X[i].copy(),
            self.F[i].copy(),
            None if self.rank is None else int(self.rank[i]),
            None if self.crowding is None else float(self.crowding[i]),
        )


@dataclass
class VariationParams:
    """Real-coded variation settings (SBX + polynomial mutation).

    crossover_rate is the per-pair SBX probability; mutation_rate is the
    per-variable polynomial-mutation probability applied to every child.
    """

    crossover_rate: float = 0.9
    mutation_rate: float = 0.2
    crossover_eta: float = 20.0
    mutation_eta: float = 20.0


# ---------------------------------------------------------------------------
# Dominance
# ---------------------------------------------------------------------------


def dominate(oi, oj, n_obj: int | None = None) -> int:
    """Pairwise domination: -1 if oi dominates oj, 1 if oj dominates oi, else 0.

    Equal vectors are mutually weakly dominating and return 0.
    """
    oi = np.asarray(oi, dtype=float)
    oj = np.asarray(oj, dtype=float)
    if oi.shape != oj.shape:
        raise ValueError(f"objective length mismatch: {oi.shape} vs {oj.shape}")
    if n_obj is not None and oi.shape != (n_obj,):
        raise ValueError(f"expected {n_obj} objectives, got {oi.shape}")
    i_le = bool((oi <= oj).all())
    j_le = bool((oj <= oi).all())
    if i_le and not j_le:
        return -1
    if j_le and not i_le:
        return 1
    return 0


def _dominate_rows(oi, oj) -> int:
    """dominate() on pre-extracted tuples; hot path for quick_search."""
    i_le = True
    j_le = True
    for a, b in zip(oi, oj):
        if a > b:
            i_le = False
        if b > a:
            j_le = False
    if i_le and not j_le:
        return -1
    if j_le and not i_le:
        return 1
    return 0


def nondominated_mask(F: np.ndarray, chunk: int = 1024) -> np.ndarray:
    """Vectorized brute-force mask of points not dominated by any other."""
    F = np.asarray(F, dtype=float)
    n = len(F)
    keep = np.ones(n, dtype=bool)
    for start in range(0, n, chunk):
        block = F[start : start + chunk]
        le = (F[None, :, :] <= block[:, None, :]).all(axis=2)
        lt = (F[None, :, :] < block[:, None, :]).any(axis=2)
        keep[start : start + chunk] &= ~((le & lt).any(axis=1))
    return keep


def quick_search_counted(F: np.ndarray) -> tuple[np.ndarray, int]:
    """Current-front extraction with elimination flags and early exits.

    Returns (indices of non-dominated members, number of dominance checks).
    The check count is at most n*(n-1)/2 and O(n) on domination chains.
    """
    F = np.asarray(F, dtype=float)
    n = len(F)
    alive = [True] * n
    rows = [tuple(row) for row in F]
    checks = 0
    for i in range(n):
        if not alive[i]:
            continue
        oi = rows[i]
        for j in range(i + 1, n):
            if not alive[j]:
                continue
            checks += 1
            d = _dominate_rows(oi, rows[j])
            if d == 1:
                alive[i] = False
                break
            if d == -1:
                alive[j] = False
    return np.flatnonzero(alive), checks


def quick_search(F: np.ndarray) -> np.ndarray:
    """Indices of the members of F not dominated by any other member."""
    idx, _ = quick_search_counted(F)
    return idx


def fast_nondominated_sort(F: np.ndarray) -> tuple[list[np.ndarray], np.ndarray]:
    """Partition F into ordered fronts.

    Returns (fronts, rank) where fronts[k] holds the indices of front k+1
    and rank[i] is the 1-based front number of member i.
    """
    F = np.asarray(F, dtype=float)
    n = len(F)
    le = (F[:, None, :] <= F[None, :, :]).all(axis=2)
    lt = (F[:, None, :] < F[None, :, :]).any(axis=2)
    dom = le & lt  # dom[i, j]: i dominates j
    n_dominators = dom.sum(axis=0)
    assigned = np.zeros(n, dtype=bool)
    rank = np.zeros(n, dtype=int)
    fronts: list[np.ndarray] = []
    r = 1
    while not assigned.all():
        front = np.flatnonzero(~assigned & (n_dominators == 0))
        rank[front] = r
        assigned[front] = True
        n_dominators = n_dominators - dom[front].sum(axis=0)
        n_dominators[assigned] = -1
        fronts.append(front)
        r += 1
    return fronts, rank


def crowding_distance(F: np.ndarray) -> np.ndarray:
    """Crowding distances within one front.

    Boundary members per objective get +inf; interior members accumulate
    range-normalized neighbor gaps. Objectives with zero range contribute
    nothing (no division by zero on duplicate fronts).
    """
    F = np.asarray(F, dtype=float)
    n, n_obj = F.shape
    if n <= 2:
        return np.full(n, np.inf)
    d = np.zeros(n)
    for m in range(n_obj):
        order = np.argsort(F[:, m], kind="stable")
        fm = F[order, m]
        d[order[0]] = np.inf
        d[order[-1]] = np.inf
        span = fm[-1] - fm[0]
        if span > 0.0:
            d[order[1:-1]] += (fm[2:] - fm[:-2]) / span
    return d


def environmental_selection(F: np.ndarray, size: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Select `size` members by front rank, truncating the cut front by
    descending crowding distance.

    Returns (selected indices into F, their ranks, their crowding distances).
    """
    fronts, rank = fast_nondominated_sort(F)
    chosen: list[int] = []
    crowd_by_index: dict[int, float] = {}
    for front in fronts:
        cd = crowding_distance(F[front])
        if len(chosen) + len(front) <= size:
            chosen.extend(int(i) for i in front)
            for i, c in zip(front, cd):
                crowd_by_index[int(i)] = float(c)
            if len(chosen) == size:
                break
            continue
        order = np.argsort(-cd, kind="stable")
        need = size - len(chosen)
        for i in front[order[:need]]:
            chosen.append(int(i))
        for i, c in zip(front, cd):
            crowd_by_index[int(i)] = float(c)
        break
    idx = np.array(chosen, dtype=int)
    return idx, rank[idx], np.array([crowd_by_index[int(i)] for i in idx])


def assign_ranks(pop: Population) -> Population:
    """Compute rank and per-front crowding for every member in place."""
    fronts, rank = fast_nondominated_sort(pop.F)
    crowd = np.empty(len(pop.F))
    for front in fronts:
        crowd[front] = crowding_distance(pop.F[front])
    pop.rank = rank
    pop.crowding = crowd
    return pop


# ---------------------------------------------------------------------------
# Variation
# ---------------------------------------------------------------------------


def binary_tournament(
    rank: np.ndarray,
    crowding: np.ndarray,
    rng: np.random.Generator,
    count: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Pick `count` winners (and the matching losers) by (rank, crowding).

    Lower rank wins; equal rank prefers larger crowding; exact ties are
    decided by a coin flip. Coin flips are drawn unconditionally to keep
    the draw order independent of the data.
    """
    s = len(rank)
    a = rng.integers(0, s, size=count)
    b = rng.integers(0, s, size=count)
    coin = rng.random(count) < 0.5
    a_wins = (rank[a] < rank[b]) | ((rank[a] == rank[b]) & (crowding[a] > crowding[b]))
    tie = (rank[a] == rank[b]) & (crowding[a] == crowding[b])
    a_wins = np.where(tie, coin, a_wins)
    winners = np.where(a_wins, a, b)
    losers = np.where(a_wins, b, a)
    return winners, losers


def sbx_crossover(
    P1: np.ndarray,
    P2: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    rng: np.random.Generator,
    eta: float = 20.0,
    rate: float = 0.9,
) -> tuple[np.ndarray, np.ndarray]:
    """Bounded simulated binary crossover on matched parent matrices (p, d).

    Each pair recombines with probability `rate`; within a recombining
    pair each variable crosses with probability 0.5. The spread factor is
    bound-aware, so children rarely need clipping.
    """
    u_pair = rng.random(len(P1))
    var_gate = rng.random(P1.shape) <= 0.5
    u = rng.random(P1.shape)
    eps = 1e-14
    x1 = np.minimum(P1, P2)
    x2 = np.maximum(P1, P2)
    dist = np.maximum(x2 - x1, eps)
    exponent = 1.0 / (eta + 1.0)

    def _betaq(beta: np.ndarray) -> np.ndarray:
        alpha = 2.0 - beta ** (-(eta + 1.0))
        return np.where(
            u <= 1.0 / alpha,
            (u * alpha) ** exponent,
            (1.0 / (2.0 - u * alpha)) ** exponent,
        )

    bq_low = _betaq(1.0 + 2.0 * (x1 - lower) / dist)
    bq_high = _betaq(1.0 + 2.0 * (upper - x2) / dist)
    c1 = 0.5 * ((x1 + x2) - bq_low * dist)
    c2 = 0.5 * ((x1 + x2) + bq_high * dist)
    apply = (u_pair <= rate)[:, None] & var_gate & (np.abs(P1 - P2) > eps)
    C1 = np.where(apply, c1, P1)
    C2 = np.where(apply, c2, P2)
    return np.clip(C1, lower, upper), np.clip(C2, lower, upper)


def polynomial_mutation(
    X: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    rng: np.random.Generator,
    eta: float = 20.0,
    gene_prob: float = 0.2,
) -> np.ndarray:
    """Bounded polynomial mutation: each gene moves with probability
    gene_prob, with spread controlled by the distribution index."""
    n, d = X.shape
    gene_mask = rng.random((n, d)) <= gene_prob
    u = rng.random((n, d))
    span = upper - lower
    delta_l = (X - lower) / span
    delta_r = (upper - X) / span
    low_side = u < 0.5
    val_l = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - delta_l) ** (eta + 1.0)
    dq_l = val_l ** (1.0 / (eta + 1.0)) - 1.0
    val_r = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - delta_r) ** (eta + 1.0)
    dq_r = 1.0 - val_r ** (1.0 / (eta + 1.0))
    dq = np.where(low_side, dq_l, dq_r)
    out = np.where(gene_mask, X + dq * span, X)
    return np.clip(out, lower, upper)


def make_offspring(
    pop: Population,
    lower: np.ndarray,
    upper: np.ndarray,
    params: VariationParams,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Produce len(pop) offspring via tournament, SBX, and mutation.

    Returns (offspring X, winner parent index per child, loser index per
    child); the parent bookkeeping supports movement-pair construction.
    """
    s = len(pop)
    if pop.rank is None or pop.crowding is None:
        assign_ranks(pop)
    winners, losers = binary_tournament(pop.rank, pop.crowding, rng, s)
    half = s // 2
    P1 = pop.X[winners[:half]]
    P2 = pop.X[winners[half : 2 * half]]
    C1, C2 = sbx_crossover(P1, P2, lower, upper, rng, params.crossover_eta, params.crossover_rate)
    Q = np.vstack([C1, C2])
    if s % 2 == 1:
        Q = np.vstack([Q, pop.X[winners[-1]][None, :]])
    Q = polynomial_mutation(Q, lower, upper, rng, params.mutation_eta, gene_prob=params.mutation_rate)
    child_winner = np.concatenate([winners[:half], winners[half : 2 * half], winners[2 * half :]])
    child_loser = np.concatenate([losers[:half], losers[half : 2 * half], losers[2 * half :]])
    return Q, child_winner, child_loser


def nsga2_generation(
    pop: Population,
    evaluate: Callable[[np.ndarray], np.ndarray],
    lower: np.ndarray,
    upper: np.ndarray,
    params: VariationParams,
    rng: np.random.Generator,
    extra: Callable[[np.ndarray, np.ndarray, np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]] | None = None,
) -> tuple[Population, Population]:
    """Advance one NSGA-II generation.

    Offspring are produced by binary tournament + SBX + polynomial mutation
    and evaluated through `evaluate` (which performs any budget accounting).
    When `extra` is given it is called with (Q_X, Q_F, winner_idx, loser_idx)
    and may return additional evaluated candidates that join the selection
    pool. Environmental selection runs on parents + offspring + extras.

    Returns (next population of the same size, the offspring population).
    """
    s = len(pop)
    Q_X, w_idx, l_idx = make_offspring(pop, lower, upper, params, rng)
    Q_F = evaluate(Q_X)
    pool_X = [pop.X, Q_X]
    pool_F = [pop.F, Q_F]
    if extra is not None:
        ex = extra(Q_X, Q_F, w_idx, l_idx)
        if ex is not None and len(ex[0]) > 0:
            pool_X.append(ex[0])
            pool_F.append(ex[1])
    R_X = np.vstack(pool_X)
    R_F = np.vstack(pool_F)
    idx, rank, crowd = environmental_selection(R_F, s)
    nxt = Population(R_X[idx], R_F[idx], rank, crowd, pop.generation + 1)
    return nxt, Population(Q_X, Q_F)
