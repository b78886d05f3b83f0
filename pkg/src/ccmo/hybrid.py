"""Convergence-point estimation and elite Gaussian sampling.

The estimated convergence point is the spot population movements point
toward: either the least-squares intersection of movement lines (parent
to improved offspring) or the componentwise average of the current front's
decision vectors. Elite samples are drawn from an isotropic Gaussian
centered there and clipped to the box, then injected into selection.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "MovePair",
    "ConvergenceEstimate",
    "SingularDirectionsError",
    "make_move_pair",
    "estimate_point_least_squares",
    "estimate_point_average",
    "gaussian_samples",
    "egs",
]

SINGULAR_TOL = 1e-10
MIN_STEP = 1e-12


class SingularDirectionsError(RuntimeError):
    """All movement directions are (numerically) parallel; the least-squares
    system has no unique solution."""


@dataclass(frozen=True)
class MovePair:
    """A worse parent, its better offspring, and the unit move direction."""

    parent: np.ndarray
    offspring: np.ndarray
    direction: np.ndarray
    unit: np.ndarray


def make_move_pair(parent, offspring) -> MovePair:
    """Build a MovePair; rejects degenerate (zero-length) moves."""
    p = np.asarray(parent, dtype=float)
    o = np.asarray(offspring, dtype=float)
    d = o - p
    norm = float(np.linalg.norm(d))
    if norm < MIN_STEP:
        raise ValueError("degenerate move: parent and offspring coincide")
    return MovePair(p, o, d, d / norm)


@dataclass(frozen=True)
class ConvergenceEstimate:
    """An estimated convergence point and how it was produced."""

    point: np.ndarray
    method: str  # "least_squares" | "pf_average"
    condition_flag: bool = False


def estimate_point_least_squares(pairs: list[MovePair]) -> ConvergenceEstimate:
    """Point minimizing the summed squared orthogonal distance to the
    movement lines p_i + t * d_i.

    Solves [sum(I - u_i u_i^T)] X = [sum(I - u_i u_i^T) p_i]. Raises
    SingularDirectionsError when the system matrix is singular within
    tolerance (all directions parallel).
    """
    if len(pairs) < 2:
        raise ValueError(f"need at least 2 movement pairs, got {len(pairs)}")
    dim = len(pairs[0].parent)
    if dim < 2:
        raise ValueError("least-squares estimation needs dimension >= 2")
    A = np.zeros((dim, dim))
    b = np.zeros(dim)
    eye = np.eye(dim)
    for pair in pairs:
        proj = eye - np.outer(pair.unit, pair.unit)
        A += proj
        b += proj @ pair.parent
    sv = np.linalg.svd(A, compute_uv=False)
    if sv[-1] < SINGULAR_TOL * sv[0]:
        raise SingularDirectionsError(
            "movement directions are parallel; falling back to averaging is required"
        )
    return ConvergenceEstimate(np.linalg.solve(A, b), "least_squares")


def estimate_point_average(points) -> ConvergenceEstimate:
    """Componentwise mean of the given decision vectors."""
    P = np.atleast_2d(np.asarray(points, dtype=float))
    if len(P) == 0:
        raise ValueError("cannot average an empty set")
    return ConvergenceEstimate(P.mean(axis=0), "pf_average")


def gaussian_samples(
    center: np.ndarray,
    count: int,
    sigma,
    lower: np.ndarray,
    upper: np.ndarray,
    rng: np.random.Generator,
) -> np.ndarray:
    """Draw `count` points from N(center, diag(sigma^2)), clipped to bounds."""
    if count < 1:
        raise ValueError(f"sample count must be >= 1, got {count}")
    center = np.asarray(center, dtype=float)
    draws = center[None, :] + rng.standard_normal((count, len(center))) * np.asarray(sigma, dtype=float)
    return np.clip(draws, lower, upper)


def egs(
    front_points,
    count: int,
    sigma,
    lower: np.ndarray,
    upper: np.ndarray,
    rng: np.random.Generator,
) -> np.ndarray:
    """Elite Gaussian sampling around the averaged front decision vectors."""
    center = estimate_point_average(front_points).point
    return gaussian_samples(center, count, sigma, lower, upper, rng)
