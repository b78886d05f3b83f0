"""Quality indicators: hypervolume and inverted generational distance.

Hypervolume is the Lebesgue measure of the region dominated by a solution
set and bounded above by a reference point, reported raw (larger is
better). It is exact for 2 and 3 objectives and Monte-Carlo estimated
beyond that. IGD is the mean distance from reference-front points to the
nearest obtained solution (smaller is better).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "IndicatorResult",
    "hypervolume",
    "hypervolume_monte_carlo",
    "igd",
    "default_reference_point",
]

MC_SAMPLES_DEFAULT = 1_000_000


@dataclass(frozen=True)
class IndicatorResult:
    """Indicator values for one solution set against shared references."""

    hv: float
    igd: float
    reference_point: np.ndarray
    reference_set_size: int
    hv_stderr: float | None = None


def _filter_box(points: np.ndarray, ref: np.ndarray) -> np.ndarray:
    """Keep points inside the reference box (componentwise <= ref)."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    ref = np.asarray(ref, dtype=float)
    if points.shape[1] != len(ref):
        raise ValueError(
            f"objective count mismatch: points have {points.shape[1]}, reference has {len(ref)}"
        )
    return points[(points <= ref).all(axis=1)]


def _hv2d(points: np.ndarray, ref: np.ndarray) -> float:
    order = np.lexsort((points[:, 1], points[:, 0]))
    pts = points[order]
    hv = 0.0
    best_y = np.inf
    staircase = []
    for x, y in pts:
        if y < best_y:
            staircase.append((x, y))
            best_y = y
    for i, (x, y) in enumerate(staircase):
        x_next = staircase[i + 1][0] if i + 1 < len(staircase) else ref[0]
        hv += (x_next - x) * (ref[1] - y)
    return float(hv)


def _hv3d(points: np.ndarray, ref: np.ndarray) -> float:
    # Sweep the third objective; each slab contributes its 2-D hypervolume
    # of the active points times the slab height.
    order = np.argsort(points[:, 2], kind="stable")
    pts = points[order]
    z_levels = np.unique(pts[:, 2])
    hv = 0.0
    for i, z in enumerate(z_levels):
        active = pts[pts[:, 2] <= z][:, :2]
        z_next = z_levels[i + 1] if i + 1 < len(z_levels) else ref[2]
        hv += _hv2d(active, ref[:2]) * (z_next - z)
    return float(hv)


def hypervolume_monte_carlo(
    points,
    ref,
    n_samples: int = MC_SAMPLES_DEFAULT,
    seed: int = 0,
) -> tuple[float, float]:
    """Monte-Carlo hypervolume estimate with its standard error.

    Samples uniformly in the bounding box [min(points), ref] and counts
    membership in the union of dominated boxes.
    """
    ref = np.asarray(ref, dtype=float)
    pts = _filter_box(points, ref)
    if len(pts) == 0:
        return 0.0, 0.0
    low = pts.min(axis=0)
    vol_box = float(np.prod(ref - low))
    if vol_box <= 0.0:
        return 0.0, 0.0
    rng = np.random.default_rng(seed)
    inside = 0
    done = 0
    chunk = 262_144
    while done < n_samples:
        c = min(chunk, n_samples - done)
        S = rng.uniform(low, ref, size=(c, len(ref)))
        covered = np.zeros(c, dtype=bool)
        for a in pts:
            covered |= (S >= a).all(axis=1)
        inside += int(covered.sum())
        done += c
    p = inside / n_samples
    est = vol_box * p
    stderr = vol_box * float(np.sqrt(p * (1.0 - p) / n_samples))
    return est, stderr


def hypervolume(
    points,
    ref,
    n_samples: int = MC_SAMPLES_DEFAULT,
    seed: int = 0,
) -> float:
    """Hypervolume of `points` against reference point `ref`.

    Points outside the reference box are dropped (they contribute zero);
    an empty set has hypervolume 0. Exact for 2 and 3 objectives; a
    Monte-Carlo estimate (n_samples draws, fixed seed) beyond that.
    """
    ref = np.asarray(ref, dtype=float)
    pts = _filter_box(points, ref)
    if len(pts) == 0:
        return 0.0
    if len(ref) == 2:
        return _hv2d(pts, ref)
    if len(ref) == 3:
        return _hv3d(pts, ref)
    return hypervolume_monte_carlo(pts, ref, n_samples=n_samples, seed=seed)[0]


def igd(A, R, chunk: int = 1024) -> float:
    """Mean Euclidean distance from each reference point in R to its
    nearest member of A."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    R = np.atleast_2d(np.asarray(R, dtype=float))
    if len(A) == 0 or len(R) == 0:
        raise ValueError("igd requires non-empty solution and reference sets")
    if A.shape[1] != R.shape[1]:
        raise ValueError(
            f"objective count mismatch: solutions have {A.shape[1]}, references have {R.shape[1]}"
        )
    total = 0.0
    for start in range(0, len(R), chunk):
        block = R[start : start + chunk]
        d2 = ((block[:, None, :] - A[None, :, :]) ** 2).sum(axis=2)
        total += float(np.sqrt(d2.min(axis=1)).sum())
    return total / len(R)


def default_reference_point(sets) -> np.ndarray:
    """Shared reference point: componentwise maximum over all sets,
    scaled by 1.1 (or shifted by +0.1 for non-positive components)."""
    stacked = [np.atleast_2d(np.asarray(s, dtype=float)) for s in sets if len(s) > 0]
    if not stacked:
        raise ValueError("all solution sets are empty")
    widths = {s.shape[1] for s in stacked}
    if len(widths) != 1:
        raise ValueError(f"solution sets disagree on objective count: {sorted(widths)}")
    m = np.vstack(stacked).max(axis=0)
    return np.where(m > 0.0, 1.1 * m, m + 0.1)
