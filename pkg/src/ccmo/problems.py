"""Scalable multi-objective benchmark problems.

Provides the ZDT, DTLZ, UF, and WFG families used throughout the library:
vectorized evaluators, box bounds, and deterministic samplers of the
analytic Pareto fronts (used as reference sets for indicator computation).

All objectives are minimized. Evaluators are pure functions of the input;
callers are responsible for budget accounting and for keeping inputs
inside the box bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "ProblemSpec",
    "make_problem",
    "evaluate",
    "sample_true_pf",
    "problem_names",
]

# Minimum of 1 - exp(-4t) * sin(6*pi*t)**6 on [0, 1]; lower end of the
# ZDT6 front in f1. Attained where tan(6*pi*t) = 9*pi (verified in tests).
_ZDT6_F1_MIN = 0.2807753188153697


@dataclass(frozen=True)
class ProblemSpec:
    """A fully specified benchmark instance.

    Attributes:
        name: Registry identifier, e.g. "ZDT1".
        dim: Number of decision variables.
        n_obj: Number of objectives.
        lower, upper: Per-variable box bounds, shape (dim,).
        declared_separability: "separable" or "partially-separable"
            (catalog metadata, used only for reporting).
        pf_sampler_available: Whether sample_pf() is implemented.
    """

    name: str
    dim: int
    n_obj: int
    lower: np.ndarray
    upper: np.ndarray
    declared_separability: str
    pf_sampler_available: bool
    _evaluate_batch: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    _pf_sampler: Callable[[int], np.ndarray] | None = field(default=None, repr=False)

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        """Evaluate a single decision vector, returning (n_obj,) objectives."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(
                f"dimension mismatch: expected ({self.dim},), got {x.shape}"
            )
        return self._evaluate_batch(x[None, :])[0]

    def evaluate_batch(self, X: np.ndarray) -> np.ndarray:
        """Evaluate an (n, dim) matrix of decision vectors to (n, n_obj)."""
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.dim:
            raise ValueError(
                f"dimension mismatch: expected (n, {self.dim}), got {X.shape}"
            )
        return self._evaluate_batch(X)

    def sample_pf(self, n: int) -> np.ndarray:
        """Sample n deterministically spaced points of the analytic front."""
        if not self.pf_sampler_available or self._pf_sampler is None:
            raise ValueError(f"no Pareto-front sampler available for {self.name}")
        if n < 2:
            raise ValueError(f"need at least 2 reference points, got {n}")
        return self._pf_sampler(n)


def evaluate(problem: ProblemSpec, x: np.ndarray, budget=None, stage: str = "optimization") -> np.ndarray:
    """Evaluate one point, charging one FE to `budget` when given."""
    if budget is not None:
        if stage == "decomposition":
            budget.charge_decomposition(1)
        else:
            budget.charge_optimization(1)
    return problem.evaluate(x)


def sample_true_pf(problem: ProblemSpec, n: int) -> np.ndarray:
    """Module-level alias for ProblemSpec.sample_pf."""
    return problem.sample_pf(n)


# ---------------------------------------------------------------------------
# ZDT family (bi-objective)
# ---------------------------------------------------------------------------


def _zdt1(X: np.ndarray) -> np.ndarray:
    f1 = X[:, 0]
    g = 1.0 + 9.0 * X[:, 1:].sum(axis=1) / (X.shape[1] - 1)
    f2 = g * (1.0 - np.sqrt(f1 / g))
    return np.column_stack([f1, f2])


def _zdt2(X: np.ndarray) -> np.ndarray:
    f1 = X[:, 0]
    g = 1.0 + 9.0 * X[:, 1:].sum(axis=1) / (X.shape[1] - 1)
    f2 = g * (1.0 - (f1 / g) ** 2)
    return np.column_stack([f1, f2])


def _zdt3(X: np.ndarray) -> np.ndarray:
    f1 = X[:, 0]
    g = 1.0 + 9.0 * X[:, 1:].sum(axis=1) / (X.shape[1] - 1)
    f2 = g * (1.0 - np.sqrt(f1 / g) - (f1 / g) * np.sin(10.0 * np.pi * f1))
    return np.column_stack([f1, f2])


def _zdt4(X: np.ndarray) -> np.ndarray:
    f1 = X[:, 0]
    tail = X[:, 1:]
    g = 1.0 + 10.0 * tail.shape[1] + (tail**2 - 10.0 * np.cos(4.0 * np.pi * tail)).sum(axis=1)
    f2 = g * (1.0 - np.sqrt(f1 / g))
    return np.column_stack([f1, f2])


def _zdt6(X: np.ndarray) -> np.ndarray:
    x1 = X[:, 0]
    f1 = 1.0 - np.exp(-4.0 * x1) * np.sin(6.0 * np.pi * x1) ** 6
    g = 1.0 + 9.0 * (X[:, 1:].sum(axis=1) / (X.shape[1] - 1)) ** 0.25
    f2 = g * (1.0 - (f1 / g) ** 2)
    return np.column_stack([f1, f2])


def _zdt1_pf(n: int) -> np.ndarray:
    # Uniform in t = sqrt(f1), i.e. uniform along f2 = 1 - t.
    t = np.linspace(0.0, 1.0, n)
    return np.column_stack([t**2, 1.0 - t])


def _zdt2_pf(n: int) -> np.ndarray:
    f1 = np.linspace(0.0, 1.0, n)
    return np.column_stack([f1, 1.0 - f1**2])


def _zdt3_pf(n: int) -> np.ndarray:
    t = np.linspace(0.0, 1.0, max(5 * n, 4096))
    f2 = 1.0 - np.sqrt(t) - t * np.sin(10.0 * np.pi * t)
    cand = np.column_stack([t, f2])
    front = cand[_nondominated_mask(cand)]
    return _evenly_subsample(front, n)


def _zdt6_pf(n: int) -> np.ndarray:
    f1 = np.linspace(_ZDT6_F1_MIN, 1.0, n)
    return np.column_stack([f1, 1.0 - f1**2])


# ---------------------------------------------------------------------------
# DTLZ family (scalable objectives, k = dim - n_obj + 1 distance variables)
# ---------------------------------------------------------------------------


def _dtlz_g_rastrigin(Xm: np.ndarray) -> np.ndarray:
    k = Xm.shape[1]
    z = Xm - 0.5
    return 100.0 * (k + (z**2 - np.cos(20.0 * np.pi * z)).sum(axis=1))


def _dtlz_g_sphere(Xm: np.ndarray) -> np.ndarray:
    return ((Xm - 0.5) ** 2).sum(axis=1)


def _dtlz1(X: np.ndarray, M: int) -> np.ndarray:
    g = _dtlz_g_rastrigin(X[:, M - 1 :])
    base = 0.5 * (1.0 + g)
    F = np.empty((len(X), M))
    for m in range(M):
        f = base * np.prod(X[:, : M - 1 - m], axis=1)
        if m > 0:
            f = f * (1.0 - X[:, M - 1 - m])
        F[:, m] = f
    return F


def _dtlz_angle_objectives(theta: np.ndarray, g: np.ndarray, M: int) -> np.ndarray:
    cos = np.cos(theta)
    sin = np.sin(theta)
    F = np.empty((len(theta), M))
    for m in range(M):
        f = (1.0 + g) * np.prod(cos[:, : M - 1 - m], axis=1)
        if m > 0:
            f = f * sin[:, M - 1 - m]
        F[:, m] = f
    return F


def _dtlz2(X: np.ndarray, M: int, alpha: float = 1.0, g_fn=_dtlz_g_sphere) -> np.ndarray:
    g = g_fn(X[:, M - 1 :])
    theta = (X[:, : M - 1] ** alpha) * (np.pi / 2.0)
    return _dtlz_angle_objectives(theta, g, M)


def _dtlz3(X: np.ndarray, M: int) -> np.ndarray:
    return _dtlz2(X, M, g_fn=_dtlz_g_rastrigin)


def _dtlz4(X: np.ndarray, M: int) -> np.ndarray:
    return _dtlz2(X, M, alpha=100.0)


def _dtlz5(X: np.ndarray, M: int, g_fn=_dtlz_g_sphere) -> np.ndarray:
    g = g_fn(X[:, M - 1 :])
    Xp = X[:, : M - 1]
    theta = np.empty_like(Xp)
    theta[:, 0] = Xp[:, 0] * (np.pi / 2.0)
    if M > 2:
        gc = g[:, None]
        theta[:, 1:] = np.pi / (4.0 * (1.0 + gc)) * (1.0 + 2.0 * gc * Xp[:, 1:])
    return _dtlz_angle_objectives(theta, g, M)


def _dtlz6_g(Xm: np.ndarray) -> np.ndarray:
    return (Xm**0.1).sum(axis=1)


def _dtlz6(X: np.ndarray, M: int) -> np.ndarray:
    return _dtlz5(X, M, g_fn=_dtlz6_g)


def _dtlz7(X: np.ndarray, M: int) -> np.ndarray:
    Xm = X[:, M - 1 :]
    g = 1.0 + 9.0 * Xm.mean(axis=1)
    F = np.empty((len(X), M))
    F[:, : M - 1] = X[:, : M - 1]
    fi = F[:, : M - 1]
    h = M - ((fi / (1.0 + g[:, None])) * (1.0 + np.sin(3.0 * np.pi * fi))).sum(axis=1)
    F[:, M - 1] = (1.0 + g) * h
    return F


def _simplex_lattice(M: int, n_min: int) -> np.ndarray:
    """Smallest uniform simplex lattice (rows sum to 1) with >= n_min points."""
    H = 1
    while math.comb(H + M - 1, M - 1) < n_min:
        H += 1
    rows: list[tuple[int, ...]] = []

    def rec(prefix: list[int], left: int, slots: int) -> None:
        if slots == 1:
            rows.append(tuple(prefix + [left]))
            return
        for v in range(left + 1):
            rec(prefix + [v], left - v, slots - 1)

    rec([], H, M)
    return np.array(rows, dtype=float) / H


def _dtlz1_pf(n: int, M: int) -> np.ndarray:
    pts = 0.5 * _simplex_lattice(M, n)
    return _evenly_subsample(pts, n)


def _dtlz2_pf(n: int, M: int) -> np.ndarray:
    dirs = _simplex_lattice(M, n)
    norms = np.linalg.norm(dirs, axis=1, keepdims=True)
    return _evenly_subsample(dirs / norms, n)


def _dtlz5_pf(n: int, M: int) -> np.ndarray:
    theta = np.linspace(0.0, np.pi / 2.0, n)
    if M == 2:
        return np.column_stack([np.cos(theta), np.sin(theta)])
    # M == 3: degenerate curve with the second angle pinned at pi/4.
    c = np.cos(theta) * (np.sqrt(2.0) / 2.0)
    return np.column_stack([c, c, np.sin(theta)])


def _dtlz7_pf(n: int, M: int) -> np.ndarray:
    if M == 2:
        U = np.linspace(0.0, 1.0, max(5 * n, 4096))[:, None]
    else:
        side = int(math.ceil(math.sqrt(max(16 * n, 4096))))
        axes = np.meshgrid(*[np.linspace(0.0, 1.0, side)] * (M - 1), indexing="ij")
        U = np.column_stack([a.ravel() for a in axes])
    h = M - (U / 2.0 * (1.0 + np.sin(3.0 * np.pi * U))).sum(axis=1)
    cand = np.column_stack([U, 2.0 * h])
    front = cand[_nondominated_mask(cand)]
    return _evenly_subsample(front, n)


# ---------------------------------------------------------------------------
# UF family (CEC'09 unconstrained suite, bi-objective members)
# ---------------------------------------------------------------------------


def _uf1(X: np.ndarray) -> np.ndarray:
    n = X.shape[1]
    x1 = X[:, 0]
    j = np.arange(2, n + 1)
    shift = np.sin(6.0 * np.pi * x1[:, None] + j[None, :] * np.pi / n)
    y = X[:, 1:] - shift
    odd = (j % 2) == 1
    even = ~odd
    f1 = x1 + 2.0 * (y[:, odd] ** 2).mean(axis=1)
    f2 = 1.0 - np.sqrt(x1) + 2.0 * (y[:, even] ** 2).mean(axis=1)
    return np.column_stack([f1, f2])


def _uf2(X: np.ndarray) -> np.ndarray:
    n = X.shape[1]
    x1 = X[:, 0]
    j = np.arange(2, n + 1)
    a = 0.3 * x1[:, None] ** 2 * np.cos(24.0 * np.pi * x1[:, None] + 4.0 * j[None, :] * np.pi / n) + 0.6 * x1[:, None]
    arg = 6.0 * np.pi * x1[:, None] + j[None, :] * np.pi / n
    odd = (j % 2) == 1
    even = ~odd
    y = np.where(odd[None, :], X[:, 1:] - a * np.cos(arg), X[:, 1:] - a * np.sin(arg))
    f1 = x1 + 2.0 * (y[:, odd] ** 2).mean(axis=1)
    f2 = 1.0 - np.sqrt(x1) + 2.0 * (y[:, even] ** 2).mean(axis=1)
    return np.column_stack([f1, f2])


def _uf_pf(n: int) -> np.ndarray:
    t = np.linspace(0.0, 1.0, n)
    return np.column_stack([t**2, 1.0 - t])


# ---------------------------------------------------------------------------
# WFG family (position parameters k = 2*(n_obj - 1), distance l = dim - k)
# ---------------------------------------------------------------------------


def _clip01(y: np.ndarray) -> np.ndarray:
    return np.clip(y, 0.0, 1.0)


def _t_shift_linear(y: np.ndarray, A: float) -> np.ndarray:
    return _clip01(np.abs(y - A) / np.abs(np.floor(A - y) + A))


def _t_shift_deceptive(y: np.ndarray, A: float, B: float, C: float) -> np.ndarray:
    t1 = np.floor(y - A + B) * (1.0 - C + (A - B) / B) / (A - B)
    t2 = np.floor(A + B - y) * (1.0 - C + (1.0 - A - B) / B) / (1.0 - A - B)
    return _clip01(1.0 + (np.abs(y - A) - B) * (t1 + t2 + 1.0 / B))


def _t_shift_multimodal(y: np.ndarray, A: float, B: float, C: float) -> np.ndarray:
    t1 = np.abs(y - C) / (2.0 * (np.floor(C - y) + C))
    t2 = (4.0 * A + 2.0) * np.pi * (0.5 - t1)
    return _clip01((1.0 + np.cos(t2) + 4.0 * B * t1**2) / (B + 2.0))


def _t_bias_flat(y: np.ndarray, A: float, B: float, C: float) -> np.ndarray:
    out = (
        A
        + np.minimum(0.0, np.floor(y - B)) * (A * (B - y) / B)
        - np.minimum(0.0, np.floor(C - y)) * ((1.0 - A) * (y - C) / (1.0 - C))
    )
    return _clip01(out)


def _t_bias_poly(y: np.ndarray, alpha: float) -> np.ndarray:
    return _clip01(y**alpha)


def _t_bias_param(y: np.ndarray, u: np.ndarray, A: float, B: float, C: float) -> np.ndarray:
    v = A - (1.0 - 2.0 * u) * np.abs(np.floor(0.5 - u) + A)
    return _clip01(y ** (B + (C - B) * v))


def _r_sum(Y: np.ndarray, w: np.ndarray) -> np.ndarray:
    return _clip01(Y @ w / w.sum())


def _r_nonsep(Y: np.ndarray, A: int) -> np.ndarray:
    n, m = Y.shape
    val = math.ceil(A / 2.0)
    num = np.zeros(n)
    for j in range(m):
        num += Y[:, j]
        for k in range(A - 1):
            num += np.abs(Y[:, j] - Y[:, (1 + j + k) % m])
    denom = m * val * (1.0 + 2.0 * A - 2.0 * val) / A
    return _clip01(num / denom)


def _shape_linear(U: np.ndarray) -> np.ndarray:
    n, Mm1 = U.shape
    M = Mm1 + 1
    H = np.empty((n, M))
    for m in range(1, M + 1):
        h = np.prod(U[:, : M - m], axis=1)
        if m > 1:
            h = h * (1.0 - U[:, M - m])
        H[:, m - 1] = h
    return H


def _shape_convex(U: np.ndarray) -> np.ndarray:
    n, Mm1 = U.shape
    M = Mm1 + 1
    a = 1.0 - np.cos(U * np.pi / 2.0)
    b = 1.0 - np.sin(U * np.pi / 2.0)
    H = np.empty((n, M))
    for m in range(1, M + 1):
        h = np.prod(a[:, : M - m], axis=1)
        if m > 1:
            h = h * b[:, M - m]
        H[:, m - 1] = h
    return H


def _shape_concave(U: np.ndarray) -> np.ndarray:
    n, Mm1 = U.shape
    M = Mm1 + 1
    s = np.sin(U * np.pi / 2.0)
    c = np.cos(U * np.pi / 2.0)
    H = np.empty((n, M))
    for m in range(1, M + 1):
        h = np.prod(s[:, : M - m], axis=1)
        if m > 1:
            h = h * c[:, M - m]
        H[:, m - 1] = h
    return H


def _shape_mixed(u1: np.ndarray, A: float = 5.0, alpha: float = 1.0) -> np.ndarray:
    aux = 2.0 * A * np.pi
    return (1.0 - u1 - np.cos(aux * u1 + np.pi / 2.0) / aux) ** alpha


def _shape_disconnected(u1: np.ndarray, alpha: float = 1.0, beta: float = 1.0, A: float = 5.0) -> np.ndarray:
    return 1.0 - u1**alpha * np.cos(A * np.pi * u1**beta) ** 2


def _wfg_post(T: np.ndarray, A: np.ndarray) -> np.ndarray:
    tm = T[:, -1]
    X = np.empty_like(T)
    for m in range(T.shape[1] - 1):
        X[:, m] = np.maximum(tm, A[m]) * (T[:, m] - 0.5) + 0.5
    X[:, -1] = tm
    return X


def _wfg_uniform_groups(Y: np.ndarray, M: int, k: int) -> np.ndarray:
    """Uniform weighted-sum reduction: M-1 position groups plus the tail."""
    gap = k // (M - 1)
    cols = []
    for m in range(1, M):
        seg = Y[:, (m - 1) * gap : m * gap]
        cols.append(_r_sum(seg, np.ones(seg.shape[1])))
    cols.append(_r_sum(Y[:, k:], np.ones(Y.shape[1] - k)))
    return np.column_stack(cols)


def _wfg_finalize(X: np.ndarray, H: np.ndarray, M: int) -> np.ndarray:
    S = 2.0 * np.arange(1, M + 1)
    return X[:, -1][:, None] + S[None, :] * H


def _wfg1(Z: np.ndarray, M: int, k: int) -> np.ndarray:
    n = Z.shape[1]
    y = Z / (2.0 * np.arange(1, n + 1))
    y = y.copy()
    y[:, k:] = _t_shift_linear(y[:, k:], 0.35)
    y[:, k:] = _t_bias_flat(y[:, k:], 0.8, 0.75, 0.85)
    y = _t_bias_poly(y, 0.02)
    gap = k // (M - 1)
    w = 2.0 * np.arange(1, n + 1)
    cols = []
    for m in range(1, M):
        sl = slice((m - 1) * gap, m * gap)
        cols.append(_r_sum(y[:, sl], w[sl]))
    cols.append(_r_sum(y[:, k:], w[k:]))
    T = np.column_stack(cols)
    X = _wfg_post(T, np.ones(M - 1))
    H = _shape_convex(X[:, : M - 1])
    H[:, M - 1] = _shape_mixed(X[:, 0])
    return _wfg_finalize(X, H, M)


def _wfg2_t23(y: np.ndarray, M: int, k: int) -> np.ndarray:
    n = y.shape[1]
    l = n - k
    cols = [y[:, i] for i in range(k)]
    for i in range(l // 2):
        cols.append(_r_nonsep(y[:, k + 2 * i : k + 2 * i + 2], 2))
    reduced = np.column_stack(cols)
    return _wfg_uniform_groups(reduced, M, k)


def _wfg2(Z: np.ndarray, M: int, k: int) -> np.ndarray:
    n = Z.shape[1]
    y = Z / (2.0 * np.arange(1, n + 1))
    y = y.copy()
    y[:, k:] = _t_shift_linear(y[:, k:], 0.35)
    T = _wfg2_t23(y, M, k)
    X = _wfg_post(T, np.ones(M - 1))
    H = _shape_convex(X[:, : M - 1])
    H[:, M - 1] = _shape_disconnected(X[:, 0])
    return _wfg_finalize(X, H, M)


def _wfg3(Z: np.ndarray, M: int, k: int) -> np.ndarray:
    n = Z.shape[1]
    y = Z / (2.0 * np.arange(1, n + 1))
    y = y.copy()
    y[:, k:] = _t_shift_linear(y[:, k:], 0.35)
    T = _wfg2_t23(y, M, k)
    A = np.zeros(M - 1)
    A[0] = 1.0
    X = _wfg_post(T, A)
    H = _shape_linear(X[:, : M - 1])
    return _wfg_finalize(X, H, M)


def _wfg4(Z: np.ndarray, M: int, k: int) -> np.ndarray:
    n = Z.shape[1]
    y = Z / (2.0 * np.arange(1, n + 1))
    y = _t_shift_multimodal(y, 30.0, 10.0, 0.35)
    T = _wfg_uniform_groups(y, M, k)
    X = _wfg_post(T, np.ones(M - 1))
    H = _shape_concave(X[:, : M - 1])
    return _wfg_finalize(X, H, M)


def _wfg5(Z: np.ndarray, M: int, k: int) -> np.ndarray:
    n = Z.shape[1]
    y = Z / (2.0 * np.arange(1, n + 1))
    y = _t_shift_deceptive(y, 0.35, 0.001, 0.05)
    T = _wfg_uniform_groups(y, M, k)
    X = _wfg_post(T, np.ones(M - 1))
    H = _shape_concave(X[:, : M - 1])
    return _wfg_finalize(X, H, M)


def _wfg7(Z: np.ndarray, M: int, k: int) -> np.ndarray:
    n = Z.shape[1]
    y = (Z / (2.0 * np.arange(1, n + 1))).copy()
    for i in range(k):
        u = _r_sum(y[:, i + 1 :], np.ones(n - i - 1))
        y[:, i] = _t_bias_param(y[:, i], u, 0.98 / 49.98, 0.02, 50.0)
    y[:, k:] = _t_shift_linear(y[:, k:], 0.35)
    T = _wfg_uniform_groups(y, M, k)
    X = _wfg_post(T, np.ones(M - 1))
    H = _shape_concave(X[:, : M - 1])
    return _wfg_finalize(X, H, M)


_WFG_EVALUATORS = {
    "WFG1": _wfg1,
    "WFG2": _wfg2,
    "WFG3": _wfg3,
    "WFG4": _wfg4,
    "WFG5": _wfg5,
    "WFG7": _wfg7,
}

_WFG_SHAPES = {
    "WFG1": ("convex_mixed", np.array([1.0])),
    "WFG2": ("convex_disconnected", np.array([1.0])),
    "WFG3": ("linear", None),  # degenerate A = (1, 0, ...)
    "WFG4": ("concave", np.array([1.0])),
    "WFG5": ("concave", np.array([1.0])),
    "WFG7": ("concave", np.array([1.0])),
}


def _wfg_pf(name: str, M: int, n: int) -> np.ndarray:
    kind, _ = _WFG_SHAPES[name]
    if M == 2:
        U = np.linspace(0.0, 1.0, max(5 * n, 4096))[:, None]
    else:
        side = int(math.ceil(math.sqrt(max(8 * n, 4096))))
        axes = np.meshgrid(*[np.linspace(0.0, 1.0, side)] * (M - 1), indexing="ij")
        U = np.column_stack([a.ravel() for a in axes])
    if kind == "linear":
        A = np.zeros(M - 1)
        A[0] = 1.0
        X = A[None, :] * (U - 0.5) + 0.5
        H = _shape_linear(X)
    else:
        X = U
        if kind == "concave":
            H = _shape_concave(X)
        elif kind == "convex_mixed":
            H = _shape_convex(X)
            H[:, M - 1] = _shape_mixed(X[:, 0])
        else:
            H = _shape_convex(X)
            H[:, M - 1] = _shape_disconnected(X[:, 0])
    S = 2.0 * np.arange(1, M + 1)
    cand = S[None, :] * H
    front = cand[_nondominated_mask(cand)]
    return _evenly_subsample(front, n)


# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------


def _nondominated_mask(F: np.ndarray, chunk: int = 512) -> np.ndarray:
    """Boolean mask of points not dominated by any other point in F."""
    F = np.asarray(F, dtype=float)
    n = len(F)
    keep = np.ones(n, dtype=bool)
    for start in range(0, n, chunk):
        block = F[start : start + chunk]
        le = (F[None, :, :] <= block[:, None, :]).all(axis=2)
        lt = (F[None, :, :] < block[:, None, :]).any(axis=2)
        dominated = (le & lt).any(axis=1)
        keep[start : start + chunk] &= ~dominated
    return keep


def _evenly_subsample(points: np.ndarray, n: int) -> np.ndarray:
    """Take n points spread evenly over the lexicographically sorted set."""
    order = np.lexsort(points.T[::-1])
    points = points[order]
    if len(points) < n:
        raise ValueError(
            f"front sampling produced only {len(points)} points, need {n}"
        )
    if len(points) == n:
        return points
    idx = np.floor(np.linspace(0, len(points) - 1, n)).astype(int)
    return points[idx]


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

_ZDT = {
    "ZDT1": (_zdt1, _zdt1_pf, "separable"),
    "ZDT2": (_zdt2, _zdt2_pf, "separable"),
    "ZDT3": (_zdt3, _zdt3_pf, "separable"),
    "ZDT4": (_zdt4, _zdt1_pf, "separable"),
    "ZDT6": (_zdt6, _zdt6_pf, "separable"),
}

_DTLZ = {
    "DTLZ1": (_dtlz1, _dtlz1_pf, "separable"),
    "DTLZ2": (_dtlz2, _dtlz2_pf, "separable"),
    "DTLZ3": (_dtlz3, _dtlz2_pf, "separable"),
    "DTLZ4": (_dtlz4, _dtlz2_pf, "separable"),
    "DTLZ5": (_dtlz5, _dtlz5_pf, "separable"),
    "DTLZ6": (_dtlz6, _dtlz5_pf, "separable"),
    "DTLZ7": (_dtlz7, _dtlz7_pf, "separable"),
}

_UF = {
    "UF1": (_uf1, "separable"),
    "UF2": (_uf2, "separable"),
}

_WFG_SEPARABILITY = {
    "WFG1": "separable",
    "WFG2": "partially-separable",
    "WFG3": "partially-separable",
    "WFG4": "separable",
    "WFG5": "separable",
    "WFG7": "separable",
}

_EXCLUDED = {
    "ZDT5": "binary-coded problem outside this real-coded suite",
    "WFG6": "not provided at high dimension",
    "WFG8": "not provided at high dimension",
    "WFG9": "not provided at high dimension",
}


def problem_names() -> list[str]:
    """Names accepted by make_problem, in registry order."""
    return list(_ZDT) + list(_DTLZ) + list(_UF) + list(_WFG_EVALUATORS)


def make_problem(name: str, dim: int, n_obj: int | None = None) -> ProblemSpec:
    """Build a benchmark instance by name.

    Args:
        name: One of ZDT1-4, ZDT6, DTLZ1-7, UF1, UF2, WFG1-5, WFG7.
        dim: Number of decision variables.
        n_obj: Objective count. Fixed at 2 for ZDT/UF; defaults to 3 for
            DTLZ and 2 for WFG, both configurable.

    Raises:
        ValueError: Unknown name, excluded problem, or infeasible (dim, n_obj).
    """
    key = name.upper()
    if key in _EXCLUDED:
        raise ValueError(f"unknown problem '{name}': {_EXCLUDED[key]}")
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")

    if key in _ZDT or key in _UF:
        if n_obj is not None and n_obj != 2:
            raise ValueError(f"{key} is bi-objective; got n_obj={n_obj}")
        M = 2
        if key in _ZDT:
            ev, pf, sep = _ZDT[key]
            lower = np.zeros(dim)
            upper = np.ones(dim)
            if key == "ZDT4":
                lower[1:] = -5.0
                upper[1:] = 5.0
            return ProblemSpec(key, dim, M, lower, upper, sep, True, ev, pf)
        ev, sep = _UF[key]
        if dim < 3:
            raise ValueError(f"{key} needs dim >= 3, got {dim}")
        lower = np.full(dim, -1.0)
        upper = np.ones(dim)
        lower[0] = 0.0
        return ProblemSpec(key, dim, M, lower, upper, sep, True, ev, lambda n: _uf_pf(n))

    if key in _DTLZ:
        M = 3 if n_obj is None else n_obj
        if M < 2:
            raise ValueError(f"n_obj must be >= 2, got {M}")
        if dim < M + 1:
            raise ValueError(f"{key} needs dim >= n_obj + 1 ({M + 1}), got {dim}")
        ev, pf, sep = _DTLZ[key]
        sampler_ok = True
        sampler: Callable[[int], np.ndarray] | None = lambda n, _M=M, _pf=pf: _pf(n, _M)
        if key in ("DTLZ5", "DTLZ6") and M > 3:
            sampler_ok = False
            sampler = None
        return ProblemSpec(
            key,
            dim,
            M,
            np.zeros(dim),
            np.ones(dim),
            sep,
            sampler_ok,
            lambda X, _ev=ev, _M=M: _ev(X, _M),
            sampler,
        )

    if key in _WFG_EVALUATORS:
        M = 2 if n_obj is None else n_obj
        if M < 2:
            raise ValueError(f"n_obj must be >= 2, got {M}")
        k = 2 * (M - 1)
        l = dim - k
        if dim < M + 1 or l < 1:
            raise ValueError(
                f"{key} needs dim >= max(n_obj + 1, {k + 1}) for {k} position parameters, got {dim}"
            )
        if key in ("WFG2", "WFG3") and l % 2 != 0:
            raise ValueError(
                f"{key} needs an even number of distance parameters; dim - {k} = {l} is odd"
            )
        ev = _WFG_EVALUATORS[key]
        upper = 2.0 * np.arange(1, dim + 1, dtype=float)
        return ProblemSpec(
            key,
            dim,
            M,
            np.zeros(dim),
            upper,
            _WFG_SEPARABILITY[key],
            True,
            lambda X, _ev=ev, _M=M, _k=k: _ev(X, _M, _k),
            lambda n, _key=key, _M=M: _wfg_pf(_key, _M, n),
        )

    raise ValueError(f"unknown problem '{name}'; supported: {', '.join(problem_names())}")
