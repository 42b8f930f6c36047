"""Maximization of the discrete log-energy objective behind Delta_n(p).

For ``0 <= t_1 <= ... <= t_n`` the objective is

    2/(n(n-1)) * sum_{i<j} log|t_i - t_j|  -  (1/p) * log(mean(t**p)),

its supremum is ``log Delta_n(p)``, and ``Delta_n(p)`` decreases to the
closed-form ``Delta(p)`` of :mod:`schatten.asymptotics`.

The objective is invariant under ``t -> a t``; every iterate is rescaled to
``mean(t**p) = 1`` and the first point stays pinned at the origin, where
the maximizer is known to sit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InputError
from .rng import stream
from .ullman import Ullman

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class FeketeSolution:
    n: int
    p: float
    points: np.ndarray
    log_delta_n: float
    iterations: int
    converged: bool

    @property
    def delta_n(self) -> float:
        return math.exp(self.log_delta_n)


def objective(points, p: float) -> float:
    """The displayed objective; ``-inf`` if two points coincide.

    Raises
    ------
    DomainError
        If every point is zero.
    """
    t = np.asarray(points, dtype=float).ravel()
    n = t.size
    if n < 2:
        raise InputError("need at least two points")
    if not p > 0:
        raise InputError("p must be positive")
    if np.any(t < 0):
        raise InputError("points must be non-negative")
    mean_p = float(np.mean(t**p))
    if mean_p == 0.0:
        raise DomainError("all points are zero")
    i, j = np.triu_indices(n, 1)
    d = np.abs(t[i] - t[j])
    if np.any(d == 0):
        return -math.inf
    return 2.0 / (n * (n - 1)) * math.fsum(np.log(d)) - math.log(mean_p) / p


def normalize(t: np.ndarray, p: float) -> np.ndarray:
    """Rescale so that ``mean(t**p) == 1``."""
    return t / np.mean(t**p) ** (1.0 / p)


def initial_configuration(n: int, p: float) -> np.ndarray:
    """Quantiles ``(i-1)/n`` of the continuum maximizer, the law of ``U**2``, ``U ~ Ullman(2p)``."""
    dist = Ullman(2.0 * p)
    t = np.zeros(n)
    for i in range(1, n):
        # P(U**2 <= v) = 2 P(0 <= U <= sqrt v)
        t[i] = dist.quantile(0.5 + 0.5 * i / n) ** 2
    return normalize(t, p)


# -- coordinate ascent --------------------------------------------------------


def _coordinate_value(x, others, rest_p, c, p, n):
    return c * np.sum(np.log(np.abs(x - others))) - math.log((rest_p + x**p) / n) / p


def _golden_max(f, lo, hi, rel_tol, include_lo=False):
    """Golden-section search for the maximum of a unimodal ``f`` on [lo, hi]."""
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > rel_tol * max(abs(a), abs(b), hi - lo):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
    # endpoints are never probed; the origin may still be the maximizer
    cands = [(f1, x1), (f2, x2)]
    if include_lo:
        cands.append((f(lo), lo))
    return max(cands)[1]


def _sweep(t, p, free_first, rel_tol):
    n = t.size
    c = 2.0 / (n * (n - 1))
    tp = t**p
    start = 0 if free_first else 1
    for i in range(start, n):
        others = np.delete(t, i)
        rest_p = float(tp.sum() - tp[i])
        lo = t[i - 1] if i > 0 else 0.0
        hi = t[i + 1] if i < n - 1 else t[i] + 3.0 * (t[i] - t[i - 1])
        if i == 0:
            # keep the bracket off the neighbour; the maximum sits at the origin
            hi = t[1] * (1.0 - 1e-9)

        def f(x, others=others, rest_p=rest_p):
            return _coordinate_value(x, others, rest_p, c, p, n)

        t[i] = _golden_max(f, lo, hi, rel_tol, include_lo=(i == 0))
        tp[i] = t[i] ** p
    return normalize(t, p)


# -- Newton polish ---------------------------------------------------------


def _grad_hess(t, p):
    """Gradient and Hessian with respect to ``t[1:]`` (``t[0]`` held fixed)."""
    n = t.size
    c = 2.0 / (n * (n - 1))
    S = float(np.sum(t**p))
    diff = t[:, None] - t[None, :]
    np.fill_diagonal(diff, np.inf)
    inv = 1.0 / diff
    inv2 = inv * inv
    with np.errstate(divide="ignore", over="ignore"):
        tpm1 = np.where(t > 0, t ** (p - 1.0), 0.0)
        tpm2 = np.where(t > 0, t ** (p - 2.0), 0.0)
    g = c * inv.sum(axis=1) - tpm1 / S
    H = c * inv2 + p * np.outer(tpm1, tpm1) / S**2
    np.fill_diagonal(H, -c * inv2.sum(axis=1) - (p - 1.0) * tpm2 / S + p * tpm1**2 / S**2)
    return g[1:], H[1:, 1:]


def _newton(t, p, tol, max_steps):
    steps = 0
    value = objective(t, p)
    converged = False
    for steps in range(1, max_steps + 1):
        g, H = _grad_hess(t, p)
        lam, vec = np.linalg.eigh(H)
        scale = np.max(np.abs(lam))
        if scale == 0.0:
            converged = True
            break
        coef = vec.T @ g
        keep = np.abs(lam) > 1e-13 * scale
        # |eigenvalue| keeps the step an ascent direction in non-concave regions
        delta = vec[:, keep] @ (coef[keep] / np.abs(lam[keep]))
        decrement = float(g @ delta)
        if decrement < tol:
            converged = True
            break
        alpha = 1.0
        while alpha > 1e-12:
            trial = t.copy()
            trial[1:] += alpha * delta
            if trial[1] > trial[0] and np.all(np.diff(trial) > 0):
                new = objective(trial, p)
                if new >= value:
                    break
            alpha *= 0.5
        else:
            # no ascent possible at working precision
            converged = decrement < 1e3 * tol
            break
        t = normalize(trial, p)
        value = objective(t, p)
    return t, steps, converged


def maximize(n: int, p: float, tol: float = 1e-11, max_iters: int = 10_000,
             restarts: int = 3, seed: int = 0, coordinate_sweeps: int = 5,
             pin_first: bool = True) -> FeketeSolution:
    """Maximize the objective over ordered configurations of ``n`` points.

    Each restart starts from the Ullman-quantile configuration (restart 0)
    or a seeded random perturbation of its gaps, runs ``coordinate_sweeps``
    golden-section coordinate sweeps and then Newton iterations on the
    non-pinned coordinates until the Newton decrement drops below ``tol``.
    The best restart is returned.

    With ``pin_first=False`` the first point also takes part in the
    coordinate sweeps, which lets callers check that it settles at 0.
    """
    n = int(n)
    if n < 2:
        raise InputError("n must be at least 2")
    if not (p > 0 and math.isfinite(p)):
        raise InputError("p must be finite and positive")
    base = initial_configuration(n, p)
    best = None
    for r in range(max(1, restarts)):
        t = base.copy()
        if r > 0:
            gen = stream(seed, n, r)
            gaps = np.diff(t) * np.exp(0.1 * gen.standard_normal(n - 1))
            t = normalize(np.concatenate([[0.0], np.cumsum(gaps)]), p)
        iters = 0
        for _ in range(min(coordinate_sweeps, max_iters)):
            t = _sweep(t, p, not pin_first, 1e-10)
            iters += 1
        t, steps, ok = _newton(t, p, tol, max(1, max_iters - iters))
        iters += steps
        sol = FeketeSolution(n, float(p), t, objective(t, p), iters, ok)
        if best is None or sol.log_delta_n > best.log_delta_n:
            best = sol
    return best


# -- the sequence Delta_n(p) ---------------------------------------------------


@dataclass(frozen=True)
class DeltaSequence:
    p: float
    ns: np.ndarray
    deltas: np.ndarray
    converged: np.ndarray
    limit: float
    fit: tuple = field(default=())

    def is_monotone(self, slack: float = 1e-7) -> bool:
        return bool(np.all(np.diff(self.deltas) <= slack))


def extrapolate(ns, log_deltas) -> tuple[float, tuple]:
    """Least-squares fit ``log D_n = log D + a log(n)/n + b/n``; returns ``(D, (log D, a, b))``."""
    ns = np.asarray(ns, dtype=float)
    A = np.column_stack([np.ones_like(ns), np.log(ns) / ns, 1.0 / ns])
    coef, *_ = np.linalg.lstsq(A, np.asarray(log_deltas, dtype=float), rcond=None)
    return math.exp(coef[0]), tuple(float(c) for c in coef)


def delta_sequence(p: float, n_max: int, **opts) -> DeltaSequence:
    """``Delta_n(p)`` for ``n = 2..n_max`` and the extrapolated limit.

    The fit uses the upper half of the range, ``n >= n_max // 2``.
    """
    if n_max < 3:
        raise InputError("n_max must be at least 3")
    ns = np.arange(2, n_max + 1)
    sols = [maximize(int(n), p, **opts) for n in ns]
    logs = np.array([s.log_delta_n for s in sols])
    top = ns >= n_max // 2
    limit, coef = extrapolate(ns[top], logs[top])
    return DeltaSequence(float(p), ns, np.exp(logs),
                         np.array([s.converged for s in sols]), limit, coef)
