"""Monte-Carlo and quadrature estimates of Schatten-ball volume ratios.

The Monte-Carlo target is always ``Vol(B_p^n) / Vol(B_2^n)``; absolute volumes
are recovered by multiplying with the exact Euclidean-ball volume. Matrices
are drawn uniformly from a Euclidean ball that contains ``B_p^n``: the unit
ball itself for ``p <= 2`` and the ball of radius ``n**(1/2 - 1/p)`` for
``p > 2``.

Sampling is split into fixed-size chunks, chunk ``k`` drawing from the
counter-based stream ``(seed, k)``. Hit counts are integers, so the result
does not depend on how chunks are spread over threads.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._quad import adaptive_gl
from .asymptotics import Field, euclidean_ball_log_volume, volume_radius_asymptote
from .errors import InputError
from .matnum import check_p, norm_from_singular_values, singular_values
from .rng import stream

CHUNK = 250_000


class DegenerateEstimateWarning(RuntimeWarning):
    """No sample landed in the target body; the standard error is meaningless."""


@dataclass(frozen=True)
class Estimate:
    value: float
    stderr: float
    samples: int
    seed: int
    hits: int = -1
    degenerate: bool = False


def sample_uniform_euclidean_ball(n: int, field, rng: np.random.Generator, size: int | None = None):
    """Matrices whose entries are uniform on the unit Euclidean ball.

    The ball has real dimension ``n**2`` (real) or ``2 n**2`` (complex): a
    Gaussian direction is scaled to radius ``u**(1/d)``.
    """
    field = Field.parse(field)
    n = int(n)
    if n < 1:
        raise InputError("n must be positive")
    shape = (1 if size is None else int(size), field.beta * n * n)
    d = shape[1]
    g = rng.standard_normal(shape)
    r = rng.random(shape[0]) ** (1.0 / d)
    v = g * (r / np.linalg.norm(g, axis=1))[:, None]
    if field is Field.COMPLEX:
        A = (v[:, : n * n] + 1j * v[:, n * n:]).reshape(-1, n, n)
    else:
        A = v.reshape(-1, n, n)
    return A[0] if size is None else A


def containing_scale(n: int, p: float) -> float:
    """Radius of the smallest Euclidean ball around ``B_p^n``."""
    if p <= 2:
        return 1.0
    return n ** (0.5 - (0.0 if math.isinf(p) else 1.0 / p))


def _chunk_hits(n, p, field, seed, index, size, scale):
    rng = stream(seed, index)
    A = sample_uniform_euclidean_ball(n, field, rng, size)
    s = singular_values(A) * scale
    return int(np.count_nonzero(norm_from_singular_values(s, p) <= 1.0))


def volume_ratio_mc(n: int, p, field="real", samples: int = 10_000_000, seed: int = 0,
                    threads: int = 1, chunk: int = CHUNK) -> Estimate:
    """Estimate ``Vol(B_p^n) / Vol(B_2^n)`` with a binomial standard error.

    Raises
    ------
    InputError
        For ``n < 1`` or fewer than 1000 samples.
    """
    n = int(n)
    p = check_p(p)
    field = Field.parse(field)
    if n < 1:
        raise InputError("n must be positive")
    if samples < 1000:
        raise InputError("use at least 1000 samples")
    scale = containing_scale(n, p)
    sizes = [min(chunk, samples - k) for k in range(0, samples, chunk)]
    jobs = [(n, p, field, seed, i, size, scale) for i, size in enumerate(sizes)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            hits = sum(pool.map(lambda job: _chunk_hits(*job), jobs))
    else:
        hits = sum(_chunk_hits(*job) for job in jobs)
    frac = hits / samples
    factor = scale ** (field.beta * n * n)
    degenerate = hits == 0
    if degenerate:
        warnings.warn(f"no hits in {samples} samples (n={n}, p={p}, {field.value})",
                      DegenerateEstimateWarning, stacklevel=2)
    stderr = factor * math.sqrt(frac * (1.0 - frac) / samples)
    return Estimate(factor * frac, stderr, samples, seed, hits, degenerate)


def _weight(s, field: Field):
    """Singular-value density on the chamber, up to a constant."""
    s = np.asarray(s)
    n = s.shape[0]
    w = np.ones(s.shape[1:])
    for i in range(n):
        for j in range(i + 1, n):
            diff = np.abs(s[i] ** 2 - s[j] ** 2)
            w = w * (diff if field is Field.REAL else diff * diff)
    if field is Field.COMPLEX:
        w = w * np.prod(s, axis=0)
    return w


def _degree(n: int, field: Field) -> int:
    pairs = n * (n - 1) // 2
    return 2 * pairs if field is Field.REAL else 4 * pairs + n


def _norm_rows(s, p):
    s = np.asarray(s, dtype=float)
    if math.isinf(p):
        return np.max(s, axis=0)
    return np.sum(s**p, axis=0) ** (1.0 / p)


def singular_value_quadrature(n: int, p, field="real", rtol: float = 1e-9) -> float:
    """``Vol(B_p^n) / Vol(B_2^n)`` from the singular-value integral, ``n`` in {2, 3}.

    With ``s = r * (x_1, ..., x_{n-1}, 1)``, ``0 <= x_1 <= ... <= 1`` the radial
    integral is explicit, leaving

        integral w(x, 1) * ||(x, 1)||_p ** -(k + n) dx

    over the ordered unit simplex, ``k`` the degree of the homogeneous weight
    ``w``. The constant of the decomposition cancels in the ratio.
    """
    n = int(n)
    if n not in (2, 3):
        raise InputError("quadrature oracle supports n = 2 or 3")
    p = check_p(p)
    field = Field.parse(field)
    power = -(_degree(n, field) + n)

    def integral(q):
        if n == 2:
            def f(x):
                s = np.stack([x, np.ones_like(x)])
                return _weight(s, field) * _norm_rows(s, q) ** power
            return adaptive_gl(f, 0.0, 1.0, abstol=0.0, reltol=rtol)

        def inner(y):
            def f(x):
                s = np.stack([x, np.full_like(x, y), np.ones_like(x)])
                return _weight(s, field) * _norm_rows(s, q) ** power
            return adaptive_gl(f, 0.0, y, abstol=0.0, reltol=rtol) if y > 0 else 0.0

        return adaptive_gl(lambda ys: np.array([inner(y) for y in ys]), 0.0, 1.0,
                           abstol=0.0, reltol=rtol)

    return integral(p) / integral(2.0)


@dataclass(frozen=True)
class RadiusRow:
    n: int
    measured: float
    predicted: float
    ratio: float
    estimate: Estimate


def radius_convergence_table(p, field="real", n_list=(1, 2, 3), samples: int = 1_000_000,
                             seed: int = 0, threads: int = 1) -> list[RadiusRow]:
    """Measured ``Vol(B_p^n)**(1/dim)`` against the leading-order prediction.

    Reports only; nothing here asserts convergence.
    """
    p = check_p(p)
    field = Field.parse(field)
    rows = []
    for n in n_list:
        est = volume_ratio_mc(n, p, field, samples, seed, threads)
        d = field.beta * n * n
        if est.value > 0:
            measured = math.exp((math.log(est.value) + euclidean_ball_log_volume(d)) / d)
        else:
            measured = 0.0
        predicted = volume_radius_asymptote(n, p, field).radius
        rows.append(RadiusRow(int(n), measured, predicted, measured / predicted, est))
    return rows
