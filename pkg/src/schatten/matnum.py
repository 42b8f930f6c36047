"""Singular values and Schatten (quasi-)norms of square matrices.

Singular values come from a batched one-sided Jacobi (Hestenes) iteration:
column pairs are rotated until they are mutually orthogonal, after which the
column norms are the singular values. Complex matrices go through the real
embedding ``[[X, -Y], [Y, X]]``, whose spectrum is that of ``X + iY`` with
every value repeated twice.

All functions accept either a single ``(n, n)`` matrix or a stack of shape
``(..., n, n)``; stacked input is processed in one vectorized pass, which is
what the Monte-Carlo volume estimator relies on.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InputError

_ROT_TOL = 1e-15
_MAX_SWEEPS = 80


def check_p(p, allow_quasi: bool = True) -> float:
    """Validate a Schatten exponent; ``math.inf`` is the operator norm."""
    try:
        p = float(p)
    except (TypeError, ValueError):
        raise InputError(f"exponent must be a positive real or inf, got {p!r}") from None
    if math.isnan(p) or p <= 0:
        raise InputError(f"exponent must be positive, got {p}")
    if not allow_quasi and p < 1:
        raise InputError(f"exponent must be >= 1 here, got {p}")
    return p


def _as_square(A) -> np.ndarray:
    A = np.asarray(A)
    if A.ndim < 2 or A.shape[-1] != A.shape[-2]:
        raise InputError(f"expected square matrix (or stack), got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InputError("matrix has non-finite entries")
    return A


def real_embedding(A: np.ndarray) -> np.ndarray:
    """Map complex ``(..., n, n)`` to the real ``(..., 2n, 2n)`` block matrix."""
    X, Y = A.real, A.imag
    top = np.concatenate([X, -Y], axis=-1)
    bottom = np.concatenate([Y, X], axis=-1)
    return np.concatenate([top, bottom], axis=-2)


def _jacobi_column_norms(M: np.ndarray) -> np.ndarray:
    """Column norms of a real stack ``(B, m, n)`` after Jacobi orthogonalization."""
    M = np.array(M, dtype=float, copy=True)
    n = M.shape[-1]
    for _ in range(_MAX_SWEEPS):
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                ci = M[:, :, i]
                cj = M[:, :, j]
                alpha = np.einsum("bk,bk->b", ci, ci)
                beta = np.einsum("bk,bk->b", cj, cj)
                gamma = np.einsum("bk,bk->b", ci, cj)
                active = np.abs(gamma) > _ROT_TOL * np.sqrt(alpha * beta)
                if not active.any():
                    continue
                rotated = True
                idx = np.nonzero(active)[0]
                a, b, g = alpha[idx], beta[idx], gamma[idx]
                with np.errstate(over="ignore"):
                    # huge zeta gives t = 0, the right limit
                    zeta = (b - a) / (2.0 * g)
                    t = np.copysign(1.0, zeta) / (np.abs(zeta) + np.hypot(1.0, zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                xi = M[idx, :, i]
                xj = M[idx, :, j]
                M[idx, :, i] = c[:, None] * xi - s[:, None] * xj
                M[idx, :, j] = s[:, None] * xi + c[:, None] * xj
        if not rotated:
            break
    return np.linalg.norm(M, axis=1)


def singular_values(A) -> np.ndarray:
    """Singular values sorted non-increasing along the last axis.

    Parameters
    ----------
    A : array_like, shape (..., n, n)
        Real or complex square matrix, or a stack of them.

    Raises
    ------
    InputError
        If ``A`` is not square or has non-finite entries.
    """
    A = _as_square(A)
    batch_shape = A.shape[:-2]
    n = A.shape[-1]
    flat = A.reshape((-1, n, n))
    if np.iscomplexobj(flat):
        s = _jacobi_column_norms(real_embedding(flat))
        s = -np.sort(-s, axis=-1)[:, ::2]
    else:
        s = -np.sort(-_jacobi_column_norms(flat), axis=-1)
    return s.reshape(batch_shape + (n,))


def norm_from_singular_values(s, p) -> np.ndarray | float:
    """``(sum s**p)**(1/p)`` along the last axis, or ``max s`` for ``p=inf``."""
    s = np.asarray(s, dtype=float)
    smax = s.max(axis=-1)
    if math.isinf(p):
        return smax
    if p == 2:
        return np.sqrt(np.sum(s * s, axis=-1))
    safe = np.where(smax > 0, smax, 1.0)
    scaled = s / safe[..., None] if s.ndim > 1 else s / safe
    return smax * np.sum(scaled ** p, axis=-1) ** (1.0 / p)


def schatten_norm(A, p) -> np.ndarray | float:
    """Schatten p-(quasi)norm of a square matrix (or stack)."""
    p = check_p(p)
    out = norm_from_singular_values(singular_values(A), p)
    return float(out) if np.ndim(out) == 0 else out


def in_ball(A, p) -> np.ndarray | bool:
    """Membership in the closed unit ball of the Schatten p-(quasi)norm."""
    out = np.asarray(schatten_norm(A, p)) <= 1.0
    return bool(out) if out.ndim == 0 else out
