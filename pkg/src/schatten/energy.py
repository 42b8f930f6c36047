"""Logarithmic energy functionals on probability measures.

Two measure representations are supported:

``AtomicMeasure``
    Finitely many weighted atoms. The diagonal of the log kernel is
    ``-inf`` there, so atomic energies only sum over *cross* pairs: pairs of
    atoms that carry different ``groups`` labels. By default every atom is
    its own group.

``StepMeasure``
    A piecewise-constant density on finitely many disjoint intervals
    ("pieces"). The log energy of such a density is computed exactly, piece
    pair by piece pair, from the closed-form double antiderivative of
    ``log|x - y|``. A uniform contiguous grid is the common special case and
    is evaluated as a Toeplitz quadratic form through the FFT.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InputError
from .ullman import Ullman

_MASS_TOL = 1e-8
_ATOM_MASS_TOL = 1e-12
_SERIES_FROM = 8
_FAR_RATIO = 0.1


# -- measures ----------------------------------------------------------------


@dataclass(frozen=True)
class AtomicMeasure:
    """Weighted atoms; ``groups`` marks atoms whose mutual pairs are skipped."""

    locations: np.ndarray
    weights: np.ndarray
    groups: np.ndarray = field(default=None)

    def __post_init__(self):
        loc = np.atleast_1d(np.asarray(self.locations, dtype=float))
        w = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if loc.shape != w.shape or loc.ndim != 1:
            raise InputError("locations and weights must be 1-D arrays of equal length")
        if not (np.all(np.isfinite(loc)) and np.all(np.isfinite(w))):
            raise InputError("atoms must be finite")
        if np.any(w < 0) or abs(w.sum() - 1.0) > _ATOM_MASS_TOL:
            raise InputError(f"weights must be non-negative and sum to 1 (sum={w.sum()!r})")
        g = np.arange(loc.size) if self.groups is None else np.asarray(self.groups)
        if g.shape != loc.shape:
            raise InputError("groups must match locations in length")
        object.__setattr__(self, "locations", loc)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "groups", g)

    @classmethod
    def uniform(cls, locations):
        locations = np.asarray(locations, dtype=float)
        return cls(locations, np.full(locations.size, 1.0 / locations.size))

    def scaled(self, a: float) -> "AtomicMeasure":
        """Pushforward under ``x -> a x``."""
        return AtomicMeasure(a * self.locations, self.weights, self.groups)

    def abs_moment(self, p: float) -> float:
        return float(np.dot(self.weights, np.abs(self.locations) ** p))


@dataclass(frozen=True)
class StepMeasure:
    """Piecewise-constant probability density on disjoint sorted intervals."""

    left: np.ndarray
    right: np.ndarray
    density: np.ndarray

    def __post_init__(self):
        lo = np.atleast_1d(np.asarray(self.left, dtype=float))
        hi = np.atleast_1d(np.asarray(self.right, dtype=float))
        rho = np.atleast_1d(np.asarray(self.density, dtype=float))
        if not (lo.shape == hi.shape == rho.shape) or lo.ndim != 1:
            raise InputError("left, right and density must be 1-D arrays of equal length")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi)) and np.all(np.isfinite(rho))):
            raise InputError("step measure has non-finite entries")
        if np.any(hi <= lo) or np.any(lo[1:] < hi[:-1]):
            raise InputError("pieces must have positive length, be sorted and not overlap")
        if np.any(rho < 0):
            raise InputError("density must be non-negative")
        mass = float(np.dot(rho, hi - lo))
        if abs(mass - 1.0) > _MASS_TOL:
            raise InputError(f"total mass must be 1, got {mass!r}")
        object.__setattr__(self, "left", lo)
        object.__setattr__(self, "right", hi)
        object.__setattr__(self, "density", rho)

    @classmethod
    def grid(cls, a: float, b: float, density) -> "StepMeasure":
        """Uniform grid on ``[a, b]`` with one density value per cell."""
        density = np.asarray(density, dtype=float)
        edges = np.linspace(a, b, density.size + 1)
        return cls(edges[:-1], edges[1:], density)

    @classmethod
    def from_masses(cls, edges, masses) -> "StepMeasure":
        """Cells ``[edges[k], edges[k+1]]`` carrying ``masses[k]``, renormalized."""
        edges = np.asarray(edges, dtype=float)
        masses = np.asarray(masses, dtype=float)
        masses = masses / masses.sum()
        return cls(edges[:-1], edges[1:], masses / np.diff(edges))

    @property
    def widths(self) -> np.ndarray:
        return self.right - self.left

    @property
    def masses(self) -> np.ndarray:
        return self.density * self.widths

    @property
    def is_uniform_grid(self) -> bool:
        w = self.widths
        contiguous = np.array_equal(self.left[1:], self.right[:-1])
        return bool(contiguous and np.allclose(w, w[0], rtol=1e-12, atol=0.0))

    def scaled(self, a: float) -> "StepMeasure":
        """Pushforward under ``x -> a x`` for ``a > 0``."""
        if a <= 0:
            raise InputError("scale factor must be positive")
        return StepMeasure(a * self.left, a * self.right, self.density / a)

    def shifted(self, c: float) -> "StepMeasure":
        return StepMeasure(self.left + c, self.right + c, self.density)

    def cdf(self, x):
        """Exact distribution function of the step density."""
        x = np.asarray(x, dtype=float)
        inside = np.clip(x[..., None], self.left, self.right) - self.left
        return np.sum(inside * self.density, axis=-1)

    def abs_moment(self, p: float) -> float:
        """``integral |x|**p dmu``, exact per piece."""
        def anti(x):
            return np.sign(x) * np.abs(x) ** (p + 1.0) / (p + 1.0)
        return float(np.dot(self.density, anti(self.right) - anti(self.left)))


def mixture(parts, weights) -> StepMeasure:
    """Convex combination of step measures defined on one common grid."""
    first = parts[0]
    for m in parts[1:]:
        if not (np.array_equal(m.left, first.left) and np.array_equal(m.right, first.right)):
            raise InputError("mixture components must share their pieces")
    rho = sum(w * m.density for w, m in zip(weights, parts))
    return StepMeasure(first.left, first.right, rho)


def grid_from_cdf(cdf, edges) -> StepMeasure:
    """Step measure whose cell masses are the exact increments of ``cdf``."""
    edges = np.asarray(edges, dtype=float)
    F = np.asarray(cdf(edges), dtype=float)
    return StepMeasure.from_masses(edges, np.maximum(np.diff(F), 0.0))


def ullman_grid(p: float, cells: int = 2000, scale: float = 1.0) -> StepMeasure:
    """Cell-mass-exact step approximation of Ullman(p) scaled to ``[-scale, scale]``."""
    if cells % 2:
        raise InputError("use an even number of cells so that 0 is a grid edge")
    dist = Ullman(p)
    half = np.linspace(0.0, 1.0, cells // 2 + 1)
    upper = np.array([dist.upper_half_mass(v) for v in half])
    m = np.diff(upper)
    edges = np.linspace(-1.0, 1.0, cells + 1)
    return StepMeasure.from_masses(edges, np.concatenate([m[::-1], m])).scaled(scale)


def half_line_maximizer(p: float, cells: int = 2000) -> StepMeasure:
    """Law of ``U**2``, ``U ~ Ullman(2p)``, as a step measure on ``[0, 1]``.

    This maximizes ``J_functional(., p)`` among measures on the half-line.
    Cell edges are squares of a uniform grid, so each cell is the image of a
    uniform ``|U|`` cell and carries its exact mass.
    """
    dist = Ullman(2.0 * p)
    root = np.linspace(0.0, 1.0, cells + 1)
    upper = np.array([dist.upper_half_mass(v) for v in root])
    return StepMeasure.from_masses(root * root, np.diff(upper))


# -- interaction kernels -------------------------------------------------------


def _g(z):
    """Second antiderivative of log|z|, normalized to vanish at 0."""
    z = np.abs(np.asarray(z, dtype=float))
    with np.errstate(divide="ignore", invalid="ignore"):
        out = 0.5 * z * z * np.log(z) - 0.75 * z * z
    return np.where(z == 0, 0.0, out)


def cell_offset_average(m):
    """Mean of ``log|x - y|`` over two unit cells ``m`` cells apart.

    Exact second differences for small offsets; for ``m >= 8`` the series
    ``log m - sum_k 1/(k (2k+1) (2k+2) m**(2k))`` avoids cancellation.
    """
    m = np.abs(np.asarray(m, dtype=float))
    near = _g(m + 1.0) - 2.0 * _g(m) + _g(m - 1.0)
    with np.errstate(divide="ignore"):
        inv2 = 1.0 / np.maximum(m, 1.0) ** 2
        far = np.log(np.maximum(m, 1.0))
    term = np.ones_like(m)
    for k in range(1, 10):
        term = term * inv2
        far = far - term / (k * (2 * k + 1) * (2 * k + 2))
    return np.where(m < _SERIES_FROM, near, far)


def _pair_average(a, b, c, d):
    """Mean of ``log|x - y|`` for x uniform on [a, b], y uniform on [c, d].

    Arrays broadcast. Close pairs use the exact antiderivative; well separated
    pairs expand ``log|D + Z|`` around the midpoint gap ``D`` in even moments
    of ``Z``, which sidesteps the cancellation in the antiderivative.
    """
    wi, wj = b - a, d - c
    gap = 0.5 * (c + d) - 0.5 * (a + b)
    with np.errstate(divide="ignore", invalid="ignore"):
        exact = (_g(d - a) - _g(d - b) - _g(c - a) + _g(c - b)) / (wi * wj)
        h2, k2 = wi * wi, wj * wj
        z2 = (h2 + k2) / 12.0
        z4 = (h2 * h2 + k2 * k2) / 80.0 + h2 * k2 / 24.0
        z6 = (h2**3 + k2**3) / 448.0 + (h2 * h2 * k2 + h2 * k2 * k2) / 64.0
        inv = 1.0 / (gap * gap)
        far = np.log(np.abs(gap)) - inv * (z2 / 2.0 + inv * (z4 / 4.0 + inv * z6 / 6.0))
    use_far = (wi + wj) < _FAR_RATIO * np.abs(gap)
    return np.where(use_far, far, exact)


# -- energies ------------------------------------------------------------------


def pairwise_log_energy(points) -> float:
    """``2/(n(n-1)) * sum_{i<j} log|t_i - t_j|``; ``-inf`` on coincident points."""
    t = np.asarray(points, dtype=float).ravel()
    n = t.size
    if n < 2:
        raise InputError("need at least two points")
    i, j = np.triu_indices(n, 1)
    with np.errstate(divide="ignore"):
        logs = np.log(np.abs(t[i] - t[j]))
    return float(2.0 / (n * (n - 1)) * math.fsum(logs))


def atomic_log_energy(mu: AtomicMeasure) -> float:
    """``sum w_i w_j log|x_i - x_j|`` over ordered pairs from different groups."""
    x, w, g = mu.locations, mu.weights, mu.groups
    cross = g[:, None] != g[None, :]
    d = np.abs(x[:, None] - x[None, :])
    ww = w[:, None] * w[None, :]
    active = cross & (ww > 0)
    if np.any(d[active] == 0):
        return -math.inf
    return float(math.fsum((ww[active] * np.log(d[active])).ravel()))


def _toeplitz_energy(masses: np.ndarray, h: float) -> float:
    n = masses.size
    kernel = cell_offset_average(np.arange(-(n - 1), n))
    size = 1 << int(np.ceil(np.log2(3 * n - 2)))
    conv = np.fft.irfft(np.fft.rfft(masses, size) * np.fft.rfft(kernel, size), size)
    # entry n-1+k of the full convolution pairs cell k with all others
    field_ = conv[n - 1:2 * n - 1]
    return float(math.log(h) * masses.sum() ** 2 + np.dot(masses, field_))


def _general_energy(mu: StepMeasure, block: int = 512) -> float:
    m = mu.masses
    lo, hi = mu.left, mu.right
    n = m.size
    parts = []
    for s in range(0, n, block):
        sl = slice(s, min(s + block, n))
        avg = _pair_average(lo[sl, None], hi[sl, None], lo[None, :], hi[None, :])
        parts.append(float(np.dot(m[sl], avg @ m)))
    return math.fsum(parts)


def measure_log_energy(mu: StepMeasure) -> float:
    """``integral integral log|x - y| dmu(x) dmu(y)`` for a step density.

    Raises
    ------
    InputError
        For atomic input, whose diagonal is ``-inf``; use
        ``pairwise_log_energy`` or ``atomic_log_energy`` there.
    """
    if isinstance(mu, AtomicMeasure):
        raise InputError("atomic measures have infinite self-energy; "
                         "use pairwise_log_energy / atomic_log_energy")
    if not isinstance(mu, StepMeasure):
        raise InputError(f"expected StepMeasure, got {type(mu).__name__}")
    keep = mu.density > 0
    if not np.all(keep):
        mu = StepMeasure(mu.left[keep], mu.right[keep], mu.density[keep])
    if mu.is_uniform_grid:
        return _toeplitz_energy(mu.masses, float(mu.widths[0]))
    return _general_energy(mu)


def _log_energy(mu) -> float:
    if isinstance(mu, AtomicMeasure):
        return atomic_log_energy(mu)
    return measure_log_energy(mu)


def J_functional(mu, p: float) -> float:
    """Log energy minus ``(1/p) log integral |x|**p dmu``.

    Scale invariant. Atomic measures use the cross-pair energy.

    Raises
    ------
    DomainError
        If ``mu`` is the point mass at the origin.
    """
    if not p > 0:
        raise InputError("p must be positive")
    moment = mu.abs_moment(p)
    if moment <= 0:
        raise DomainError("the point mass at 0 is excluded (zero p-th moment)")
    return _log_energy(mu) - math.log(moment) / p


def field_constant(p: float) -> float:
    """Coefficient of ``|x|**p`` in the field whose equilibrium law is Ullman(p)."""
    return math.exp(0.5 * math.log(math.pi) + math.lgamma(0.5 * p)
                    - math.log(2.0) - math.lgamma(0.5 * (p + 1.0)))


def external_field(x, p: float):
    """``Q_p(x) = field_constant(p) * |x|**p``."""
    return field_constant(p) * np.abs(x) ** p


def field_energy(mu: StepMeasure, p: float) -> float:
    """``-integral integral log|x - y| dmu dmu + 2 integral Q_p dmu``.

    The Ullman law is the unique minimizer, with value ``log 2 + 3/(2p)``.
    """
    return -measure_log_energy(mu) + 2.0 * field_constant(p) * mu.abs_moment(p)


# -- constructions -------------------------------------------------------------


def symmetrize_sqrt(mu, cells: int | None = None):
    """Law of ``eps * sqrt(V)`` for ``V ~ mu`` on ``[0, inf)`` and a fair sign ``eps``.

    Atomic input maps ``(t, w)`` to ``(sqrt t, w/2)`` and ``(-sqrt t, w/2)``;
    both images keep the group label of their source atom, so pairs that came
    from the same atom stay excluded from the energy. Step input is returned
    on a uniform symmetric grid of ``cells`` cells whose masses are the exact
    pushforward masses.
    """
    if isinstance(mu, AtomicMeasure):
        if np.any(mu.locations < 0):
            raise InputError("support must lie in [0, inf)")
        r = np.sqrt(mu.locations)
        return AtomicMeasure(np.concatenate([-r, r]),
                             np.concatenate([mu.weights, mu.weights]) / 2.0,
                             np.concatenate([mu.groups, mu.groups]))
    if np.any(mu.left < 0):
        raise InputError("support must lie in [0, inf)")
    if cells is None:
        cells = 2 * mu.density.size
    if cells % 2:
        raise InputError("cells must be even")
    top = math.sqrt(float(mu.right[-1]))
    half = np.linspace(0.0, top, cells // 2 + 1)
    m = 0.5 * np.diff(mu.cdf(half * half))
    return StepMeasure.from_masses(np.linspace(-top, top, cells + 1),
                                   np.concatenate([m[::-1], m]))


def smooth_configuration(points, eps: float) -> StepMeasure:
    """Uniform law on ``[t_1, t_1 + eps]`` and ``[t_i - eps, t_i]``, ``i >= 2``.

    Each of the ``n`` intervals carries mass ``1/n``. With ``t_1 = 0`` this is
    the smoothing used to pass from point configurations to densities.

    Raises
    ------
    InputError
        If the points are unsorted, negative, or too close for the intervals
        to be disjoint.
    """
    t = np.asarray(points, dtype=float).ravel()
    n = t.size
    if not eps > 0:
        raise InputError("eps must be positive")
    if n < 2 or np.any(t < 0) or np.any(np.diff(t) < 0):
        raise InputError("need at least two sorted non-negative points")
    left = np.concatenate([[t[0]], t[1:] - eps])
    right = np.concatenate([[t[0] + eps], t[1:]])
    if np.any(left[1:] <= right[:-1]):
        raise InputError("points too close: smoothing intervals overlap")
    return StepMeasure(left, right, np.full(n, 1.0 / (n * eps)))
