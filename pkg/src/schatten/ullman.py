"""The Ullman distribution on [-1, 1].

The density with parameter ``p > 0`` is

    h_p(x) = (p / pi) * integral_{|x|}^{1} t**(p-1) / sqrt(t**2 - x**2) dt,

the equilibrium law of the external field proportional to ``|x|**p``. For
``p = 2`` it is the semicircle law ``(2/pi) sqrt(1 - x**2)``.
"""

from __future__ import annotations

import math

import numpy as np

from ._quad import adaptive_gl
from .errors import InputError

_DENSITY_TOL = 1e-13
_CDF_TOL = 1e-13


def _check_param(p) -> float:
    try:
        p = float(p)
    except (TypeError, ValueError):
        raise InputError(f"Ullman parameter must be a positive real, got {p!r}") from None
    if not (p > 0 and math.isfinite(p)):
        raise InputError(f"Ullman parameter must be finite and positive, got {p}")
    return p


class Ullman:
    """Ullman law with parameter ``p``.

    Parameters
    ----------
    p : float
        Positive, finite shape parameter.

    Examples
    --------
    >>> u = Ullman(2)
    >>> round(u.density(0.0), 6)
    0.63662
    """

    def __init__(self, p):
        self.p = _check_param(p)

    def __repr__(self):
        return f"Ullman(p={self.p!r})"

    # -- density ---------------------------------------------------------

    def _density_scalar(self, x: float) -> float:
        p = self.p
        a = abs(x)
        if a >= 1.0:
            return 0.0
        if a == 0.0:
            return p / (math.pi * (p - 1.0)) if p > 1.0 else math.inf
        # s = sqrt(t^2 - x^2) removes the inverse square-root endpoint singularity
        upper = math.sqrt((1.0 - a) * (1.0 + a))
        expo = 0.5 * (p - 2.0)
        a2 = a * a
        brk = [a * 2.0**k for k in range(0, 8) if a * 2.0**k < upper]
        val = adaptive_gl(lambda s: (s * s + a2) ** expo, 0.0, upper,
                          abstol=_DENSITY_TOL, reltol=_DENSITY_TOL, breakpoints=brk)
        return (p / math.pi) * val

    def density(self, x):
        """Density ``h_p(x)``; zero off ``(-1, 1)``, ``+inf`` at 0 when ``p <= 1``."""
        if np.ndim(x) == 0:
            return self._density_scalar(float(x))
        x = np.asarray(x, dtype=float)
        return np.array([self._density_scalar(v) for v in x.ravel()]).reshape(x.shape)

    # -- distribution function -------------------------------------------

    def upper_half_mass(self, a: float) -> float:
        """P(0 <= U <= a) for 0 <= a <= 1, by swapping the defining integrals.

        integral_0^a h_p = a**p / 2 + (p/pi) integral_a^1 t**(p-1) asin(a/t) dt
        """
        if a <= 0.0:
            return 0.0
        if a >= 1.0:
            return 0.5
        p = self.p
        # t = a + (1 - a) u^2 smooths the square-root kink of asin at t = a
        span = 1.0 - a

        def integrand(u):
            t = a + span * u * u
            return t ** (p - 1.0) * np.arcsin(np.minimum(a / t, 1.0)) * (2.0 * span * u)

        brk = [math.sqrt(a * 2.0**k / span) for k in range(-2, 8)
               if 0.0 < math.sqrt(a * 2.0**k / span) < 1.0]
        tail = adaptive_gl(integrand, 0.0, 1.0, abstol=_CDF_TOL, reltol=_CDF_TOL, breakpoints=brk)
        return 0.5 * a**p + (p / math.pi) * tail

    def _cdf_scalar(self, x: float) -> float:
        if x <= -1.0:
            return 0.0
        if x >= 1.0:
            return 1.0
        half = self.upper_half_mass(abs(x))
        return 0.5 + half if x >= 0 else 0.5 - half

    def cdf(self, x):
        """P(U <= x)."""
        if np.ndim(x) == 0:
            return self._cdf_scalar(float(x))
        x = np.asarray(x, dtype=float)
        return np.array([self._cdf_scalar(v) for v in x.ravel()]).reshape(x.shape)

    def quantile(self, q, tol: float = 1e-12) -> float:
        """Inverse distribution function by bisection.

        Bisection runs until ``|cdf(x) - q| <= tol`` or the bracket collapses
        to adjacent doubles.

        Raises
        ------
        InputError
            If ``q`` is not strictly inside (0, 1).
        """
        q = float(q)
        if not 0.0 < q < 1.0:
            raise InputError(f"quantile level must lie in (0, 1), got {q}")
        if q == 0.5:
            return 0.0
        # work on the upper half and reflect: U is symmetric
        target = abs(q - 0.5)
        lo, hi = 0.0, 1.0
        while True:
            mid = 0.5 * (lo + hi)
            if not lo < mid < hi:
                break
            val = self.upper_half_mass(mid)
            if abs(val - target) <= tol:
                lo = hi = mid
                break
            if val < target:
                lo = mid
            else:
                hi = mid
        x = 0.5 * (lo + hi)
        return x if q > 0.5 else -x

    # -- sampling ----------------------------------------------------------

    def sample(self, rng: np.random.Generator, size=None):
        """Draw ``cos(pi W) * V**(1/p)`` with ``W, V`` independent uniforms.

        Given ``V**(1/p) = t`` the first factor is arcsine-distributed on
        ``[-t, t]``; mixing over ``t`` with density ``p t**(p-1)`` reproduces
        ``h_p``.
        """
        w = rng.random(size)
        v = rng.random(size)
        return np.cos(np.pi * w) * v ** (1.0 / self.p)

    # -- closed-form functionals -------------------------------------------

    def abs_moment(self) -> float:
        """E|U|**p = Gamma((p+1)/2) / (2 sqrt(pi) Gamma((p+2)/2))."""
        p = self.p
        return math.exp(math.lgamma(0.5 * (p + 1.0)) - math.lgamma(0.5 * (p + 2.0))) / (
            2.0 * math.sqrt(math.pi))

    def log_distance_expectation(self) -> float:
        """E log|U - V| for independent U, V; equals -log 2 - 1/(2p)."""
        return -math.log(2.0) - 0.5 / self.p

    # -- quadrature cross-checks -------------------------------------------

    def expect(self, f, tol: float = 1e-12) -> float:
        """integral_{-1}^{1} f(x) h_p(x) dx by nested quadrature of the density.

        ``f`` must be even and vectorized. Uses ``x = u**m`` on [0, 1] so the
        ``x**(p-1)`` blow-up of the density at the origin (``p < 1``) becomes
        bounded.
        """
        m = max(1.0, math.ceil(2.0 / self.p))

        def integrand(u):
            x = u**m
            return f(x) * self.density(x) * m * u ** (m - 1.0)

        return 2.0 * adaptive_gl(integrand, 0.0, 1.0, abstol=tol, reltol=tol)

    def abs_moment_quadrature(self) -> float:
        """E|U|**p by direct quadrature of the density."""
        return self.expect(lambda x: x**self.p)

    def log_distance_mc(self, rng: np.random.Generator, pairs: int, chunk: int = 1_000_000):
        """Monte-Carlo estimate of E log|U - V|; returns ``(mean, stderr)``."""
        total = 0.0
        total_sq = 0.0
        done = 0
        while done < pairs:
            k = min(chunk, pairs - done)
            d = np.log(np.abs(self.sample(rng, k) - self.sample(rng, k)))
            total += d.sum()
            total_sq += (d * d).sum()
            done += k
        mean = total / pairs
        var = max(total_sq / pairs - mean * mean, 0.0) * pairs / (pairs - 1)
        return mean, math.sqrt(var / pairs)


def _cdf_grid(dist: Ullman, size: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes on [0, 1] spaced so that cdf increments are roughly even."""
    gamma = max(1.0, 1.0 / dist.p) + 1.0
    u = np.linspace(0.0, 1.0, size)
    x = u**gamma
    # refine toward x = 1 where the density vanishes like a square root
    x = np.unique(np.concatenate([x, 1.0 - (1.0 - u) ** 2]))
    F = np.array([dist.upper_half_mass(v) for v in x]) + 0.5
    return x, F


def ks_distance(dist: Ullman, draws, grid_size: int = 2001) -> float:
    """Upper bound on the Kolmogorov-Smirnov distance of ``draws`` from ``dist``.

    The exact CDF is evaluated on a symmetric grid; between grid nodes the
    bound uses monotonicity of both distribution functions, so the returned
    value is never below the true statistic and exceeds it by at most the
    largest CDF increment between consecutive nodes.
    """
    draws = np.sort(np.asarray(draws, dtype=float))
    m = draws.size
    xp, Fp = _cdf_grid(dist, grid_size)
    x = np.concatenate([-xp[:0:-1], xp])
    F = np.concatenate([1.0 - Fp[:0:-1], Fp])
    F[0], F[-1] = 0.0, 1.0
    below = np.searchsorted(draws, x, side="left") / m   # F_emp(x-)
    upto = np.searchsorted(draws, x, side="right") / m   # F_emp(x)
    # for y in [x_k, x_{k+1}): F_emp(y) - F(y) <= F_emp(x_{k+1}-) - F(x_k)
    over = below[1:] - F[:-1]
    under = F[1:] - upto[:-1]
    return float(max(over.max(), under.max(), np.max(np.abs(upto - F))))
