"""Closed-form constants for Schatten-ball volumes.

``delta(p)`` is the limit of the discrete constants ``Delta_n(p)``;
``volume_radius_asymptote`` and ``volume_ratio_asymptote`` turn it into the
leading-order behaviour of ``Vol(B_p^n)**(1/dim)`` and of the volume ratio.
The exponent ``p = math.inf`` is handled exactly throughout.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import InputError
from .matnum import check_p


class Field(enum.Enum):
    REAL = "real"
    COMPLEX = "complex"

    @property
    def beta(self) -> int:
        """Real dimension of one scalar."""
        return 1 if self is Field.REAL else 2

    @classmethod
    def parse(cls, value) -> "Field":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InputError(f"field must be 'real' or 'complex', got {value!r}") from None


def _inv(p: float) -> float:
    return 0.0 if math.isinf(p) else 1.0 / p


def log_delta_core(p: float) -> float:
    """``log(2 sqrt(pi) Gamma(p+1) / (sqrt(e) Gamma(p+1/2)))`` in log space."""
    return (math.log(2.0) + 0.5 * math.log(math.pi) + math.lgamma(p + 1.0)
            - 0.5 - math.lgamma(p + 0.5))


def delta(p) -> float:
    """``Delta(p) = 1/4 * (2 sqrt(pi) Gamma(p+1) / (sqrt(e) Gamma(p+1/2)))**(1/p)``.

    ``Delta(inf) = 1/4``.
    """
    p = check_p(p)
    if math.isinf(p):
        return 0.25
    return 0.25 * math.exp(log_delta_core(p) / p)


def sup_J(p) -> float:
    """Supremum of the J-functional over measures on the half-line.

    ``-2 log 2 + (1/p) log(2 sqrt(pi) Gamma(p+1) / (sqrt(e) Gamma(p+1/2)))``
    """
    p = check_p(p)
    if math.isinf(p):
        raise InputError("sup_J needs a finite p")
    return -2.0 * math.log(2.0) + log_delta_core(p) / p


@dataclass(frozen=True)
class VolumeAsymptote:
    n: int
    p: float
    field: Field
    radius: float

    @property
    def dim(self) -> int:
        return self.field.beta * self.n * self.n


def volume_radius_asymptote(n: int, p, field="real") -> VolumeAsymptote:
    """Leading-order ``Vol(B_p^n)**(1/dim)``.

    ``n**(-1/2 - 1/p) * sqrt(c pi e**(3/2) Delta(p/2))`` with ``c = 2`` for
    real and ``c = 1`` for complex entries.
    """
    n = int(n)
    if n < 1:
        raise InputError("n must be positive")
    p = check_p(p)
    field = Field.parse(field)
    c = 2.0 if field is Field.REAL else 1.0
    radius = n ** (-0.5 - _inv(p)) * math.sqrt(c * math.pi * math.exp(1.5) * delta(p / 2.0))
    return VolumeAsymptote(n, p, field, radius)


def op_norm_2_to_p(n: int, p) -> float:
    """Norm of the identity from the Schatten 2-norm to the Schatten p-norm.

    ``n**(1/p - 1/2)`` for ``1 <= p < 2``, and 1 for ``p >= 2``.
    """
    n = int(n)
    if n < 1:
        raise InputError("n must be positive")
    p = check_p(p, allow_quasi=False)
    if p < 2:
        return n ** (1.0 / p - 0.5)
    return 1.0


def volume_ratio_gamma_form(n: int, p) -> float:
    """Volume-ratio asymptote written with Gamma functions only.

    ``n**max(0, 1/2 - 1/p) * 1/2 * (Gamma(p/2+1) / Gamma(p/2+1/2))**(1/p)
    * sqrt(e**(1/2 - 1/p) * (4 pi)**(1/p))``
    """
    p = check_p(p, allow_quasi=False)
    ip = _inv(p)
    if math.isinf(p):
        core = 0.0
    else:
        core = (math.lgamma(0.5 * p + 1.0) - math.lgamma(0.5 * p + 0.5)) / p
    log_val = (-math.log(2.0) + core + 0.5 * (0.5 - ip) + 0.5 * ip * math.log(4.0 * math.pi))
    if p >= 2:
        log_val += (0.5 - ip) * math.log(n)
    return math.exp(log_val)


def volume_ratio_asymptote(n: int, p, field="real", check: bool = True) -> float:
    """Leading-order volume ratio of the Schatten p-ball, ``1 <= p <= inf``.

    ``sqrt(Delta(p/2) / Delta(1))``, times ``n**(1/2 - 1/p)`` when ``p >= 2``.
    The value is the same for real and complex entries. With ``check`` the
    Gamma-function form is evaluated as well and must agree to 1e-12.
    """
    n = int(n)
    if n < 1:
        raise InputError("n must be positive")
    p = check_p(p, allow_quasi=False)
    Field.parse(field)
    value = math.sqrt(delta(p / 2.0) / delta(1.0))
    if p >= 2:
        value *= n ** (0.5 - _inv(p))
    if check:
        other = volume_ratio_gamma_form(n, p)
        if abs(other - value) > 1e-12 * max(1.0, abs(value)):
            raise ArithmeticError(f"volume-ratio forms disagree: {value!r} vs {other!r}")
    return value


def euclidean_ball_log_volume(dim: int) -> float:
    """``log(pi**(d/2) / Gamma(d/2 + 1))``."""
    return 0.5 * dim * math.log(math.pi) - math.lgamma(0.5 * dim + 1.0)


def euclidean_ball_radius(dim: int) -> float:
    """``Vol(B_2^d)**(1/d)``, exactly."""
    return math.exp(euclidean_ball_log_volume(dim) / dim)
