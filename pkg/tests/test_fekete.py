import math

import numpy as np
import pytest

from schatten import asymptotics as asy
from schatten.errors import DomainError, InputError
from schatten.fekete import delta_sequence, extrapolate, maximize, objective


@pytest.mark.parametrize("p", [0.5, 1.0, 2.0, 4.0])
def test_two_points(p):
    sol = maximize(2, p)
    assert sol.log_delta_n == pytest.approx(math.log(2) / p, abs=1e-12)
    assert sol.converged
    assert sol.points[0] == 0.0


def _brute_force_n3(p, size=1200):
    # scale invariance and t1 = 0 leave one free ratio t2/t3
    r = np.linspace(1e-6, 1 - 1e-6, size)
    vals = (np.log(r) + np.log(1 - r)) / 3 - np.log((r**p + 1) / 3) / p
    k = int(np.argmax(vals))
    fine = np.linspace(r[max(k - 1, 0)], r[min(k + 1, size - 1)], size)
    return float(np.max((np.log(fine) + np.log(1 - fine)) / 3 - np.log((fine**p + 1) / 3) / p))


@pytest.mark.parametrize("p", [1.0, 2.0])
def test_three_points_brute_force(p):
    assert maximize(3, p).log_delta_n == pytest.approx(_brute_force_n3(p), abs=1e-9)


def test_three_points_all_free():
    # a coarse grid over (t1, t2, t3) never beats the optimizer
    g = np.linspace(0, 2, 41)
    best = max(objective([a, b, c], 2.0) for a in g[:10] for b in g for c in g if a < b < c)
    assert maximize(3, 2.0).log_delta_n >= best - 1e-12


def test_first_point_settles_at_origin():
    pinned = maximize(8, 1.0)
    free = maximize(8, 1.0, pin_first=False)
    assert free.points[0] < 1e-6
    assert free.log_delta_n == pytest.approx(pinned.log_delta_n, abs=1e-9)


def test_normalization_and_order():
    sol = maximize(10, 3.0)
    assert np.mean(sol.points**3) == pytest.approx(1.0, abs=1e-12)
    assert np.all(np.diff(sol.points) > 0)


@pytest.mark.parametrize("p", [0.5, 1.0, 2.0, 4.0])
def test_sequence_monotone_and_above_limit(p):
    seq = delta_sequence(p, 16)
    assert seq.is_monotone(1e-7)
    assert np.all(seq.deltas >= asy.delta(p) - 1e-7)
    assert np.all(seq.converged)


def test_extrapolation_recovers_synthetic_limit():
    ns = np.arange(10, 60)
    logs = math.log(0.4) + 0.7 * np.log(ns) / ns - 0.2 / ns
    limit, coef = extrapolate(ns, logs)
    assert limit == pytest.approx(0.4, rel=1e-12)
    assert coef[1] == pytest.approx(0.7)


def test_objective_errors():
    with pytest.raises(DomainError):
        objective([0.0, 0.0], 1.0)
    with pytest.raises(InputError):
        objective([-1.0, 1.0], 1.0)
    assert objective([1.0, 1.0, 2.0], 1.0) == -math.inf
    with pytest.raises(InputError):
        maximize(1, 1.0)


def test_restarts_reproducible():
    a = maximize(7, 1.5, seed=11, restarts=3)
    b = maximize(7, 1.5, seed=11, restarts=3)
    assert np.array_equal(a.points, b.points)
