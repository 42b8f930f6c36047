import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from schatten import asymptotics as asy
from schatten.energy import (AtomicMeasure, StepMeasure, J_functional, cell_offset_average,
                             field_energy, half_line_maximizer, measure_log_energy, mixture,
                             pairwise_log_energy, smooth_configuration, symmetrize_sqrt,
                             ullman_grid)
from schatten.errors import DomainError, InputError


def test_uniform_interval_energy():
    # int int log|x-y| on [0,1]^2 = -3/2, exact for any cell count
    for cells in (1, 7, 300):
        mu = StepMeasure.grid(0.0, 1.0, np.ones(cells))
        assert measure_log_energy(mu) == pytest.approx(-1.5, abs=1e-13)


def test_nonuniform_grid_matches_uniform():
    edges = np.sort(np.concatenate([[0, 1], np.random.default_rng(0).uniform(0, 1, 40)]))
    mu = StepMeasure(edges[:-1], edges[1:], np.ones(41))
    assert measure_log_energy(mu) == pytest.approx(-1.5, abs=1e-12)


def test_scaling_law():
    mu = StepMeasure.from_masses(np.linspace(-1, 1, 5), [1.0, 3.0, 2.0, 0.5])
    assert measure_log_energy(mu.scaled(3.0)) == pytest.approx(measure_log_energy(mu) + math.log(3), abs=1e-13)


def test_cell_offset_series_joins_exact():
    m = np.arange(1, 20, dtype=float)
    v = cell_offset_average(m)
    assert np.all(np.diff(v) > 0)
    assert v[-1] == pytest.approx(math.log(19), abs=1e-3)


@pytest.mark.parametrize("p,tol", [(1, 2e-6), (2, 2e-6), (4, 2e-6)])
def test_ullman_log_energy(p, tol):
    # E log|U-V| in closed form
    mu = ullman_grid(p, 2000)
    assert measure_log_energy(mu) == pytest.approx(-math.log(2) - 1 / (2 * p), abs=tol)


@pytest.mark.parametrize("p", [1, 2, 4])
def test_ullman_field_energy(p):
    assert field_energy(ullman_grid(p, 2000), p) == pytest.approx(math.log(2) + 1.5 / p, abs=1e-6)


@pytest.mark.parametrize("p", [1, 2, 4])
def test_half_line_maximizer_attains_sup(p):
    J = J_functional(half_line_maximizer(p, 2000), p)
    assert J <= asy.sup_J(p) + 1e-9
    assert J == pytest.approx(asy.sup_J(p), abs=5e-6)


def test_J_is_scale_free():
    mu = ullman_grid(2, 2000)
    assert J_functional(mu, 2) == pytest.approx(-0.25, abs=1e-6)
    assert J_functional(mu.scaled(0.3), 2) == pytest.approx(J_functional(mu, 2), abs=1e-12)


def test_pairwise_energy():
    assert pairwise_log_energy([0, 1, 3]) == pytest.approx((math.log(3) + math.log(2)) / 3)
    assert pairwise_log_energy([1, 1, 2]) == -math.inf
    with pytest.raises(InputError):
        pairwise_log_energy([1.0])


def test_atomic_measure_validation():
    with pytest.raises(InputError):
        AtomicMeasure([0, 1], [0.3, 0.3])
    mu = AtomicMeasure.uniform([0.0, 2.0])
    assert mu.abs_moment(2) == pytest.approx(2.0)


def test_J_zero_moment():
    with pytest.raises(DomainError):
        J_functional(AtomicMeasure([0.0], [1.0]), 1.0)


def test_symmetrize_rejects_negative():
    with pytest.raises(InputError):
        symmetrize_sqrt(AtomicMeasure([-1.0, 1.0], [0.5, 0.5]))


atoms = st.lists(st.floats(0.01, 5.0), min_size=3, max_size=12, unique=True)


@settings(max_examples=40, deadline=None)
@given(atoms, st.sampled_from([0.5, 1.0, 2.0, 4.0]))
def test_symmetrization_identity_property(locs, p):
    locs = np.sort(np.array(locs))
    if np.min(np.diff(locs)) < 1e-6:
        return
    w = np.linspace(1, 2, locs.size)
    mu = AtomicMeasure(locs, w / w.sum())
    assert J_functional(mu, p) == pytest.approx(2 * J_functional(symmetrize_sqrt(mu), 2 * p), abs=1e-10)


def test_symmetrization_of_step_measure():
    mu = half_line_maximizer(1.0, 2000)
    J = J_functional(mu, 1.0)
    sym = symmetrize_sqrt(mu)
    assert J == pytest.approx(2 * J_functional(sym, 2.0), abs=1e-6)


def test_mixture_and_shift_keep_mass():
    a = ullman_grid(2, 200)
    b = StepMeasure.grid(-1, 1, np.full(200, 0.5))
    m = mixture([a, b], [0.7, 0.3])
    assert m.masses.sum() == pytest.approx(1.0, abs=1e-12)
    assert m.shifted(0.1).cdf(0.1) == pytest.approx(m.cdf(0.0), abs=1e-12)


def test_smoothing_self_interaction():
    t = np.array([0.0, 0.4, 1.1, 2.0])
    n, eps = t.size, 1e-4
    mean_field = 2 / n**2 * sum(math.log(t[j] - t[i]) for i in range(n) for j in range(i + 1, n))
    dev = measure_log_energy(smooth_configuration(t, eps)) - mean_field
    assert dev == pytest.approx((math.log(eps) - 1.5) / n, abs=1e-3)


def test_smoothing_rejects_overlap():
    with pytest.raises(InputError):
        smooth_configuration([0.0, 0.01, 0.5], 0.1)
