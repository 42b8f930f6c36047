import math
import warnings

import numpy as np
import pytest

from schatten.errors import InputError
from schatten.matnum import schatten_norm
from schatten.mcvol import (DegenerateEstimateWarning, radius_convergence_table,
                            sample_uniform_euclidean_ball, singular_value_quadrature,
                            volume_ratio_mc)
from schatten.rng import stream


def test_samples_inside_unit_ball():
    A = sample_uniform_euclidean_ball(3, "complex", stream(0, 0), 5000)
    assert A.shape == (5000, 3, 3) and np.iscomplexobj(A)
    assert np.all(schatten_norm(A, 2) <= 1.0 + 1e-12)


def test_radial_law():
    A = sample_uniform_euclidean_ball(2, "real", stream(1, 0), 100_000)
    r = schatten_norm(A, 2)
    # P(|x| <= 1/2) = 2**-4 in dimension 4
    assert np.mean(r <= 0.5) == pytest.approx(1 / 16, abs=3e-3)


@pytest.mark.parametrize("field,p,ref", [
    ("real", 1.0, 0.5), ("real", math.inf, 4 / 3), ("complex", 1.0, 0.2), ("complex", math.inf, 2.0),
])
def test_quadrature_rational_values(field, p, ref):
    assert singular_value_quadrature(2, p, field) == pytest.approx(ref, rel=1e-9)


def test_quadrature_p2_is_one():
    assert singular_value_quadrature(3, 2.0, "real") == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("field", ["real", "complex"])
@pytest.mark.parametrize("p", [1.0, 3.0])
def test_mc_against_quadrature(field, p):
    est = volume_ratio_mc(2, p, field, 200_000, seed=3)
    assert abs(est.value - singular_value_quadrature(2, p, field)) < 4 * est.stderr


def test_n1_and_p2_exact():
    for p in (0.7, 1.0, math.inf):
        assert volume_ratio_mc(1, p, "complex", 5000).value == 1.0
    assert volume_ratio_mc(3, 2.0, "real", 5000).value == 1.0


def test_thread_count_does_not_change_result():
    a = volume_ratio_mc(2, 1.5, "real", 30_000, seed=9, threads=1, chunk=7000)
    b = volume_ratio_mc(2, 1.5, "real", 30_000, seed=9, threads=3, chunk=7000)
    assert a == b


def test_degenerate_warning():
    with pytest.warns(DegenerateEstimateWarning):
        est = volume_ratio_mc(4, 0.1, "real", 1000)
    assert est.degenerate and est.hits == 0


def test_input_checks():
    with pytest.raises(InputError):
        volume_ratio_mc(2, 1.0, samples=10)
    with pytest.raises(InputError):
        singular_value_quadrature(4, 1.0)


def test_radius_table_p2_exact():
    rows = radius_convergence_table(2.0, "real", n_list=(1, 2, 3), samples=2000)
    for row in rows:
        assert row.estimate.value == 1.0
    ratios = [r.ratio for r in rows]
    assert abs(ratios[-1] - 1) < abs(ratios[0] - 1)
