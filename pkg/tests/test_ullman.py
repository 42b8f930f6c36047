import math

import numpy as np
import pytest

from schatten.errors import InputError
from schatten.rng import stream
from schatten.ullman import Ullman, ks_distance


@pytest.mark.parametrize("p", [0.5, 1.0, 2.0, 4.0])
def test_moment_quadrature_matches_gamma_formula(p):
    d = Ullman(p)
    ref = math.gamma((p + 1) / 2) / (2 * math.sqrt(math.pi) * math.gamma(p / 2 + 1))
    assert d.abs_moment() == pytest.approx(ref, rel=1e-14)
    assert abs(d.abs_moment_quadrature() - ref) < 1e-10


def test_semicircle():
    x = np.linspace(-0.999, 0.999, 101)
    ref = 2 / math.pi * np.sqrt(1 - x * x)
    assert np.max(np.abs(Ullman(2).density(x) - ref)) < 1e-12


def test_p1_closed_form():
    # h_1(x) = (1/pi) log((1 + sqrt(1-x^2)) / |x|)
    x = np.array([0.01, 0.3, 0.7, 0.99])
    ref = np.log((1 + np.sqrt(1 - x * x)) / x) / math.pi
    assert np.allclose(Ullman(1).density(x), ref, rtol=1e-12)


@pytest.mark.parametrize("p", [0.5, 1.0, 3.0])
def test_density_integrates_to_one_and_is_even(p):
    d = Ullman(p)
    assert d.expect(lambda x: np.ones_like(x)) == pytest.approx(1.0, abs=1e-10)
    x = np.array([0.1, 0.5, 0.9])
    assert np.allclose(d.density(x), d.density(-x), rtol=0, atol=0)
    assert np.all(d.density(np.array([1.0, 1.5, -2.0])) == 0)


def test_density_at_origin():
    assert Ullman(3).density(0.0) == pytest.approx(3 / (2 * math.pi), rel=1e-14)
    assert math.isinf(Ullman(0.5).density(0.0))


@pytest.mark.parametrize("p", [0.5, 2.0])
def test_cdf_and_quantile(p):
    d = Ullman(p)
    assert d.cdf(-1.0) == 0.0 and d.cdf(1.0) == 1.0
    assert d.cdf(0.0) == pytest.approx(0.5, abs=1e-15)
    for q in (0.01, 0.3, 0.77):
        assert d.cdf(d.quantile(q)) == pytest.approx(q, abs=1e-10)


def test_quantile_rejects_bad_level():
    with pytest.raises(InputError):
        Ullman(1).quantile(1.5)


def test_bad_parameter():
    with pytest.raises(InputError):
        Ullman(-1)


def test_sampler_is_seeded_and_in_range():
    a = Ullman(2).sample(stream(7, 0), 1000)
    b = Ullman(2).sample(stream(7, 0), 1000)
    assert np.array_equal(a, b)
    assert np.all(np.abs(a) <= 1)


def test_ks_small_for_sampler():
    d = Ullman(1.5)
    assert ks_distance(d, d.sample(stream(0, 9), 200_000)) < 0.005


def test_ks_detects_wrong_law():
    draws = Ullman(4).sample(stream(0, 3), 100_000)
    assert ks_distance(Ullman(0.5), draws) > 0.05


def test_log_distance_mc():
    d = Ullman(1)
    mean, se = d.log_distance_mc(stream(1, 1), 200_000)
    assert abs(mean - (-math.log(2) - 0.5)) < 4 * se
