import math

import pytest

from schatten import asymptotics as asy
from schatten.errors import InputError


def test_anchors():
    assert asy.delta(1) == pytest.approx(math.exp(-0.5), abs=1e-15)
    assert asy.delta(math.inf) == 0.25
    assert asy.delta(2) == pytest.approx(0.4496408418, abs=1e-10)


@pytest.mark.parametrize("p,tol", [(1e3, 2e-3), (1e6, 2e-6)])
def test_delta_tends_to_quarter(p, tol):
    assert abs(asy.delta(p) - 0.25) < tol


def test_delta_is_decreasing():
    vals = [asy.delta(p) for p in (0.1, 0.5, 1, 2, 5, 50)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_sup_J_consistent():
    for p in (0.2, 1, 7.5):
        assert math.log(asy.delta(p)) == pytest.approx(asy.sup_J(p), abs=1e-14)
    with pytest.raises(InputError):
        asy.sup_J(math.inf)


def test_radius_at_p2():
    r = asy.volume_radius_asymptote(7, 2, "real")
    assert r.radius * 7 == pytest.approx(math.sqrt(2 * math.pi * math.e), rel=1e-14)
    assert r.dim == 49
    c = asy.volume_radius_asymptote(7, 2, "complex")
    assert c.radius / r.radius == pytest.approx(1 / math.sqrt(2), rel=1e-14)


def test_op_norm():
    assert asy.op_norm_2_to_p(4, 1) == pytest.approx(2.0)
    assert asy.op_norm_2_to_p(4, 3) == 1.0
    assert asy.op_norm_2_to_p(4, math.inf) == 1.0
    with pytest.raises(InputError):
        asy.op_norm_2_to_p(4, 0.5)


def test_volume_ratio_values():
    assert asy.volume_ratio_asymptote(9, 2) == pytest.approx(1.0, abs=1e-15)
    assert asy.volume_ratio_asymptote(1, 1) == pytest.approx(math.pi / (2 * math.exp(0.25)), abs=1e-14)
    assert asy.volume_ratio_asymptote(4, math.inf) == pytest.approx(math.exp(0.25), rel=1e-14)
    with pytest.raises(InputError):
        asy.volume_ratio_asymptote(3, 0.5)


@pytest.mark.parametrize("p", [1, 1.3, 2, 2.5, 10, math.inf])
def test_gamma_form_agrees(p):
    for n in (1, 3, 40):
        assert asy.volume_ratio_gamma_form(n, p) == pytest.approx(asy.volume_ratio_asymptote(n, p), rel=1e-13)


def test_field_parse():
    assert asy.Field.parse("Complex") is asy.Field.COMPLEX
    with pytest.raises(InputError):
        asy.Field.parse("quaternion")


def test_euclidean_radius_against_stirling():
    exact = asy.euclidean_ball_radius(2500)
    assert exact * 50 == pytest.approx(math.sqrt(2 * math.pi * math.e), rel=2e-2)
    assert asy.euclidean_ball_radius(2) == pytest.approx(math.sqrt(math.pi))
