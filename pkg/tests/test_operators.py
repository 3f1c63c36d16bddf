import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orliczmorrey import operators as O
from orliczmorrey import sampled as S

LINE = S.GridFunction.zeros([-8.0], [8.0], [320])


def direct_commutator(f, b, alpha, absolute):
    """Independent double loop over cell centres (diagonal cell omitted)."""
    x = f.points[:, 0]
    out = np.zeros(x.size)
    for i in range(x.size):
        acc = 0.0
        for j in range(x.size):
            if i == j:
                continue
            d = b.flat[i] - b.flat[j]
            acc += (abs(d) if absolute else d) * f.flat[j] * abs(x[i] - x[j]) ** (alpha - 1)
        out[i] = acc * f.cell_volume
    return out


def test_maximal_of_constant():
    f = LINE.with_values(np.full(LINE.shape, 3.0))
    m = O.fractional_maximal(f, 0.0)
    # the smallest radius holds one cell, so the max is the constant
    np.testing.assert_allclose(m.values, 3.0, rtol=1e-12)


@pytest.mark.parametrize("alpha", [0.0, 0.3, 0.7])
def test_maximal_indicator_at_origin(alpha):
    g = S.GridFunction.zeros([-4.0], [4.0], [801])
    f = S.char_ball(g, 1.0)
    m = O.fractional_maximal(f, alpha, radii=[0.5, 1.0, 2.0])
    assert m.values[400] == pytest.approx(2 ** alpha, rel=1e-2)


def test_maximal_indicator_far_away():
    g = S.GridFunction.zeros([-8.0], [8.0], [1600])
    f = S.char_ball(g, 1.0)
    x = g.points[:, 0]
    i = int(np.argmin(np.abs(x - 6.0)))
    m = O.fractional_maximal(f, 0.0, radii=np.linspace(0.01, 10, 2000))
    assert m.values[i] == pytest.approx(1.0 / (x[i] + 1.0), rel=1e-2)


@pytest.mark.parametrize("shape", [(257,), (31, 29)])
def test_prefix_matches_brute(shape):
    lo, hi = [-2.0] * len(shape), [2.0] * len(shape)
    g = S.GridFunction.zeros(lo, hi, list(shape))
    f = S.random_function(g, 9)
    radii = O.default_radii(f)
    a = O.fractional_maximal(f, 0.25, radii, method="brute").flat
    b = O.fractional_maximal(f, 0.25, radii, method="prefix").flat
    np.testing.assert_allclose(a, b, rtol=1e-10)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000), st.floats(-3, 3))
def test_maximal_sublinear_and_homogeneous(seed, c):
    f = S.random_function(LINE, seed)
    g = S.random_function(LINE, seed + 1)
    mf, mg = O.fractional_maximal(f, 0.3).flat, O.fractional_maximal(g, 0.3).flat
    assert np.all(O.fractional_maximal(f + g, 0.3).flat <= (mf + mg) * (1 + 1e-12))
    np.testing.assert_allclose(O.fractional_maximal(c * f, 0.3).flat, abs(c) * mf, rtol=1e-12, atol=1e-300)


def test_more_radii_never_decrease():
    f = S.random_function(LINE, 1)
    few = O.fractional_maximal(f, 0.2, radii=[0.1, 1.0]).flat
    many = O.fractional_maximal(f, 0.2, radii=[0.1, 0.3, 1.0, 3.0]).flat
    assert np.all(many >= few)


def test_maximal_errors():
    with pytest.raises(ValueError, match="alpha out of range"):
        O.fractional_maximal(LINE, 1.0)
    with pytest.raises(ValueError):
        O.fractional_maximal(LINE, 0.0, radii=[])


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.8])
def test_riesz_indicator_at_origin(alpha):
    g = S.GridFunction.zeros([-2.0], [2.0], [801])
    f = S.char_ball(g, 1.0)
    assert O.riesz_potential(f, alpha).values[400] == pytest.approx(2 / alpha, rel=1e-2)


def test_riesz_linear_and_even():
    f = S.gaussian(LINE, 1.0)
    a = O.riesz_potential(f, 0.5).values
    np.testing.assert_allclose(O.riesz_potential(2 * f, 0.5).values, 2 * a, rtol=1e-13)
    np.testing.assert_allclose(a, a[::-1], rtol=1e-12)
    with pytest.raises(ValueError, match="alpha out of range"):
        O.riesz_potential(f, 0.0)


def test_riesz_2d_disc_diagonal():
    g = S.GridFunction.zeros([-1.0, -1.0], [1.0, 1.0], [21, 21])
    rho = math.sqrt(g.cell_volume / math.pi)
    assert O.riesz_diagonal(g, 1.0) == pytest.approx(2 * math.pi * rho)


def test_ball_mean_examples():
    g = S.GridFunction.zeros([-1.0], [1.0], [400])
    assert O.ball_mean(g.with_values(np.full(g.shape, 2.5)), S.Ball((0.0,), 0.5)) == pytest.approx(2.5)
    x = g.points[:, 0]
    assert O.ball_mean(g.with_values(x), S.Ball((0.0,), 0.5)) == pytest.approx(0.0, abs=1e-12)
    assert O.ball_mean(g.with_values(np.abs(x)), S.Ball((0.0,), 0.5)) == pytest.approx(0.25, rel=1e-2)
    with pytest.raises(S.EmptyIntersectionError):
        O.ball_mean(g, S.Ball((5.0,), 0.5))


def test_bmo_examples():
    fam = S.BallFamily.for_grid(LINE)
    assert O.bmo_norm(LINE.with_values(np.full(LINE.shape, 4.0)), fam) == pytest.approx(0.0, abs=1e-12)
    b = S.log_bmo(LINE)
    assert O.bmo_norm(2 * b, fam) == pytest.approx(2 * O.bmo_norm(b, fam), rel=1e-12)


def test_log_bmo_stable_under_refinement():
    coarse = S.GridFunction.zeros([-8.0], [8.0], [256])
    fine = S.GridFunction.zeros([-8.0], [8.0], [512])
    a = O.bmo_norm(S.log_bmo(coarse), S.BallFamily.for_grid(coarse))
    b = O.bmo_norm(S.log_bmo(fine), S.BallFamily.for_grid(fine, centers_per_axis=128))
    assert math.isfinite(a) and abs(a - b) <= 0.1 * b


def test_commutators_vanish_on_constants():
    f = S.random_function(LINE, 2)
    b = LINE.with_values(np.full(LINE.shape, 1.7))
    assert np.all(O.commutator_frac_maximal(f, b, 0.3).values == 0)
    assert np.all(O.commutator_riesz(f, b, 0.3, "signed").values == 0)
    assert np.all(O.commutator_riesz(f, b, 0.3, "absolute").values == 0)
    assert np.all(O.commutator_frac_maximal(LINE, S.log_bmo(LINE), 0.3).values == 0)


def test_commutator_tiny_grid_oracle():
    g = S.GridFunction.zeros([-1.0], [1.0], [8])
    f = S.random_function(g, 4)
    b = S.random_function(g, 5)
    for mode, absolute in (("signed", False), ("absolute", True)):
        np.testing.assert_allclose(O.commutator_riesz(f, b, 0.4, mode).flat,
                                   direct_commutator(f, b, 0.4, absolute), rtol=1e-12, atol=1e-12)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_signed_commutator_bounded_by_absolute(seed):
    g = S.GridFunction.zeros([-2.0], [2.0], [64])
    f, b = S.random_function(g, seed), S.random_function(g, seed + 3)
    signed = np.abs(O.commutator_riesz(f, b, 0.5, "signed").flat)
    absolute = O.commutator_riesz(abs(f), b, 0.5, "absolute").flat
    assert np.all(signed <= absolute * (1 + 1e-12) + 1e-12)


def test_operator_spec():
    b = S.log_bmo(LINE)
    with pytest.raises(ValueError):
        O.OperatorSpec("comm_riesz_signed", 0.5)
    with pytest.raises(ValueError):
        O.OperatorSpec("hilbert")
    spec = O.OperatorSpec("comm_frac_maximal", 0.2, (0.1, 4.0, 2.0), b)
    out = spec.apply(S.gaussian(LINE))
    assert out.same_grid(LINE) and out.values.max() > 0
    with pytest.raises(ValueError, match="alpha out of range"):
        O.OperatorSpec("riesz", 0.0).apply(LINE)
