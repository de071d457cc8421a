import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mirrordecay.decay import (
    SERIES_THRESHOLD,
    EmitterConfig,
    branch_mismatch,
    contact_limit,
    decay_curve,
    decay_curve_from_xi,
    decay_rate,
    near_field_term,
    relative_decay_rate,
    sinc,
)
from mirrordecay.errors import NonMonotonicGrid, OutOfRange
from mirrordecay.mirror import build_mirror

from helpers import refined_extrema

# 40-digit mpmath evaluations of the closed form (no cancellation at that precision)
FROZEN = [
    (1e-6, 0.0, 1.5, 1.9999999999998930971e-13),
    (1e-6, 1.0, 1.5, 1.9999999999999),
    (1e-3, 0.0, 1.5, 1.9999998928571455026e-7),
    (1e-3, 1.0, 1.5, 1.9999999000000035714),
    (0.03, 0.25, 1.2, 0.60008999537153464148),
    (0.05, 0.5, 0.75, 1.0000624888400607345),
    (0.0500001, 0.5, 0.75, 1.0000624890899717078),
    (0.7, 0.3, 0.9, 0.7914254887225285231),
    (2.5, 1.0, 1.5, 1.49945558713048783),
    (17.3, 0.0, 0.3, 1.017257912145258099),
    (10000.0, 0.5, 1.5, 1.0000229425019747724),
]

mus = st.floats(0.0, 1.0)
xis = st.floats(0.0, 1.5)
us = st.floats(1e-8, 1e4)


@pytest.mark.parametrize("u,mu,xi,expected", FROZEN)
def test_frozen_values(u, mu, xi, expected):
    assert relative_decay_rate(u, mu, xi) == pytest.approx(expected, rel=1e-13, abs=1e-15)


def test_free_space_exact():
    u = np.linspace(0, 100, 1001)
    for mu in (0.0, 0.4, 1.0):
        assert np.all(relative_decay_rate(u, mu, 0.0) == 1.0)


def test_half_wavelength_value():
    assert relative_decay_rate(math.pi, 0.0, 1.5) == pytest.approx(1 + 1.5 / math.pi**2, abs=1e-14)
    assert relative_decay_rate(math.pi, 0.0, 1.5) == pytest.approx(1.151982, abs=5e-7)


def test_far_distance():
    assert abs(relative_decay_rate(1e4, 0.5, 1.5) - 1.0) <= 5e-4


@pytest.mark.parametrize("mu,expected", [(0.0, 0.0), (1.0, 2.0)])
def test_contact_limits_from_series(mu, expected):
    assert relative_decay_rate(0.0, mu, 1.5) == pytest.approx(expected, abs=1e-15)
    assert relative_decay_rate(1e-6, mu, 1.5) == pytest.approx(expected, abs=1e-9)


class TestContactLimit:
    @pytest.mark.parametrize("mu,xi,expected", [(1, 1.5, 2.0), (0, 1.5, 0.0), (0.5, 0.3, 1.0), (0.5, 1.1, 1.0)])
    def test_values(self, mu, xi, expected):
        assert contact_limit(mu, xi) == pytest.approx(expected, abs=1e-15)

    @given(mus, xis)
    def test_matches_rate_at_zero(self, mu, xi):
        assert relative_decay_rate(0.0, mu, xi) == pytest.approx(contact_limit(mu, xi), abs=1e-14)

    def test_range_checks(self):
        with pytest.raises(OutOfRange):
            contact_limit(1.2, 1.0)
        with pytest.raises(OutOfRange):
            contact_limit(0.5, 1.6)


class TestSeriesBranch:
    def test_branch_agreement(self):
        assert branch_mismatch(SERIES_THRESHOLD) <= 1e-9

    def test_limits(self):
        assert near_field_term(0.0) == pytest.approx(-1.0 / 3.0, abs=1e-16)
        assert sinc(0.0) == 1.0

    def test_continuous_across_threshold(self):
        below = relative_decay_rate(np.nextafter(SERIES_THRESHOLD, 0), 0.2, 1.5)
        above = relative_decay_rate(SERIES_THRESHOLD, 0.2, 1.5)
        assert abs(below - above) <= 1e-9

    def test_naive_formula_loses_digits(self):
        # documents why the series branch exists
        u = 1e-6
        naive = math.cos(u) / u**2 - math.sin(u) / u**3
        assert abs(naive + 1.0 / 3.0) > 1e-6
        assert abs(near_field_term(u) + 1.0 / 3.0) < 1e-12

    def test_vector_and_scalar_agree(self):
        u = np.array([0.0, 0.01, 0.049, 0.05, 0.1, 3.0])
        vec = relative_decay_rate(u, 0.3, 1.2)
        assert vec.shape == u.shape
        for v, x in zip(vec, u):
            assert v == relative_decay_rate(float(x), 0.3, 1.2)


class TestProperties:
    @given(us, mus, st.floats(0.01, 1.5), st.floats(0.01, 1.5))
    def test_linear_in_xi(self, u, mu, xi, xi2):
        a = relative_decay_rate(u, mu, xi) - 1.0
        b = relative_decay_rate(u, mu, xi2) - 1.0
        assert a == pytest.approx(xi / xi2 * b, abs=1e-12)

    @given(us, xis)
    def test_affine_in_mu(self, u, xi):
        r0, rh, r1 = (relative_decay_rate(u, m, xi) for m in (0.0, 0.5, 1.0))
        assert rh == pytest.approx(0.5 * (r0 + r1), abs=1e-12)

    @given(us, mus, xis)
    def test_envelope(self, u, mu, xi):
        bound = xi * ((1 + mu) * (1 / u**2 + 1 / u**3) + (1 - mu) / u)
        assert abs(relative_decay_rate(u, mu, xi) - 1.0) <= bound * (1 + 1e-12) + 1e-15

    def test_non_negative_grid(self):
        u = np.concatenate([[0.0], np.geomspace(1e-4, 200, 4000)])
        for mu in np.linspace(0, 1, 11):
            for xi in np.linspace(0, 1.5, 7):
                assert np.min(relative_decay_rate(u, mu, xi)) >= -1e-12

    @pytest.mark.parametrize("mu", [0.0, 1.0])
    @pytest.mark.parametrize("xi", [0.3, 1.5])
    def test_period(self, mu, xi):
        maxima, minima = refined_extrema(lambda u: relative_decay_rate(u, mu, xi) - 1, 10, 60)
        for ext in (maxima, minima):
            spacing = np.diff([p[0] for p in ext])
            assert len(spacing) >= 6
            assert np.all(np.abs(spacing - 2 * np.pi) <= 0.1)

    @pytest.mark.parametrize("bad", [(-1.0, 0.5, 1.0), (1.0, -0.1, 1.0), (1.0, 0.5, 1.5000001), (1.0, 0.5, -0.1)])
    def test_out_of_range(self, bad):
        with pytest.raises(OutOfRange):
            relative_decay_rate(*bad)


class TestDecayRate:
    def test_contact_perpendicular_perfect_mirror(self):
        res = decay_rate(EmitterConfig(k=1.0, x=0.0, mu=1.0, gamma_free=1.0), build_mirror(1, 1))
        assert res.gamma_mirr == pytest.approx(2.0, abs=1e-15)
        assert res.u == 0.0

    def test_far(self):
        res = decay_rate(EmitterConfig(k=1.0, x=1e5, mu=0.3, gamma_free=2.5), build_mirror(0.9, 0.4))
        assert res.gamma_mirr == pytest.approx(2.5, rel=1e-4)

    @pytest.mark.parametrize("r_a,r_b", [(0.0, 0.8), (0.8, 0.0)])
    def test_one_sided_is_free(self, r_a, r_b):
        res = decay_rate(EmitterConfig(k=2.0, x=0.3, mu=0.7, gamma_free=3.0), build_mirror(r_a, r_b))
        assert res.gamma_mirr == 3.0

    def test_scaling(self):
        e = EmitterConfig(k=2.0, x=0.75, mu=0.2, gamma_free=4.0)
        m = build_mirror(0.6, 0.8)
        res = decay_rate(e, m)
        assert res.u == 3.0
        assert res.ratio == pytest.approx(relative_decay_rate(3.0, 0.2, 1.152), abs=1e-15)
        assert res.gamma_mirr == res.ratio * 4.0

    def test_side_b_atom_uses_swapped_mirror(self):
        m = build_mirror(0.3, 0.9)
        e = EmitterConfig(k=1.0, x=0.4, mu=0.0)
        assert decay_rate(e, m).ratio != decay_rate(e, m.swapped()).ratio

    @pytest.mark.parametrize("kw", [dict(k=0.0, x=1, mu=0.5), dict(k=1, x=-1, mu=0.5),
                                    dict(k=1, x=1, mu=2), dict(k=1, x=1, mu=0.5, gamma_free=0)])
    def test_emitter_checks(self, kw):
        with pytest.raises(OutOfRange):
            EmitterConfig(**kw)


class TestDecayCurve:
    def test_contact_start(self):
        curve = decay_curve(EmitterConfig(1, 0, 0.0), build_mirror(1, 1), np.arange(0, 10, 0.5))
        assert curve.ratio[0] == 0.0
        assert curve.xi == 1.5 and curve.mu == 0.0
        assert len(curve) == 20

    def test_flat_in_free_space(self):
        curve = decay_curve(EmitterConfig(1, 0, 0.4), build_mirror(0.0, 0.5), np.linspace(0, 5, 11))
        assert np.all(curve.ratio == 1.0)

    def test_samples_reproduce(self):
        curve = decay_curve_from_xi(0.8, 0.25, np.linspace(0, 7, 71))
        for kx, u, r in zip(curve.kx, curve.u, curve.ratio):
            assert u == 2 * kx
            assert r == relative_decay_rate(u, 0.25, 0.8)

    def test_stronger_mirror_larger_deviation(self):
        grid = [0.0, math.pi / 2, 2.0]
        weak = decay_curve_from_xi(0.75, 0.0, grid)
        strong = decay_curve_from_xi(1.5, 0.0, grid)
        assert abs(strong.ratio[1] - 1) > abs(weak.ratio[1] - 1)
        assert strong.ratio[1] - 1 == pytest.approx(2 * (weak.ratio[1] - 1), abs=1e-15)

    @pytest.mark.parametrize("grid", [[0, 1, 1], [0, 2, 1], []])
    def test_non_monotonic(self, grid):
        with pytest.raises(NonMonotonicGrid):
            decay_curve_from_xi(1.0, 0.5, grid)
