# -*- coding: utf-8 -*-
import numpy as np
import pytest
from scipy import integrate

from spikedfisher.errors import ConfigError, DegenerateError
from spikedfisher.simulate.sampling import (SampleDistribution,
                                            TruncationPolicy,
                                            draw_matrix,
                                            truncate_center_scale,
                                            _heavy_density,
                                            _heavy_quantile,
                                            _heavy_survival,
                                            _BODY_MASS)


def test_distribution_kinds():
    assert SampleDistribution('gaussian').fourth_moment == 3
    assert SampleDistribution('rademacher').fourth_moment == 1
    assert np.isinf(SampleDistribution('heavyTail4').fourth_moment)

    with pytest.raises(ConfigError):
        SampleDistribution('cauchy')


@pytest.mark.parametrize('kind', ('gaussian', 'rademacher', 'heavyTail4'))
def test_draws_are_standardized(kind):
    rng = np.random.default_rng(11)
    x = SampleDistribution(kind).draw(rng, 1000000)
    assert abs(x.mean()) < 0.01
    assert x.var() == pytest.approx(1.0, abs=0.03)


def test_rademacher_values():
    rng = np.random.default_rng(0)
    x = draw_matrix(SampleDistribution('rademacher'), 10, 20, rng)
    assert x.shape == (10, 20)
    assert set(np.unique(x)) == {-1.0, 1.0}


def test_heavy_tail_scale():
    # body e^2 (1 - e^-4) / 3 plus tail e^-2 + 2 E1(2)
    assert SampleDistribution('heavyTail4').heavy_scale ** 2 == pytest.approx(2.651, rel=1e-3)


def test_heavy_tail_quantile():
    u = np.array([0.5, _BODY_MASS + 1e-3, 0.999, 1 - 1e-8])
    r = _heavy_quantile(u)
    assert r[0] == pytest.approx(np.e * 0.5 / _BODY_MASS)
    for q, t in zip(1 - u[1:], r[1:]):
        assert t >= np.e
        assert _heavy_survival(t) == pytest.approx(q, rel=1e-8)


def test_truncated_moments():
    gauss = SampleDistribution('gaussian')
    assert gauss.truncated_moment2(10.0) == pytest.approx(1.0, abs=1e-12)
    assert gauss.truncated_moment2(1.0) < 1

    rade = SampleDistribution('rademacher')
    assert rade.truncated_moment2(1.5) == 1
    assert rade.truncated_moment2(0.5) == 0

    heavy = SampleDistribution('heavyTail4')
    assert heavy.truncated_moment2(1e6) == pytest.approx(1.0, abs=1e-4)
    assert heavy.truncated_moment2(2.0) < 1


def test_heavy_tail_truncated_moment_closed_form():
    heavy = SampleDistribution('heavyTail4')
    assert heavy.heavy_scale ** 2 == pytest.approx(2.651, abs=1e-3)

    moments = [heavy.truncated_moment2(t) for t in (0.5, 1.0, 2.0, 5.0, 50.0, 1e3)]
    assert np.all(np.diff(moments) > 0)
    assert moments[-1] < 1
    for t in (1e6, 1e9, np.inf):
        assert heavy.truncated_moment2(t) == pytest.approx(1.0, abs=1e-10)

    # adaptive quadrature of the density agrees where it still converges
    for t in (5.0, 50.0):
        upper = t * heavy.heavy_scale
        body, _ = integrate.quad(lambda r: r * r * _heavy_density(r), 0, np.e)
        tail, _ = integrate.quad(lambda r: r * r * _heavy_density(r), np.e, upper, limit=200)
        expected = (body + tail) / heavy.heavy_scale ** 2
        assert heavy.truncated_moment2(t) == pytest.approx(expected, rel=1e-7)


def test_truncation_policy():
    policy = TruncationPolicy()
    assert policy.eta(1) == 1
    assert policy.threshold(256) == pytest.approx(256 ** 0.375)

    with pytest.raises(ConfigError):
        TruncationPolicy(eta_exponent=0.5)

    with pytest.raises(ConfigError):
        TruncationPolicy(eta_scale=0)


def test_truncate_center_scale():
    rng = np.random.default_rng(4)
    rade = SampleDistribution('rademacher')
    X = draw_matrix(rade, 30, 100, rng)
    # nothing to cut, already standardized
    assert np.array_equal(truncate_center_scale(X, 100, TruncationPolicy(), rade), X)

    gauss = SampleDistribution('gaussian')
    X = draw_matrix(gauss, 30, 100, rng)
    Z = truncate_center_scale(X, 100, TruncationPolicy(0.4, 0.5), gauss)
    threshold = TruncationPolicy(0.4, 0.5).threshold(100)
    assert np.all(Z[np.abs(X) >= threshold] == 0)

    Z = truncate_center_scale(X, 100, TruncationPolicy())
    assert Z.mean() == pytest.approx(0, abs=1e-12)
    assert Z.std() == pytest.approx(1, rel=1e-12)


def test_truncate_errors():
    rng = np.random.default_rng(4)
    rade = SampleDistribution('rademacher')
    X = draw_matrix(rade, 5, 100, rng)

    with pytest.raises(ConfigError):
        truncate_center_scale(X, 50, TruncationPolicy(), rade)

    with pytest.raises(DegenerateError):
        truncate_center_scale(X, 100, TruncationPolicy(eta_scale=0.01), rade)
