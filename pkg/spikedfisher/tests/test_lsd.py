# -*- coding: utf-8 -*-
import numpy as np
import pytest
from scipy import integrate

from spikedfisher.errors import (ConfigError,
                                 DegenerateError,
                                 DomainError,
                                 SpikeInsideBulkError,
                                 UnsupportedModelError)
from spikedfisher.lsd import (SpectralModel,
                              StieltjesBundle,
                              stieltjes,
                              wachter_density,
                              wachter_mean,
                              wachter_support,
                              _wachter_integral)
from spikedfisher.phase import psi_n

from .conftest import C1, C2

SPIKES = (20.0, 0.2, 0.1)


def closed_form_m(alpha, lam, c1=C1):
    """ m(psi_n(alpha)) for H_n = delta_1."""
    return (alpha * (1 - c1) - lam) / (lam * (C2 * lam + c1 * alpha))


def test_spectral_model_validation():
    with pytest.raises(ConfigError):
        SpectralModel(((1.0, 0.4), (2.0, 0.4)), C1, C2)

    with pytest.raises(ConfigError):
        SpectralModel.unit(C1, 1.0)

    with pytest.raises(ConfigError):
        SpectralModel(((1.0, 0.5), (1.0, 0.5)), C1, C2)

    with pytest.raises(ConfigError):
        SpectralModel(((-1.0, 1.0),), C1, C2)


def test_from_dimensions():
    nominal = SpectralModel.from_dimensions(200, 1000, 400)
    assert nominal.y1 == pytest.approx(0.2)
    assert nominal.y2 == pytest.approx(0.5)
    assert nominal.is_unit_atom

    reduced = SpectralModel.from_dimensions(200, 1000, 400, n_spikes=4, reduced=True)
    assert reduced.y1 == pytest.approx(196 / 1000)
    assert reduced.y2 == pytest.approx(196 / 400)


def test_counts_largest_remainder():
    model = SpectralModel(((1.0, 0.5), (2.0, 0.5)), C1, C2)
    assert list(model.counts(5)) == [3, 2]
    assert list(model.eigenvalues(5)) == [2.0, 2.0, 1.0, 1.0, 1.0]
    assert not model.is_unit_atom


def test_wachter_support(unit_model):
    a, b = wachter_support(unit_model)
    assert a == pytest.approx(0.203227, rel=1e-5)
    assert b == pytest.approx(12.59677, rel=1e-5)


def test_wachter_support_needs_unit_atom():
    model = SpectralModel(((1.0, 0.5), (2.0, 0.5)), C1, C2)
    with pytest.raises(UnsupportedModelError):
        wachter_support(model)


def test_wachter_density_mass_and_mean(unit_model):
    a, b = wachter_support(unit_model)
    mass, _ = integrate.quad(wachter_density, a, b, args=(unit_model,), limit=200)
    assert mass == pytest.approx(1.0, abs=1e-6)

    assert _wachter_integral(lambda x: 1.0, unit_model) == pytest.approx(1.0, abs=1e-10)
    assert _wachter_integral(lambda x: x, unit_model) == pytest.approx(wachter_mean(unit_model),
                                                                       rel=1e-10)
    assert wachter_mean(unit_model) == pytest.approx(2.0)


def test_wachter_density_domain(unit_model):
    with pytest.raises(DomainError):
        wachter_density(0.0, unit_model)

    values = wachter_density(np.array([0.1, 1.0, 20.0]), unit_model)
    assert values[0] == 0
    assert values[1] > 0
    assert values[2] == 0


@pytest.mark.parametrize('alpha', SPIKES)
def test_stieltjes_closed_form(unit_model, alpha):
    lam = psi_n(alpha, unit_model, C1, C2)
    bundle = stieltjes(lam, unit_model)
    assert bundle.m == pytest.approx(closed_form_m(alpha, lam), rel=1e-8)


def test_stieltjes_reference_values(unit_model):
    bundle = stieltjes(psi_n(0.2, unit_model, C1, C2), unit_model)
    assert bundle.m == pytest.approx(1.875, rel=1e-8)
    assert bundle.m2 == pytest.approx(8.53795, rel=1e-5)

    bundle = stieltjes(psi_n(20.0, unit_model, C1, C2), unit_model)
    assert bundle.m == pytest.approx(-0.0246711, rel=1e-5)
    assert bundle.m2 == pytest.approx(6.10933e-4, rel=1e-5)


def test_transform_identities(unit_model):
    a, b = wachter_support(unit_model)
    points = np.concatenate((np.linspace(0.02, 0.9 * a, 10), np.linspace(1.1 * b, 60, 10)))
    for lam in points:
        bundle = stieltjes(lam, unit_model)
        scale = abs(lam * bundle.m2) + abs(bundle.m)
        assert abs(bundle.m3 - (lam * bundle.m2 + bundle.m)) < 1e-10 * max(1.0, scale)
        assert bundle.m_under == pytest.approx(-(1 - C1) / lam + C1 * bundle.m, rel=1e-12)
        assert bundle.m_under2 == pytest.approx((1 - C1) / lam ** 2 + C1 * bundle.m2, rel=1e-12)

        step = 1e-4 * lam
        deriv = (stieltjes(lam + step, unit_model).m - stieltjes(lam - step, unit_model).m) / (
            2 * step)
        assert deriv == pytest.approx(bundle.m2, rel=1e-6)


def test_zero_mass_atom():
    model = SpectralModel.unit(2.0, 0.5)
    assert model.zero_mass == pytest.approx(0.5)
    lam = 1e6
    bundle = stieltjes(lam, model)
    # the whole mass is seen from far away
    assert -lam * bundle.m == pytest.approx(1.0, rel=1e-4)


def test_stieltjes_errors(unit_model):
    with pytest.raises(SpikeInsideBulkError):
        stieltjes(1.0, unit_model)

    with pytest.raises(DomainError):
        stieltjes(0.0, unit_model)

    with pytest.raises(ConfigError):
        stieltjes(40.0, unit_model, backend='exact')

    with pytest.raises(ConfigError):
        stieltjes(40.0, unit_model, reps=4)

    model = SpectralModel(((1.0, 0.5), (2.0, 0.5)), C1, C2)
    with pytest.raises(UnsupportedModelError):
        stieltjes(40.0, model)


def test_bundle_rejects_broken_identity():
    with pytest.raises(DegenerateError):
        StieltjesBundle.from_transforms(40.0, -0.02, 6e-4, 1.0, C1)


def test_montecarlo_backend_small(unit_model):
    lam = psi_n(20.0, unit_model, C1, C2)
    exact = stieltjes(lam, unit_model)
    approx = stieltjes(lam, unit_model, backend='montecarlo', dimension=200, reps=4, seed=1)
    assert approx.m == pytest.approx(exact.m, rel=0.05)
    assert approx.m2 == pytest.approx(exact.m2, rel=0.05)


def test_montecarlo_backend_needs_two_reps(unit_model):
    with pytest.raises(ConfigError):
        stieltjes(40.0, unit_model, backend='montecarlo', dimension=50, reps=1)


def test_montecarlo_backend_any_base_measure():
    model = SpectralModel(((1.0, 0.5), (2.0, 0.5)), C1, C2)
    bundle = stieltjes(80.0, model, backend='montecarlo', dimension=100, reps=3, seed=2)
    assert bundle.m < 0
    assert bundle.m2 > 0


@pytest.mark.slow
@pytest.mark.parametrize('alpha', SPIKES)
def test_montecarlo_backend_agrees(unit_model, alpha):
    lam = psi_n(alpha, unit_model, C1, C2)
    exact = stieltjes(lam, unit_model)
    approx = stieltjes(lam, unit_model, backend='montecarlo', dimension=2000, reps=20, seed=0)
    assert approx.m == pytest.approx(exact.m, rel=0.02)
    assert approx.m2 == pytest.approx(exact.m2, rel=0.02)
