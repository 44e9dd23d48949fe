# -*- coding: utf-8 -*-
import numpy as np
import pytest

from spikedfisher.errors import ConfigError, DomainError, PoleError
from spikedfisher.lsd import SpectralModel, stieltjes, wachter_support
from spikedfisher.phase import (SpikeSpec,
                                classify,
                                classify_spike,
                                consistency_residual,
                                critical_points,
                                psi_n,
                                psi_prime)

from .conftest import C1, C2


def unit_psi(alpha, c1=C1, c2=C2):
    return alpha * (alpha + c1 - 1) / (alpha - c2 * alpha - 1)


def test_psi_reference_values(unit_model):
    assert psi_n(20.0, unit_model, C1, C2) == pytest.approx(42.667, abs=5e-4)
    assert psi_n(0.2, unit_model, C1, C2) == pytest.approx(0.13333, abs=5e-6)
    assert psi_n(0.1, unit_model, C1, C2) == pytest.approx(0.073684, abs=5e-7)


def test_psi_unit_atom_closed_form(unit_model):
    grid = np.geomspace(0.01, 100, 100)
    # keep away from the atom at 1 and the pole at 2
    grid = grid[(np.abs(grid - 1) > 1e-3) & (np.abs(grid - 2) > 1e-3)]
    for alpha in grid:
        assert psi_n(alpha, unit_model, C1, C2) == pytest.approx(unit_psi(alpha), rel=1e-12)


# both sides of the pole at 2, with its neighbourhood left out
ALPHA_GRID = [a for a in np.geomspace(0.01, 100, 100) if abs(a - 2) > 0.05]


@pytest.mark.parametrize('alpha', ALPHA_GRID)
def test_psi_prime_matches_finite_difference(unit_model, alpha):
    step = 1e-6 * alpha
    numeric = (psi_n(alpha + step, unit_model, C1, C2) -
               psi_n(alpha - step, unit_model, C1, C2)) / (2 * step)
    # abs covers the critical points, where the derivative crosses zero
    assert psi_prime(alpha, unit_model, C1, C2) == pytest.approx(numeric, rel=1e-6, abs=1e-8)


def test_psi_domain_errors(unit_model):
    with pytest.raises(DomainError):
        psi_n(1.0, unit_model, C1, C2)

    with pytest.raises(PoleError):
        psi_n(2.0, unit_model, C1, C2)

    with pytest.raises(PoleError):
        psi_prime(2.0, unit_model, C1, C2)


def test_classify_reference_spikes(unit_model):
    spec = SpikeSpec([(0.2, 2), (20.0, 1), (0.1, 1)])
    results = classify(spec, unit_model, C1, C2)
    assert [r.alpha for r in results] == [20.0, 0.2, 0.1]
    assert all(r.distant for r in results)
    assert all(r.critical_point is None for r in results)
    assert all(r.rho == r.psi_n for r in results)


def test_non_distant_spikes_stick_to_the_edges(unit_model):
    a, b = wachter_support(unit_model)

    above = classify_spike(1.2, unit_model, C1, C2)
    assert not above.distant
    assert above.psi_prime <= 0
    assert above.critical_point == pytest.approx(3.549193, rel=1e-6)
    assert above.rho == pytest.approx(b, rel=1e-8)

    below = classify_spike(0.8, unit_model, C1, C2)
    assert not below.distant
    assert below.critical_point == pytest.approx(0.450807, rel=1e-6)
    assert below.rho == pytest.approx(a, rel=1e-8)


def test_critical_points_are_the_edges(unit_model):
    points = critical_points(unit_model, C1, C2)
    assert len(points) == 2
    assert points[0] == pytest.approx(0.450807, rel=1e-6)
    assert points[1] == pytest.approx(3.549193, rel=1e-6)

    a, b = wachter_support(unit_model)
    assert psi_n(points[0], unit_model, C1, C2) == pytest.approx(a, rel=1e-8)
    assert psi_n(points[1], unit_model, C1, C2) == pytest.approx(b, rel=1e-8)


def test_two_atom_classification():
    model = SpectralModel(((1.0, 0.5), (3.0, 0.5)), C1, C2)
    result = classify_spike(30.0, model, C1, C2)
    assert result.distant
    assert result.psi_n > 30.0


@pytest.mark.parametrize('alpha', (20.0, 0.2, 0.1))
def test_consistency_residual(unit_model, alpha):
    lam = psi_n(alpha, unit_model, C1, C2)
    bundle = stieltjes(lam, unit_model)
    assert consistency_residual(alpha, C2, bundle) < 1e-6 * lam


def test_spike_spec():
    spec = SpikeSpec([(0.1, 1), (20, 1), (0.2, 2)])
    assert spec.groups == ((20.0, 1), (0.2, 2), (0.1, 1))
    assert spec.alphas == [20.0, 0.2, 0.1]
    assert spec.mults == [1, 2, 1]
    assert spec.M == 4
    assert len(spec) == 3
    assert spec == SpikeSpec([(20, 1), (0.2, 2), (0.1, 1)])
    assert hash(spec) == hash(SpikeSpec([(20, 1), (0.2, 2), (0.1, 1)]))

    with pytest.raises(ConfigError):
        SpikeSpec([(0.2, 1), (0.2, 2)])

    with pytest.raises(ConfigError):
        SpikeSpec([(-1, 1)])

    with pytest.raises(ConfigError):
        SpikeSpec([(3, 0)])


def test_spike_ranks(unit_model):
    spec = SpikeSpec([(20, 1), (0.2, 2), (0.1, 1)])
    ranks = spec.ranks(200, unit_model)
    assert [list(r) for r in ranks] == [[0], [197, 198], [199]]

    values, labels = spec.population_eigenvalues(200, unit_model)
    assert values[0] == 20
    assert np.all(np.diff(values) <= 0)
    assert list(labels[-4:]) == [-1, 1, 1, 2]

    with pytest.raises(ConfigError):
        spec.ranks(4, unit_model)


def test_spike_ranks_on_base_atom_ties():
    model = SpectralModel(((1.0, 0.5), (2.0, 0.5)), C1, C2)
    spec = SpikeSpec([(2.0, 1)])
    ranks = spec.ranks(5, model)
    assert list(ranks[0]) == [0]
