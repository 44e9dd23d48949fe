# -*- coding: utf-8 -*-
import pytest

from spikedfisher.clt import Regime
from spikedfisher.presets import PRESETS, preset_config, preset_dict


@pytest.mark.parametrize('name', sorted(PRESETS))
def test_presets_load(name):
    config = preset_config(name)
    assert (config.p, config.n1, config.n2) == (200, 1000, 400)
    assert config.spikes.groups == ((20.0, 1), (0.2, 2), (0.1, 1))


def test_preset_changes():
    binomial = preset_config('case1_binomial')
    assert binomial.dist_x.kind == 'rademacher'
    assert binomial.regime is Regime.diagonalBlock

    heavy = preset_config('case2_heavytail', {'mc.seed': 5})
    assert heavy.sigma_case.rho == 0.5
    assert heavy.seed == 5
    assert heavy.reps == 500


def test_preset_dict_is_a_copy():
    preset_dict('case1_gaussian')['model']['p'] = 10
    assert preset_dict('case1_gaussian')['model']['p'] == 200

    with pytest.raises(KeyError):
        preset_dict('case3')
