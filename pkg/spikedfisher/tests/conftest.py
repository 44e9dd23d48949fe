# -*- coding: utf-8 -*-
import pytest

from spikedfisher.config import load_model_config
from spikedfisher.lsd import SpectralModel

# the ratios of the reference experiments
C1, C2 = 0.2, 0.5


def small_dict(**sections):
    """ A reduced version of the reference experiment with the same ratios."""
    data = {'model': {'p': 40, 'n1': 200, 'n2': 80},
            'spikes': {'values': [20.0, 0.2, 0.1], 'multiplicities': [1, 2, 1]},
            'sigma': {'case': 'case1'},
            'dist': {'x': 'gaussian', 'y': 'gaussian'},
            'mc': {'reps': 6, 'seed': 3}}
    for name, values in sections.items():
        if isinstance(values, dict):
            data.setdefault(name, {}).update(values)
        else:
            data[name] = values
    return data


@pytest.fixture
def unit_model():
    return SpectralModel.unit(C1, C2)


@pytest.fixture
def small_config():
    return load_model_config(small_dict())
