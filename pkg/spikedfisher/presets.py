# -*- coding: utf-8 -*-
"""
Model configurations of the reference experiments.

All of them use p = 200, n1 = 1000, n2 = 400, H_n = delta_1 and the spikes
20 (simple), 0.2 (double) and 0.1 (simple).
"""
import copy

from .config import load_model_config

_BASE = {'model': {'p': 200, 'n1': 1000, 'n2': 400},
         'spikes': {'values': [20.0, 0.2, 0.1], 'multiplicities': [1, 2, 1]},
         'sigma': {'case': 'case1', 'rho': 0.0},
         'dist': {'x': 'gaussian', 'y': 'gaussian'},
         'mc': {'reps': 1000, 'seed': 20170101},
         'regime': 'assumptionD'}

# name -> changes to _BASE, by section
PRESETS = {'case1_gaussian':   {},
           'case1_binomial':   {'dist': {'x': 'rademacher', 'y': 'rademacher'},
                                'regime': 'diagonalBlock'},
           'case2_gaussian':   {'sigma': {'case': 'case2', 'rho': 0.5},
                                'mc': {'reps': 500}},
           'case2_rademacher': {'sigma': {'case': 'case2', 'rho': 0.5},
                                'dist': {'x': 'rademacher', 'y': 'rademacher'},
                                'mc': {'reps': 500}},
           'case2_heavytail':  {'sigma': {'case': 'case2', 'rho': 0.5},
                                'dist': {'x': 'heavyTail4', 'y': 'heavyTail4'},
                                'mc': {'reps': 500}},
          }


def preset_dict(name):
    """ Return the nested configuration dict of the preset `name`."""
    if name not in PRESETS:
        raise KeyError('Expected an existing preset name, got {}. '
                       'Available options: {}'.format(name, sorted(PRESETS)))

    data = copy.deepcopy(_BASE)
    for section, values in PRESETS[name].items():
        if isinstance(values, dict):
            data[section].update(values)
        else:
            data[section] = values
    return data


def preset_config(name, overrides=None):
    """ ModelConfig of the preset `name`, see `config.load_model_config`
    for `overrides`."""
    return load_model_config(preset_dict(name), overrides=overrides)
