# -*- coding: utf-8 -*-
"""
Configuration manager for model configurations and runtime settings.
This works over Kaptan:https://github.com/emre/kaptan

Model configuration files have the sections model, spikes, sigma, dist,
truncation, mc and regime. An optional settings section updates the global
configuration registry, declared in the bottom of this file, which holds the
runtime settings of the numerical backends.
"""
import copy
import os.path as op

import yaml
from kaptan import Kaptan

from .errors import ConfigError

MANDATORY_SECTIONS = ('model',)

# runtime settings read with `get_config_setting`
DEFAULT_SETTINGS = {
    'montecarlo.dimension': 2000,
    'montecarlo.reps': 20,
    'montecarlo.n_cpus': 1,
    'limit_draws': 20000,
    'ks_level': 0.01,
}

# sections of the model configuration, filled in where a file leaves them out
DEFAULTS = {
    'model': {'base': [[1.0, 1.0]], 'ratios': 'nominal'},
    'spikes': {'values': [], 'multiplicities': []},
    'sigma': {'case': 'case1', 'rho': 0.0},
    'dist': {'x': 'gaussian', 'y': 'gaussian'},
    'truncation': {'exponent': 0.125, 'scale': 1.0},
    'mc': {'reps': 1, 'seed': 0, 'n_cpus': 1},
    'regime': 'assumptionD',
}

# how to cast the string values of ini files
_CASTS = {
    'model': {'p': int, 'n1': int, 'n2': int},
    'spikes': {'values': float, 'multiplicities': int},
    'sigma': {'rho': float},
    'truncation': {'exponent': float, 'scale': float},
    'mc': {'reps': int, 'seed': int, 'n_cpus': int},
}


def _load_config(file_path):
    cpt = Kaptan()
    try:
        return cpt.import_config(file_path)
    except yaml.YAMLError as ye:
        mark = getattr(ye, 'problem_mark', None)
        if mark is not None:
            raise ConfigError('Could not parse {} at line {}, column {}: {}.'.format(
                file_path, mark.line + 1, mark.column + 1, getattr(ye, 'problem', ye))) from ye
        raise ConfigError('Could not parse {}: {}.'.format(file_path, ye)) from ye


def _check_file(file_path):
    fpath = op.abspath(op.expanduser(file_path))

    if not op.isfile(fpath):
        raise ConfigError("Could not find configuration file {}.".format(fpath))


def _flatten(adict, prefix=''):
    """ Dotted keys of the leaves of a nested dict."""
    for k, v in adict.items():
        key = '{}.{}'.format(prefix, k) if prefix else k
        if isinstance(v, dict) and v:
            yield from _flatten(v, key)
        else:
            yield key, v


def _update_kaptan(kptn, new_values):
    for k, v in _flatten(new_values):
        kptn.upsert(k, v)


class Config(object):
    """ This class has a shared state like a Borg.

    This is a Kaptan class that infers the file handler
    from the file extension using the `from_file` function.

    Parameters
    ----------
    handler: str or kaptan.BaseHandler
        This parameter is to keep compatibility with Kaptan's instantiation protocol.
        See its documentation on how to use it: http://emre.github.io/kaptan/
    """
    __shared_state = {}

    def __init__(self, handler=None):
        self.__dict__ = self.__shared_state
        if '_cpt' not in self.__dict__:
            self._cpt = Kaptan(handler)

    @classmethod
    def from_file(cls, file_path):
        """ Returns a Config instance with the data from
        `file_path`.

        Parameters
        ----------
        file_path: str
            Path to a configuration file.
            Its extension can be any from kaptan.HANDLER_EXT, i.e.,
            {'conf': 'ini',
             'ini': 'ini',
             'json': 'json',
             'py': 'file',
             'yaml': 'yaml',
             'yml': 'yaml'}

        Returns
        -------
        cfg: Config
        """
        _check_file(file_path)
        cfg = Config()
        cfg._cpt = _load_config(file_path)
        return cfg

    def update_from_file(self, file_path):
        """ Updates the config parameters with the data from `file_path`.
        Nested sections are merged key by key."""
        _check_file(file_path)
        cpt = _load_config(file_path)
        _update_kaptan(self._cpt, cpt.configuration_data)

    def update(self, adict):
        _update_kaptan(self._cpt, adict)

    def keys(self):
        return self._cpt.configuration_data.keys()

    def items(self):
        return self._cpt.configuration_data.items()

    def get(self, item, default=None):
        """ Value of the flat dotted key `item`, e.g., 'montecarlo.dimension'."""
        return self._cpt.configuration_data.get(item, default)

    def __contains__(self, item):
        return item in self._cpt.configuration_data

    def __getitem__(self, item):
        if item not in self:
            raise KeyError('Could not find key {} in configuration content.'.format(item))
        return self._cpt.configuration_data[item]

    def __setitem__(self, key, value):
        return self._cpt.upsert(key, value)

    def __repr__(self):
        return '<config.Config> ({})'.format('\n'.join([str(i) for i in self.items()]))


# the global configuration registry
SPIKEDFISHER_CFG = Config()
SPIKEDFISHER_CFG.update(DEFAULT_SETTINGS)


def update_config(value):
    """ Value can be a configuration file path or a dictionary with
    configuration settings."""
    global SPIKEDFISHER_CFG
    if isinstance(value, str):
        SPIKEDFISHER_CFG.update_from_file(value)
    elif isinstance(value, dict):
        SPIKEDFISHER_CFG.update(value)
    else:
        raise ConfigError('Cannot update the configuration with {}.'.format(value))


def get_config_setting(param_name, default=''):
    """ Return the value for the entry with name `param_name` in the global configuration."""
    return SPIKEDFISHER_CFG.get(param_name, default=default)


def check_mandatory_inputs(data, names=MANDATORY_SECTIONS):
    """ Raise a ConfigError if any of the sections in `names` is not in `data`."""
    for name in names:
        if name not in data:
            raise ConfigError('Could not find the configuration section {}. '
                              'Please set it in the input configuration file.'.format(name))


def _as_list(value, cast):
    if isinstance(value, str):
        value = [v for v in value.replace(',', ' ').split() if v]
    elif not isinstance(value, (list, tuple)):
        value = [value]
    return [cast(v) for v in value]


def _cast_values(data):
    """ Cast the string values of ini files to the types of the schema."""
    for section, casts in _CASTS.items():
        values = data.get(section)
        if not isinstance(values, dict):
            continue
        for key, cast in casts.items():
            if key not in values:
                continue
            if section == 'spikes':
                values[key] = _as_list(values[key], cast)
            elif isinstance(values[key], str):
                values[key] = cast(values[key])

    base = data.get('model', {}).get('base')
    if isinstance(base, str):
        nums = _as_list(base, float)
        data['model']['base'] = [nums[i:i + 2] for i in range(0, len(nums), 2)]

    regime = data.get('regime')
    if isinstance(regime, dict):
        data['regime'] = regime.get('name', DEFAULTS['regime'])
    return data


def read_config(source):
    """ Read a model configuration from a file path or a dict.

    Returns
    -------
    data: dict
        The nested configuration, defaults filled in.
    """
    if isinstance(source, str):
        _check_file(source)
        data = copy.deepcopy(_load_config(source).configuration_data)
    elif isinstance(source, dict):
        data = copy.deepcopy(source)
    else:
        raise ConfigError('Expected a file path or a dict, got {}.'.format(type(source)))

    if not isinstance(data, dict):
        raise ConfigError('The configuration should be a mapping of sections, got {}.'.format(
            type(data)))

    check_mandatory_inputs(data)
    for section, values in DEFAULTS.items():
        if isinstance(values, dict):
            merged = dict(values)
            merged.update(data.get(section) or {})
            data[section] = merged
        else:
            data.setdefault(section, values)
    return _cast_values(data)


def load_model_config(source, overrides=None):
    """ Build a ModelConfig from a configuration file or dict.

    Parameters
    ----------
    source: str or dict
        Configuration file path (yaml, json or ini) or nested dict.

    overrides: dict
        Dotted keys, e.g., 'mc.seed', replacing the values of `source`.
        None values are ignored, so command line flags can be passed as they are.

    Returns
    -------
    config: ModelConfig

    Raises
    ------
    ConfigError
        On missing sections, invalid values or unparsable files.
    """
    from .simulate.model import ModelConfig

    data = read_config(source)
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        section, _, name = key.partition('.')
        if name:
            data.setdefault(section, {})[name] = value
        else:
            data[section] = value

    settings = data.pop('settings', None)
    if settings:
        update_config(settings)

    return ModelConfig.from_dict(data)
