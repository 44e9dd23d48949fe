# -*- coding: utf-8 -*-
"""
Model configuration of a simulation: dimensions, covariance geometry,
spikes, population distributions and Monte Carlo settings.
"""
import hashlib
from collections import namedtuple

import yaml

from ..clt import Regime
from ..errors import ConfigError
from ..lsd import SpectralModel
from ..phase import SpikeSpec
from .sampling import SampleDistribution, TruncationPolicy

SIGMA_CASES = ('case1', 'case2')
RATIO_MODES = ('nominal', 'reduced')
MAX_SEED = 2 ** 64


class SigmaCase(namedtuple('SigmaCase', ('kind', 'rho'))):
    """ Geometry of Sigma1.

    case1: diagonal, case2: conjugated by the eigenvectors of the Toeplitz
    matrix rho^|i - j|.
    """
    __slots__ = ()

    def __new__(cls, kind='case1', rho=0.0):
        if kind not in SIGMA_CASES:
            raise ConfigError('Expected a sigma case in {}, got {}.'.format(SIGMA_CASES, kind))
        if not -1 < rho < 1:
            raise ConfigError('The Toeplitz rho should be in (-1, 1), got {}.'.format(rho))
        return super(SigmaCase, cls).__new__(cls, kind, float(rho))


_FIELDS = ('p', 'n1', 'n2', 'sigma_case', 'spikes', 'dist_x', 'dist_y', 'truncation',
           'reps', 'seed', 'regime', 'base', 'ratios', 'n_cpus')


class ModelConfig(namedtuple('ModelConfig', _FIELDS)):
    """ Everything a theory table or a Monte Carlo run depends on.

    Use `_replace` to derive a configuration with some fields overridden.
    """
    __slots__ = ()

    def __new__(cls, p, n1, n2, sigma_case, spikes, dist_x, dist_y,
                truncation=None, reps=1, seed=0, regime=Regime.assumptionD,
                base=((1.0, 1.0),), ratios='nominal', n_cpus=1):
        p, n1, n2, reps, seed = int(p), int(n1), int(n2), int(reps), int(seed)
        truncation = TruncationPolicy() if truncation is None else truncation
        base = tuple((float(t), float(w)) for t, w in base)

        if p <= spikes.M:
            raise ConfigError('Expected p > M, got p={} and M={}.'.format(p, spikes.M))
        if n1 < 1:
            raise ConfigError('Expected n1 >= 1, got {}.'.format(n1))
        if n2 <= p:
            raise ConfigError('Expected n2 > p so that S2 is invertible, got n2={} and '
                              'p={}.'.format(n2, p))
        if reps < 1:
            raise ConfigError('Expected at least one replication, got {}.'.format(reps))
        if not 0 <= seed < MAX_SEED:
            raise ConfigError('The seed should be a 64-bit unsigned integer, got {}.'.format(seed))
        if ratios not in RATIO_MODES:
            raise ConfigError('Expected ratios in {}, got {}.'.format(RATIO_MODES, ratios))

        return super(ModelConfig, cls).__new__(cls, p, n1, n2, sigma_case, spikes, dist_x, dist_y,
                                               truncation, reps, seed, Regime(regime), base,
                                               ratios, int(n_cpus))

    @property
    def M(self):
        return self.spikes.M

    @property
    def scale_dim(self):
        return self.p - self.M

    @property
    def psi_ratios(self):
        """ (p/n1, p/n2), the ratios of the phase transition map."""
        return self.p / float(self.n1), self.p / float(self.n2)

    @property
    def clt_ratios(self):
        """ Ratios of the transforms and the CLT parameters: p/n_i, or
        (p - M)/n_i in the reduced mode."""
        dim = self.scale_dim if self.ratios == 'reduced' else self.p
        return dim / float(self.n1), dim / float(self.n2)

    @property
    def model(self):
        """ SpectralModel of the non-spiked part with the CLT ratios."""
        return SpectralModel(self.base, *self.clt_ratios)

    @property
    def bulk_model(self):
        """ SpectralModel with the ratios (p - M)/n_i of the non-spiked sample matrix."""
        return SpectralModel.from_dimensions(self.p, self.n1, self.n2, self.M, reduced=True,
                                             atoms=self.base)

    def ranks(self):
        return self.spikes.ranks(self.p, self.model)

    def geometry(self):
        """ The fields two configurations must share to be compared."""
        return self.p, self.n1, self.n2, self.spikes

    @classmethod
    def from_dict(cls, data):
        """ Build a ModelConfig from a nested dict with the sections
        model, spikes, sigma, dist, truncation, mc and regime.
        """
        try:
            model = data['model']
            spikes = data.get('spikes') or {}
            values = list(spikes.get('values') or [])
            mults = list(spikes.get('multiplicities') or [1] * len(values))
            if len(mults) != len(values):
                raise ConfigError('Got {} spike values and {} multiplicities.'.format(
                    len(values), len(mults)))

            sigma = data.get('sigma') or {}
            dist = data.get('dist') or {}
            trunc = data.get('truncation') or {}
            mc = data.get('mc') or {}

            return cls(p=model['p'], n1=model['n1'], n2=model['n2'],
                       sigma_case=SigmaCase(sigma.get('case', 'case1'),
                                            float(sigma.get('rho', 0.0))),
                       spikes=SpikeSpec(zip(values, mults)),
                       dist_x=SampleDistribution(dist.get('x', 'gaussian')),
                       dist_y=SampleDistribution(dist.get('y', 'gaussian')),
                       truncation=TruncationPolicy(float(trunc.get('exponent', 0.125)),
                                                   float(trunc.get('scale', 1.0))),
                       reps=mc.get('reps', 1),
                       seed=mc.get('seed', 0),
                       regime=data.get('regime', 'assumptionD'),
                       base=model.get('base', [[1.0, 1.0]]),
                       ratios=model.get('ratios', 'nominal'),
                       n_cpus=mc.get('n_cpus', 1))
        except KeyError as ke:
            raise ConfigError('Missing configuration entry {}.'.format(ke)) from ke
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError('Invalid configuration value: {}.'.format(exc)) from exc

    def to_dict(self):
        """ Nested dict with the `from_dict` schema, made of plain Python types."""
        return {'model': {'p': self.p, 'n1': self.n1, 'n2': self.n2,
                          'base': [[t, w] for t, w in self.base],
                          'ratios': self.ratios},
                'spikes': {'values': [float(a) for a in self.spikes.alphas],
                           'multiplicities': [int(m) for m in self.spikes.mults]},
                'sigma': {'case': self.sigma_case.kind, 'rho': self.sigma_case.rho},
                'dist': {'x': self.dist_x.kind, 'y': self.dist_y.kind},
                'truncation': {'exponent': self.truncation.eta_exponent,
                               'scale': self.truncation.eta_scale},
                'mc': {'reps': self.reps, 'seed': self.seed, 'n_cpus': self.n_cpus},
                'regime': self.regime.value}

    @property
    def fingerprint(self):
        """ sha1 of the canonical YAML dump of the configuration, without the
        number of worker processes, which does not change any result."""
        data = self.to_dict()
        del data['mc']['n_cpus']
        dump = yaml.safe_dump(data, default_flow_style=False, sort_keys=True)
        return hashlib.sha1(dump.encode('utf-8')).hexdigest()
