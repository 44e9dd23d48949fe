# -*- coding: utf-8 -*-
"""
Limiting spectral distribution of the non-spiked part of a Fisher matrix
and its Stieltjes transforms at real points outside the support.

Two backends evaluate the transforms:

- 'quadrature': closed form Wachter density integrated with scipy's adaptive
  quadrature, only for a base measure with a single atom at 1;
- 'montecarlo': resolvent traces of simulated non-spiked Fisher matrices,
  for any finite atomic base measure.
"""
import logging as log
from collections import namedtuple

import numpy as np
from scipy import integrate

from .config import get_config_setting
from .errors import (ConfigError,
                     DegenerateError,
                     DomainError,
                     SpikeInsideBulkError,
                     UnsupportedModelError)

# relative width of the forbidden band around the support edges
SUPPORT_MARGIN = 1e-6

# tolerance of the algebraic identities checked in StieltjesBundle
IDENTITY_RTOL = 1e-8

BACKENDS = ('quadrature', 'montecarlo')

_QUAD_KWARGS = dict(epsabs=1e-14, epsrel=1e-12, limit=200)


class SpectralModel(namedtuple('SpectralModel', ('atoms', 'y1', 'y2'))):
    """ Base (non-spiked) eigenvalue measure H_n and the two dimension ratios.

    Parameters
    ----------
    atoms: sequence of (t, w) pairs
        Positive eigenvalues `t` with positive weights `w` summing to 1.

    y1: float
        Dimension to first sample size ratio, positive.

    y2: float
        Dimension to second sample size ratio, in (0, 1).
    """
    __slots__ = ()

    def __new__(cls, atoms, y1, y2):
        atoms = tuple((float(t), float(w)) for t, w in atoms)
        if not atoms:
            raise ConfigError('The base measure needs at least one atom.')

        for t, w in atoms:
            if t <= 0 or w <= 0:
                raise ConfigError('Base measure atoms need positive location and weight, '
                                  'got ({}, {}).'.format(t, w))

        total = sum(w for _, w in atoms)
        if abs(total - 1) > 1e-12:
            raise ConfigError('Base measure weights should sum to 1, got {}.'.format(total))

        if len(set(t for t, _ in atoms)) != len(atoms):
            raise ConfigError('Base measure atoms should be distinct, got {}.'.format(atoms))

        if y1 <= 0:
            raise ConfigError('Expected y1 > 0, got {}.'.format(y1))

        if not 0 < y2 < 1:
            raise ConfigError('Expected y2 in (0, 1), got {}.'.format(y2))

        return super(SpectralModel, cls).__new__(cls, atoms, float(y1), float(y2))

    @classmethod
    def unit(cls, y1, y2):
        """ Model with H_n the point mass at 1."""
        return cls(((1.0, 1.0),), y1, y2)

    @classmethod
    def from_dimensions(cls, p, n1, n2, n_spikes=0, reduced=False, atoms=((1.0, 1.0),)):
        """ Model built from the problem dimensions.

        Parameters
        ----------
        p, n1, n2: int
            Dimension and the two sample sizes.

        n_spikes: int
            Total multiplicity M of the spikes.

        reduced: bool
            If True use (p - M)/n_i as ratios, otherwise p/n_i.

        atoms: sequence of (t, w) pairs
            Base measure.

        Returns
        -------
        model: SpectralModel
        """
        dim = p - n_spikes if reduced else p
        return cls(atoms, dim / float(n1), dim / float(n2))

    @property
    def ts(self):
        return np.array([t for t, _ in self.atoms])

    @property
    def ws(self):
        return np.array([w for _, w in self.atoms])

    @property
    def is_unit_atom(self):
        return len(self.atoms) == 1 and self.atoms[0][0] == 1.0

    def counts(self, size):
        """ Split `size` eigenvalues among the atoms proportionally to their
        weights, with largest remainder rounding.

        Returns
        -------
        counts: np.ndarray of int
            In the order of `atoms`, summing to `size`.
        """
        quotas = self.ws * size
        counts = np.floor(quotas).astype(int)
        remainder = size - counts.sum()
        # stable sort keeps ties in atom order
        order = np.argsort(-(quotas - counts), kind='mergesort')
        counts[order[:remainder]] += 1
        return counts

    def eigenvalues(self, size):
        """ Return `size` base eigenvalues in descending order."""
        values = np.repeat(self.ts, self.counts(size))
        return np.sort(values)[::-1]

    @property
    def zero_mass(self):
        """ Mass of the atom at zero of the Fisher LSD, nonzero when y1 > 1."""
        return max(0.0, 1.0 - 1.0 / self.y1)


class SupportInterval(namedtuple('SupportInterval', ('a', 'b'))):
    """ Edges of the continuous part of the Fisher LSD."""
    __slots__ = ()

    def __new__(cls, a, b):
        if not 0 < a < b:
            raise DomainError('Expected 0 < a < b for a support interval, '
                              'got ({}, {}).'.format(a, b))
        return super(SupportInterval, cls).__new__(cls, float(a), float(b))

    @property
    def margin(self):
        return SUPPORT_MARGIN * (self.b - self.a)

    def contains(self, x, margin=None):
        """ Return True if `x` lies in [a - margin, b + margin]."""
        margin = self.margin if margin is None else margin
        return self.a - margin <= x <= self.b + margin


class StieltjesBundle(namedtuple('StieltjesBundle',
                                 ('lam', 'm', 'm2', 'm3', 'm_under', 'm_under2'))):
    """ Stieltjes transforms of the non-spiked LSD and of its companion at `lam`.

    - m        = int 1/(x - lam) dF
    - m2       = int 1/(lam - x)^2 dF
    - m3       = int x/(lam - x)^2 dF
    - m_under  = int 1/(x - lam) dF_companion
    - m_under2 = int 1/(lam - x)^2 dF_companion

    The bundle needs the ratio y1 to check the companion relations, so build it
    with `from_transforms`.
    """
    __slots__ = ()

    @classmethod
    def from_transforms(cls, lam, m, m2, m3, y1):
        """ Derive the companion transforms and check all the identities.

        Raises
        ------
        DegenerateError
            If any of the identities or positivity constraints fails.
        """
        lam, m, m2, m3 = float(lam), float(m), float(m2), float(m3)
        m_under = -(1.0 - y1) / lam + y1 * m
        m_under2 = (1.0 - y1) / lam ** 2 + y1 * m2
        bundle = cls(lam, m, m2, m3, m_under, m_under2)
        bundle.check(y1)
        return bundle

    def check(self, y1):
        if self.m2 <= 0 or self.m_under2 <= 0:
            raise DegenerateError('Expected positive m2 and m_under2 at {}, '
                                  'got {} and {}.'.format(self.lam, self.m2, self.m_under2))

        scale = max(1.0, abs(self.lam * self.m2) + abs(self.m))
        if abs(self.m3 - (self.lam * self.m2 + self.m)) > IDENTITY_RTOL * scale:
            raise DegenerateError('m3 = lam m2 + m does not hold at {}: '
                                  '{} != {}.'.format(self.lam, self.m3,
                                                     self.lam * self.m2 + self.m))

        under = -(1.0 - y1) / self.lam + y1 * self.m
        under2 = (1.0 - y1) / self.lam ** 2 + y1 * self.m2
        if not (np.isclose(self.m_under, under, rtol=1e-12, atol=0) and
                np.isclose(self.m_under2, under2, rtol=1e-12, atol=0)):
            raise DegenerateError('Companion relations do not hold at {}.'.format(self.lam))


def _check_unit_atom(model):
    if not model.is_unit_atom:
        raise UnsupportedModelError('The closed form Wachter law needs H_n = delta_1, '
                                    'got atoms {}. Use the montecarlo '
                                    'backend instead.'.format(model.atoms))


def wachter_support(model):
    """ Return the edges (a, b) of the Wachter law of `model`.

    Parameters
    ----------
    model: SpectralModel
        Must have the single base atom at 1.

    Returns
    -------
    support: SupportInterval

    Raises
    ------
    UnsupportedModelError
        If `model` has any other base measure.
    """
    _check_unit_atom(model)
    y1, y2 = model.y1, model.y2
    h = np.sqrt(y1 + y2 - y1 * y2)
    a = (1 - h) ** 2 / (1 - y2) ** 2
    b = (1 + h) ** 2 / (1 - y2) ** 2
    return SupportInterval(a, b)


def wachter_density(x, model):
    """ Density of the continuous part of the Wachter law.

    Parameters
    ----------
    x: float or array of float
        Positive evaluation points.

    model: SpectralModel

    Returns
    -------
    density: float or np.ndarray
        Zero outside [a, b].

    Raises
    ------
    DomainError
        If any `x` <= 0.
    """
    support = wachter_support(model)
    xs = np.asarray(x, dtype=float)
    if np.any(xs <= 0):
        raise DomainError('The Wachter density is defined for x > 0, got {}.'.format(x))

    y1, y2 = model.y1, model.y2
    a, b = support
    inside = (xs > a) & (xs < b)
    # clip only to keep the square root real outside the support
    prod = np.clip((b - xs) * (xs - a), 0, None)
    dens = np.where(inside,
                    (1 - y2) * np.sqrt(prod) / (2 * np.pi * xs * (y1 + y2 * xs)),
                    0.0)
    if np.ndim(x) == 0:
        return float(dens)
    return dens


def wachter_mean(model):
    """ First moment of the Wachter law, 1/(1 - y2)."""
    _check_unit_atom(model)
    return 1.0 / (1.0 - model.y2)


def _wachter_integral(func, model):
    """ Integrate func(x) against the continuous part of the Wachter law
    using the substitution x = mid + half sin(theta), which removes the square
    root singularity at both edges.
    """
    a, b = wachter_support(model)
    y1, y2 = model.y1, model.y2
    mid, half = (a + b) / 2, (b - a) / 2

    def integrand(theta):
        x = mid + half * np.sin(theta)
        c = half * np.cos(theta)
        return (1 - y2) * c * c / (2 * np.pi * x * (y1 + y2 * x)) * func(x)

    value, abserr = integrate.quad(integrand, -np.pi / 2, np.pi / 2, **_QUAD_KWARGS)
    log.debug('Wachter quadrature value {} with error estimate {}.'.format(value, abserr))
    return value


def check_outside_support(lam, model):
    """ Raise SpikeInsideBulkError if `lam` is within the support margin of
    the Wachter law of `model`."""
    support = wachter_support(model)
    if support.contains(lam):
        raise SpikeInsideBulkError('Evaluation point {} is inside [{}, {}] enlarged by the '
                                   'margin {:.3g}.'.format(lam, support.a, support.b,
                                                           support.margin))
    return support


def _quadrature_bundle(lam, model):
    check_outside_support(lam, model)

    mass = model.zero_mass
    m = _wachter_integral(lambda x: 1 / (x - lam), model) - mass / lam
    m2 = _wachter_integral(lambda x: 1 / (lam - x) ** 2, model) + mass / lam ** 2
    m3 = _wachter_integral(lambda x: x / (lam - x) ** 2, model)
    return StieltjesBundle.from_transforms(lam, m, m2, m3, model.y1)


def _resolvent_traces(task):
    """ Per replication resolvent traces of one non-spiked Fisher matrix."""
    from .simulate.fisher import non_spiked_fisher_eigs

    lam, model, dim, seed, rep = task
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(rep,)))
    eigs = non_spiked_fisher_eigs(model, dim, rng)
    return (eigs.min(), eigs.max(),
            np.mean(1 / (eigs - lam)),
            np.mean(1 / (lam - eigs) ** 2),
            np.mean(eigs / (lam - eigs) ** 2))


def _montecarlo_bundle(lam, model, dimension=None, reps=None, seed=0, n_cpus=None):
    from .run import run_replications

    dimension = dimension or get_config_setting('montecarlo.dimension', 2000)
    reps = get_config_setting('montecarlo.reps', 20) if reps is None else reps
    n_cpus = n_cpus or get_config_setting('montecarlo.n_cpus', 1)

    if reps < 2:
        raise ConfigError('The montecarlo backend needs at least 2 replicates, '
                          'got {}.'.format(reps))

    if model.is_unit_atom:
        check_outside_support(lam, model)

    tasks = [(lam, model, dimension, seed, r) for r in range(reps)]
    traces = np.array(run_replications(_resolvent_traces, tasks, n_cpus=n_cpus))

    lo, hi = traces[:, 0].min(), traces[:, 1].max()
    margin = SUPPORT_MARGIN * (hi - lo)
    if lo - margin <= lam <= hi + margin:
        raise SpikeInsideBulkError('Evaluation point {} lies inside the simulated spectrum '
                                   '[{}, {}].'.format(lam, lo, hi))

    m, m2, m3 = traces[:, 2:].mean(axis=0)
    log.debug('Monte Carlo transforms at {} from {} replicates of dimension {}: '
              'm={}, m2={}.'.format(lam, reps, dimension, m, m2))
    return StieltjesBundle.from_transforms(lam, m, m2, m3, model.y1)


def stieltjes(lam, model, backend='quadrature', **mc_kwargs):
    """ Evaluate the transform bundle of `model` at the real point `lam`.

    Parameters
    ----------
    lam: float
        Nonzero real point outside the support of the LSD.

    model: SpectralModel

    backend: str
        'quadrature' or 'montecarlo'.

    mc_kwargs: keyword arguments
        Only for the 'montecarlo' backend:
        dimension: int
            Dimension of the simulated matrices.
            Default: the montecarlo.dimension setting, 2000.
        reps: int
            Number of independent matrices, at least 2.
            Default: the montecarlo.reps setting, 20.
        seed: int
            Root seed. Default: 0.
        n_cpus: int
            Number of worker processes.
            Default: the montecarlo.n_cpus setting, 1.

    Returns
    -------
    bundle: StieltjesBundle

    Raises
    ------
    SpikeInsideBulkError
        If `lam` is inside the support enlarged by the margin.

    ConfigError
        For an unknown backend or fewer than 2 Monte Carlo replicates.
    """
    if lam == 0:
        raise DomainError('The transforms are not evaluated at 0.')

    if backend == 'quadrature':
        if mc_kwargs:
            raise ConfigError('Unexpected arguments for the quadrature '
                              'backend: {}.'.format(sorted(mc_kwargs)))
        return _quadrature_bundle(lam, model)
    elif backend == 'montecarlo':
        return _montecarlo_bundle(lam, model, **mc_kwargs)
    else:
        raise ConfigError('Expected a backend in {}, got {}.'.format(BACKENDS, backend))
