# -*- coding: utf-8 -*-
"""
Phase transition map of the spiked eigenvalues of a generalized Fisher matrix.

For a base measure H_n with atoms (t_i, w_i) and ratios c1 = c_{n1}, c2 = c_{n2}:

    psi_n(alpha) = alpha (1 - c1 sum w t/(t - alpha)) / (1 + c2 sum w alpha/(t - alpha))

A spike is distant when psi_n'(alpha) > 0; its sample eigenvalue then
converges to psi_n(alpha). Otherwise the limit is psi_n at the nearest
critical point on the side away from the closest base atom.
"""
import logging as log
from collections import namedtuple

import numpy as np
from scipy import optimize

from .errors import ClassificationError, ConfigError, DomainError, PoleError

POLE_TOL = 1e-12
CRITICAL_TOL = 1e-10

# search cap above the largest atom, relative to the spike or atom
UPPER_CAP = 1e4
# search floor below the smallest atom, relative to the spike
LOWER_CAP = 1e-8
GRID_SIZE = 1024


class SpikeSpec(object):
    """ Population spikes with their multiplicities.

    Parameters
    ----------
    groups: sequence of (alpha, mult)
        Positive distinct spikes and positive integer multiplicities.
        They are stored sorted by descending spike.
    """
    def __init__(self, groups):
        groups = [(float(alpha), int(mult)) for alpha, mult in groups]
        for alpha, mult in groups:
            if alpha <= 0:
                raise ConfigError('Spikes should be positive, got {}.'.format(alpha))
            if mult < 1:
                raise ConfigError('Multiplicities should be positive integers, '
                                  'got {} for the spike {}.'.format(mult, alpha))

        alphas = [alpha for alpha, _ in groups]
        if len(set(alphas)) != len(alphas):
            raise ConfigError('Spikes should be pairwise distinct, got {}.'.format(alphas))

        self._groups = tuple(sorted(groups, key=lambda g: -g[0]))

    @property
    def groups(self):
        return self._groups

    @property
    def alphas(self):
        return [alpha for alpha, _ in self._groups]

    @property
    def mults(self):
        return [mult for _, mult in self._groups]

    @property
    def M(self):
        return sum(self.mults)

    def __len__(self):
        return len(self._groups)

    def __iter__(self):
        return iter(self._groups)

    def __eq__(self, other):
        return isinstance(other, SpikeSpec) and self._groups == other._groups

    def __hash__(self):
        return hash(self._groups)

    def __repr__(self):
        return 'SpikeSpec({})'.format(list(self._groups))

    def population_eigenvalues(self, p, model):
        """ Return the p population eigenvalues of T_p^* T_p in descending
        order together with the group index of each one (-1 for non-spiked).
        """
        if p <= self.M:
            raise ConfigError('Expected p > M, got p={} and M={}.'.format(p, self.M))

        values = list(model.eigenvalues(p - self.M))
        labels = [-1] * len(values)
        for k, (alpha, mult) in enumerate(self._groups):
            values.extend([alpha] * mult)
            labels.extend([k] * mult)

        values = np.array(values)
        labels = np.array(labels)
        # spikes go first among equal values
        order = np.lexsort((labels == -1, -values))
        return values[order], labels[order]

    def ranks(self, p, model):
        """ Return the J_k index sets, 0-based positions of each spike group
        among the descending eigenvalues of T_p^* T_p.

        Returns
        -------
        ranks: list of np.ndarray of int
            One consecutive index array per group, in the order of `groups`.
        """
        _, labels = self.population_eigenvalues(p, model)
        return [np.flatnonzero(labels == k) for k in range(len(self._groups))]


class PhaseResult(namedtuple('PhaseResult', ('alpha', 'psi_n', 'psi_prime', 'distant',
                                             'rho', 'critical_point'))):
    """ Classification of one spike.

    `critical_point` is the spike at which psi_n' vanishes when the spike is
    not distant, None otherwise.
    """
    __slots__ = ()


def _check_alpha(alpha, model):
    ts = model.ts
    if np.any(np.abs(ts - alpha) <= POLE_TOL * ts):
        raise DomainError('The spike {} coincides with a base atom of {}.'.format(alpha, ts))


def _sums(alpha, model):
    ts, ws = model.ts, model.ws
    diff = ts - alpha
    s1 = np.sum(ws * ts / diff)
    s2 = np.sum(ws * alpha / diff)
    # both sums have the same derivative in alpha
    ds = np.sum(ws * ts / diff ** 2)
    return s1, s2, ds


def psi_n(alpha, model, c_n1, c_n2):
    """ Phase transition map at the spike `alpha`.

    Parameters
    ----------
    alpha: float
        Positive spike, not equal to any base atom.

    model: SpectralModel
        Provides the base measure H_n.

    c_n1, c_n2: float
        Dimension to sample size ratios.

    Returns
    -------
    psi: float

    Raises
    ------
    DomainError
        If `alpha` equals a base atom.

    PoleError
        If the denominator vanishes.
    """
    _check_alpha(alpha, model)
    s1, s2, _ = _sums(alpha, model)
    den = 1 + c_n2 * s2
    if abs(den) < POLE_TOL:
        raise PoleError('psi_n has a pole at {}.'.format(alpha))
    return alpha * (1 - c_n1 * s1) / den


def psi_prime(alpha, model, c_n1, c_n2):
    """ Analytic derivative of `psi_n` in alpha, same arguments and errors."""
    _check_alpha(alpha, model)
    s1, s2, ds = _sums(alpha, model)
    den = 1 + c_n2 * s2
    if abs(den) < POLE_TOL:
        raise PoleError('psi_n has a pole at {}.'.format(alpha))

    num = alpha * (1 - c_n1 * s1)
    dnum = (1 - c_n1 * s1) - alpha * c_n1 * ds
    dden = c_n2 * ds
    return (dnum * den - num * dden) / den ** 2


def _safe_prime(alpha, model, c_n1, c_n2):
    try:
        return psi_prime(alpha, model, c_n1, c_n2)
    except (PoleError, DomainError):
        return np.nan


def _search_interval(alpha, model):
    """ Interval away from the nearest base atom, bounded by the next atom."""
    ts = model.ts
    nearest = ts[np.argmin(np.abs(ts - alpha))]
    if alpha > nearest:
        above = ts[ts > alpha]
        upper = above.min() if above.size else UPPER_CAP * max(alpha, ts.max())
        return 'up', (alpha, upper)
    else:
        below = ts[ts < alpha]
        lower = below.max() if below.size else LOWER_CAP * alpha
        return 'down', (lower, alpha)


def _bracket(alpha, model, c_n1, c_n2, direction, interval):
    lo, hi = interval
    # stay off the atoms at the ends of the interval
    grid = np.geomspace(lo, hi, GRID_SIZE)[1:-1]
    if direction == 'up':
        grid = np.concatenate(([alpha], grid[grid > alpha]))
    else:
        grid = np.concatenate(([alpha], grid[grid < alpha][::-1]))

    values = np.array([_safe_prime(x, model, c_n1, c_n2) for x in grid])
    finite = np.isfinite(values)
    prev = None
    for x, v, ok in zip(grid, values, finite):
        if not ok:
            continue
        if prev is not None and np.sign(prev[1]) != np.sign(v):
            return tuple(sorted((prev[0], x)))
        prev = (x, v)

    sampled = values[finite]
    prange = (sampled.min(), sampled.max()) if sampled.size else (np.nan, np.nan)
    raise ClassificationError(alpha, interval, prange)


def critical_spike(alpha, model, c_n1, c_n2):
    """ Nearest zero of psi_n' from a non-distant `alpha`, searching away from
    the closest base atom.

    Raises
    ------
    ClassificationError
        If no sign change of psi_n' is found in the search interval.
    """
    if psi_prime(alpha, model, c_n1, c_n2) == 0:
        return alpha

    direction, interval = _search_interval(alpha, model)
    lo, hi = _bracket(alpha, model, c_n1, c_n2, direction, interval)
    root = optimize.brentq(psi_prime, lo, hi, args=(model, c_n1, c_n2),
                           xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)

    residual = abs(psi_prime(root, model, c_n1, c_n2))
    if residual > CRITICAL_TOL:
        log.warning('Critical point {} of the spike {} has |psi\'| = {:.3g}.'.format(root, alpha,
                                                                                  residual))
    return root


def classify_spike(alpha, model, c_n1, c_n2):
    """ Return the PhaseResult of a single spike."""
    psi = psi_n(alpha, model, c_n1, c_n2)
    prime = psi_prime(alpha, model, c_n1, c_n2)
    if prime > 0:
        result = PhaseResult(alpha, psi, prime, True, psi, None)
    else:
        crit = critical_spike(alpha, model, c_n1, c_n2)
        result = PhaseResult(alpha, psi, prime, False, psi_n(crit, model, c_n1, c_n2), crit)

    if not np.isfinite(result.rho) or result.rho <= 0:
        log.warning('The limit of the spike {} is {}.'.format(alpha, result.rho))

    log.info('Spike {}: psi_n={:.6g}, psi\'={:.6g}, distant={}, rho={:.6g}.'.format(
        alpha, result.psi_n, result.psi_prime, result.distant, result.rho))
    return result


def classify(spec, model, c_n1, c_n2):
    """ Classify every spike group of `spec`.

    Parameters
    ----------
    spec: SpikeSpec

    model: SpectralModel

    c_n1, c_n2: float

    Returns
    -------
    results: list of PhaseResult
        In the order of `spec.groups`.
    """
    return [classify_spike(alpha, model, c_n1, c_n2) for alpha in spec.alphas]


def critical_points(model, c_n1, c_n2, grid_size=4 * GRID_SIZE):
    """ All the zeros of psi_n' on the positive axis.

    For the unit base atom the values of psi_n at these points are the edges
    of the Wachter support.

    Returns
    -------
    points: np.ndarray
        Sorted ascending.
    """
    ts = model.ts
    grid = np.geomspace(LOWER_CAP * ts.min(), UPPER_CAP * ts.max(), grid_size)
    values = np.array([_safe_prime(x, model, c_n1, c_n2) for x in grid])

    points = []
    prev = None
    for x, v in zip(grid, values):
        if not np.isfinite(v):
            prev = None
            continue
        if prev is not None and np.sign(prev[1]) != np.sign(v):
            # atoms between the two grid points are poles of psi_n, not zeros of psi_n'
            if not np.any((ts > prev[0]) & (ts < x)):
                points.append(optimize.brentq(psi_prime, prev[0], x, args=(model, c_n1, c_n2),
                                              xtol=1e-15, rtol=4 * np.finfo(float).eps))
        prev = (x, v)
    return np.array(points)


def consistency_residual(alpha, c_n2, bundle):
    """ |lam + c2 lam^2 m(lam) + lam m_under(lam) alpha| with lam = bundle.lam.

    Vanishes when lam = psi_n(alpha) for a distant spike.
    """
    lam = bundle.lam
    return abs(lam + c_n2 * lam ** 2 * bundle.m + lam * bundle.m_under * alpha)
