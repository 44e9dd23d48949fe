# -*- coding: utf-8 -*-
"""
Population distributions of the entries of X and Y and the
truncation-centralization step applied before the eigen-solve.
"""
import functools
from collections import namedtuple

import numpy as np
from scipy import special, stats

from ..errors import ConfigError, DegenerateError

DISTRIBUTIONS = ('gaussian', 'rademacher', 'heavyTail4')

# |X| of heavyTail4 is uniform below e and has P(|X| > t) = t^-4 / log t above
_E = np.e
_BODY_MASS = 1.0 - np.exp(-4.0)

MIN_SCALE = 1e-8


def _heavy_survival(t):
    return t ** -4.0 / np.log(t)


def _heavy_density(r):
    """ Density of the raw (unstandardized) |X| of heavyTail4."""
    if r < _E:
        return _BODY_MASS / _E
    lr = np.log(r)
    return 4.0 * r ** -5.0 / lr + r ** -5.0 / lr ** 2


@functools.lru_cache(maxsize=None)
def _heavy_raw_moment2(upper=np.inf):
    """ E[R^2 1{R < upper}] for the raw |X| of heavyTail4.

    Above e, integrating r^2 against the density by parts leaves
    2 int r^-3 / log r dr, which is an exponential integral after r = e^s.
    """
    upper = float(upper)
    body_end = min(upper, _E)
    body = _BODY_MASS / _E * body_end ** 3 / 3.0
    if upper <= _E:
        return body
    log_upper = np.log(upper)
    tail = (_E ** -2 - upper ** -2 / log_upper
            + 2 * special.exp1(2.0) - 2 * special.exp1(2 * log_upper))
    return body + tail


def _heavy_quantile(u):
    """ Inverse CDF of the raw |X| of heavyTail4."""
    u = np.asarray(u, dtype=float)
    out = np.empty_like(u)
    body = u <= _BODY_MASS
    out[body] = _E * u[body] / _BODY_MASS
    q = 1.0 - u[~body]
    # q = t^-4 / log t  <=>  4 log t = W(4 / q)
    out[~body] = np.exp(special.lambertw(4.0 / q).real / 4.0)
    return out


class SampleDistribution(namedtuple('SampleDistribution', ('kind',))):
    """ Distribution of the i.i.d. entries, standardized to mean 0 and variance 1.

    Parameters
    ----------
    kind: str
        'gaussian', 'rademacher' or 'heavyTail4'.
        heavyTail4 is symmetric with P(|X| > t) = t^-4 / log t for t >= e
        before standardization, so E X^4 is infinite while t^4 P(|X| > t) -> 0.
    """
    __slots__ = ()

    def __new__(cls, kind):
        if kind not in DISTRIBUTIONS:
            raise ConfigError('Expected a distribution in {}, got {}.'.format(DISTRIBUTIONS, kind))
        return super(SampleDistribution, cls).__new__(cls, kind)

    @property
    def fourth_moment(self):
        return {'gaussian': 3.0, 'rademacher': 1.0, 'heavyTail4': np.inf}[self.kind]

    @property
    def heavy_scale(self):
        """ Standard deviation of the raw heavyTail4 variable."""
        return np.sqrt(_heavy_raw_moment2())

    def draw(self, rng, shape):
        """ Draw an array of `shape` i.i.d. entries from `rng`."""
        if self.kind == 'gaussian':
            return rng.standard_normal(shape)
        elif self.kind == 'rademacher':
            return rng.choice(np.array([-1.0, 1.0]), size=shape)
        else:
            signs = rng.choice(np.array([-1.0, 1.0]), size=shape)
            radii = _heavy_quantile(rng.random(shape))
            return signs * radii / self.heavy_scale

    def truncated_moment2(self, threshold):
        """ E[X^2 1{|X| < threshold}], the variance after truncation since
        all kinds are symmetric."""
        t = float(threshold)
        if self.kind == 'gaussian':
            return 1.0 - 2.0 * stats.norm.sf(t) - 2.0 * t * stats.norm.pdf(t)
        elif self.kind == 'rademacher':
            return 1.0 if t > 1 else 0.0
        else:
            scale = self.heavy_scale
            return _heavy_raw_moment2(t * scale) / scale ** 2


class TruncationPolicy(namedtuple('TruncationPolicy', ('eta_exponent', 'eta_scale'))):
    """ eta_n = eta_scale * n^-eta_exponent, the entries are cut at eta_n sqrt(n)."""
    __slots__ = ()

    def __new__(cls, eta_exponent=0.125, eta_scale=1.0):
        if not 0 < eta_exponent < 0.5:
            raise ConfigError('The truncation exponent should be in (0, 1/2), '
                              'got {}.'.format(eta_exponent))
        if eta_scale <= 0:
            raise ConfigError('The truncation scale should be positive, got {}.'.format(eta_scale))
        return super(TruncationPolicy, cls).__new__(cls, float(eta_exponent), float(eta_scale))

    def eta(self, n):
        return self.eta_scale * n ** -self.eta_exponent

    def threshold(self, n):
        return self.eta(n) * np.sqrt(n)


def draw_matrix(dist, p, n, rng):
    """ p x n matrix of i.i.d. standardized entries of `dist`."""
    return dist.draw(rng, (p, n))


def truncate_center_scale(X, n, policy, dist=None):
    """ Truncate the entries of `X` at eta_n sqrt(n), then center and scale them.

    Parameters
    ----------
    X: np.ndarray
        p x n data matrix.

    n: int
        Sample size, the number of columns of `X`.

    policy: TruncationPolicy

    dist: SampleDistribution or None
        When given, the exact moments of the truncated distribution are used,
        otherwise the empirical moments pooled over all the entries.

    Returns
    -------
    Z: np.ndarray

    Raises
    ------
    DegenerateError
        If the standard deviation after truncation is below 1e-8.
    """
    if X.shape[1] != n:
        raise ConfigError('Expected {} columns, got a matrix of shape {}.'.format(n, X.shape))

    threshold = policy.threshold(n)
    cut = np.where(np.abs(X) < threshold, X, 0.0)

    if dist is not None:
        mean, var = 0.0, dist.truncated_moment2(threshold)
    else:
        mean, var = cut.mean(), cut.var()

    sigma = np.sqrt(var)
    if sigma < MIN_SCALE:
        raise DegenerateError('Truncation at {:.4g} leaves a standard deviation of '
                              '{:.3g}.'.format(threshold, sigma))

    if mean == 0.0 and sigma == 1.0:
        return cut
    return (cut - mean) / sigma
