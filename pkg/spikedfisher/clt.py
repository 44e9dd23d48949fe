# -*- coding: utf-8 -*-
"""
Parameters of the limiting law of the normalized spiked eigenvalues

    gamma_kj = sqrt(p - M) (l_{p,j} / psi_n(alpha_k) - 1),  j in J_k,

which converge to the eigenvalues of -(1/kappa_s) [Omega]_kk, a symmetric
Gaussian matrix with variance var_off off the diagonal and var_diag on it.
"""
import enum
import logging as log
from collections import namedtuple

import numpy as np
import pandas as pd

from .errors import (ConfigError,
                     DegenerateError,
                     MismatchError,
                     UnsupportedModelError)
from .lsd import stieltjes, wachter_support
from .phase import classify
from .utils.pandas import labeled_frame

DEGENERATE_TOL = 1e-12


class Regime(enum.Enum):
    """ Which variance structure the diagonal of [Omega]_kk has."""
    assumptionD = 'assumptionD'
    diagonalBlock = 'diagonalBlock'


class MomentProfile(namedtuple('MomentProfile', ('fourth_moment', 'beta',
                                                 'column_fourth_power_sums'))):
    """ Fourth moment information of one of the two samples.

    Parameters
    ----------
    fourth_moment: float
        E|x|^4, may be numpy.inf.

    beta: float or None
        sum_t u_ts^4 (E|x|^4 - 3). None when the fourth moment is infinite, in
        which case only the delocalized regime can be used.

    column_fourth_power_sums: np.ndarray or None
        sum_t u_ts^4 of each spiked eigenvector, when they were given.
    """
    __slots__ = ()

    def __new__(cls, fourth_moment, beta, column_fourth_power_sums=None):
        if np.isinf(fourth_moment) and beta is not None:
            raise ConfigError('An infinite fourth moment has no usable beta, got {}.'.format(beta))
        if not np.isinf(fourth_moment) and beta is None:
            raise ConfigError('A finite fourth moment needs a beta.')
        return super(MomentProfile, cls).__new__(cls, float(fourth_moment), beta,
                                                 column_fourth_power_sums)

    @classmethod
    def gaussian(cls):
        return cls(3.0, 0.0)

    @classmethod
    def diagonal(cls, fourth_moment):
        """ Profile of a diagonal Sigma1 Sigma2^-1, beta = E|x|^4 - 3."""
        if np.isinf(fourth_moment):
            return cls(np.inf, None)
        return cls(fourth_moment, fourth_moment - 3.0)

    @classmethod
    def from_eigenvectors(cls, fourth_moment, columns):
        """ Profile from the spiked eigenvectors of one spike group.

        Parameters
        ----------
        fourth_moment: float

        columns: np.ndarray
            p x m_k matrix whose columns are the group's spiked eigenvectors.
            beta = sum_t u_ts^4 (E|x|^4 - 3), averaged over the columns. It is
            E|x|^4 - 3 for canonical columns and vanishes for delocalized ones.
        """
        columns = np.atleast_2d(np.asarray(columns, dtype=float).T).T
        sums = np.sum(columns ** 4, axis=0)
        if np.isinf(fourth_moment):
            return cls(np.inf, None, sums)
        return cls(fourth_moment, float(np.mean(sums) * (fourth_moment - 3.0)), sums)

    @property
    def is_gaussian(self):
        return self.beta == 0


class CltLaw(namedtuple('CltLaw', ('alpha', 'psi_n', 'kappa', 'theta', 'nu1', 'nu2',
                                   'beta_x', 'beta_y', 'var_diag', 'var_off', 'mult',
                                   'scale_dim', 'regime'))):
    """ Limit law of the gamma statistics of one spike group."""
    __slots__ = ()

    @property
    def sigma2(self):
        """ Variance of the normal limit of a single spike."""
        return self.var_diag / self.kappa ** 2


def _check_point(psi, bundle):
    if not np.isclose(bundle.lam, psi, rtol=1e-12, atol=0):
        raise MismatchError('The transforms were evaluated at {}, not at psi = {}.'.format(
            bundle.lam, psi))


def kappa_s(alpha, psi, bundle, c2):
    """ kappa_s = 1 + c2 psi^2 m2 + 2 c2 psi m + alpha psi m_under2 + alpha m_under.

    Parameters
    ----------
    alpha: float
        Spike.

    psi: float
        psi_n(alpha), the point where `bundle` was evaluated.

    bundle: StieltjesBundle

    c2: float

    Raises
    ------
    MismatchError
        If `bundle` was not evaluated at `psi`.
    """
    _check_point(psi, bundle)
    b = bundle
    return (1 + c2 * psi ** 2 * b.m2 + 2 * c2 * psi * b.m +
            alpha * psi * b.m_under2 + alpha * b.m_under)


def theta_k(alpha, psi, bundle, c1, c2):
    """ theta_k = c2 + c2^2 psi^2 m2 + 2 c2^2 psi m + c1 alpha^2 m_under2 + 2 c1 c2 alpha m3.

    Same arguments and errors as `kappa_s`.
    """
    _check_point(psi, bundle)
    b = bundle
    return (c2 + c2 ** 2 * psi ** 2 * b.m2 + 2 * c2 ** 2 * psi * b.m +
            c1 * alpha ** 2 * b.m_under2 + 2 * c1 * c2 * alpha * b.m3)


def nu_coefficients(alpha, psi, bundle, c1, c2):
    """ Fourth moment coefficients of the diagonal variance in the
    diagonal-block regime.

    Returns
    -------
    nu1, nu2: float
        c1 alpha^2 / (psi (1 + c1 m))^2 and c2 (1 + c2 psi m)^2.

    Raises
    ------
    DegenerateError
        If 1 + c1 m(psi) vanishes.
    """
    _check_point(psi, bundle)
    shift = 1 + c1 * bundle.m
    if abs(shift) < DEGENERATE_TOL:
        raise DegenerateError('1 + c1 m(psi) vanishes at psi = {}.'.format(psi))
    nu1 = c1 * alpha ** 2 / (psi * shift) ** 2
    nu2 = c2 * (1 + c2 * psi * bundle.m) ** 2
    return nu1, nu2


def limit_law(phase, bundle, profile_x, profile_y, regime, c1, c2, mult=1, scale_dim=None):
    """ Assemble the limit law of a distant spike group.

    Parameters
    ----------
    phase: PhaseResult

    bundle: StieltjesBundle
        Evaluated at phase.psi_n.

    profile_x, profile_y: MomentProfile

    regime: Regime or str

    c1, c2: float

    mult: int
        Multiplicity of the group.

    scale_dim: int
        p - M, the dimension used in the gamma normalization.

    Returns
    -------
    law: CltLaw

    Raises
    ------
    UnsupportedModelError
        If the spike is not distant.

    ConfigError
        If the diagonal-block regime is asked with an infinite fourth moment.
    """
    regime = Regime(regime)
    if not phase.distant:
        raise UnsupportedModelError('There is no CLT for the non-distant spike {}.'.format(
            phase.alpha))

    alpha, psi = phase.alpha, phase.psi_n
    kappa = kappa_s(alpha, psi, bundle, c2)
    if abs(kappa) < DEGENERATE_TOL:
        raise DegenerateError('kappa_s vanishes for the spike {}.'.format(alpha))

    theta = theta_k(alpha, psi, bundle, c1, c2)
    nu1, nu2 = nu_coefficients(alpha, psi, bundle, c1, c2)

    if regime is Regime.assumptionD:
        beta_x = beta_y = 0.0
    else:
        if profile_x.beta is None or profile_y.beta is None:
            raise ConfigError('The diagonalBlock regime needs finite fourth moments.')
        beta_x, beta_y = profile_x.beta, profile_y.beta

    var_diag = 2 * theta + beta_x * nu1 + beta_y * nu2
    if var_diag <= 0:
        raise DegenerateError('Non-positive diagonal variance {} for the spike {}.'.format(
            var_diag, alpha))

    return CltLaw(alpha, psi, kappa, theta, nu1, nu2, beta_x, beta_y,
                  var_diag, theta, int(mult), scale_dim, regime)


def sample_limit(law, count, seed=None):
    """ Draw from the limit law of the gamma statistics of a spike group.

    Parameters
    ----------
    law: CltLaw

    count: int
        Number of draws.

    seed: int or numpy.random.SeedSequence

    Returns
    -------
    samples: np.ndarray
        count x mult, each row sorted descending.
    """
    if count < 1:
        raise ConfigError('Expected a positive count, got {}.'.format(count))

    rng = np.random.default_rng(seed)
    k = law.mult
    w = rng.normal(0, np.sqrt(law.var_off), size=(count, k, k))
    w = np.triu(w, 1)
    w = w + np.swapaxes(w, 1, 2)
    idx = np.arange(k)
    w[:, idx, idx] = rng.normal(0, np.sqrt(law.var_diag), size=(count, k))

    eigs = np.linalg.eigvalsh(-w / law.kappa)
    return eigs[:, ::-1]


class TheoryReport(namedtuple('TheoryReport', ('support', 'phases', 'bundles', 'laws',
                                               'mults'))):
    """ Theory of every spike group of a configuration.

    `bundles` and `laws` hold None for non-distant groups, `support` is None
    when the base measure is not the unit atom.
    """
    __slots__ = ()

    COLUMNS = ('psi_n', 'psi_prime', 'rho', 'kappa', 'theta', 'var_diag', 'var_off', 'sigma2')

    def to_frame(self):
        """ One row per spike group, indexed by the spike."""
        rows = []
        for phase, law, mult in zip(self.phases, self.laws, self.mults):
            row = [phase.psi_n, phase.psi_prime, phase.rho]
            if law is None:
                row.extend([np.nan] * 5)
            else:
                row.extend([law.kappa, law.theta, law.var_diag, law.var_off,
                            law.sigma2 if mult == 1 else np.nan])
            rows.append(row)

        index = pd.Index([phase.alpha for phase in self.phases], name='alpha')
        values = np.array(rows, dtype=float).reshape(len(rows), len(self.COLUMNS))
        return labeled_frame(values, index, list(self.COLUMNS),
                             distant=[phase.distant for phase in self.phases],
                             mult=list(self.mults))


def group_profiles(config):
    """ The moment profiles (x, y) of every spike group of `config`.

    Sigma2 is the identity, so the left and right singular vectors of the
    spiked part of Sigma1^1/2 Sigma2^-1/2 are both the population eigenvectors
    of the group: canonical columns in case1, Toeplitz eigenvectors in case2.

    Returns
    -------
    profiles: list of (MomentProfile, MomentProfile)
    """
    from .simulate.fisher import build_sigma

    fx, fy = config.dist_x.fourth_moment, config.dist_y.fourth_moment
    if config.sigma_case.kind == 'case1':
        return [(MomentProfile.diagonal(fx), MomentProfile.diagonal(fy))] * len(config.spikes)

    basis = build_sigma(config).eigvecs
    profiles = []
    for idx in config.ranks():
        columns = basis[:, idx]
        profiles.append((MomentProfile.from_eigenvectors(fx, columns),
                         MomentProfile.from_eigenvectors(fy, columns)))
    return profiles


def theory_table(config, backend='quadrature', **mc_kwargs):
    """ Phase, transforms and limit law of every spike group of `config`.

    Parameters
    ----------
    config: ModelConfig

    backend: str
        Transform backend, see `lsd.stieltjes`.

    mc_kwargs: keyword arguments
        Passed to the Monte Carlo backend.

    Returns
    -------
    report: TheoryReport
    """
    psi_c1, psi_c2 = config.psi_ratios
    c1, c2 = config.clt_ratios
    model = config.model
    support = wachter_support(model) if model.is_unit_atom else None
    profiles = group_profiles(config)

    phases = classify(config.spikes, model, psi_c1, psi_c2)
    bundles, laws = [], []
    for phase, mult, (profile_x, profile_y) in zip(phases, config.spikes.mults, profiles):
        if not phase.distant:
            log.info('Spike {} is not distant, no CLT row.'.format(phase.alpha))
            bundles.append(None)
            laws.append(None)
            continue

        bundle = stieltjes(phase.psi_n, model, backend=backend, **mc_kwargs)
        bundles.append(bundle)
        laws.append(limit_law(phase, bundle, profile_x, profile_y, config.regime,
                              c1, c2, mult=mult, scale_dim=config.scale_dim))

    return TheoryReport(support, phases, bundles, laws, tuple(config.spikes.mults))
