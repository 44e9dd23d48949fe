# -*- coding: utf-8 -*-
"""
Direct evaluation of the M x M random matrix Omega_M(lambda, X, Y) whose
fluctuations drive the spiked eigenvalues, split in its five terms.

With T = Sigma1^1/2 Sigma2^-1/2 = U diag(D^1/2) V^T, the spike columns (J)
and the remaining ones (c) give the blocks U1, U2, V1, V2, D1, D2, and

    S2~ = Y Y^T / n2,        Q = V2^T S2~ V2,
    F~  = Q^-1/2 D2^1/2 U2^T X X^T U2 D2^1/2 Q^-1/2 / n1,
    F_~ = the n1 x n1 companion of F~.

Both resolvents are evaluated through the eigenbasis of F~.
"""
import functools
import logging as log
from collections import namedtuple

import numpy as np
from scipy import linalg

from ..errors import HarnessError, ResolventError, SpikedFisherError, SpikeInsideBulkError
from ..phase import classify_spike
from ..run import run_replications
from ..simulate.fisher import build_sigma
from ..simulate.montecarlo import MAX_FAILURE_RATE, child_rng, draw_samples

ORTHO_TOL = 1e-10
MAX_CONDITION = 1e12
TERM_NAMES = ('omega1', 'omega2', 'omega3', 'omega4', 'omega5')


class SvdParts(namedtuple('SvdParts', ('U1', 'U2', 'V1', 'V2', 'D1', 'D2'))):
    """ Spiked (1) and non-spiked (2) blocks of the singular value
    decomposition of T. D1 and D2 are the squared singular values as 1D arrays.
    """
    __slots__ = ()

    @property
    def M(self):
        return self.U1.shape[1]


def svd_parts(sqrt1, ranks, sqrt2_inv=None):
    """ SvdParts of T = sqrt1 @ sqrt2_inv.

    Parameters
    ----------
    sqrt1: np.ndarray
        Symmetric square root of Sigma1.

    ranks: list of np.ndarray of int
        Spike group positions among the descending singular values.

    sqrt2_inv: np.ndarray, optional
        Inverse square root of Sigma2, identity by default.

    Returns
    -------
    parts: SvdParts
    """
    T = sqrt1 if sqrt2_inv is None else sqrt1 @ sqrt2_inv
    U, s, Vh = linalg.svd(T)
    V = Vh.T
    p = T.shape[0]

    eye = np.eye(p)
    for name, mat in (('U', U), ('V', V)):
        err = np.abs(mat.T @ mat - eye).max()
        if err > ORTHO_TOL:
            raise SpikedFisherError('The {} factor of T is not orthogonal, error {}.'.format(
                name, err))

    spiked = np.concatenate(ranks) if len(ranks) else np.array([], dtype=int)
    rest = np.setdiff1d(np.arange(p), spiked)
    D = s ** 2
    return SvdParts(U[:, spiked], U[:, rest], V[:, spiked], V[:, rest], D[spiked], D[rest])


class OmegaSample(namedtuple('OmegaSample', ('lam', 'omega', 'terms', 'asymmetry'))):
    """ Omega at `lam`, symmetrized, its five raw terms and the Frobenius
    norm of the antisymmetric part of their sum."""
    __slots__ = ()


def _inverse_sqrt(mat):
    vals, vecs = linalg.eigh(mat)
    if vals.min() <= 0:
        raise ResolventError('V2^T S2 V2 is not positive definite, smallest eigenvalue '
                             '{}.'.format(vals.min()))
    return (vecs / np.sqrt(vals)) @ vecs.T


def compute_omega(lam, parts, X, Y, n1, n2):
    """ Evaluate the five terms of Omega_M at `lam`.

    Parameters
    ----------
    lam: float
        Evaluation point, outside the spectrum of F~.

    parts: SvdParts

    X, Y: np.ndarray
        p x n1 and p x n2 standardized data.

    n1, n2: int

    Returns
    -------
    sample: OmegaSample

    Raises
    ------
    ResolventError
        If the resolvent condition number exceeds 1e12.
    """
    p = X.shape[0]
    rest_dim = parts.U2.shape[1]
    M = parts.M
    root_p = np.sqrt(p)

    YV1 = Y.T @ parts.V1
    YV2 = Y.T @ parts.V2
    omega1 = root_p * (YV1.T @ YV1 / n2 - np.eye(M))

    q_inv_half = _inverse_sqrt(YV2.T @ YV2 / n2)
    d1_half = np.sqrt(parts.D1)
    d2_half = np.sqrt(parts.D2)

    W = parts.U1.T @ X
    U2X = parts.U2.T @ X
    Z = q_inv_half @ (d2_half[:, None] * U2X) / np.sqrt(n1)
    mu, G = linalg.eigh(Z @ Z.T)

    gaps = lam - mu
    if n1 > rest_dim:
        gaps = np.append(gaps, lam)
    small = np.abs(gaps).min()
    if small == 0 or np.abs(gaps).max() / small > MAX_CONDITION:
        raise ResolventError('The resolvent at {} is ill-conditioned, closest eigenvalue '
                             'at distance {}.'.format(lam, small))

    R = (G / (lam - mu)) @ G.T
    tr_r = np.trace(R)
    tr_r_under = tr_r + (n1 - rest_dim) / lam

    B = YV1.T @ YV2
    K = q_inv_half @ R @ q_inv_half
    omega2 = (root_p * lam / n2) * tr_r * np.eye(M) - (root_p * lam / n2 ** 2) * (B @ K @ B.T)

    WZ = W @ Z.T
    w_r_w = (W @ W.T + WZ @ R @ WZ.T) / lam
    omega3 = (root_p / n1) * (tr_r_under * np.diag(parts.D1)
                              - d1_half[:, None] * w_r_w * d1_half[None, :])

    C = (d2_half[:, None] * (U2X @ W.T)) * d1_half[None, :]
    omega4 = (root_p / (n1 * n2)) * (B @ K @ C)
    omega5 = omega4.T

    terms = (omega1, omega2, omega3, omega4, omega5)
    total = sum(terms)
    asymmetry = float(np.linalg.norm(total - total.T) / 2)
    log.debug('Omega asymmetry at {}: {:.3e}.'.format(lam, asymmetry))
    return OmegaSample(lam, (total + total.T) / 2, np.array(terms), asymmetry)


class OmegaProbe(namedtuple('OmegaProbe', ('config', 'lam', 'group', 'reps_ok', 'failures',
                                           'omega', 'terms', 'asymmetry'))):
    """ Omega samples of a configuration over its replications.

    `omega` is reps x M x M, `terms` reps x 5 x M x M, `asymmetry` has one
    norm per replication. `group` is the spike group whose psi_n gave `lam`,
    None if `lam` was given.
    """
    __slots__ = ()

    def block(self, group):
        """ Slice of the Omega rows and columns of a spike group."""
        mults = self.config.spikes.mults
        start = sum(mults[:group])
        return slice(start, start + mults[group])

    def entry_moments(self):
        """ Mean, variance and standard error of the mean of each entry."""
        count = len(self.omega)
        mean = self.omega.mean(axis=0)
        var = self.omega.var(axis=0, ddof=1) if count > 1 else np.full_like(mean, np.nan)
        return mean, var, np.sqrt(var / count)


@functools.lru_cache(maxsize=4)
def _cached_parts(config):
    sigma = build_sigma(config)
    return svd_parts(sigma.sqrt1, config.ranks())


def _omega_replicate(task):
    config, lam, rep = task
    try:
        parts = _cached_parts(config)
        X, Y = draw_samples(config, child_rng(config.seed, rep))
        return rep, compute_omega(lam, parts, X, Y, config.n1, config.n2), None
    except (SpikedFisherError, np.linalg.LinAlgError) as exc:
        return rep, None, '{}: {}'.format(type(exc).__name__, exc)


def spike_point(config, group):
    """ psi_n of the spike `group` of `config`.

    Raises
    ------
    SpikeInsideBulkError
        If the spike is not distant.
    """
    alpha = config.spikes.alphas[group]
    phase = classify_spike(alpha, config.model, *config.psi_ratios)
    if not phase.distant:
        raise SpikeInsideBulkError('The spike {} is not distant, its psi_n = {} lies in the '
                                   'bulk.'.format(alpha, phase.psi_n))
    return phase.psi_n


def probe_omega(config, lam=None, reps=None, group=0, n_cpus=None, plugin='MultiProc'):
    """ Omega samples over replications of `config`.

    Replication r uses the same data as replication r of `run_mc`.

    Parameters
    ----------
    config: ModelConfig

    lam: float, optional
        Evaluation point, psi_n of the spike `group` by default.

    reps: int, optional
        Replications, config.reps by default.

    group: int
        Spike group that sets the default `lam`.

    Returns
    -------
    probe: OmegaProbe

    Raises
    ------
    HarnessError
        If more than 1% of the replications failed.
    """
    if lam is None:
        lam = spike_point(config, group)
    else:
        group = None
    reps = config.reps if reps is None else int(reps)

    log.info('Probing Omega at {} over {} replications ({}).'.format(lam, reps,
                                                                     config.fingerprint))
    tasks = [(config, float(lam), r) for r in range(reps)]
    results = run_replications(_omega_replicate, tasks, plugin=plugin,
                               n_cpus=config.n_cpus if n_cpus is None else n_cpus)

    samples = [(rep, s) for rep, s, _ in results if s is not None]
    failures = [(rep, msg) for rep, s, msg in results if s is None]
    for rep, msg in failures:
        log.warning('Omega replication {} failed: {}'.format(rep, msg))
    if len(failures) > MAX_FAILURE_RATE * reps:
        raise HarnessError('{} of {} Omega replications failed, the first one with: {}'.format(
            len(failures), reps, failures[0][1]))

    M = config.M
    omega = np.array([s.omega for _, s in samples]).reshape(len(samples), M, M)
    terms = np.array([s.terms for _, s in samples]).reshape(len(samples), len(TERM_NAMES), M, M)
    asym = np.array([s.asymmetry for _, s in samples])
    if len(asym):
        log.info('Largest Omega asymmetry norm: {:.3e}.'.format(asym.max()))
    return OmegaProbe(config, float(lam), group, [rep for rep, _ in samples], failures,
                      omega, terms, asym)
