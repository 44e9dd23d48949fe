# -*- coding: utf-8 -*-
"""
Monte Carlo harness: replications of the two-sample experiment, the gamma
statistics of every spike group and their comparison with the limit laws.

Replication r draws its data from the child seed
SeedSequence(entropy=seed, spawn_key=(r,)), so the report does not depend on
how the replications were scheduled.
"""
import functools
import logging as log
import time
from collections import namedtuple

import numpy as np
from scipy import stats

from ..clt import sample_limit
from ..config import get_config_setting
from ..errors import ConfigError, HarnessError, SpikedFisherError
from ..lsd import wachter_support
from ..plot import contour_dataset, density_dataset, joint_extent, qq_dataset
from ..run import run_replications
from .fisher import build_sigma, fisher_eigs
from .sampling import draw_matrix, truncate_center_scale

MAX_FAILURE_RATE = 0.01
BULK_TOLERANCE = 0.15


class EigenSample(namedtuple('EigenSample', ('all_eigs', 'gamma'))):
    """ Descending eigenvalues of one replication and the gamma vector of
    each spike group that has a limit law (keyed by group index)."""
    __slots__ = ()


class GroupSummary(namedtuple('GroupSummary', ('group', 'alpha', 'mult', 'psi_n', 'count',
                                               'mean', 'var', 'cov', 'variance_defined',
                                               'sigma2', 'ks'))):
    """ Empirical moments of the gamma statistics of a spike group.

    `sigma2` is the variance of the normal limit of single spikes (None for
    groups with multiplicity > 1) and `ks` has one (statistic, pvalue) pair
    per ordered coordinate, or is empty when there were too few replications.
    """
    __slots__ = ()


class McReport(namedtuple('McReport', ('config', 'laws', 'reps_ok', 'failures', 'eigs',
                                       'gamma', 'groups', 'bulk_containment',
                                       'spike_positioning', 'plots'))):
    """ Result of `run_mc`.

    Parameters
    ----------
    config: ModelConfig

    laws: list of CltLaw or None

    reps_ok: list of int
        Indices of the successful replications.

    failures: list of (int, str)
        Index and message of the failed replications.

    eigs: np.ndarray or None
        len(reps_ok) x p eigenvalues.

    gamma: dict of int -> np.ndarray
        len(reps_ok) x mult gamma statistics of each group with a law.

    groups: list of GroupSummary

    bulk_containment, spike_positioning: float or None
        Fraction of the replications where the non-spiked eigenvalues stay in
        the enlarged bulk and where the spiked ones are on the right side of it.

    plots: list of PlotDataset
    """
    __slots__ = ()

    @property
    def meta(self):
        return {'fingerprint': self.config.fingerprint, 'seed': self.config.seed}


def child_rng(seed, rep):
    """ Generator of the replication `rep` of a run seeded with `seed`."""
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(rep,)))


def draw_samples(config, rng):
    """ Truncated and standardized X (p x n1) and Y (p x n2)."""
    X = draw_matrix(config.dist_x, config.p, config.n1, rng)
    Y = draw_matrix(config.dist_y, config.p, config.n2, rng)
    X = truncate_center_scale(X, config.n1, config.truncation, config.dist_x)
    Y = truncate_center_scale(Y, config.n2, config.truncation, config.dist_y)
    return X, Y


@functools.lru_cache(maxsize=4)
def _cached_sigma(config):
    return build_sigma(config)


@functools.lru_cache(maxsize=4)
def _cached_ranks(config):
    return config.ranks()


def replicate(task):
    """ One replication.

    Parameters
    ----------
    task: (ModelConfig, tuple of float or None, int)
        The configuration, the center psi_n of each group (None for groups
        without a law) and the replication index.

    Returns
    -------
    rep: int

    sample: EigenSample or None

    error: str or None
    """
    config, psis, rep = task
    try:
        sigma = _cached_sigma(config)
        ranks = _cached_ranks(config)
        X, Y = draw_samples(config, child_rng(config.seed, rep))
        eigs = fisher_eigs(sigma.sigma1, sigma.sigma2, X, Y, config.n1, config.n2,
                           sqrt1=sigma.sqrt1, sqrt2=sigma.sqrt2)
    except (SpikedFisherError, np.linalg.LinAlgError) as exc:
        return rep, None, '{}: {}'.format(type(exc).__name__, exc)

    scale = np.sqrt(config.scale_dim)
    gamma = {k: scale * (eigs[idx] / psi - 1)
             for k, (idx, psi) in enumerate(zip(ranks, psis)) if psi is not None}
    return rep, EigenSample(eigs, gamma), None


def _ks_tests(sample, law, limit):
    if len(sample) < 2:
        return []
    if law.mult == 1:
        res = stats.kstest(sample[:, 0], 'norm', args=(0, np.sqrt(law.sigma2)))
        return [(float(res.statistic), float(res.pvalue))]

    tests = []
    for j in range(law.mult):
        res = stats.ks_2samp(sample[:, j], limit[:, j])
        tests.append((float(res.statistic), float(res.pvalue)))
    return tests


def limit_draws(config, law, group):
    """ Reference draws of the limit law of a group, with a seed that no
    replication uses."""
    count = int(get_config_setting('limit_draws', 20000))
    seed = np.random.SeedSequence(entropy=config.seed, spawn_key=(config.reps, group))
    return sample_limit(law, count, seed)


def summarize_group(config, group, law, sample):
    """ GroupSummary of the gamma statistics `sample` (reps x mult) of `group`."""
    count = len(sample)
    defined = count > 1
    mean = sample.mean(axis=0) if count else np.full(law.mult, np.nan)
    if defined:
        var = sample.var(axis=0, ddof=1)
        cov = np.cov(sample, rowvar=False).reshape(law.mult, law.mult) if law.mult > 1 else None
    else:
        var = np.full(law.mult, np.nan)
        cov = None

    limit = limit_draws(config, law, group) if law.mult > 1 else None
    return GroupSummary(group, law.alpha, law.mult, law.psi_n, count,
                        mean, var, cov, defined,
                        law.sigma2 if law.mult == 1 else None,
                        _ks_tests(sample, law, limit))


def group_plots(config, group, law, sample, raw=None):
    """ Plot datasets of a group: qq and density for single spikes, contours
    of the empirical and limit joint laws for double spikes."""
    if len(sample) < 2:
        return []

    meta = {'fingerprint': config.fingerprint, 'seed': config.seed, 'group': group,
            'alpha': law.alpha}
    name = str(group)
    if law.mult == 1:
        scale = np.sqrt(law.sigma2)
        return [qq_dataset(sample[:, 0], scale, name, meta),
                density_dataset(sample[:, 0], scale, name, meta)]

    if law.mult != 2:
        return []

    limit = limit_draws(config, law, group)
    extent = joint_extent(sample, limit)
    plots = [contour_dataset(sample, name, meta, extent=extent),
             contour_dataset(limit, 'limit_{}'.format(name), meta, extent=extent)]
    if raw is not None:
        standardized = (raw - raw.mean(axis=0)) / raw.std(axis=0)
        plots.append(contour_dataset(standardized, 'raw_{}'.format(name), meta))
    return plots


def containment_rates(config, laws, eigs):
    """ Bulk containment and spike positioning rates over the replications.

    Returns (None, None) when the base measure has no closed form support.
    """
    model = config.bulk_model
    if not model.is_unit_atom or eigs is None or not len(eigs):
        return None, None

    a, b = wachter_support(model)
    eps = BULK_TOLERANCE * (b - a)
    ranks = _cached_ranks(config)

    spiked = np.zeros(config.p, dtype=bool)
    for idx in ranks:
        spiked[idx] = True
    bulk = eigs[:, ~spiked]
    contained = np.all((bulk >= a - eps) & (bulk <= b + eps), axis=1)

    placed = np.ones(len(eigs), dtype=bool)
    for idx, law in zip(ranks, laws):
        if law is None:
            continue
        if law.psi_n > b:
            placed &= np.all(eigs[:, idx] > b, axis=1)
        elif law.psi_n < a:
            placed &= np.all(eigs[:, idx] < a, axis=1)
    return float(contained.mean()), float(placed.mean())


def summarize(config, laws, gamma, eigs=None, ranks=None):
    """ Group summaries and plot datasets of the gamma statistics.

    Parameters
    ----------
    config: ModelConfig

    laws: list of CltLaw or None

    gamma: dict of int -> np.ndarray

    eigs: np.ndarray, optional
        Eigenvalues of the replications, for the raw eigenvalue contours.

    Returns
    -------
    groups: list of GroupSummary

    plots: list of PlotDataset
    """
    ranks = _cached_ranks(config) if ranks is None else ranks
    groups, plots = [], []
    for k, law in enumerate(laws):
        if law is None:
            continue
        sample = gamma[k]
        groups.append(summarize_group(config, k, law, sample))
        raw = eigs[:, ranks[k]] if eigs is not None else None
        plots.extend(group_plots(config, k, law, sample, raw))
    return groups, plots


def run_mc(config, laws, n_cpus=None, plugin='MultiProc'):
    """ Run the Monte Carlo experiment of `config`.

    Parameters
    ----------
    config: ModelConfig

    laws: list of CltLaw or None
        One per spike group, None for the non-distant ones, as in
        `clt.theory_table(config).laws`.

    n_cpus: int
        Worker processes, defaults to config.n_cpus.

    plugin: str
        See `run.run_replications`.

    Returns
    -------
    report: McReport

    Raises
    ------
    HarnessError
        If more than 1% of the replications failed.
    """
    if len(laws) != len(config.spikes):
        raise ConfigError('Expected one law per spike group, got {} for {} '
                          'groups.'.format(len(laws), len(config.spikes)))

    start = time.time()
    log.info('Running {} replications of p={}, n1={}, n2={}, {} vs {}, {} ({}).'.format(
        config.reps, config.p, config.n1, config.n2, config.dist_x.kind, config.dist_y.kind,
        config.sigma_case.kind, config.fingerprint))

    psis = tuple(law.psi_n if law is not None else None for law in laws)
    tasks = [(config, psis, r) for r in range(config.reps)]
    results = run_replications(replicate, tasks, plugin=plugin,
                               n_cpus=config.n_cpus if n_cpus is None else n_cpus)

    samples = [(rep, sample) for rep, sample, _ in results if sample is not None]
    failures = [(rep, msg) for rep, sample, msg in results if sample is None]
    for rep, msg in failures:
        log.warning('Replication {} failed: {}'.format(rep, msg))

    if len(failures) > MAX_FAILURE_RATE * config.reps:
        raise HarnessError('{} of {} replications failed, the first one with: {}'.format(
            len(failures), config.reps, failures[0][1]))

    reps_ok = [rep for rep, _ in samples]
    eigs = np.array([s.all_eigs for _, s in samples]) if samples else None
    gamma = {k: np.array([s.gamma[k] for _, s in samples]).reshape(len(samples), law.mult)
             for k, law in enumerate(laws) if law is not None}

    groups, plots = summarize(config, laws, gamma, eigs)
    bulk, placed = containment_rates(config, laws, eigs)

    if config.reps == 1:
        log.warning('A single replication leaves the variances undefined.')

    log.info('Monte Carlo run finished in {:.1f}s with {} failures.'.format(time.time() - start,
                                                                            len(failures)))
    return McReport(config, list(laws), reps_ok, failures, eigs, gamma, groups, bulk, placed,
                    plots)
