# -*- coding: utf-8 -*-
"""
Two-sample comparison of the Omega entries of two populations that share
their geometry, to check that the limit law does not depend on the
population distribution.
"""
import logging as log
from collections import namedtuple

import numpy as np
import pandas as pd
from scipy import stats

from ..config import get_config_setting
from ..errors import GeometryError
from .probe import probe_omega, spike_point


class UniversalityReport(namedtuple('UniversalityReport',
                                    ('lam', 'group', 'entries', 'statistics', 'pvalues',
                                     'var_a', 'var_b', 'level', 'passed',
                                     'probe_a', 'probe_b'))):
    """ Per entry two-sample KS tests of Omega under two configurations.

    `level` is the per-test level after the Bonferroni correction and
    `passed` is True when no test rejects at it.
    """
    __slots__ = ()

    @property
    def var_ratio(self):
        return self.var_a / self.var_b

    def to_frame(self):
        rows, cols = zip(*self.entries) if self.entries else ((), ())
        return pd.DataFrame({'row': list(rows), 'col': list(cols),
                             'ks_statistic': self.statistics, 'pvalue': self.pvalues,
                             'var_a': self.var_a, 'var_b': self.var_b,
                             'var_ratio': self.var_ratio},
                            columns=['row', 'col', 'ks_statistic', 'pvalue',
                                     'var_a', 'var_b', 'var_ratio'])


def check_geometry(config_a, config_b):
    """ Raise a GeometryError if the configurations differ in (p, n1, n2, spikes)."""
    if config_a.geometry() != config_b.geometry():
        raise GeometryError('The configurations do not share their geometry: (p, n1, n2, '
                            'spikes) = {} and {}.'.format(config_a.geometry(),
                                                          config_b.geometry()))


def upper_entries(M, block=None):
    """ (row, col) pairs of the upper triangle, inside `block` if given."""
    idx = range(M) if block is None else range(block.start, block.stop)
    return [(i, j) for i in idx for j in idx if i <= j]


def universality_test(config_a, config_b, lam=None, reps=None, group=None, level=None,
                      n_cpus=None):
    """ Compare the Omega entries of two configurations.

    Parameters
    ----------
    config_a, config_b: ModelConfig
        Same geometry, usually different population distributions. Each
        one draws its data from its own seed.

    lam: float, optional
        Evaluation point, psi_n of the spike `group` (or of the first one) by default.

    reps: int, optional
        Replications of each probe, config_a.reps by default.

    group: int, optional
        Restrict the tests to the Omega block of this spike group.

    level: float, optional
        Family-wise level, the 'ks_level' setting by default.

    Returns
    -------
    report: UniversalityReport

    Raises
    ------
    GeometryError
        If the configurations differ in (p, n1, n2, spikes).
    """
    check_geometry(config_a, config_b)
    level = float(get_config_setting('ks_level', 0.01) if level is None else level)
    reps = config_a.reps if reps is None else int(reps)
    if lam is None:
        lam = spike_point(config_a, 0 if group is None else group)

    probe_a = probe_omega(config_a, lam=lam, reps=reps, n_cpus=n_cpus)
    probe_b = probe_omega(config_b, lam=lam, reps=reps, n_cpus=n_cpus)

    block = probe_a.block(group) if group is not None else None
    entries = upper_entries(config_a.M, block)
    per_test = level / max(1, len(entries))

    stat_list, pval_list = [], []
    for i, j in entries:
        res = stats.ks_2samp(probe_a.omega[:, i, j], probe_b.omega[:, i, j])
        stat_list.append(float(res.statistic))
        pval_list.append(float(res.pvalue))

    rows = [i for i, _ in entries]
    cols = [j for _, j in entries]
    var_a = probe_a.omega[:, rows, cols].var(axis=0, ddof=1)
    var_b = probe_b.omega[:, rows, cols].var(axis=0, ddof=1)

    pvalues = np.array(pval_list)
    passed = bool(np.all(pvalues > per_test))
    log.info('Universality test at {}: {} entries, smallest p-value {:.4g} against {:.4g}, '
             '{}.'.format(lam, len(entries), pvalues.min() if len(pvalues) else np.nan,
                          per_test, 'pass' if passed else 'fail'))

    return UniversalityReport(float(lam), group, entries, np.array(stat_list), pvalues,
                              var_a, var_b, per_test, passed, probe_a, probe_b)
