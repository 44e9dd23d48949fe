# -*- coding: utf-8 -*-
"""
Writers and readers of the result files.

CSV files hold sample level data and start with '# key: value' lines with
the configuration fingerprint and the seed. YAML documents hold the
theory tables and the summaries.
"""
import logging as log
import os
import os.path as op
from collections import namedtuple

import numpy as np
import yaml

from .errors import OutputError
from .utils.pandas import long_table, read_csv, write_csv

GAMMA_COLUMNS = ('rep', 'group', 'index', 'value')
GAMMA_FILE = 'gamma.csv'
SUMMARY_FILE = 'summary.yml'
THEORY_FILE = 'theory.yml'
CONFIG_FILE = 'config.yml'
OMEGA_FILE = 'omega_probe.yml'
OMEGA_ENTRIES_FILE = 'omega_entries.csv'
PLOTS_DIR = 'plots'


def plain(value):
    """ Convert numpy scalars and arrays, tuples and enums to plain Python
    types that yaml.safe_dump accepts."""
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return plain(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if hasattr(value, 'value'):
        return value.value
    return value


def make_dir(path):
    """ Create the directory `path` if needed, raise an OutputError if it is
    not writable."""
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as ose:
        raise OutputError('Could not create the output folder {}: {}.'.format(path, ose)) from ose
    if not os.access(path, os.W_OK):
        raise OutputError('The output folder {} is not writable.'.format(path))
    return path


def write_yaml(data, filepath):
    try:
        with open(filepath, 'w') as f:
            yaml.safe_dump(plain(data), f, default_flow_style=False, sort_keys=False)
    except OSError as ose:
        raise OutputError('Could not write {}: {}.'.format(filepath, ose)) from ose


def read_yaml(filepath):
    with open(filepath) as f:
        return yaml.safe_load(f)


def write_meta_csv(df, filepath, meta):
    """ Write `df` to `filepath` after one '# key: value' line per `meta` item."""
    try:
        with open(filepath, 'w', newline='') as f:
            for k, v in meta.items():
                f.write('# {}: {}\n'.format(k, v))
            write_csv(df, f)
    except OSError as ose:
        raise OutputError('Could not write {}: {}.'.format(filepath, ose)) from ose


def read_meta_csv(filepath):
    """ Return the DataFrame and the meta dict of a file written by `write_meta_csv`.
    Meta values are strings, seeds are cast back to int."""
    meta = {}
    with open(filepath) as f:
        for line in f:
            if not line.startswith('#'):
                break
            key, _, value = line[1:].strip().partition(': ')
            meta[key] = int(value) if key.startswith('seed') else value
    return read_csv(filepath, comment='#'), meta


def theory_document(config, report):
    """ The theory table of `report` as a nested dict."""
    groups = []
    for phase, law, mult in zip(report.phases, report.laws, report.mults):
        row = {'alpha': phase.alpha, 'mult': mult, 'psi_n': phase.psi_n,
               'psi_prime': phase.psi_prime, 'distant': phase.distant, 'rho': phase.rho}
        if law is not None:
            row.update({'kappa': law.kappa, 'theta': law.theta, 'nu1': law.nu1,
                        'nu2': law.nu2, 'beta_x': law.beta_x, 'beta_y': law.beta_y,
                        'var_diag': law.var_diag, 'var_off': law.var_off,
                        'sigma2': law.sigma2 if mult == 1 else None})
        groups.append(row)

    support = None
    if report.support is not None:
        support = {'a': report.support.a, 'b': report.support.b}

    return {'fingerprint': config.fingerprint, 'seed': config.seed,
            'regime': config.regime, 'ratios': config.ratios,
            'support': support, 'groups': groups}


def group_document(g):
    """ A GroupSummary as a dict."""
    return {'group': g.group, 'alpha': g.alpha, 'mult': g.mult, 'psi_n': g.psi_n,
            'count': g.count, 'mean': g.mean, 'var': g.var,
            'cov': g.cov, 'variance_defined': g.variance_defined,
            'sigma2': g.sigma2,
            'ks': [{'statistic': s, 'pvalue': pv} for s, pv in g.ks]}


def summary_document(report):
    """ The group summaries and rates of an McReport as a nested dict."""
    groups = [group_document(g) for g in report.groups]
    return {'fingerprint': report.config.fingerprint, 'seed': report.config.seed,
            'reps': report.config.reps, 'reps_ok': len(report.reps_ok),
            'failures': [{'rep': rep, 'error': msg} for rep, msg in report.failures],
            'bulk_containment': report.bulk_containment,
            'spike_positioning': report.spike_positioning,
            'groups': groups}


def gamma_frame(gamma, reps_ok):
    """ Long table (rep, group, index, value) of the gamma statistics."""
    df = long_table(gamma, GAMMA_COLUMNS)
    reps = np.asarray(reps_ok)
    if len(df):
        df['rep'] = reps[df['rep'].to_numpy(dtype=int)]
    return df


def gamma_arrays(df, mults):
    """ Inverse of `gamma_frame`: the rep indices and a dict group -> reps x mult."""
    reps = np.sort(df['rep'].unique()) if len(df) else np.array([], dtype=int)
    gamma = {}
    for group, chunk in df.groupby('group', sort=True):
        chunk = chunk.sort_values(['rep', 'index'], kind='mergesort')
        gamma[int(group)] = chunk['value'].to_numpy(dtype=float).reshape(-1, mults[int(group)])
    return list(reps), gamma


def write_plots(plots, out_dir):
    plot_dir = make_dir(op.join(out_dir, PLOTS_DIR))
    for ds in plots:
        meta = dict(ds.meta)
        meta['kind'] = ds.kind
        write_meta_csv(ds.series, op.join(plot_dir, ds.filename), meta)


def write_theory(config, theory, out_dir):
    make_dir(out_dir)
    path = op.join(out_dir, THEORY_FILE)
    write_yaml(theory_document(config, theory), path)
    return path


def write_simulation(report, theory, out_dir):
    """ Write the files of a Monte Carlo run in `out_dir`.

    Parameters
    ----------
    report: McReport

    theory: TheoryReport

    out_dir: str

    Returns
    -------
    out_dir: str
    """
    make_dir(out_dir)
    config = report.config
    meta = report.meta

    write_yaml(config.to_dict(), op.join(out_dir, CONFIG_FILE))
    write_theory(config, theory, out_dir)
    write_meta_csv(gamma_frame(report.gamma, report.reps_ok), op.join(out_dir, GAMMA_FILE), meta)
    write_yaml(summary_document(report), op.join(out_dir, SUMMARY_FILE))
    write_plots(report.plots, out_dir)

    log.info('Wrote the results of {} in {}.'.format(config.fingerprint, out_dir))
    return out_dir


class SimulationOutput(namedtuple('SimulationOutput', ('config', 'reps_ok', 'gamma', 'summary',
                                                       'theory', 'meta'))):
    """ The content of a folder written by `write_simulation`."""
    __slots__ = ()


def read_simulation(out_dir):
    """ Read back a folder written by `write_simulation`.

    Raises
    ------
    OutputError
        If a file is missing.
    """
    from .simulate.model import ModelConfig

    paths = {name: op.join(out_dir, name)
             for name in (CONFIG_FILE, GAMMA_FILE, SUMMARY_FILE, THEORY_FILE)}
    for path in paths.values():
        if not op.isfile(path):
            raise OutputError('Could not find {}, is {} a simulation output?'.format(path,
                                                                                  out_dir))

    config = ModelConfig.from_dict(read_yaml(paths[CONFIG_FILE]))
    df, meta = read_meta_csv(paths[GAMMA_FILE])
    if meta.get('fingerprint') != config.fingerprint:
        log.warning('The gamma samples of {} were written with another configuration.'.format(
            out_dir))

    reps_ok, gamma = gamma_arrays(df, config.spikes.mults)
    return SimulationOutput(config, reps_ok, gamma, read_yaml(paths[SUMMARY_FILE]),
                            read_yaml(paths[THEORY_FILE]), meta)


def omega_document(report, laws=None):
    """ A UniversalityReport as a nested dict.

    Parameters
    ----------
    laws: list of CltLaw or None, optional
        Limit laws of config_a, to add the theoretical variance of the entries
        in the diagonal blocks.
    """
    probe_a, probe_b = report.probe_a, report.probe_b
    mean_a, _, sem_a = probe_a.entry_moments()
    mean_b, _, sem_b = probe_b.entry_moments()

    theory = {}
    for k, law in enumerate(laws or []):
        if law is None:
            continue
        block = probe_a.block(k)
        for i in range(block.start, block.stop):
            for j in range(i, block.stop):
                theory[(i, j)] = law.var_diag if i == j else law.var_off

    entries = []
    for n, (i, j) in enumerate(report.entries):
        entries.append({'row': i, 'col': j,
                        'ks_statistic': report.statistics[n], 'pvalue': report.pvalues[n],
                        'mean_a': mean_a[i, j], 'sem_a': sem_a[i, j],
                        'mean_b': mean_b[i, j], 'sem_b': sem_b[i, j],
                        'var_a': report.var_a[n], 'var_b': report.var_b[n],
                        'var_ratio': report.var_ratio[n],
                        'var_theory': theory.get((i, j))})

    return {'lambda': report.lam, 'group': report.group,
            'config_a': {'fingerprint': probe_a.config.fingerprint, 'seed': probe_a.config.seed,
                         'dist': [probe_a.config.dist_x.kind, probe_a.config.dist_y.kind],
                         'reps_ok': len(probe_a.reps_ok)},
            'config_b': {'fingerprint': probe_b.config.fingerprint, 'seed': probe_b.config.seed,
                         'dist': [probe_b.config.dist_x.kind, probe_b.config.dist_y.kind],
                         'reps_ok': len(probe_b.reps_ok)},
            'max_asymmetry': max(probe_a.asymmetry.max(initial=0), probe_b.asymmetry.max(initial=0)),
            'level': report.level, 'passed': report.passed,
            'entries': entries}


def write_omega_probe(report, out_dir, laws=None):
    """ Write omega_probe.yml and the per entry table omega_entries.csv."""
    make_dir(out_dir)
    path = op.join(out_dir, OMEGA_FILE)
    write_yaml(omega_document(report, laws), path)
    meta = {'fingerprint_a': report.probe_a.config.fingerprint,
            'fingerprint_b': report.probe_b.config.fingerprint,
            'seed_a': report.probe_a.config.seed, 'seed_b': report.probe_b.config.seed}
    write_meta_csv(report.to_frame(), op.join(out_dir, OMEGA_ENTRIES_FILE), meta)
    return path
