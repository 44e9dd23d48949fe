# -*- coding: utf-8 -*-
"""
Command line front end.

    spikedfisher theory --config model.yml
    spikedfisher simulate --config model.yml --out results/ --reps 1000
    spikedfisher omega-probe --config-a a.yml --config-b b.yml --out probe/
    spikedfisher report --out results/ [--against other_results/]

`--config` takes a configuration file or the name of a preset.
"""
import argparse
import logging as log
import os.path as op
import sys

import numpy as np
from scipy import stats

from . import io
from .clt import theory_table
from .config import load_model_config
from .errors import GeometryError, SpikedFisherError
from .lsd import BACKENDS
from .omega import universality_test
from .presets import PRESETS, preset_config
from .simulate.montecarlo import run_mc, summarize

REPORT_FILE = 'report.yml'
COMPARISON_FILE = 'comparison.yml'


def model_config(source, seed=None, reps=None, n_cpus=None):
    """ ModelConfig from a file path or a preset name, with the command
    line overrides."""
    overrides = {'mc.seed': seed, 'mc.reps': reps, 'mc.n_cpus': n_cpus}
    if source in PRESETS and not op.exists(source):
        return preset_config(source, overrides)
    return load_model_config(source, overrides)


def cli_theory(config, backend='quadrature', out=None):
    """ Print the theory table of `config` and write theory.yml in `out` if given.

    Returns
    -------
    report: TheoryReport
    """
    report = theory_table(config, backend=backend)
    if report.support is not None:
        print('bulk: a = {:.6g}, b = {:.6g}'.format(report.support.a, report.support.b))
    if len(report.phases):
        print(report.to_frame().to_string(float_format=lambda x: '{:.6g}'.format(x)))

    if out:
        io.write_theory(config, report, out)
    return report


def cli_simulate(config, out, backend='quadrature'):
    """ Run the Monte Carlo experiment of `config` and write its results in `out`.

    Returns
    -------
    report: McReport
    """
    theory = theory_table(config, backend=backend)
    report = run_mc(config, theory.laws)
    io.write_simulation(report, theory, out)

    for g in report.groups:
        ks = ', '.join('KS {:.4f} (p = {:.4g})'.format(s, pv) for s, pv in g.ks)
        print('group {} (alpha = {}): mean {}, var {} {}'.format(
            g.group, g.alpha, np.round(g.mean, 4), np.round(g.var, 4), ks))
    return report


def cli_omega_probe(config_a, config_b, out, group=0, lam=None, reps=None):
    """ Compare the Omega entries of two configurations and write the
    report in `out`.

    Returns
    -------
    report: UniversalityReport
    """
    report = universality_test(config_a, config_b, lam=lam, reps=reps, group=group)
    laws = theory_table(config_a).laws
    io.write_omega_probe(report, out, laws)

    print(report.to_frame().to_string(float_format=lambda x: '{:.4g}'.format(x)))
    print('verdict: {}'.format('pass' if report.passed else 'fail'))
    return report


def compare_runs(sim_a, sim_b):
    """ Two-sample KS tests of the gamma statistics of two simulation outputs,
    per group and ordered coordinate."""
    if sim_a.config.geometry() != sim_b.config.geometry():
        raise GeometryError('The runs do not share their geometry: {} and {}.'.format(
            sim_a.config.geometry(), sim_b.config.geometry()))

    tests = []
    for group in sorted(set(sim_a.gamma) & set(sim_b.gamma)):
        ga, gb = sim_a.gamma[group], sim_b.gamma[group]
        for j in range(ga.shape[1]):
            res = stats.ks_2samp(ga[:, j], gb[:, j])
            tests.append({'group': group, 'index': j, 'statistic': float(res.statistic),
                          'pvalue': float(res.pvalue)})
    return tests


def cli_report(out, against=None, backend='quadrature'):
    """ Recompute the summary of the simulation output in `out`, and compare
    it with the one in `against` if given.

    Returns
    -------
    document: dict
    """
    sim = io.read_simulation(out)
    laws = theory_table(sim.config, backend=backend).laws
    groups, _ = summarize(sim.config, laws, sim.gamma)

    document = {'fingerprint': sim.config.fingerprint, 'seed': sim.config.seed,
                'reps_ok': len(sim.reps_ok),
                'groups': [io.group_document(g) for g in groups]}
    io.write_yaml(document, op.join(out, REPORT_FILE))

    for g in groups:
        print('group {} (alpha = {}): mean {}, var {}'.format(g.group, g.alpha,
                                                              np.round(g.mean, 4),
                                                              np.round(g.var, 4)))

    if against:
        other = io.read_simulation(against)
        tests = compare_runs(sim, other)
        comparison = {'fingerprint_a': sim.config.fingerprint,
                      'fingerprint_b': other.config.fingerprint,
                      'tests': tests}
        io.write_yaml(comparison, op.join(out, COMPARISON_FILE))
        document['comparison'] = comparison
        for t in tests:
            print('group {} index {}: KS {:.4f} (p = {:.4g})'.format(
                t['group'], t['index'], t['statistic'], t['pvalue']))
    return document


def _add_config_args(parser, reps=True):
    parser.add_argument('--config', required=True,
                        help='Configuration file or preset name ({}).'.format(
                            ', '.join(sorted(PRESETS))))
    parser.add_argument('--seed', type=int, default=None, help='Overrides mc.seed.')
    if reps:
        parser.add_argument('--reps', type=int, default=None, help='Overrides mc.reps.')


def build_parser():
    parser = argparse.ArgumentParser(prog='spikedfisher',
                                     description='Spiked eigenvalues of generalized '
                                                 'Fisher matrices.')
    parser.add_argument('--log-level', default='warning',
                        choices=['debug', 'info', 'warning', 'error'])
    parser.add_argument('--n-cpus', type=int, default=None,
                        help='Worker processes, overrides mc.n_cpus.')
    parser.add_argument('--backend', choices=BACKENDS, default='quadrature',
                        help='How the Stieltjes transforms are evaluated.')
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True

    theory = subparsers.add_parser('theory', help='Phase transition and CLT table.')
    _add_config_args(theory, reps=False)
    theory.add_argument('--out', default=None, help='Folder for theory.yml.')

    simulate = subparsers.add_parser('simulate', help='Monte Carlo run.')
    _add_config_args(simulate)
    simulate.add_argument('--out', required=True, help='Output folder.')

    omega = subparsers.add_parser('omega-probe', help='Omega universality test.')
    omega.add_argument('--config-a', required=True, help='Configuration file or preset name.')
    omega.add_argument('--config-b', required=True, help='Configuration file or preset name.')
    omega.add_argument('--out', required=True, help='Output folder.')
    omega.add_argument('--seed', type=int, default=None, help='Overrides mc.seed of both.')
    omega.add_argument('--reps', type=int, default=None, help='Overrides mc.reps.')
    omega.add_argument('--group', type=int, default=0,
                       help='Spike group whose psi_n is the evaluation point.')
    omega.add_argument('--lam', type=float, default=None,
                       help='Evaluation point, overrides --group.')

    report = subparsers.add_parser('report', help='Summary of a simulate output folder.')
    report.add_argument('--out', required=True, help='Folder written by simulate.')
    report.add_argument('--against', default=None,
                        help='Another simulate output folder to compare with.')
    return parser


def main(argv=None):
    """ Entry point, returns the exit status."""
    parser = build_parser()
    args = parser.parse_args(argv)
    log.basicConfig(level=args.log_level.upper(),
                    format='%(asctime)s %(levelname)s %(module)s: %(message)s')

    try:
        if args.command == 'theory':
            config = model_config(args.config, seed=args.seed, n_cpus=args.n_cpus)
            cli_theory(config, backend=args.backend, out=args.out)
        elif args.command == 'simulate':
            config = model_config(args.config, args.seed, args.reps, args.n_cpus)
            log.info('Using the configuration {}.'.format(config.to_dict()))
            cli_simulate(config, args.out, backend=args.backend)
        elif args.command == 'omega-probe':
            config_a = model_config(args.config_a, args.seed, args.reps, args.n_cpus)
            config_b = model_config(args.config_b, args.seed, args.reps, args.n_cpus)
            report = cli_omega_probe(config_a, config_b, args.out, group=args.group,
                                     lam=args.lam)
            if not report.passed:
                log.warning('The Omega entries of the two configurations differ.')
        else:
            cli_report(args.out, against=args.against, backend=args.backend)
    except SpikedFisherError as exc:
        print('{}: {}'.format(type(exc).__name__, exc), file=sys.stderr)
        return 1
    return 0


if __name__ == '__main__':
    sys.exit(main())
