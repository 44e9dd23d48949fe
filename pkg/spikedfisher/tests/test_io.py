# -*- coding: utf-8 -*-
import os.path as op

import numpy as np
import pytest

from spikedfisher.clt import theory_table
from spikedfisher.config import load_model_config
from spikedfisher.errors import OutputError
from spikedfisher.io import (GAMMA_FILE,
                             PLOTS_DIR,
                             gamma_arrays,
                             gamma_frame,
                             make_dir,
                             plain,
                             read_meta_csv,
                             read_simulation,
                             write_simulation,
                             write_theory)
from spikedfisher.simulate.montecarlo import run_mc

from .conftest import small_dict


def _simulate(out_dir, reps=8):
    config = load_model_config(small_dict(mc={'reps': reps}))
    theory = theory_table(config)
    report = run_mc(config, theory.laws, plugin='Linear')
    write_simulation(report, theory, out_dir)
    return report


def test_plain():
    doc = plain({'a': np.float64(1.5), 'b': (np.int64(2), np.arange(2)), 'c': np.bool_(True)})
    assert doc == {'a': 1.5, 'b': [2, [0, 1]], 'c': True}
    assert type(doc['a']) is float


def test_gamma_frame():
    gamma = {0: np.array([[1.0], [2.0]]), 1: np.array([[3.0, 4.0], [5.0, 6.0]])}
    df = gamma_frame(gamma, [0, 3])
    assert list(df.columns) == ['rep', 'group', 'index', 'value']
    assert sorted(df['rep'].unique()) == [0, 3]

    reps, back = gamma_arrays(df, [1, 2])
    assert reps == [0, 3]
    assert np.array_equal(back[1], gamma[1])


def test_write_read_simulation(tmpdir):
    out = str(tmpdir.join('run'))
    report = _simulate(out)

    assert op.isfile(op.join(out, PLOTS_DIR, 'qq_0.csv'))

    sim = read_simulation(out)
    assert sim.config == report.config
    assert sim.reps_ok == report.reps_ok
    # gamma values come back bit for bit
    for group in report.gamma:
        assert np.array_equal(sim.gamma[group], report.gamma[group])
    assert sim.meta['fingerprint'] == report.config.fingerprint
    assert sim.meta['seed'] == report.config.seed
    assert sim.summary['reps_ok'] == 8
    assert sim.theory['groups'][0]['psi_n'] == pytest.approx(42.667, abs=5e-4)

    _, meta = read_meta_csv(op.join(out, PLOTS_DIR, 'qq_0.csv'))
    assert meta['kind'] == 'qq'


def test_reruns_are_identical(tmpdir):
    out_a, out_b = str(tmpdir.join('a')), str(tmpdir.join('b'))
    _simulate(out_a, reps=4)
    _simulate(out_b, reps=4)
    with open(op.join(out_a, GAMMA_FILE), 'rb') as fa, open(op.join(out_b, GAMMA_FILE), 'rb') as fb:
        assert fa.read() == fb.read()


def test_output_errors(tmpdir, small_config):
    blocker = tmpdir.join('file.txt')
    blocker.write('')
    with pytest.raises(OutputError):
        make_dir(str(blocker.join('sub')))

    with pytest.raises(OutputError):
        write_theory(small_config, theory_table(small_config), str(blocker.join('sub')))

    with pytest.raises(OutputError):
        read_simulation(str(tmpdir))
