# -*- coding: utf-8 -*-
import numpy as np
import pytest

from spikedfisher.clt import theory_table
from spikedfisher.config import load_model_config
from spikedfisher.errors import ConfigError, HarnessError, SingularityError
from spikedfisher.presets import preset_config
from spikedfisher.simulate import montecarlo
from spikedfisher.simulate.montecarlo import child_rng, replicate, run_mc

from .conftest import small_dict


@pytest.fixture(scope='module')
def small_run():
    config = load_model_config(small_dict(mc={'reps': 12}))
    laws = theory_table(config).laws
    return run_mc(config, laws, plugin='Linear')


def test_report_shapes(small_run):
    assert small_run.reps_ok == list(range(12))
    assert small_run.failures == []
    assert small_run.eigs.shape == (12, 40)
    assert small_run.gamma[0].shape == (12, 1)
    assert small_run.gamma[1].shape == (12, 2)
    assert small_run.gamma[2].shape == (12, 1)
    assert np.all(small_run.gamma[1][:, 0] >= small_run.gamma[1][:, 1])
    assert [g.group for g in small_run.groups] == [0, 1, 2]


def test_gamma_definition(small_run):
    config = small_run.config
    psi = small_run.laws[0].psi_n
    expected = np.sqrt(config.p - config.M) * (small_run.eigs[:, 0] / psi - 1)
    assert np.allclose(small_run.gamma[0][:, 0], expected)


def test_group_summaries(small_run):
    first, double, _ = small_run.groups
    assert first.variance_defined
    assert first.count == 12
    assert first.sigma2 == pytest.approx(small_run.laws[0].sigma2)
    assert len(first.ks) == 1
    assert 0 <= first.ks[0][1] <= 1

    assert double.sigma2 is None
    assert double.cov.shape == (2, 2)
    assert len(double.ks) == 2


def test_plot_datasets(small_run):
    names = sorted(ds.filename for ds in small_run.plots)
    assert names == ['contour2d_1.csv', 'contour2d_limit_1.csv', 'contour2d_raw_1.csv',
                     'density1d_0.csv', 'density1d_2.csv', 'qq_0.csv', 'qq_2.csv']
    for ds in small_run.plots:
        assert ds.meta['fingerprint'] == small_run.config.fingerprint


def test_rates(small_run):
    assert 0 <= small_run.bulk_containment <= 1
    assert 0 <= small_run.spike_positioning <= 1


def test_replication_is_schedule_independent(small_run):
    config = small_run.config
    psis = tuple(law.psi_n for law in small_run.laws)
    rep, sample, error = replicate((config, psis, 7))
    assert rep == 7
    assert error is None
    assert np.array_equal(sample.all_eigs, small_run.eigs[7])


def test_parallel_run_matches_serial(small_run):
    report = run_mc(small_run.config, small_run.laws, n_cpus=2)
    assert np.array_equal(report.eigs, small_run.eigs)


def test_child_seeds_differ():
    a = child_rng(3, 0).random(4)
    b = child_rng(3, 1).random(4)
    assert not np.array_equal(a, b)
    assert np.array_equal(a, child_rng(3, 0).random(4))


def test_single_replication():
    config = load_model_config(small_dict(mc={'reps': 1}))
    report = run_mc(config, theory_table(config).laws, plugin='Linear')
    assert not report.groups[0].variance_defined
    assert report.groups[0].ks == []
    assert report.plots == []


def test_laws_must_match_groups(small_config):
    with pytest.raises(ConfigError):
        run_mc(small_config, [None])


def test_failures_raise(small_config, monkeypatch):
    def broken(*args, **kwargs):
        raise SingularityError('singular S2')

    monkeypatch.setattr(montecarlo, 'fisher_eigs', broken)
    laws = theory_table(small_config).laws
    with pytest.raises(HarnessError):
        run_mc(small_config, laws, plugin='Linear')


@pytest.mark.slow
def test_gaussian_case1_variances():
    config = preset_config('case1_gaussian', {'mc.n_cpus': 4})
    theory = theory_table(config)
    report = run_mc(config, theory.laws)

    first, _, last = report.groups
    assert first.var[0] == pytest.approx(2.383, rel=0.15)
    assert last.var[0] == pytest.approx(1.343, rel=0.15)
    assert first.ks[0][1] > 0.01
    assert last.ks[0][1] > 0.01
    assert report.spike_positioning >= 0.99
    assert report.bulk_containment >= 0.99
