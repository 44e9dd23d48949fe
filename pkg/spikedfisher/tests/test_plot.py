# -*- coding: utf-8 -*-
import numpy as np
import pandas as pd
import pytest
from scipy import integrate

from spikedfisher.plot import (PlotDataset,
                               contour_dataset,
                               density_dataset,
                               joint_extent,
                               qq_dataset)

META = {'fingerprint': 'abc', 'seed': 1}


@pytest.fixture
def sample():
    return np.random.default_rng(5).normal(scale=1.5, size=400)


def test_qq(sample):
    ds = qq_dataset(sample, 1.5, 0, META)
    assert ds.filename == 'qq_0.csv'
    assert len(ds.series) == 400
    assert np.corrcoef(ds.series['theoretical'], ds.series['empirical'])[0, 1] > 0.98


def test_density(sample):
    ds = density_dataset(sample, 1.5, 2, META)
    mass = integrate.trapezoid(ds.series['density'], ds.series['x'])
    assert mass == pytest.approx(1, abs=0.02)
    assert ds.meta == META


def test_contour(sample):
    points = sample.reshape(200, 2)
    extent = joint_extent(points, points + 1)
    ds = contour_dataset(points, 'limit_1', META, bins=10, extent=extent)
    assert ds.filename == 'contour2d_limit_1.csv'
    assert len(ds.series) == 100
    assert ds.series['x'].min() > extent[0][0]


def test_invalid_datasets():
    with pytest.raises(ValueError):
        PlotDataset('scatter', 0, pd.DataFrame(), META)

    unsorted = pd.DataFrame({'theoretical': [0.0, 1.0], 'empirical': [1.0, 0.0]})
    with pytest.raises(ValueError):
        PlotDataset('qq', 0, unsorted, META)

    ragged = pd.DataFrame({'x': [0.0, 1.0, 1.0], 'y': [0.0, 0.0, 1.0], 'density': [1.0] * 3})
    with pytest.raises(ValueError):
        PlotDataset('contour2d', 0, ragged, META)
