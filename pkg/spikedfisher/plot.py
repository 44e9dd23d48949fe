# -*- coding: utf-8 -*-
"""
Plot-ready datasets of the gamma statistics. Nothing is rendered here:
every dataset is a table that any plotting tool can draw.
"""
import logging as log
from collections import namedtuple

import numpy as np
import pandas as pd
from scipy import integrate, stats

PLOT_KINDS = ('qq', 'density1d', 'contour2d')

DENSITY_GRID = 256
CONTOUR_BINS = 40


class PlotDataset(namedtuple('PlotDataset', ('kind', 'name', 'series', 'meta'))):
    """ A named table for one figure panel.

    Parameters
    ----------
    kind: str
        'qq': sorted columns 'theoretical' and 'empirical' of equal length.
        'density1d': columns 'x', 'density' and 'theory' on a regular grid.
        'contour2d': long format columns 'x', 'y', 'density' on a rectangular grid.

    name: str
        Suffix of the file name, usually the spike group.

    series: pandas.DataFrame

    meta: dict
        At least the configuration fingerprint and the seed.
    """
    __slots__ = ()

    def __new__(cls, kind, name, series, meta):
        if kind not in PLOT_KINDS:
            raise ValueError('Expected a plot kind in {}, got {}.'.format(PLOT_KINDS, kind))

        if kind == 'qq':
            for col in ('theoretical', 'empirical'):
                if not series[col].is_monotonic_increasing:
                    raise ValueError('The {} column of a qq dataset is not sorted.'.format(col))
        elif kind == 'density1d':
            mass = integrate.trapezoid(series['density'], series['x'])
            if abs(mass - 1) > 0.05:
                log.warning('Density dataset {} integrates to {:.4f}.'.format(name, mass))
        else:
            nx, ny = series['x'].nunique(), series['y'].nunique()
            if nx * ny != len(series):
                raise ValueError('The contour dataset {} is not on a rectangular grid: {} x {} '
                                 'for {} rows.'.format(name, nx, ny, len(series)))

        return super(PlotDataset, cls).__new__(cls, kind, str(name), series, dict(meta))

    @property
    def filename(self):
        return '{}_{}.csv'.format(self.kind, self.name)


def qq_dataset(sample, scale, name, meta):
    """ Normal QQ data of `sample` against N(0, scale^2)."""
    emp = np.sort(np.asarray(sample, dtype=float))
    probs = (np.arange(1, emp.size + 1) - 0.5) / emp.size
    theo = stats.norm.ppf(probs, loc=0, scale=scale)
    return PlotDataset('qq', name, pd.DataFrame({'theoretical': theo, 'empirical': emp}), meta)


def density_dataset(sample, scale, name, meta, grid_size=DENSITY_GRID):
    """ Kernel density estimate of `sample` with the N(0, scale^2) overlay."""
    sample = np.asarray(sample, dtype=float)
    kde = stats.gaussian_kde(sample)
    width = max(sample.std(), scale)
    lo = min(sample.min(), -4 * scale) - 3 * width * kde.factor
    hi = max(sample.max(), 4 * scale) + 3 * width * kde.factor
    x = np.linspace(lo, hi, grid_size)
    df = pd.DataFrame({'x': x, 'density': kde(x), 'theory': stats.norm.pdf(x, scale=scale)})
    return PlotDataset('density1d', name, df, meta)


def contour_dataset(points, name, meta, bins=CONTOUR_BINS, extent=None):
    """ Normalized 2D histogram of the rows of `points` (n x 2).

    Parameters
    ----------
    extent: ((xmin, xmax), (ymin, ymax)) or None
        Histogram range, to share one grid among several datasets.
    """
    points = np.asarray(points, dtype=float)
    hist, xedges, yedges = np.histogram2d(points[:, 0], points[:, 1], bins=bins,
                                          range=extent, density=True)
    xc = (xedges[:-1] + xedges[1:]) / 2
    yc = (yedges[:-1] + yedges[1:]) / 2
    xx, yy = np.meshgrid(xc, yc, indexing='ij')
    df = pd.DataFrame({'x': xx.ravel(), 'y': yy.ravel(), 'density': hist.ravel()})
    return PlotDataset('contour2d', name, df, meta)


def joint_extent(*point_sets):
    """ Common histogram range of several n x 2 point sets."""
    stacked = np.vstack(point_sets)
    return ((stacked[:, 0].min(), stacked[:, 0].max()),
            (stacked[:, 1].min(), stacked[:, 1].max()))
