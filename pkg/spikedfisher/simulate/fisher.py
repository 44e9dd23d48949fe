# -*- coding: utf-8 -*-
"""
Covariance geometry of the two populations and the eigenvalues of the
sample Fisher matrix F = S1 S2^-1.
"""
from collections import namedtuple

import numpy as np
from scipy import linalg

from ..errors import ConfigError, SingularityError
from .sampling import SampleDistribution, draw_matrix


class SigmaPair(namedtuple('SigmaPair', ('sigma1', 'sigma2', 'sqrt1', 'sqrt2',
                                         'eigvecs', 'eigvals'))):
    """ Population covariances with their symmetric square roots.

    `eigvecs` holds the eigenvectors of Sigma1 as columns ordered like the
    descending `eigvals`.
    """
    __slots__ = ()


def toeplitz_basis(p, rho):
    """ Eigenvectors of the Toeplitz matrix rho^|i - j|, as columns ordered by
    descending eigenvalue."""
    tmat = linalg.toeplitz(rho ** np.arange(p))
    vals, vecs = linalg.eigh(tmat)
    order = np.argsort(-vals, kind='mergesort')
    return vecs[:, order]


def build_sigma(config):
    """ Sigma1 and Sigma2 of `config`.

    Sigma2 is the identity. Sigma1 has the spikes and the base eigenvalues in
    descending order, on the canonical basis in case1 and on the Toeplitz
    eigenvectors in case2.

    Parameters
    ----------
    config: ModelConfig

    Returns
    -------
    sigma: SigmaPair
    """
    p, case = config.p, config.sigma_case
    if not -1 < case.rho < 1:
        raise ConfigError('The Toeplitz rho should be in (-1, 1), got {}.'.format(case.rho))

    values, _ = config.spikes.population_eigenvalues(p, config.model)
    if case.kind == 'case1':
        basis = np.eye(p)
        sigma1 = np.diag(values)
        sqrt1 = np.diag(np.sqrt(values))
    else:
        basis = toeplitz_basis(p, case.rho)
        sigma1 = (basis * values) @ basis.T
        sqrt1 = (basis * np.sqrt(values)) @ basis.T
        sigma1 = (sigma1 + sigma1.T) / 2
        sqrt1 = (sqrt1 + sqrt1.T) / 2

    eye = np.eye(p)
    return SigmaPair(sigma1, eye, sqrt1, eye.copy(), basis, values)


def symmetric_sqrt(mat):
    """ Symmetric positive square root of a symmetric positive definite matrix."""
    vals, vecs = linalg.eigh(mat)
    if vals.min() <= 0:
        raise SingularityError('Expected a positive definite matrix, smallest eigenvalue '
                               'is {}.'.format(vals.min()))
    root = (vecs * np.sqrt(vals)) @ vecs.T
    return (root + root.T) / 2


def generalized_eigvals(S1, S2):
    """ Eigenvalues of S1 S2^-1 by the Cholesky reduction S2 = L L^T to the
    symmetric problem L^-1 S1 L^-T.

    Returns
    -------
    eigs: np.ndarray
        Descending, clipped at 0 from below.

    Raises
    ------
    SingularityError
        If S2 is not numerically positive definite.
    """
    try:
        chol = linalg.cholesky(S2, lower=True)
    except linalg.LinAlgError as lae:
        raise SingularityError('Could not factor S2: {}.'.format(lae)) from lae

    half = linalg.solve_triangular(chol, S1, lower=True)
    reduced = linalg.solve_triangular(chol, half.T, lower=True)
    reduced = (reduced + reduced.T) / 2
    eigs = linalg.eigvalsh(reduced)
    return np.clip(eigs[::-1], 0, None)


def fisher_eigs(sigma1, sigma2, X, Y, n1, n2, sqrt1=None, sqrt2=None):
    """ Descending eigenvalues of F = S1 S2^-1 with
    S1 = Sigma1^1/2 (X X^T / n1) Sigma1^1/2 and S2 = Sigma2^1/2 (Y Y^T / n2) Sigma2^1/2.

    Parameters
    ----------
    sigma1, sigma2: np.ndarray
        p x p population covariances.

    X, Y: np.ndarray
        p x n1 and p x n2 standardized data.

    n1, n2: int

    sqrt1, sqrt2: np.ndarray, optional
        Precomputed symmetric square roots of `sigma1` and `sigma2`.

    Returns
    -------
    eigs: np.ndarray

    Raises
    ------
    SingularityError
        If S2 is numerically singular.
    """
    sqrt1 = symmetric_sqrt(sigma1) if sqrt1 is None else sqrt1
    sqrt2 = symmetric_sqrt(sigma2) if sqrt2 is None else sqrt2

    hx = sqrt1 @ X
    hy = sqrt2 @ Y
    S1 = hx @ hx.T / n1
    S2 = hy @ hy.T / n2
    return generalized_eigvals(S1, S2)


def non_spiked_fisher_eigs(model, dim, rng, dist=SampleDistribution('gaussian')):
    """ Eigenvalues of a simulated Fisher matrix without spikes.

    The sample sizes are dim/y1 and dim/y2 rounded, Sigma1 carries the base
    measure of `model` and Sigma2 is the identity.
    """
    n1 = max(1, int(round(dim / model.y1)))
    n2 = int(round(dim / model.y2))
    if n2 <= dim:
        raise ConfigError('y2 = {} gives n2 = {} <= dim = {}.'.format(model.y2, n2, dim))

    root = np.sqrt(model.eigenvalues(dim))
    X = draw_matrix(dist, dim, n1, rng) * root[:, None]
    Y = draw_matrix(dist, dim, n2, rng)
    return generalized_eigvals(X @ X.T / n1, Y @ Y.T / n2)
