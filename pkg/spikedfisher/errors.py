# -*- coding: utf-8 -*-
"""
Exceptions raised by spikedfisher.

Every error derives from `SpikedFisherError` and from the builtin exception
closest to its meaning, so callers can catch either.
"""


class SpikedFisherError(Exception):
    """ Base class of all the package errors."""


class ConfigError(SpikedFisherError, ValueError):
    """ Invalid model, simulation or command line configuration."""


class OutputError(SpikedFisherError, IOError):
    """ Results could not be written or read back."""


class UnsupportedModelError(SpikedFisherError, NotImplementedError):
    """ The requested computation is not available for this model."""


class DomainError(SpikedFisherError, ValueError):
    """ Argument outside the domain of a function."""


class SpikeInsideBulkError(DomainError):
    """ Evaluation point too close to (or inside) the support of the LSD."""


class PoleError(SpikedFisherError, ZeroDivisionError):
    """ Evaluation point at a pole of the phase transition map."""


class MismatchError(SpikedFisherError, ValueError):
    """ A transform bundle was evaluated at a different point than requested."""


class DegenerateError(SpikedFisherError, ArithmeticError):
    """ A normalizing quantity vanished."""


class SingularityError(SpikedFisherError, ArithmeticError):
    """ A matrix that has to be positive definite is numerically singular."""


class ResolventError(SpikedFisherError, ArithmeticError):
    """ The resolvent at the evaluation point is too ill-conditioned."""


class GeometryError(SpikedFisherError, ValueError):
    """ Two configurations do not share dimensions and spikes."""


class HarnessError(SpikedFisherError, RuntimeError):
    """ Too many Monte Carlo replications failed."""


class ClassificationError(SpikedFisherError, RuntimeError):
    """ The critical point of a non-distant spike could not be bracketed.

    Parameters
    ----------
    alpha: float
        The spike being classified.

    interval: tuple of float
        The search interval.

    psi_prime_range: tuple of float
        Minimum and maximum of the derivative sampled on the interval.
    """
    def __init__(self, alpha, interval, psi_prime_range):
        self.alpha = alpha
        self.interval = interval
        self.psi_prime_range = psi_prime_range
        msg = ('Could not bracket a critical point of psi for the spike {} in the '
               'interval ({:.6g}, {:.6g}); sampled psi\' range was [{:.6g}, {:.6g}].')
        super(ClassificationError, self).__init__(msg.format(alpha, interval[0], interval[1],
                                                             psi_prime_range[0],
                                                             psi_prime_range[1]))
