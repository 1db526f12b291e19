# Copyright (c) SVCache Authors. Licensed under the MIT License.

import math

import numpy as np

from svcache.utils import bind_getter


def _check_nonneg(name, value):
    if not isinstance(value, (int, float, np.integer, np.floating)) or \
            isinstance(value, bool):
        raise TypeError("{} must be a real number, but got '{}'".format(
            name, type(value)))
    if not math.isfinite(value) or value < 0:
        raise ValueError('{} must be finite and non-negative, but got {}'.format(
            name, value))


def _check_count(name, value):
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
        raise TypeError("{} must be an int, but got '{}'".format(
            name, type(value)))
    if value < 1:
        raise ValueError('{} must be at least 1, but got {}'.format(
            name, value))


def zipf_pmf(num_files, alpha):
    """
    Compute the Zipf request distribution ``P_f = f^-alpha / sum(n^-alpha)``.

    Args:
        num_files (int): Number of files.
        alpha (float): The skewness parameter.

    Returns:
        :obj:`np.ndarray`: The probability vector of length ``num_files``.
    """
    _check_count('num_files', num_files)
    _check_nonneg('alpha', alpha)

    ranks = np.arange(1, num_files + 1, dtype=float)
    weights = np.power(ranks, -float(alpha))
    return weights / weights.sum()


def mz_pmf(num_files, alpha, plateau):
    """
    Compute the Mandelbrot-Zipf request distribution
    ``P_f = (f + q)^-alpha / sum((n + q)^-alpha)``.

    Files are ranked by popularity, so the returned vector is non-increasing.
    A zero plateau reduces the distribution to :obj:`zipf_pmf`.

    Args:
        num_files (int): Number of files ``F``.
        alpha (float): The skewness parameter.
        plateau (float): The plateau factor ``q``.

    Returns:
        :obj:`np.ndarray`: The probability vector of length ``num_files``.
    """
    _check_count('num_files', num_files)
    _check_nonneg('alpha', alpha)
    _check_nonneg('plateau', plateau)

    ranks = np.arange(1, num_files + 1, dtype=float)
    weights = np.power(ranks + float(plateau), -float(alpha))
    return weights / weights.sum()


@bind_getter('alpha', 'plateau')
class PopularityModel(object):
    """
    Mandelbrot-Zipf popularity of a ranked file catalog.

    Args:
        alpha (float, optional): The skewness parameter. Default: ``0.8``.
        plateau (float, optional): The plateau factor. Default: ``5.0``.
    """

    def __init__(self, alpha=0.8, plateau=5.0):
        _check_nonneg('alpha', alpha)
        _check_nonneg('plateau', plateau)
        self._alpha = float(alpha)
        self._plateau = float(plateau)

    def __repr__(self):
        return '{}(alpha={}, plateau={})'.format(self.__class__.__name__,
                                                 self._alpha, self._plateau)

    def __eq__(self, other):
        return isinstance(other, PopularityModel) and (
            self._alpha, self._plateau) == (other._alpha, other._plateau)

    def pmf(self, num_files):
        return mz_pmf(num_files, self._alpha, self._plateau)

    def to_dict(self):
        return dict(alpha=self._alpha, plateau=self._plateau)


@bind_getter('pmf', 'rho')
class QualityPreference(object):
    """
    Distribution of the quality level a user requests. Requesting quality
    ``q`` means downloading layers ``1..q`` of a file.

    Use :obj:`QualityPreference.truncated_geometric` for the one-parameter
    family used in experiment configs, or pass an explicit pmf.

    Args:
        pmf (list | :obj:`np.ndarray`): Probabilities of quality levels
            ``1..L``.
    """

    def __init__(self, pmf, rho=None):
        pmf = np.asarray(pmf, dtype=float)
        if pmf.ndim != 1 or pmf.size < 1:
            raise ValueError('pmf must be a non-empty vector, but got shape '
                             '{}'.format(pmf.shape))
        if not np.all(np.isfinite(pmf)) or np.any(pmf < 0):
            raise ValueError('pmf entries must be finite and non-negative')
        if abs(pmf.sum() - 1) > 1e-9:
            raise ValueError('pmf must sum to 1, but got {}'.format(pmf.sum()))

        self._pmf = pmf / pmf.sum()
        self._rho = rho

    def __repr__(self):
        return '{}(levels={}, rho={})'.format(self.__class__.__name__,
                                              self.levels, self._rho)

    @classmethod
    def truncated_geometric(cls, levels, rho=1.0):
        """
        Build the preference with ``pmf(q)`` proportional to ``rho^(q-1)`` on
        ``1..levels``. ``rho < 1`` leans towards low qualities, ``rho = 1`` is
        uniform and ``rho > 1`` leans towards high qualities.

        Args:
            levels (int): Number of quality levels ``L``.
            rho (float, optional): The shape parameter. Default: ``1.0``.

        Returns:
            :obj:`QualityPreference`: The preference.
        """
        _check_count('levels', levels)
        _check_nonneg('rho', rho)
        if rho == 0:
            raise ValueError('rho must be positive, but got 0')

        # log space keeps large rho^(L-1) from overflowing
        logits = np.arange(levels, dtype=float) * math.log(rho)
        weights = np.exp(logits - logits.max())
        return cls(weights / weights.sum(), rho=float(rho))

    @classmethod
    def point_mass(cls, levels, quality):
        _check_count('levels', levels)
        if not 1 <= quality <= levels:
            raise IndexError('quality must be in [1, {}], but got {}'.format(
                levels, quality))
        pmf = np.zeros(levels)
        pmf[quality - 1] = 1
        return cls(pmf)

    @property
    def levels(self):
        return self._pmf.size

    def tail(self):
        """
        Compute ``Pr(q >= l)`` for ``l = 1..L``.

        Returns:
            :obj:`np.ndarray`: The tail probabilities, starting with exactly
                ``1.0``.
        """
        tail = np.cumsum(self._pmf[::-1])[::-1].copy()
        tail[0] = 1.0
        return np.minimum(tail, 1.0)

    def mean(self):
        return float(np.dot(np.arange(1, self.levels + 1), self._pmf))

    def to_dict(self):
        return dict(rho=self._rho, pmf=self._pmf.tolist())
