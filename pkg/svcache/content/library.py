# Copyright (c) SVCache Authors. Licensed under the MIT License.

import hashlib
from collections import namedtuple

import numpy as np

from svcache.utils import bind_getter
from .popularity import PopularityModel, QualityPreference

MBIT = 1e6

SuperLayer = namedtuple('SuperLayer', ['file', 'quality', 'size_bits'])
SuperLayer.__doc__ = """
A bundle of the base layer and the successive enhancement layers ``2..q`` of
one file, treated as a single caching and delivery unit.
"""


@bind_getter('layer_sizes', 'popularity', 'preference', 'plain_size_bits')
class VideoLibrary(object):
    """
    A catalog of ``F`` SVC-encoded video files with ``L`` layers each.

    Files are ranked by popularity (file ``1`` is the most popular) and layer
    ``1`` is the base layer. Public indices are 1-based, while the matrices
    returned by this class are 0-based arrays of shape ``(F, L)``.

    Args:
        layer_sizes (:obj:`np.ndarray`): Layer sizes in bits, shape
            ``(F, L)``.
        popularity (:obj:`PopularityModel`): The file popularity model.
        preference (:obj:`QualityPreference`): The quality preference with
            ``L`` levels.
        plain_size_bits (float | None, optional): Size of a file without SVC
            encoding, used by whole-file baselines. If not specified, the
            mean SVC file size is used. Default: ``None``.
    """

    def __init__(self,
                 layer_sizes,
                 popularity=None,
                 preference=None,
                 plain_size_bits=None):
        layer_sizes = np.array(layer_sizes, dtype=float)
        if layer_sizes.ndim != 2 or 0 in layer_sizes.shape:
            raise ValueError('layer_sizes must be a non-empty F x L matrix, '
                             'but got shape {}'.format(layer_sizes.shape))
        if not np.all(np.isfinite(layer_sizes)) or np.any(layer_sizes <= 0):
            raise ValueError('every layer size must be finite and positive')

        num_layers = layer_sizes.shape[1]
        popularity = popularity or PopularityModel()
        preference = preference or QualityPreference.truncated_geometric(
            num_layers)

        if preference.levels != num_layers:
            raise ValueError(
                'preference has {} levels but files have {} layers'.format(
                    preference.levels, num_layers))

        if plain_size_bits is None:
            plain_size_bits = float(layer_sizes.sum(axis=1).mean())
        elif not plain_size_bits > 0:
            raise ValueError('plain_size_bits must be positive, but got '
                             '{}'.format(plain_size_bits))

        self._layer_sizes = layer_sizes
        self._popularity = popularity
        self._preference = preference
        self._plain_size_bits = float(plain_size_bits)

        self._file_pmf = popularity.pmf(layer_sizes.shape[0])
        self._request_probs = np.outer(self._file_pmf, preference.tail())

    def __repr__(self):
        return '{}(file_count={}, layers_per_file={}, popularity={}, ' \
            'preference={})'.format(self.__class__.__name__, self.file_count,
                                    self.layers_per_file, self._popularity,
                                    self._preference)

    @property
    def file_count(self):
        return self._layer_sizes.shape[0]

    @property
    def layers_per_file(self):
        return self._layer_sizes.shape[1]

    @property
    def shape(self):
        return self._layer_sizes.shape

    @property
    def total_size_bits(self):
        return float(self._layer_sizes.sum())

    def file_pmf(self):
        return self._file_pmf.copy()

    def layer_request_probs(self):
        """
        Compute the request probability of every layer, i.e.
        ``P_f * Pr(q >= l)``.

        Returns:
            :obj:`np.ndarray`: The request probabilities of shape ``(F, L)``.
        """
        return self._request_probs.copy()

    def mean_quality(self):
        return self._preference.mean()

    def check_index(self, f, l=None):
        if not 1 <= f <= self.file_count:
            raise IndexError('file index must be in [1, {}], but got {}'.format(
                self.file_count, f))
        if l is not None and not 1 <= l <= self.layers_per_file:
            raise IndexError(
                'layer index must be in [1, {}], but got {}'.format(
                    self.layers_per_file, l))

    def fingerprint(self):
        """
        Compute a digest identifying the sizes, popularity and preference of
        this library. Placements record it so that they are never evaluated
        against a different catalog.

        Returns:
            str: The hexadecimal SHA-1 digest.
        """
        sha = hashlib.sha1()
        sha.update(np.ascontiguousarray(self._layer_sizes).tobytes())
        sha.update(np.array([
            self._popularity.alpha, self._popularity.plateau,
            self._plain_size_bits
        ]).tobytes())
        sha.update(np.ascontiguousarray(self._preference.pmf).tobytes())
        return sha.hexdigest()

    def without_svc(self):
        """
        Build the whole-file counterpart of this library: one layer per file
        of the plain (non-SVC) size, always requested in full.

        Returns:
            :obj:`VideoLibrary`: The degenerate library.
        """
        sizes = np.full((self.file_count, 1), self._plain_size_bits)
        return VideoLibrary(
            sizes,
            popularity=self._popularity,
            preference=QualityPreference.point_mass(1, 1),
            plain_size_bits=self._plain_size_bits)

    def to_dict(self):
        return dict(
            file_count=self.file_count,
            layers_per_file=self.layers_per_file,
            layer_sizes_bits=self._layer_sizes.tolist(),
            plain_size_bits=self._plain_size_bits,
            popularity=self._popularity.to_dict(),
            preference=self._preference.to_dict())


def build_library(cfg):
    """
    Build a :obj:`VideoLibrary` from a library config block.

    The SVC file size is ``base_size_mbit * (1 + svc_overhead)``, split into
    ``layers_per_file`` equal layers unless ``layer_sizes_mbit`` lists the
    size of every layer explicitly.

    Args:
        cfg (dict): The config with fields ``file_count``,
            ``layers_per_file``, ``base_size_mbit``, ``svc_overhead``,
            ``popularity`` (``alpha``, ``plateau``), ``preference`` (``rho``)
            and optionally ``layer_sizes_mbit``.

    Returns:
        :obj:`VideoLibrary`: The constructed library.
    """
    num_files = cfg['file_count']
    num_layers = cfg['layers_per_file']
    if num_files < 1 or num_layers < 1:
        raise ValueError('file_count and layers_per_file must be positive')

    base_bits = float(cfg['base_size_mbit']) * MBIT
    overhead = float(cfg.get('svc_overhead', 0))
    if base_bits <= 0:
        raise ValueError('base_size_mbit must be positive, but got {}'.format(
            cfg['base_size_mbit']))
    if overhead < 0:
        raise ValueError('svc_overhead must be non-negative, but got {}'.format(
            overhead))

    explicit = cfg.get('layer_sizes_mbit')
    if explicit is not None:
        if len(explicit) != num_layers:
            raise ValueError(
                'layer_sizes_mbit has {} entries, expected {}'.format(
                    len(explicit), num_layers))
        row = np.asarray(explicit, dtype=float) * MBIT
    else:
        # base + base * overhead is exact for the usual decimal inputs
        row = np.full(num_layers, (base_bits + base_bits * overhead) /
                      num_layers)

    if np.any(row <= 0):
        raise ValueError('every layer size must be positive')

    popularity = PopularityModel(**cfg.get('popularity', dict()))
    preference = QualityPreference.truncated_geometric(
        num_layers, **cfg.get('preference', dict()))

    return VideoLibrary(
        np.tile(row, (num_files, 1)),
        popularity=popularity,
        preference=preference,
        plain_size_bits=base_bits)


def layer_request_prob(library, f, l):
    """
    Compute the probability that layer ``l`` of file ``f`` is requested.

    Args:
        library (:obj:`VideoLibrary`): The library.
        f (int): The 1-based file index.
        l (int): The 1-based layer index.

    Returns:
        float: ``P_f * Pr(q >= l)``.
    """
    library.check_index(f, l)
    return float(library.layer_request_probs()[f - 1, l - 1])


def super_layer(library, f, q):
    library.check_index(f, q)
    size = float(np.sum(library.layer_sizes[f - 1, :q]))
    return SuperLayer(file=f, quality=q, size_bits=size)
