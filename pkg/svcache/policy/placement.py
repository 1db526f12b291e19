# Copyright (c) SVCache Authors. Licensed under the MIT License.

import math

import numpy as np

from svcache.geometry import CACHE_TIERS
from svcache.utils import bind_getter


class FingerprintError(ValueError):
    """
    Raised when a placement is used with a library other than the one it was
    produced for.
    """


@bind_getter('capacities')
class Placement(object):
    """
    Base class for per-tier caching decisions over the ``(F, L)`` layers of a
    library. All nodes of a tier share the same matrix.

    The inherited classes define the meaning of an entry (a caching
    probability, a cached fraction, or a binary indicator) through
    :obj:`self.kind` and may tighten :obj:`self._check_values`.

    Args:
        matrices (dict): Mapping from cache tier id (``'d2d'`` or ``'sbs'``)
            to an ``(F, L)`` matrix with entries in ``[0, 1]``. Missing tiers
            cache nothing.
        capacities (dict | None, optional): Per-tier cache sizes in bits.
            When given, delay evaluators reject placements violating them.
            Default: ``None``.
    """

    kind = None

    def __init__(self, matrices, capacities=None):
        if len(matrices) == 0:
            raise ValueError('at least one tier matrix is required')

        shape, parsed = None, dict()
        for tier in CACHE_TIERS:
            if tier not in matrices:
                continue

            mat = np.array(matrices[tier], dtype=float)
            if mat.ndim != 2:
                raise ValueError(
                    "matrix of tier '{}' must be 2-D, but got shape {}".format(
                        tier, mat.shape))
            if shape is not None and mat.shape != shape:
                raise ValueError('tier matrices have mismatched shapes {} and '
                                 '{}'.format(shape, mat.shape))
            self._check_values(tier, mat)

            shape = mat.shape
            parsed[tier] = mat

        unknown = set(matrices) - set(CACHE_TIERS)
        if len(unknown) > 0:
            raise ValueError('unknown cache tiers: {}'.format(sorted(unknown)))

        for tier in CACHE_TIERS:
            if tier not in parsed:
                parsed[tier] = np.zeros(shape)

        self._matrices = parsed
        self._capacities = None if capacities is None else {
            k: float(v)
            for k, v in capacities.items()
        }

    def __repr__(self):
        return '{}(shape={}, capacities={})'.format(self.__class__.__name__,
                                                    self.shape,
                                                    self._capacities)

    def __getitem__(self, tier):
        view = self._matrices[tier].view()
        view.flags.writeable = False
        return view

    def _check_values(self, tier, mat):
        if not np.all((mat >= 0) & (mat <= 1)):
            raise ValueError(
                "entries of tier '{}' must be in [0, 1]".format(tier))

    @property
    def shape(self):
        return self._matrices[CACHE_TIERS[0]].shape

    def tiers(self):
        return list(CACHE_TIERS)

    def with_capacities(self, capacities):
        return self.__class__(self._matrices, capacities=capacities)

    def occupancy(self, library):
        """
        Compute the expected number of bits a node of each tier stores.

        Args:
            library (:obj:`VideoLibrary`): The library.

        Returns:
            dict: Mapping from tier id to occupancy in bits.
        """
        _check_shape(self, library)
        sizes = library.layer_sizes
        return {
            t: math.fsum((sizes * self._matrices[t]).ravel())
            for t in CACHE_TIERS
        }

    def to_dict(self, library=None, seed=None, config=None):
        """
        Convert the placement into its JSON snapshot.

        Args:
            library (:obj:`VideoLibrary` | None, optional): The library whose
                fingerprint is recorded. Default: ``None``.
            seed (int | None, optional): The seed of the producing run.
                Default: ``None``.
            config (dict | None, optional): The resolved config of the
                producing run. Default: ``None``.

        Returns:
            dict: The snapshot.
        """
        return dict(
            kind=self.kind,
            library_fingerprint=None
            if library is None else library.fingerprint(),
            seed=seed,
            config=config,
            capacities_bits=self._capacities,
            tiers={t: self._matrices[t].tolist()
                   for t in CACHE_TIERS})

    @staticmethod
    def from_dict(data, library=None):
        """
        Restore a placement from its JSON snapshot.

        Args:
            data (dict): The snapshot.
            library (:obj:`VideoLibrary` | None, optional): If specified, the
                recorded fingerprint must match this library. Default:
                ``None``.

        Returns:
            :obj:`Placement`: The restored placement.
        """
        kinds = {
            c.kind: c
            for c in (RandomPlacement, BinaryPlacement, FractionalPlacement)
        }
        if data.get('kind') not in kinds:
            raise ValueError("unknown placement kind '{}'".format(
                data.get('kind')))

        if library is not None:
            expected = library.fingerprint()
            recorded = data.get('library_fingerprint')
            if recorded != expected:
                raise FingerprintError(
                    'placement was produced for library {} but the config '
                    'describes library {}'.format(recorded, expected))

        placement = kinds[data['kind']](
            data['tiers'], capacities=data.get('capacities_bits'))
        if library is not None:
            _check_shape(placement, library)
        return placement


class RandomPlacement(Placement):
    """
    Random caching: every node of a tier stores layer ``(f, l)``
    independently with probability ``p[f, l]``. Cache sizes hold in
    expectation.
    """

    kind = 'random'

    @staticmethod
    def zeros(shape):
        return RandomPlacement({t: np.zeros(shape) for t in CACHE_TIERS})


class BinaryPlacement(Placement):
    """
    Deterministic caching: every node of a tier stores exactly the layers
    whose indicator is ``1``.
    """

    kind = 'binary'

    def _check_values(self, tier, mat):
        if not np.all((mat == 0) | (mat == 1)):
            raise ValueError(
                "entries of tier '{}' must be 0 or 1".format(tier))

    def cached(self, tier):
        return self._matrices[tier].astype(bool)

    def as_random(self):
        return RandomPlacement(self._matrices, capacities=self._capacities)


class FractionalPlacement(Placement):
    """
    Fractional caching: every node of a tier stores the leading
    ``x[f, l]`` fraction of layer ``(f, l)``; the rest is fetched over the
    backhaul.
    """

    kind = 'fractional'


def _check_shape(placement, library):
    if placement.shape != library.shape:
        raise ValueError(
            'placement has shape {} but the library has shape {}'.format(
                placement.shape, library.shape))


def _resolve_capacities(placement, capacity_bits):
    if capacity_bits is None:
        capacity_bits = placement.capacities
    if capacity_bits is None:
        raise ValueError('no cache capacities given')
    if not isinstance(capacity_bits, dict):
        capacity_bits = {t: capacity_bits for t in CACHE_TIERS}
    return capacity_bits


def check_feasibility(placement, library, capacity_bits=None, tol_bits=1e-6):
    """
    Check the cache size constraints of a placement.

    Binary placements must fit up to the rounding of summed layer sizes,
    i.e. ``1e-12 * C``. Random and fractional placements are checked in
    expectation with tolerance ``max(tol_bits, 1e-9 * C)``.

    Args:
        placement (:obj:`Placement`): The placement.
        library (:obj:`VideoLibrary`): The library.
        capacity_bits (dict | float | None, optional): Per-tier capacities in
            bits, or one capacity for all tiers. If not specified, the
            capacities of the placement are used. Default: ``None``.
        tol_bits (float, optional): The absolute tolerance in bits. Default:
            ``1e-6``.

    Returns:
        tuple[bool, dict]: Whether the placement is feasible and the slack \
            ``C - occupancy`` of every tier.
    """
    capacity_bits = _resolve_capacities(placement, capacity_bits)
    occupancy = placement.occupancy(library)

    feasible, slack = True, dict()
    for tier in CACHE_TIERS:
        cap = capacity_bits.get(tier)
        if cap is None or math.isinf(cap):
            slack[tier] = math.inf
            continue

        if cap < 0:
            raise ValueError('capacity of {} must be non-negative, but got '
                             '{}'.format(tier, cap))

        slack[tier] = cap - occupancy[tier]
        tol = 1e-12 * cap if isinstance(placement, BinaryPlacement) else max(
            tol_bits, 1e-9 * cap)
        if slack[tier] < -tol:
            feasible = False

    return feasible, slack
