# Copyright (c) SVCache Authors. Licensed under the MIT License.

import numpy as np

from svcache.geometry import CACHE_TIERS
from svcache.utils import Registry
from .placement import BinaryPlacement, RandomPlacement

POLICIES = Registry('policy')

# relative slack when comparing accumulated sizes with a capacity
_FIT_RTOL = 1e-12


def _greedy_prefix(sizes, order, capacity_bits):
    limit = capacity_bits * (1 + _FIT_RTOL)
    used = np.cumsum(sizes[order])
    count = int(np.searchsorted(used, limit, side='right'))
    return order[:count]


def mplp_place(library, capacity_bits, tier='d2d'):
    """
    Most popular layer placement. Layers are taken in descending request
    probability (ties broken by lower file index, then lower layer index)
    until the first one that does not fit.

    Args:
        library (:obj:`VideoLibrary`): The library.
        capacity_bits (float): The cache size in bits.
        tier (str, optional): The cache tier to fill. Default: ``'d2d'``.

    Returns:
        :obj:`BinaryPlacement`: The placement, caching nothing at the other \
            tier.
    """
    if capacity_bits < 0:
        raise ValueError('capacity_bits must be non-negative, but got '
                         '{}'.format(capacity_bits))

    num_files, num_layers = library.shape
    files, layers = np.meshgrid(
        np.arange(num_files), np.arange(num_layers), indexing='ij')
    probs = library.layer_request_probs().ravel()

    order = np.lexsort((layers.ravel(), files.ravel(), -probs))
    chosen = _greedy_prefix(library.layer_sizes.ravel(), order, capacity_bits)

    mask = np.zeros(num_files * num_layers)
    mask[chosen] = 1
    return BinaryPlacement({tier: mask.reshape(num_files, num_layers)},
                           capacities={tier: capacity_bits})


def mpcp_no_svc_place(library, capacity_bits):
    """
    Most popular content placement of whole, non-SVC files. Files are taken
    in descending popularity (ties broken by lower file index) until the
    first one that does not fit.

    Args:
        library (:obj:`VideoLibrary`): The library.
        capacity_bits (float): The cache size in bits.

    Returns:
        :obj:`np.ndarray`: Boolean indicators of the cached files.
    """
    if capacity_bits < 0:
        raise ValueError('capacity_bits must be non-negative, but got '
                         '{}'.format(capacity_bits))

    pmf = library.file_pmf()
    order = np.lexsort((np.arange(pmf.size), -pmf))
    sizes = np.full(pmf.size, library.plain_size_bits)
    chosen = _greedy_prefix(sizes, order, capacity_bits)

    cached = np.zeros(pmf.size, dtype=bool)
    cached[chosen] = True
    return cached


class CachingPolicy(object):
    """
    Base class for placement policies. A policy turns a library and per-tier
    cache sizes into a placement. Policies caching whole files evaluate on
    :obj:`VideoLibrary.without_svc` instead of the layered library.
    """

    svc = True

    def library_for(self, library):
        return library if self.svc else library.without_svc()

    def place(self, library, capacities, params=None):
        raise NotImplementedError

    def __call__(self, library, capacities, params=None):
        return self.place(library, capacities, params=params)


@POLICIES.register(name='NoCache')
class NoCache(CachingPolicy):
    """
    Nothing is cached; every layer comes from the macro tier over the
    backhaul.
    """

    def place(self, library, capacities, params=None):
        return RandomPlacement.zeros(library.shape).with_capacities(capacities)


@POLICIES.register(name='MPLP_SVC')
class MPLPSVC(CachingPolicy):
    """
    Every D2D helper and SBS is filled with the most popular SVC layers.
    """

    def place(self, library, capacities, params=None):
        matrices = {
            t: mplp_place(library, capacities[t], tier=t)[t]
            for t in CACHE_TIERS
        }
        return BinaryPlacement(matrices, capacities=capacities)


@POLICIES.register(name='MPCP_NoSVC')
class MPCPNoSVC(CachingPolicy):
    """
    Every D2D helper and SBS is filled with the most popular whole files, and
    users always download the full non-SVC file.
    """

    svc = False

    def place(self, library, capacities, params=None):
        matrices = {
            t: mpcp_no_svc_place(library, capacities[t])[:, None]
            for t in CACHE_TIERS
        }
        return BinaryPlacement(matrices, capacities=capacities)


def build_policy(cfg, **kwargs):
    policy = POLICIES.build(cfg, **kwargs)
    if policy is None:
        POLICIES.require(cfg if isinstance(cfg, str) else cfg['type'])
    return policy
