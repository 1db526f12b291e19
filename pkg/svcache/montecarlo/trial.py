# Copyright (c) SVCache Authors. Licensed under the MIT License.

import math
from collections import namedtuple

import numpy as np

from svcache.geometry import (CACHE_TIERS, far_field_interference,
                              pathloss_gain, sample_fading)
from svcache.policy import sample_cache_contents
from svcache.utils import Registry

DELIVERIES = Registry('delivery')

RATE_MODES = ('mean', 'sinr')

CachedNodes = namedtuple('CachedNodes', ['indices', 'distances', 'masks'])
CachedNodes.__doc__ = """
The nodes of a cache tier that can serve the typical user, nearest first,
with their sampled ``(F, L)`` content masks.
"""


def sample_contents(realization,
                    placement,
                    params,
                    rng,
                    truncate=False,
                    library=None):
    """
    Sample the cache contents of the nodes within the serving radius of each
    cache tier. Nodes farther away can never serve the typical user, so
    their contents are not drawn.

    Args:
        realization (:obj:`NetworkRealization`): The topology.
        placement (:obj:`Placement`): The caching probabilities.
        params (:obj:`DelayParams`): Provides the serving radii.
        rng (:obj:`np.random.Generator`): The random generator.
        truncate (bool, optional): Whether every node must fit its cache.
            Default: ``False``.
        library (:obj:`VideoLibrary` | None, optional): The library, required
            when ``truncate=True``. Default: ``None``.

    Returns:
        dict: Mapping from cache tier id to :obj:`CachedNodes`.
    """
    radii = dict(d2d=params.d2d_radius, sbs=params.sbs_radius)

    contents = dict()
    for tier in CACHE_TIERS:
        dist = realization.distances(tier)
        inside = np.flatnonzero(dist <= radii[tier])
        inside = inside[np.argsort(dist[inside], kind='stable')]
        masks = sample_cache_contents(
            placement,
            tier,
            rng,
            num_nodes=inside.size,
            truncate=truncate,
            library=library)
        contents[tier] = CachedNodes(inside, dist[inside], masks)

    return contents


class LinkModel(object):
    """
    Resolves where each unit of a request is served from and how long its
    delivery takes in one trial.

    A unit is served by the nearest D2D helper within range that caches it,
    then by the nearest such SBS, and otherwise by the nearest MBS after a
    backhaul retrieval.

    Args:
        realization (:obj:`NetworkRealization`): The topology.
        contents (dict): The output of :obj:`sample_contents`.
        library (:obj:`VideoLibrary`): The library.
        params (:obj:`DelayParams`): The delay model constants.
        rng (:obj:`np.random.Generator`): The random generator for fading.
        tiers (dict | None, optional): Tier configs, required by the
            ``'sinr'`` rate mode. Default: ``None``.
        rate_mode (str, optional): ``'mean'`` uses the mean rates of
            ``params``, ``'sinr'`` computes every link rate from its sampled
            SINR. Default: ``'mean'``.
        min_sinr_db (float, optional): Floor of the per-link SINR in the
            ``'sinr'`` mode. Default: ``-10.0``.
        min_distance (float, optional): The pathloss clamp distance in
            meters. Default: ``0.5``.
        fading (bool, optional): Whether links experience Rayleigh fading.
            Default: ``True``.
        far_field (bool, optional): Whether the ``'sinr'`` mode adds the
            mean interference of the nodes outside the window. Default:
            ``True``.
    """

    def __init__(self,
                 realization,
                 contents,
                 library,
                 params,
                 rng,
                 tiers=None,
                 rate_mode='mean',
                 min_sinr_db=-10.0,
                 min_distance=0.5,
                 fading=True,
                 far_field=True):
        if rate_mode not in RATE_MODES:
            raise ValueError("rate_mode must be one of {}, but got '{}'".format(
                RATE_MODES, rate_mode))
        if rate_mode == 'sinr' and tiers is None:
            raise ValueError("rate_mode 'sinr' requires tier configs")

        self._realization = realization
        self._contents = contents
        self._sizes = library.layer_sizes
        self._params = params
        self._rng = rng
        self._tiers = tiers
        self._rate_mode = rate_mode
        self._min_sinr = 10**(min_sinr_db / 10)
        self._min_distance = min_distance
        self._fading = fading
        self._far_field = far_field

    def _rate(self, tier, node):
        if self._rate_mode == 'mean':
            return dict(
                d2d=self._params.d2d_rate,
                sbs=self._params.sbs_rate,
                mbs=self._params.mbs_rate)[tier]

        cfg = self._tiers[tier]
        dist = self._realization.distances(tier)
        gain = cfg.power * pathloss_gain(dist, cfg.pathloss_exp,
                                         self._min_distance)
        if self._fading:
            gain = gain * sample_fading(self._rng, gain.size)

        signal = gain[node]
        interference = math.fsum(gain) - signal
        if self._far_field:
            interference += far_field_interference(
                cfg, self._realization.window_radius)
        ratio = max(signal / (max(interference, 0.0) + cfg.noise),
                    self._min_sinr)
        return cfg.bandwidth * math.log2(1 + ratio)

    def _serve(self, size, cached):
        for tier in CACHE_TIERS:
            hits = np.flatnonzero(cached[tier])
            if hits.size > 0:
                node = self._contents[tier].indices[hits[0]]
                return size / self._rate(tier, node)

        mbs = int(np.argmin(self._realization.distances('mbs')))
        return size / self._rate('mbs', mbs) + \
            size / self._params.backhaul_rate

    def layer_delay(self, f, l):
        """
        Delivery time of layer ``l`` of file ``f`` (1-based) in seconds.
        """
        cached = {
            t: self._contents[t].masks[:, f - 1, l - 1]
            for t in CACHE_TIERS
        }
        return self._serve(self._sizes[f - 1, l - 1], cached)

    def super_layer_delay(self, f, q):
        """
        Delivery time of the super layer of quality ``q`` of file ``f`` in
        seconds. A node holds the super layer only if it caches all of the
        layers ``1..q``.
        """
        cached = {
            t: self._contents[t].masks[:, f - 1, :q].all(axis=1)
            for t in CACHE_TIERS
        }
        return self._serve(float(np.sum(self._sizes[f - 1, :q])), cached)


@DELIVERIES.register(name='sequential')
class SequentialDelivery(object):
    """
    Layers are delivered one after another; the delay is their sum.
    """

    def __call__(self, link, f, q):
        return math.fsum(link.layer_delay(f, l) for l in range(1, q + 1))


@DELIVERIES.register(name='parallel_ilt')
class ParallelILTDelivery(object):
    """
    Layers are delivered concurrently on orthogonal resources; the delay is
    that of the slowest layer.
    """

    def __call__(self, link, f, q):
        return max(link.layer_delay(f, l) for l in range(1, q + 1))


@DELIVERIES.register(name='slt')
class SLTDelivery(object):
    """
    The requested layers are delivered as one super layer. A missing super
    layer is fetched in full through the macro path.
    """

    def __call__(self, link, f, q):
        return link.super_layer_delay(f, q)


def run_trial(realization,
              contents,
              request,
              library,
              params,
              mode='sequential',
              rng=None,
              **kwargs):
    """
    Measure the delivery delay of one request of the typical user.

    Args:
        realization (:obj:`NetworkRealization`): The topology.
        contents (dict): The output of :obj:`sample_contents`.
        request (tuple[int]): The 1-based file index ``f`` and quality
            ``q``.
        library (:obj:`VideoLibrary`): The library.
        params (:obj:`DelayParams`): The delay model constants.
        mode (str, optional): The delivery mode. Expected values include
            ``'sequential'``, ``'parallel_ilt'`` and ``'slt'``. Default:
            ``'sequential'``.
        rng (:obj:`np.random.Generator` | None, optional): The random
            generator for fading. Default: ``None``.

    Returns:
        float: The delay in seconds.
    """
    f, q = request
    library.check_index(f, q)

    delivery = DELIVERIES.require(mode)()
    link = LinkModel(realization, contents, library, params,
                     rng if rng is not None else np.random.default_rng(),
                     **kwargs)
    return float(delivery(link, f, q))
