# Copyright (c) SVCache Authors. Licensed under the MIT License.

import math
from collections import OrderedDict

from svcache.utils import bind_getter

TIER_NAMES = ('d2d', 'sbs', 'mbs')
CACHE_TIERS = ('d2d', 'sbs')


@bind_getter('name', 'density', 'radius', 'power', 'pathloss_exp',
             'bandwidth', 'noise', 'cache_size_bits')
class TierConfig(object):
    """
    Deployment parameters of one tier of caching and serving nodes.

    Args:
        name (str): The tier id. Expected values include ``'d2d'``,
            ``'sbs'`` and ``'mbs'``.
        density (float): Node density in nodes per square meter.
        radius (float | None): Serving radius in meters. Only the macro
            tier may leave it unset, in which case the nearest node serves
            regardless of distance.
        power (float): Transmit power in watts.
        pathloss_exp (float, optional): The pathloss exponent. Default:
            ``4.0``.
        bandwidth (float, optional): Bandwidth in Hz. Default: ``1e7``.
        noise (float, optional): Noise power in watts. Default: ``1e-13``.
        cache_size_bits (float | None, optional): Per-node cache size in
            bits. Default: ``None``.
    """

    def __init__(self,
                 name,
                 density,
                 radius,
                 power,
                 pathloss_exp=4.0,
                 bandwidth=1e7,
                 noise=1e-13,
                 cache_size_bits=None):
        if name not in TIER_NAMES:
            raise ValueError("tier name must be one of {}, but got '{}'".format(
                TIER_NAMES, name))
        if not density > 0 or not math.isfinite(density):
            raise ValueError('{}: density must be positive, but got {}'.format(
                name, density))
        if radius is None and name != 'mbs':
            raise ValueError('{}: serving radius is required'.format(name))
        if radius is not None and not radius > 0:
            raise ValueError('{}: radius must be positive, but got {}'.format(
                name, radius))
        if not power > 0:
            raise ValueError('{}: power must be positive, but got {}'.format(
                name, power))
        if not pathloss_exp > 2:
            raise ValueError(
                '{}: pathloss exponent must be greater than 2, but got '
                '{}'.format(name, pathloss_exp))
        if not bandwidth > 0 or not noise > 0:
            raise ValueError('{}: bandwidth and noise must be positive'.format(
                name))
        if cache_size_bits is not None and cache_size_bits < 0:
            raise ValueError(
                '{}: cache size must be non-negative, but got {}'.format(
                    name, cache_size_bits))

        self._name = name
        self._density = float(density)
        self._radius = None if radius is None else float(radius)
        self._power = float(power)
        self._pathloss_exp = float(pathloss_exp)
        self._bandwidth = float(bandwidth)
        self._noise = float(noise)
        self._cache_size_bits = None if cache_size_bits is None else float(
            cache_size_bits)

    def __repr__(self):
        return '{}(name={}, density={}, radius={})'.format(
            self.__class__.__name__, self._name, self._density, self._radius)

    @property
    def hit_scale(self):
        """
        The mean number of tier nodes inside the serving disk, i.e.
        ``density * pi * radius^2``.
        """
        if self._radius is None:
            return math.inf
        return self._density * math.pi * self._radius**2

    def replace(self, **kwargs):
        fields = self.to_dict()
        fields.update(kwargs)
        return TierConfig(**fields)

    def to_dict(self):
        return OrderedDict(
            name=self._name,
            density=self._density,
            radius=self._radius,
            power=self._power,
            pathloss_exp=self._pathloss_exp,
            bandwidth=self._bandwidth,
            noise=self._noise,
            cache_size_bits=self._cache_size_bits)


def validate_tiers(tiers):
    """
    Check that a set of tiers forms a valid three-tier network: each tier id
    appears once and densities decrease from the D2D tier to the macro tier.

    Args:
        tiers (dict): Mapping from tier id to :obj:`TierConfig`.

    Returns:
        :obj:`OrderedDict`: The tiers in ``d2d``, ``sbs``, ``mbs`` order.
    """
    missing = [n for n in TIER_NAMES if n not in tiers]
    if len(missing) > 0:
        raise ValueError('missing tiers: {}'.format(missing))

    for key, tier in tiers.items():
        if key != tier.name:
            raise ValueError("tier '{}' is stored under key '{}'".format(
                tier.name, key))

    d2d, sbs, mbs = (tiers[n] for n in TIER_NAMES)
    if not d2d.density > sbs.density > mbs.density:
        raise ValueError(
            'densities must satisfy d2d > sbs > mbs, but got {} / {} / '
            '{}'.format(d2d.density, sbs.density, mbs.density))

    return OrderedDict((n, tiers[n]) for n in TIER_NAMES)
