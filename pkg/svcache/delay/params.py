# Copyright (c) SVCache Authors. Licensed under the MIT License.

import math
from collections import OrderedDict

import numpy as np

import svcache
from svcache.geometry import TIER_NAMES, mean_spectral_efficiency
from svcache.utils import bind_getter

_FIELDS = ('d2d_rate', 'sbs_rate', 'mbs_rate', 'backhaul_rate', 'd2d_density',
           'd2d_radius', 'sbs_density', 'sbs_radius')


@bind_getter(*_FIELDS)
class DelayParams(object):
    """
    Constants of the analytic delay model. Rates are in bits/s, densities in
    nodes per square meter and radii in meters.

    Args:
        d2d_rate (float): Mean D2D downlink rate ``R_d``.
        sbs_rate (float): Mean SBS downlink rate ``R_s``.
        mbs_rate (float): Mean MBS downlink rate ``R_m``.
        backhaul_rate (float): Backhaul delivery rate ``R_bh``.
        d2d_density (float): D2D helper density.
        d2d_radius (float): D2D serving radius.
        sbs_density (float): SBS density.
        sbs_radius (float): SBS serving radius.
    """

    def __init__(self, d2d_rate, sbs_rate, mbs_rate, backhaul_rate,
                 d2d_density, d2d_radius, sbs_density, sbs_radius):
        for name in ('d2d_rate', 'sbs_rate', 'mbs_rate', 'backhaul_rate',
                     'd2d_radius', 'sbs_radius'):
            value = locals()[name]
            if not value > 0:
                raise ValueError('{} must be positive, but got {}'.format(
                    name, value))
        for name in ('d2d_density', 'sbs_density'):
            value = locals()[name]
            if not value >= 0 or not math.isfinite(value):
                raise ValueError('{} must be non-negative, but got {}'.format(
                    name, value))

        self._d2d_rate = float(d2d_rate)
        self._sbs_rate = float(sbs_rate)
        self._mbs_rate = float(mbs_rate)
        self._backhaul_rate = float(backhaul_rate)
        self._d2d_density = float(d2d_density)
        self._d2d_radius = float(d2d_radius)
        self._sbs_density = float(sbs_density)
        self._sbs_radius = float(sbs_radius)

    def __repr__(self):
        return '{}({})'.format(
            self.__class__.__name__,
            ', '.join('{}={}'.format(k, v) for k, v in self.to_dict().items()))

    def __eq__(self, other):
        return isinstance(other, DelayParams) and \
            self.to_dict() == other.to_dict()

    def hit_scale(self, tier):
        """
        Return ``density * pi * radius^2`` of a cache tier, the exponent
        scale of its hit probability.
        """
        if tier == 'd2d':
            return self._d2d_density * math.pi * self._d2d_radius**2
        elif tier == 'sbs':
            return self._sbs_density * math.pi * self._sbs_radius**2
        raise ValueError("unknown cache tier '{}'".format(tier))

    def per_bit_times(self):
        """
        Return the seconds per bit of the D2D, SBS and MBS+backhaul paths.
        """
        return (1 / self._d2d_rate, 1 / self._sbs_rate,
                1 / self._mbs_rate + 1 / self._backhaul_rate)

    def replace(self, **kwargs):
        fields = self.to_dict()
        for key in kwargs:
            if key not in fields:
                raise TypeError("unknown field '{}'".format(key))
        fields.update(kwargs)
        return DelayParams(**fields)

    def to_dict(self):
        return OrderedDict((k, getattr(self, '_' + k)) for k in _FIELDS)


def build_delay_params(tiers,
                       backhaul_rate,
                       rates=None,
                       n_samples=20000,
                       window_radius=150.0,
                       min_distance=0.5,
                       seed=0,
                       logger=None):
    """
    Build :obj:`DelayParams` from tier configs. Each mean downlink rate is
    the tier bandwidth times its mean spectral efficiency, unless it is
    given explicitly in ``rates``.

    Args:
        tiers (dict): Mapping from tier id to :obj:`TierConfig`.
        backhaul_rate (float): Backhaul delivery rate in bits/s.
        rates (dict | None, optional): Explicit downlink rates in bits/s by
            tier id. ``None`` entries are estimated. Default: ``None``.
        n_samples (int, optional): Samples per spectral efficiency estimate.
            Default: ``20000``.
        window_radius (float, optional): Interference truncation radius in
            meters. Default: ``150.0``.
        min_distance (float, optional): The pathloss clamp distance in
            meters. Default: ``0.5``.
        seed (int, optional): Seed of the rate estimates. Default: ``0``.
        logger (:obj:`logging.Logger` | str | None, optional): The logger or
            name of the logger. Default: ``None``.

    Returns:
        :obj:`DelayParams`: The constructed params.
    """
    rates = dict(rates or dict())
    resolved = dict()

    for idx, name in enumerate(TIER_NAMES):
        tier = tiers[name]
        if rates.get(name) is not None:
            resolved[name] = float(rates[name])
            continue

        rng = np.random.default_rng([seed, idx])
        se = mean_spectral_efficiency(
            tier,
            rng=rng,
            n_samples=n_samples,
            window_radius=window_radius,
            min_distance=min_distance)
        resolved[name] = tier.bandwidth * se.mean

        if logger is not None:
            svcache.log_or_print(
                'Estimated {} rate: {:.4g} bit/s (spectral efficiency '
                '{:.4f} +- {:.4f})'.format(name, resolved[name], se.mean,
                                           se.stderr),
                logger,
                log_level='DEBUG')

    return DelayParams(
        d2d_rate=resolved['d2d'],
        sbs_rate=resolved['sbs'],
        mbs_rate=resolved['mbs'],
        backhaul_rate=backhaul_rate,
        d2d_density=tiers['d2d'].density,
        d2d_radius=tiers['d2d'].radius,
        sbs_density=tiers['sbs'].density,
        sbs_radius=tiers['sbs'].radius)
