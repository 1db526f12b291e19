# Copyright (c) SVCache Authors. Licensed under the MIT License.

import math

import numpy as np

from svcache.utils import bind_getter


def sample_ppp(density, window_radius, rng):
    """
    Sample a homogeneous Poisson point process on a disk centered at the
    origin.

    Args:
        density (float): Intensity in points per square meter.
        window_radius (float): Radius of the disk in meters.
        rng (:obj:`np.random.Generator`): The random generator.

    Returns:
        :obj:`np.ndarray`: The point coordinates of shape ``(N, 2)``.
    """
    if density < 0:
        raise ValueError('density must be non-negative, but got {}'.format(
            density))
    if not window_radius > 0:
        raise ValueError('window_radius must be positive, but got {}'.format(
            window_radius))

    if density == 0:
        return np.zeros((0, 2))

    num_points = rng.poisson(density * math.pi * window_radius**2)
    radii = window_radius * np.sqrt(rng.random(num_points))
    angles = 2 * math.pi * rng.random(num_points)
    return np.stack((radii * np.cos(angles), radii * np.sin(angles)), axis=1)


@bind_getter('points', 'window_radius', 'seed')
class NetworkRealization(object):
    """
    One sampled topology: the node positions of every tier around the
    typical user at the origin.

    Args:
        points (dict): Mapping from tier id to an ``(N, 2)`` array of
            coordinates in meters.
        window_radius (float): Radius of the sampling window in meters.
        seed (int | None, optional): The seed the realization was sampled
            with. Default: ``None``.
    """

    def __init__(self, points, window_radius, seed=None):
        self._points = {
            k: np.asarray(v, dtype=float).reshape(-1, 2)
            for k, v in points.items()
        }
        self._window_radius = float(window_radius)
        self._seed = seed

    def __repr__(self):
        return '{}(window_radius={}, counts={})'.format(
            self.__class__.__name__, self._window_radius,
            {k: len(v) for k, v in self._points.items()})

    def __len__(self):
        return sum(len(v) for v in self._points.values())

    def count(self, tier):
        return len(self._points[tier])

    def distances(self, tier):
        """
        Distances from the typical user to every node of a tier.

        Args:
            tier (str): The tier id.

        Returns:
            :obj:`np.ndarray`: The distances in meters.
        """
        return np.hypot(self._points[tier][:, 0], self._points[tier][:, 1])

    def to_dict(self):
        return dict(
            seed=self._seed,
            window_radius_m=self._window_radius,
            tiers={k: v.tolist()
                   for k, v in self._points.items()})

    @staticmethod
    def from_dict(data):
        return NetworkRealization(
            data['tiers'], data['window_radius_m'], seed=data.get('seed'))


def sample_realization(tiers, window_radius, rng=None, seed=None):
    """
    Sample the node positions of all tiers.

    A tier without serving radius always has a nearest node. When its window
    happens to be empty, one anchor point is placed at the exact conditional
    nearest-point distance ``sqrt(W^2 + E / (lambda * pi))`` with
    ``E ~ Exp(1)``, which lies outside the window.

    Args:
        tiers (dict): Mapping from tier id to :obj:`TierConfig`.
        window_radius (float): Radius of the sampling window in meters.
        rng (:obj:`np.random.Generator` | None, optional): The random
            generator. If not specified, one is seeded with ``seed``.
            Default: ``None``.
        seed (int | None, optional): The seed recorded in the realization.
            Default: ``None``.

    Returns:
        :obj:`NetworkRealization`: The sampled realization.
    """
    if rng is None:
        rng = np.random.default_rng(seed)

    points = dict()
    for name, tier in tiers.items():
        pts = sample_ppp(tier.density, window_radius, rng)
        if tier.radius is None and len(pts) == 0:
            dist = math.sqrt(window_radius**2 + rng.exponential() /
                             (tier.density * math.pi))
            angle = 2 * math.pi * rng.random()
            pts = np.array([[dist * math.cos(angle), dist * math.sin(angle)]])
        points[name] = pts

    return NetworkRealization(points, window_radius, seed=seed)


def hit_probability(density, p, radius):
    """
    Probability that at least one node of a ``p``-thinned Poisson point
    process with intensity ``density`` lies within ``radius`` of the origin,
    i.e. ``1 - exp(-density * p * pi * radius^2)``.

    Args:
        density (float): Node density in nodes per square meter.
        p (float | :obj:`np.ndarray`): Caching probabilities in ``[0, 1]``.
        radius (float): Serving radius in meters.

    Returns:
        float | :obj:`np.ndarray`: The hit probabilities.
    """
    if density < 0:
        raise ValueError('density must be non-negative, but got {}'.format(
            density))
    if not radius > 0:
        raise ValueError('radius must be positive, but got {}'.format(radius))

    arr = np.asarray(p, dtype=float)
    if np.any(~((arr >= 0) & (arr <= 1))):
        raise ValueError('caching probabilities must be in [0, 1]')

    hit = -np.expm1(-density * arr * math.pi * radius**2)
    return float(hit) if arr.ndim == 0 else hit
