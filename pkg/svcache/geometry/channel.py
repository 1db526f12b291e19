# Copyright (c) SVCache Authors. Licensed under the MIT License.

import math
from collections import namedtuple

import numpy as np

SpectralEfficiency = namedtuple('SpectralEfficiency', ['mean', 'stderr'])


def pathloss_gain(distance, pathloss_exp, min_distance=0.0):
    """
    Compute the distance-based pathloss ``d^-alpha``.

    Args:
        distance (float | :obj:`np.ndarray`): Link distances in meters. Must
            be positive.
        pathloss_exp (float): The pathloss exponent.
        min_distance (float, optional): Distances below this are clamped to
            it before the gain is computed. Default: ``0.0``.

    Returns:
        float | :obj:`np.ndarray`: The gains.
    """
    d = np.asarray(distance, dtype=float)
    if np.any(~(d > 0)):
        raise ValueError('distance must be positive')

    gain = np.power(np.maximum(d, min_distance), -float(pathloss_exp))
    return float(gain) if gain.ndim == 0 else gain


def sample_fading(rng, size=None):
    """
    Sample Rayleigh fading power gains ``|h|^2``, where ``h`` is a zero mean,
    unit variance circularly symmetric complex Gaussian. The gains follow the
    unit-mean exponential distribution.

    Args:
        rng (:obj:`np.random.Generator`): The random generator.
        size (int | tuple | None, optional): Output shape. Default: ``None``.

    Returns:
        float | :obj:`np.ndarray`: The power gains.
    """
    shape = () if size is None else (size, ) if isinstance(size,
                                                            int) else size
    re, im = rng.standard_normal((2, ) + tuple(shape))
    gain = (re**2 + im**2) / 2
    return float(gain) if size is None else gain


def sinr(serving, interferers, noise):
    """
    Compute ``serving / (sum(interferers) + noise)``.

    Args:
        serving (float): Received power from the serving node.
        interferers (list | :obj:`np.ndarray`): Received powers from the
            interfering nodes.
        noise (float): Noise power. Must be positive.

    Returns:
        float: The signal-to-interference-plus-noise ratio.
    """
    interferers = np.asarray(interferers, dtype=float)
    if serving < 0 or np.any(interferers < 0):
        raise ValueError('received powers must be non-negative')
    if not noise > 0:
        raise ValueError('noise must be positive, but got {}'.format(noise))

    return float(serving / (math.fsum(interferers.ravel()) + noise))


def _serving_distances(tier, rng, n_samples):
    k = tier.density * math.pi
    u = rng.random(n_samples)
    if tier.radius is None:
        return np.sqrt(-np.log1p(-u) / k)
    # nearest point of the process conditioned on lying within the radius
    mass = -math.expm1(-k * tier.radius**2)
    return np.sqrt(-np.log1p(-u * mass) / k)


def interference_radius(tier, window_radius, min_nodes=100):
    """
    Radius of the disk over which the interferers of a tier are sampled. It
    is at least ``window_radius`` and large enough to hold ``min_nodes``
    nodes in expectation, so sparse tiers such as the MBS tier keep their
    nearby interferers.

    Args:
        tier (:obj:`TierConfig`): The tier.
        window_radius (float): The sampling window radius in meters.
        min_nodes (float, optional): Expected number of nodes on the disk.
            Default: ``100``.

    Returns:
        float: The radius in meters.
    """
    if not window_radius > 0:
        raise ValueError('window_radius must be positive, but got {}'.format(
            window_radius))
    if tier.density == 0:
        return float(window_radius)
    return max(float(window_radius),
               math.sqrt(min_nodes / (math.pi * tier.density)))


def far_field_interference(tier, radius):
    """
    Mean interference power from the nodes of a tier beyond ``radius``,
    ``2 pi lambda P R^(2 - alpha) / (alpha - 2)``. Fading has unit mean, so
    it does not change the result.

    Args:
        tier (:obj:`TierConfig`): The tier.
        radius (float | :obj:`np.ndarray`): Inner radii of the far field in
            meters.

    Returns:
        float | :obj:`np.ndarray`: The mean interference powers in watts.
    """
    r = np.asarray(radius, dtype=float)
    if np.any(~(r > 0)):
        raise ValueError('radius must be positive')

    alpha = tier.pathloss_exp
    power = 2 * math.pi * tier.density * tier.power * np.power(
        r, 2 - alpha) / (alpha - 2)
    return float(power) if power.ndim == 0 else power


def mean_spectral_efficiency(tier,
                             rng=None,
                             n_samples=20000,
                             window_radius=150.0,
                             min_distance=0.5,
                             distance=None,
                             fading=True,
                             interference=True,
                             min_interferers=100,
                             far_field=True,
                             seed=None):
    """
    Estimate ``E[log2(1 + SINR)]`` of a typical link in a tier by Monte Carlo.

    The serving node is the nearest node of the tier, conditioned on lying
    within the serving radius when the tier has one. Interferers are the
    other same-tier nodes: a Poisson point process sampled on the annulus
    between the serving distance and :obj:`interference_radius`, plus the
    mean power of the nodes beyond it. Every sampled link experiences
    independent Rayleigh fading.

    Args:
        tier (:obj:`TierConfig`): The tier.
        rng (:obj:`np.random.Generator` | None, optional): The random
            generator. If not specified, one is seeded with ``seed``.
            Default: ``None``.
        n_samples (int, optional): Number of samples. Default: ``20000``.
        window_radius (float, optional): Minimum radius of the sampled
            interference disk in meters. Default: ``150.0``.
        min_distance (float, optional): The pathloss clamp distance in
            meters. Default: ``0.5``.
        distance (float | None, optional): A fixed serving distance replacing
            the nearest-point law. Default: ``None``.
        fading (bool, optional): Whether to apply Rayleigh fading. Default:
            ``True``.
        interference (bool, optional): Whether to include intra-tier
            interference. Default: ``True``.
        min_interferers (float, optional): Expected number of nodes on the
            sampled interference disk, see :obj:`interference_radius`.
            Default: ``100``.
        far_field (bool, optional): Whether to add the mean interference
            beyond the sampled disk. Default: ``True``.

    Returns:
        tuple[float]: The estimated mean and its standard error in \
            bits/s/Hz.
    """
    if n_samples < 1:
        raise ValueError('n_samples must be at least 1, but got {}'.format(
            n_samples))

    if rng is None:
        rng = np.random.default_rng(seed)

    if distance is None:
        dist = _serving_distances(tier, rng, n_samples)
    else:
        dist = np.full(n_samples, float(distance))

    signal = tier.power * pathloss_gain(dist, tier.pathloss_exp, min_distance)
    if fading:
        signal = signal * sample_fading(rng, n_samples)

    interf = np.zeros(n_samples)
    if interference:
        outer = interference_radius(tier, window_radius, min_interferers)
        inner = np.minimum(dist, outer)
        area = math.pi * (outer**2 - inner**2)
        counts = rng.poisson(tier.density * area)
        owner = np.repeat(np.arange(n_samples), counts)

        r2 = inner[owner]**2 + rng.random(owner.size) * (
            outer**2 - inner[owner]**2)
        power = tier.power * pathloss_gain(
            np.sqrt(r2), tier.pathloss_exp, min_distance)
        if fading:
            power = power * sample_fading(rng, owner.size)
        interf = np.bincount(owner, weights=power, minlength=n_samples)
        if far_field:
            interf = interf + far_field_interference(
                tier, np.maximum(dist, outer))

    samples = np.log2(1 + signal / (interf + tier.noise))
    mean = math.fsum(samples) / n_samples
    stderr = float(samples.std(ddof=1) / math.sqrt(n_samples)) \
        if n_samples > 1 else 0.0

    return SpectralEfficiency(mean, stderr)
