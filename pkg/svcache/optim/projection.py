# Copyright (c) SVCache Authors. Licensed under the MIT License.

import math

import numpy as np


def _occupancy(p, sizes):
    return math.fsum((p * sizes).ravel())


def project_capacity(v, sizes, capacity, tol_bits=1e-6, max_iters=200):
    """
    Euclidean projection onto ``{p : 0 <= p <= 1, sum(sizes * p) <= C}``.

    If clipping ``v`` to the unit box is already feasible, the clipped point
    is the projection. Otherwise the capacity is tight and the projection is
    ``clip(v - mu * sizes, 0, 1)`` for the multiplier ``mu > 0`` found by
    bisection, which stops once the remaining capacity gap is at most
    ``tol_bits``. The returned point always lies on the feasible side of the
    bracket, so projecting it again returns it unchanged.

    Args:
        v (:obj:`np.ndarray`): The point to project.
        sizes (:obj:`np.ndarray`): Positive weights of the same shape, e.g.
            layer sizes in bits.
        capacity (float): The capacity ``C``. ``inf`` leaves only the box.
        tol_bits (float, optional): Largest gap between the capacity and the
            occupancy of the result, in the units of ``sizes`` times ``v``.
            Default: ``1e-6``.
        max_iters (int, optional): Maximum number of bisection steps.
            Default: ``200``.

    Returns:
        :obj:`np.ndarray`: The projected point.
    """
    v = np.asarray(v, dtype=float)
    sizes = np.asarray(sizes, dtype=float)

    if v.shape != sizes.shape:
        raise ValueError('v has shape {} but sizes have shape {}'.format(
            v.shape, sizes.shape))
    if not np.all(np.isfinite(v)):
        raise ValueError('v must be finite')
    if np.any(~(sizes > 0)):
        raise ValueError('sizes must be positive')
    if not tol_bits > 0:
        raise ValueError('tol_bits must be positive, but got {}'.format(
            tol_bits))
    if not capacity >= 0:
        raise ValueError('capacity must be non-negative, but got {}'.format(
            capacity))

    clipped = np.clip(v, 0, 1)
    if math.isinf(capacity) or _occupancy(clipped, sizes) <= capacity:
        return clipped

    if capacity == 0:
        return np.zeros_like(v)

    # scaled weights keep the multiplier bracket well conditioned
    scaled = sizes / sizes.max()
    lo, hi = 0.0, float(np.max(v / scaled))

    for _ in range(max_iters):
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:
            break

        if _occupancy(np.clip(v - mid * scaled, 0, 1), sizes) > capacity:
            lo = mid
        else:
            hi = mid

        if capacity - _occupancy(np.clip(v - hi * scaled, 0, 1),
                                 sizes) <= tol_bits:
            break

    return np.clip(v - hi * scaled, 0, 1)
