# Copyright (c) SVCache Authors. Licensed under the MIT License.

import math

import numpy as np

from svcache.policy import (BinaryPlacement, CachingPolicy,
                            FractionalPlacement, build_policy,
                            check_feasibility)
from .objective import expected_total_delay


def baseline_delay(policy,
                   library,
                   params,
                   capacities=None,
                   placement=None):
    """
    Evaluate the expected transmission delay of a placement policy.

    Args:
        policy (str | :obj:`CachingPolicy`): The policy or its registered
            name. Expected names include ``'NoCache'``, ``'MPLP_SVC'``,
            ``'MPCP_NoSVC'`` and ``'RandomSVC'``.
        library (:obj:`VideoLibrary`): The SVC library.
        params (:obj:`DelayParams`): The delay model constants.
        capacities (dict | None, optional): Per-tier cache sizes in bits.
            Required unless ``placement`` is given. Default: ``None``.
        placement (:obj:`Placement` | None, optional): A ready placement to
            evaluate instead of building one. Binary placements are evaluated
            as 0/1 caching probabilities. Default: ``None``.

    Returns:
        float: The expected delay in seconds.
    """
    if not isinstance(policy, CachingPolicy):
        policy = build_policy(policy)

    target = policy.library_for(library)
    if placement is None:
        if capacities is None:
            raise ValueError('capacities are required to build a placement')
        placement = policy.place(library, capacities, params=params)

    if isinstance(placement, BinaryPlacement):
        placement = placement.as_random()

    return float(expected_total_delay(placement, target, params))


def _tier_only(hit, per_bit, c):
    return hit * per_bit + (1 - hit) * c


def fractional_delay(fractions, library, params):
    """
    Evaluate the expected delay of fractional caching. Every D2D helper
    stores the leading ``x_d`` fraction of a layer and every SBS the leading
    ``x_s``. A segment held by both tiers goes through the full cascade, a
    segment held by one tier through that tier or the macro path, and the
    rest through the MBS and backhaul.

    Args:
        fractions (:obj:`FractionalPlacement`): The cached fractions.
        library (:obj:`VideoLibrary`): The library.
        params (:obj:`DelayParams`): The delay model constants.

    Returns:
        float: The expected delay in seconds.
    """
    if not isinstance(fractions, FractionalPlacement):
        raise TypeError('fractions must be a FractionalPlacement, but got '
                        "'{}'".format(type(fractions)))
    if fractions.shape != library.shape:
        raise ValueError(
            'placement has shape {} but the library has shape {}'.format(
                fractions.shape, library.shape))
    if fractions.capacities is not None:
        feasible, slack = check_feasibility(fractions, library)
        if not feasible:
            raise ValueError(
                'placement violates the cache sizes, slack: {}'.format(slack))

    a, b, c = params.per_bit_times()
    # every node of a tier holds its fraction, so the tier hit uses p = 1
    hit_d = -math.expm1(-params.hit_scale('d2d'))
    hit_s = -math.expm1(-params.hit_scale('sbs'))

    both = hit_d * a + (1 - hit_d) * (hit_s * b + (1 - hit_s) * c)
    d2d_only = _tier_only(hit_d, a, c)
    sbs_only = _tier_only(hit_s, b, c)

    x_d, x_s = fractions['d2d'], fractions['sbs']
    lo, hi = np.minimum(x_d, x_s), np.maximum(x_d, x_s)
    single = np.where(x_d >= x_s, d2d_only, sbs_only)

    per_bit = lo * both + (hi - lo) * single + (1 - hi) * c
    contrib = library.layer_request_probs() * library.layer_sizes * per_bit
    return math.fsum(contrib.ravel())
