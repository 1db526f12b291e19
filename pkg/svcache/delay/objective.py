# Copyright (c) SVCache Authors. Licensed under the MIT License.

import math

import numpy as np

from svcache.policy import check_feasibility
from svcache.utils import bind_getter


def _check_placement(placement, library):
    if placement.shape != library.shape:
        raise ValueError(
            'placement has shape {} but the library has shape {}'.format(
                placement.shape, library.shape))
    if placement.capacities is not None:
        feasible, slack = check_feasibility(placement, library)
        if not feasible:
            raise ValueError(
                'placement violates the cache sizes, slack: {}'.format(slack))


def _hits(placement, params):
    k_d, k_s = params.hit_scale('d2d'), params.hit_scale('sbs')
    hit_d = -np.expm1(-k_d * placement['d2d'])
    hit_s = -np.expm1(-k_s * placement['sbs'])
    return hit_d, hit_s


def _cascade(hit_d, hit_s, params):
    a, b, c = params.per_bit_times()
    return hit_d * a + (1 - hit_d) * (hit_s * b + (1 - hit_s) * c)


@bind_getter('total', 'request_probs', 'hit_d2d', 'hit_sbs', 'layer_delays')
class ObjectiveValue(object):
    """
    The expected transmission delay of a placement together with its
    per-layer breakdown.

    Args:
        request_probs (:obj:`np.ndarray`): Layer request probabilities.
        hit_d2d (:obj:`np.ndarray`): D2D hit probabilities.
        hit_sbs (:obj:`np.ndarray`): SBS hit probabilities.
        layer_delays (:obj:`np.ndarray`): Expected delay of every layer in
            seconds, given it is requested.
    """

    def __init__(self, request_probs, hit_d2d, hit_sbs, layer_delays):
        self._request_probs = request_probs
        self._hit_d2d = hit_d2d
        self._hit_sbs = hit_sbs
        self._layer_delays = layer_delays
        self._total = math.fsum(self.contributions().ravel())

    def __float__(self):
        return self._total

    def __repr__(self):
        return '{}(total={})'.format(self.__class__.__name__, self._total)

    def contributions(self):
        return self._request_probs * self._layer_delays

    def to_rows(self):
        """
        Convert the breakdown into CSV rows with 1-based indices.

        Returns:
            list[dict]: One row per ``(file, layer)`` with fields ``file``,
                ``layer``, ``request_prob``, ``h_d``, ``h_s`` and
                ``delay_contribution``.
        """
        contrib = self.contributions()
        rows = []
        for (f, l), prob in np.ndenumerate(self._request_probs):
            rows.append(
                dict(
                    file=f + 1,
                    layer=l + 1,
                    request_prob=float(prob),
                    h_d=float(self._hit_d2d[f, l]),
                    h_s=float(self._hit_sbs[f, l]),
                    delay_contribution=float(contrib[f, l])))
        return rows


def expected_layer_delay(f, l, placement, library, params):
    """
    Compute the expected delay of delivering layer ``l`` of file ``f``
    through the D2D, SBS and MBS+backhaul cascade.

    Args:
        f (int): The 1-based file index.
        l (int): The 1-based layer index.
        placement (:obj:`RandomPlacement`): The caching probabilities.
        library (:obj:`VideoLibrary`): The library.
        params (:obj:`DelayParams`): The delay model constants.

    Returns:
        float: The expected delay in seconds.
    """
    library.check_index(f, l)
    _check_placement(placement, library)

    hit_d, hit_s = _hits(placement, params)
    size = library.layer_sizes[f - 1, l - 1]
    return float(size * _cascade(hit_d[f - 1, l - 1], hit_s[f - 1, l - 1],
                                 params))


def expected_total_delay(placement, library, params):
    """
    Compute the expected transmission delay of a request, summing the delays
    of all requested layers.

    Args:
        placement (:obj:`RandomPlacement`): The caching probabilities.
        library (:obj:`VideoLibrary`): The library.
        params (:obj:`DelayParams`): The delay model constants.

    Returns:
        :obj:`ObjectiveValue`: The expected delay and its breakdown.
    """
    _check_placement(placement, library)

    hit_d, hit_s = _hits(placement, params)
    delays = library.layer_sizes * _cascade(hit_d, hit_s, params)
    return ObjectiveValue(library.layer_request_probs(), hit_d, hit_s, delays)


def delay_gradient(placement, library, params, check=True):
    """
    Compute the partial derivatives of :obj:`expected_total_delay` with
    respect to the caching probabilities of both cache tiers. The cost is
    linear in the number of layers.

    Args:
        placement (:obj:`RandomPlacement`): The caching probabilities.
        library (:obj:`VideoLibrary`): The library.
        params (:obj:`DelayParams`): The delay model constants.
        check (bool, optional): Whether to validate the placement. Default:
            ``True``.

    Returns:
        dict: Mapping from tier id to the ``(F, L)`` gradient matrix.
    """
    if check:
        _check_placement(placement, library)

    a, b, c = params.per_bit_times()
    k_d, k_s = params.hit_scale('d2d'), params.hit_scale('sbs')

    weight = library.layer_request_probs() * library.layer_sizes
    miss_d = np.exp(-k_d * placement['d2d'])
    miss_s = np.exp(-k_s * placement['sbs'])

    grad_d = weight * k_d * miss_d * (a - (1 - miss_s) * b - miss_s * c)
    grad_s = weight * miss_d * k_s * miss_s * (b - c)
    return dict(d2d=grad_d, sbs=grad_s)
