# Copyright (c) SVCache Authors. Licensed under the MIT License.

import numpy as np

from svcache.content import PopularityModel, QualityPreference, VideoLibrary
from svcache.delay import DelayParams, delay_gradient
from svcache.geometry import CACHE_TIERS
from svcache.policy import RandomPlacement
from svcache.utils import Timer

DEFAULT_FILE_COUNTS = (1000, 2000, 4000, 8000, 16000)


def _timing_params():
    return DelayParams(
        d2d_rate=1e8,
        sbs_rate=5e7,
        mbs_rate=2e7,
        backhaul_rate=2e7,
        d2d_density=1e-3,
        d2d_radius=10,
        sbs_density=2e-4,
        sbs_radius=30)


def complexity_probe(file_counts=DEFAULT_FILE_COUNTS,
                     layer_counts=(8, ),
                     repeats=5,
                     min_units=200000,
                     params=None,
                     seed=0):
    """
    Measure the cost of one gradient evaluation, which dominates every
    gradient projection iteration, across library sizes.

    Args:
        file_counts (list[int], optional): Values of ``F`` to time.
        layer_counts (list[int], optional): Values of ``L`` to time.
            Default: ``(8, )``.
        repeats (int, optional): Timing repeats; the fastest is kept.
            Default: ``5``.
        min_units (int, optional): Each timing repeat evaluates the gradient
            enough times to cover at least this many layers, which keeps
            small instances above the timer resolution. Default: ``200000``.
        params (:obj:`DelayParams` | None, optional): The delay model
            constants. Default: ``None``.
        seed (int, optional): Seed of the random evaluation points. Default:
            ``0``.

    Returns:
        list[dict]: One row per ``(F, L)`` with fields ``file_count``, \
            ``layers_per_file``, ``units`` and ``seconds``.
    """
    params = params or _timing_params()
    rng = np.random.default_rng(seed)
    timer = Timer()

    rows = []
    for num_layers in layer_counts:
        for num_files in file_counts:
            library = VideoLibrary(
                np.full((num_files, num_layers), 1e6),
                popularity=PopularityModel(0.8, 5),
                preference=QualityPreference.truncated_geometric(
                    num_layers, 2.0))
            placement = RandomPlacement({
                t: rng.random((num_files, num_layers))
                for t in CACHE_TIERS
            })

            units = num_files * num_layers
            number = max(1, min_units // units)

            best = np.inf
            for _ in range(repeats):
                timer.reset()
                for _ in range(number):
                    delay_gradient(placement, library, params, check=False)
                best = min(best, timer.seconds() / number)

            rows.append(
                dict(
                    file_count=num_files,
                    layers_per_file=num_layers,
                    units=units,
                    seconds=best))

    return rows


def loglog_slope(rows):
    """
    Fit ``log(seconds) = k * log(units) + b`` by least squares.

    Args:
        rows (list[dict]): The output of :obj:`complexity_probe`.

    Returns:
        float: The fitted exponent ``k``.
    """
    if len(rows) < 2:
        raise ValueError('at least two rows are required')
    units = np.log([r['units'] for r in rows])
    seconds = np.log([r['seconds'] for r in rows])
    return float(np.polyfit(units, seconds, 1)[0])
