# Copyright (c) SVCache Authors. Licensed under the MIT License.

import math

import numpy as np

import svcache
from svcache.geometry import sample_ppp, sample_realization
from svcache.utils import Timer, parallel_map
from .trial import DELIVERIES, RATE_MODES, run_trial, sample_contents

_Z95 = 1.96


class TrialConfig(object):
    """
    Everything a Monte Carlo delay estimate depends on.

    Args:
        library (:obj:`VideoLibrary`): The library requests are drawn from.
        tiers (dict): Mapping from tier id to :obj:`TierConfig`.
        params (:obj:`DelayParams`): The delay model constants.
        placement (:obj:`Placement`): The caching decisions to evaluate.
        n_trials (int, optional): Number of trials. Default: ``10000``.
        seed (int, optional): The master seed. Trial ``i`` uses the stream
            ``default_rng([seed, i])``. Default: ``0``.
        mode (str, optional): The delivery mode. Default: ``'sequential'``.
        rate_mode (str, optional): ``'mean'`` or ``'sinr'``. Default:
            ``'mean'``.
        window_radius (float, optional): The sampling window radius in
            meters. Default: ``150.0``.
        min_distance (float, optional): The pathloss clamp distance in
            meters. Default: ``0.5``.
        min_sinr_db (float, optional): The SINR floor of the ``'sinr'`` rate
            mode. Default: ``-10.0``.
        truncate (bool, optional): Whether sampled caches are truncated to
            their size. Default: ``False``.
        chunk_size (int, optional): Trials per parallel task. Default:
            ``2000``.
    """

    _FIELDS = ('library', 'tiers', 'params', 'placement', 'n_trials', 'seed',
               'mode', 'rate_mode', 'window_radius', 'min_distance',
               'min_sinr_db', 'truncate', 'chunk_size')

    def __init__(self,
                 library,
                 tiers,
                 params,
                 placement,
                 n_trials=10000,
                 seed=0,
                 mode='sequential',
                 rate_mode='mean',
                 window_radius=150.0,
                 min_distance=0.5,
                 min_sinr_db=-10.0,
                 truncate=False,
                 chunk_size=2000):
        if n_trials < 1:
            raise ValueError('n_trials must be at least 1, but got {}'.format(
                n_trials))
        if mode not in DELIVERIES:
            raise ValueError("mode must be one of {}, but got '{}'".format(
                DELIVERIES.keys(), mode))
        if rate_mode not in RATE_MODES:
            raise ValueError("rate_mode must be one of {}, but got '{}'".format(
                RATE_MODES, rate_mode))
        if window_radius < max(params.d2d_radius, params.sbs_radius):
            raise ValueError('window_radius must cover the serving radii')
        if chunk_size < 1:
            raise ValueError('chunk_size must be positive')

        self.library = library
        self.tiers = tiers
        self.params = params
        self.placement = placement
        self.n_trials = int(n_trials)
        self.seed = int(seed)
        self.mode = mode
        self.rate_mode = rate_mode
        self.window_radius = float(window_radius)
        self.min_distance = float(min_distance)
        self.min_sinr_db = float(min_sinr_db)
        self.truncate = bool(truncate)
        self.chunk_size = int(chunk_size)

    def __repr__(self):
        return '{}(n_trials={}, seed={}, mode={}, rate_mode={})'.format(
            self.__class__.__name__, self.n_trials, self.seed, self.mode,
            self.rate_mode)

    def replace(self, **kwargs):
        fields = {k: getattr(self, k) for k in self._FIELDS}
        for key in kwargs:
            if key not in fields:
                raise TypeError("unknown field '{}'".format(key))
        fields.update(kwargs)
        return TrialConfig(**fields)


class DelayEstimate(object):
    """
    A Monte Carlo delay estimate.

    Args:
        mean (float): The sample mean in seconds.
        stderr (float): The standard error of the mean in seconds.
        n_trials (int): Number of trials.
    """

    def __init__(self, mean, stderr, n_trials):
        if stderr < 0:
            raise ValueError('stderr must be non-negative')
        self.mean = float(mean)
        self.stderr = float(stderr)
        self.n_trials = int(n_trials)

    def __repr__(self):
        return '{}(mean={}, stderr={}, n_trials={})'.format(
            self.__class__.__name__, self.mean, self.stderr, self.n_trials)

    @property
    def half_width(self):
        """
        Half width of the 95% normal confidence interval.
        """
        return _Z95 * self.stderr

    @property
    def degenerate(self):
        """
        Whether the estimate comes from a single trial, in which case the
        standard error is reported as ``0``.
        """
        return self.n_trials == 1

    def interval(self):
        return self.mean - self.half_width, self.mean + self.half_width


def _run_chunk(args):
    cfg, start, stop = args

    file_pmf = cfg.library.file_pmf()
    quality_pmf = cfg.library.preference.pmf
    kwargs = dict(
        rate_mode=cfg.rate_mode,
        min_sinr_db=cfg.min_sinr_db,
        min_distance=cfg.min_distance)
    if cfg.rate_mode == 'sinr':
        kwargs['tiers'] = cfg.tiers

    delays = []
    for idx in range(start, stop):
        rng = np.random.default_rng([cfg.seed, idx])
        realization = sample_realization(
            cfg.tiers, cfg.window_radius, rng=rng, seed=cfg.seed)
        contents = sample_contents(
            realization,
            cfg.placement,
            cfg.params,
            rng,
            truncate=cfg.truncate,
            library=cfg.library)
        f = int(rng.choice(file_pmf.size, p=file_pmf)) + 1
        q = int(rng.choice(quality_pmf.size, p=quality_pmf)) + 1
        delays.append(
            run_trial(
                realization,
                contents, (f, q),
                cfg.library,
                cfg.params,
                mode=cfg.mode,
                rng=rng,
                **kwargs))

    return delays


def trial_delays(cfg, n_jobs=None):
    """
    Run all trials of a config.

    Args:
        cfg (:obj:`TrialConfig`): The config.
        n_jobs (int | None, optional): Number of workers. If not specified,
            :obj:`get_num_threads` is used. Default: ``None``.

    Returns:
        :obj:`np.ndarray`: The delay of every trial, in trial order.
    """
    chunks = [(cfg, start, min(start + cfg.chunk_size, cfg.n_trials))
              for start in range(0, cfg.n_trials, cfg.chunk_size)]
    results = parallel_map(_run_chunk, chunks, n_jobs=n_jobs)
    return np.array([d for chunk in results for d in chunk])


def estimate_delay(cfg, n_jobs=None, logger=None):
    """
    Estimate the expected delivery delay by Monte Carlo. Each trial samples
    an independent topology, cache contents, request and fading from its own
    stream, so the estimate depends only on the config and not on the number
    of workers.

    Args:
        cfg (:obj:`TrialConfig`): The config.
        n_jobs (int | None, optional): Number of workers. Default: ``None``.
        logger (:obj:`logging.Logger` | str | None, optional): The logger or
            name of the logger to use. Default: ``None``.

    Returns:
        :obj:`DelayEstimate`: The estimate.
    """
    timer = Timer()
    delays = trial_delays(cfg, n_jobs=n_jobs)

    n = delays.size
    mean = math.fsum(delays) / n
    if n > 1:
        var = math.fsum((delays - mean)**2) / (n - 1)
        stderr = math.sqrt(var / n)
    else:
        stderr = 0.0

    estimate = DelayEstimate(mean, stderr, n)
    if logger is not None:
        svcache.log_or_print(
            'Monte Carlo ({}, {}): {:.6f} s +- {:.6f} s over {} trials in '
            '{:.2f} s'.format(cfg.mode, cfg.rate_mode, mean,
                              estimate.half_width, n, timer.seconds()),
            logger)

    return estimate


def empirical_hit_frequency(density,
                            p,
                            radius,
                            n_samples=10000,
                            seed=0,
                            window_radius=None):
    """
    Estimate the probability that a ``p``-thinned Poisson point process has a
    point within ``radius`` of the origin, by sampling realizations.

    Args:
        density (float): Intensity in points per square meter.
        p (float): The retention probability.
        radius (float): The serving radius in meters.
        n_samples (int, optional): Number of realizations. Default:
            ``10000``.
        seed (int, optional): The seed. Default: ``0``.
        window_radius (float | None, optional): The sampling window radius.
            If not specified, ``2 * radius`` is used. Default: ``None``.

    Returns:
        tuple[float]: The empirical frequency and its standard error.
    """
    if not 0 <= p <= 1:
        raise ValueError('p must be in [0, 1], but got {}'.format(p))

    window_radius = window_radius or 2 * radius
    rng = np.random.default_rng(seed)

    hits = 0
    for _ in range(n_samples):
        pts = sample_ppp(density, window_radius, rng)
        kept = rng.random(len(pts)) < p
        near = np.hypot(pts[kept, 0], pts[kept, 1]) <= radius
        hits += bool(np.any(near))

    freq = hits / n_samples
    return freq, math.sqrt(freq * (1 - freq) / n_samples)
