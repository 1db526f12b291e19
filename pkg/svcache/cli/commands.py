# Copyright (c) SVCache Authors. Licensed under the MIT License.

import os
from collections import OrderedDict

from tabulate import tabulate

import svcache
from svcache.content import MBIT, build_library
from svcache.delay import (baseline_delay, build_delay_params,
                           expected_total_delay, fractional_delay)
from svcache.geometry import TIER_NAMES, TierConfig, validate_tiers
from svcache.montecarlo import (SWEEP_AXES, SWEEP_COLUMNS, TrialConfig,
                                estimate_delay, sweep)
from svcache.optim import OptimizerAbort, OptimizerConfig, gradient_projection
from svcache.policy import (BinaryPlacement, FingerprintError,
                            FractionalPlacement, Placement, build_policy,
                            check_feasibility)
from svcache.utils import ConfigError, get_logger
from .schema import load_experiment_config

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_ABORT = 2
EXIT_FINGERPRINT = 3

BASELINES = ('NoCache', 'MPCP_NoSVC', 'MPLP_SVC')

EVALUATE_COLUMNS = ('policy', 'kind', 'mode', 'analytic_delay_s',
                    'mc_delay_s', 'mc_stderr_s', 'mc_half_width_s',
                    'n_trials', 'seed')


class Experiment(object):
    """
    The domain objects described by a resolved experiment config.

    Args:
        cfg (:obj:`CfgNode`): The config returned by
            :obj:`load_experiment_config`.
        logger (:obj:`logging.Logger` | str | None, optional): The logger or
            name of the logger to use. Default: ``None``.
    """

    def __init__(self, cfg, logger=None):
        self.cfg = cfg
        self.logger = logger
        self.seed = cfg.seed

        self.library = build_library(cfg.library)
        self.tiers = validate_tiers({
            name: TierConfig(
                name,
                t.density_per_m2,
                t.radius_m,
                t.power_w,
                pathloss_exp=t.pathloss_exp,
                bandwidth=t.bandwidth_hz,
                noise=t.noise_w,
                cache_size_bits=None if t.cache_size_mbit is None else
                t.cache_size_mbit * MBIT)
            for name, t in cfg.tiers.items()
        })
        self.capacities = {
            t: self.tiers[t].cache_size_bits
            for t in ('d2d', 'sbs')
        }
        self.optimizer_config = OptimizerConfig.from_dict(
            cfg.optimizer.to_dict())

        rates = {
            n: None if cfg.delay.rates_mbps[n] is None else
            cfg.delay.rates_mbps[n] * MBIT
            for n in TIER_NAMES
        }
        self.params = build_delay_params(
            self.tiers,
            cfg.delay.backhaul_rate_mbps * MBIT,
            rates=rates,
            n_samples=cfg.delay.rate_samples,
            window_radius=cfg.geometry.window_radius_m,
            min_distance=cfg.geometry.min_distance_m,
            seed=cfg.delay.rate_seed,
            logger=logger)

    def trial_kwargs(self):
        trials = self.cfg.trials
        return dict(
            rate_mode=trials.rate_mode,
            window_radius=self.cfg.geometry.window_radius_m,
            min_distance=self.cfg.geometry.min_distance_m,
            min_sinr_db=trials.min_sinr_db,
            truncate=trials.truncate,
            chunk_size=trials.chunk_size)

    def trial_config(self, placement, library=None):
        return TrialConfig(
            library or self.library,
            self.tiers,
            self.params,
            placement,
            n_trials=self.cfg.trials.n_trials,
            seed=self.seed,
            mode=self.cfg.trials.mode,
            **self.trial_kwargs())

    def comments(self):
        return OrderedDict(config=self.cfg.to_json(), seed=self.seed)


def _overrides(seed=None, n_trials=None, mode=None):
    overrides = dict()
    if seed is not None:
        overrides['seed'] = seed
    if n_trials is not None:
        overrides['trials.n_trials'] = n_trials
    if mode is not None:
        overrides['trials.mode'] = mode
        overrides['sweep.modes'] = [mode]
    return overrides


def _setup(config_path, logger, **kwargs):
    cfg = load_experiment_config(config_path, overrides=_overrides(**kwargs))
    try:
        return Experiment(cfg, logger=logger)
    except ValueError as e:
        raise ConfigError('', str(e))


def _print_table(rows, columns):
    table = [[r[c] for c in columns] for r in rows]
    print(tabulate(table, headers=columns, floatfmt='.6g'))


def cmd_optimize(config_path, out_dir, seed=None, logger=None):
    """
    Optimize the random caching probabilities of an experiment and write
    ``placement.json`` and ``trace.csv`` into ``out_dir``.

    Args:
        config_path (str | None): Path to the config.
        out_dir (str): The output directory.
        seed (int | None, optional): Overrides the config seed. Default:
            ``None``.
        logger (:obj:`logging.Logger` | str | None, optional): The logger or
            name of the logger to use. Default: ``None``.

    Returns:
        int: The exit code.
    """
    logger = get_logger(logger or 'svcache')
    try:
        exp = _setup(config_path, logger, seed=seed)
    except ConfigError as e:
        logger.error('Invalid config: {}'.format(e))
        return EXIT_CONFIG

    trace_path = os.path.join(out_dir, 'trace.csv')
    try:
        placement, trace = gradient_projection(
            exp.library,
            exp.params,
            exp.capacities,
            config=exp.optimizer_config,
            logger=logger)
    except OptimizerAbort as e:
        svcache.dump(
            e.trace.to_rows(),
            trace_path,
            fieldnames=e.trace.columns[:-1],
            comments=exp.comments())
        logger.error('Optimizer aborted: {}'.format(e))
        return EXIT_ABORT

    svcache.dump(
        placement.to_dict(
            library=exp.library, seed=exp.seed, config=exp.cfg.to_dict()),
        os.path.join(out_dir, 'placement.json'),
        indent=2)
    svcache.dump(
        trace.to_rows(),
        trace_path,
        fieldnames=trace.columns[:-1],
        comments=exp.comments())

    feasible, slack = check_feasibility(placement, exp.library)
    logger.info('Final objective: {:.6f} s after {} iterations'.format(
        trace.latest('objective_s'),
        trace.iterations))

    mplp = baseline_delay('MPLP_SVC', exp.library, exp.params,
                          exp.capacities)
    _print_table([
        dict(
            objective_s=trace.latest('objective_s'),
            mplp_svc_s=mplp,
            iterations=trace.iterations,
            feasible=feasible,
            slack_d2d_bits=slack['d2d'],
            slack_sbs_bits=slack['sbs'])
    ], ('objective_s', 'mplp_svc_s', 'iterations', 'feasible',
        'slack_d2d_bits', 'slack_sbs_bits'))
    return EXIT_OK


def _evaluate_row(exp, name, library, placement):
    if isinstance(placement, FractionalPlacement):
        analytic = fractional_delay(placement, library, exp.params)
    elif name in BASELINES:
        analytic = baseline_delay(
            name, exp.library, exp.params, placement=placement)
    else:
        analytic = float(
            expected_total_delay(_as_random(placement), library, exp.params))

    row = dict(
        policy=name,
        kind=placement.kind,
        mode=exp.cfg.trials.mode,
        analytic_delay_s=analytic,
        mc_delay_s=None,
        mc_stderr_s=None,
        mc_half_width_s=None,
        n_trials=None,
        seed=exp.seed)

    # fractions are not Bernoulli caching probabilities
    if not isinstance(placement, FractionalPlacement):
        est = estimate_delay(exp.trial_config(placement, library=library))
        row.update(
            mc_delay_s=est.mean,
            mc_stderr_s=est.stderr,
            mc_half_width_s=est.half_width,
            n_trials=est.n_trials)
    return row


def _as_random(placement):
    if isinstance(placement, BinaryPlacement):
        return placement.as_random()
    return placement


def cmd_evaluate(config_path,
                 placement_path,
                 out_dir,
                 seed=None,
                 n_trials=None,
                 mode=None,
                 logger=None):
    """
    Evaluate a placement file and the baselines analytically and by Monte
    Carlo, writing ``evaluate.csv`` and ``breakdown.csv`` into ``out_dir``.

    Args:
        config_path (str | None): Path to the config.
        placement_path (str): Path to a placement JSON file.
        out_dir (str): The output directory.
        seed (int | None, optional): Overrides the config seed. Default:
            ``None``.
        n_trials (int | None, optional): Overrides the number of trials.
            Default: ``None``.
        mode (str | None, optional): Overrides the delivery mode. Default:
            ``None``.
        logger (:obj:`logging.Logger` | str | None, optional): The logger or
            name of the logger to use. Default: ``None``.

    Returns:
        int: The exit code.
    """
    logger = get_logger(logger or 'svcache')
    try:
        exp = _setup(config_path, logger, seed=seed, n_trials=n_trials,
                     mode=mode)
        data = svcache.load(placement_path, format='json')
    except ConfigError as e:
        logger.error('Invalid config: {}'.format(e))
        return EXIT_CONFIG
    except (OSError, ValueError) as e:
        logger.error('Invalid placement file: {}'.format(e))
        return EXIT_CONFIG

    try:
        placement = Placement.from_dict(data, library=exp.library)
    except FingerprintError as e:
        logger.error('Fingerprint mismatch: {}'.format(e))
        return EXIT_FINGERPRINT
    except (KeyError, TypeError, ValueError) as e:
        logger.error('Invalid placement file: {}'.format(e))
        return EXIT_CONFIG

    placement = placement.with_capacities(exp.capacities)
    feasible, slack = check_feasibility(placement, exp.library)
    if not feasible:
        logger.error('Placement violates the cache sizes, slack: {}'.format(
            slack))
        return EXIT_CONFIG

    rows = [
        _evaluate_row(exp, 'placement', exp.library, placement)
    ]
    for name in BASELINES:
        policy = build_policy(name)
        baseline = policy.place(exp.library, exp.capacities, exp.params)
        rows.append(
            _evaluate_row(exp, name, policy.library_for(exp.library),
                          baseline))

    svcache.dump(
        rows,
        os.path.join(out_dir, 'evaluate.csv'),
        fieldnames=EVALUATE_COLUMNS,
        comments=exp.comments())

    if not isinstance(placement, FractionalPlacement):
        breakdown = expected_total_delay(
            _as_random(placement), exp.library, exp.params)
        svcache.dump(
            breakdown.to_rows(),
            os.path.join(out_dir, 'breakdown.csv'),
            comments=exp.comments())

    _print_table(rows, EVALUATE_COLUMNS[:-1])
    return EXIT_OK


def cmd_sweep(config_path,
              axis,
              out_dir,
              seed=None,
              n_trials=None,
              mode=None,
              logger=None):
    """
    Sweep the backhaul rate or the SBS cache size and write
    ``sweep_<axis>.csv`` into ``out_dir``.

    Args:
        config_path (str | None): Path to the config.
        axis (str): ``'backhaul_rate'`` or ``'sbs_cache_size'``.
        out_dir (str): The output directory.
        seed (int | None, optional): Overrides the config seed. Default:
            ``None``.
        n_trials (int | None, optional): Overrides the number of trials.
            Default: ``None``.
        mode (str | None, optional): Restricts the sweep to one delivery
            mode. Default: ``None``.
        logger (:obj:`logging.Logger` | str | None, optional): The logger or
            name of the logger to use. Default: ``None``.

    Returns:
        int: The exit code.
    """
    logger = get_logger(logger or 'svcache')
    if axis not in SWEEP_AXES:
        logger.error("Invalid config: unknown axis '{}', expected one of "
                     '{}'.format(axis, list(SWEEP_AXES)))
        return EXIT_CONFIG

    try:
        exp = _setup(config_path, logger, seed=seed, n_trials=n_trials,
                     mode=mode)
    except ConfigError as e:
        logger.error('Invalid config: {}'.format(e))
        return EXIT_CONFIG

    grid = exp.cfg.sweep.backhaul_rate_mbps if axis == 'backhaul_rate' \
        else exp.cfg.sweep.sbs_cache_size_mbit

    try:
        rows = sweep(
            axis,
            list(grid),
            exp.library,
            exp.params,
            exp.capacities,
            tiers=exp.tiers,
            policies=list(exp.cfg.sweep.policies),
            modes=list(exp.cfg.sweep.modes),
            optimizer_config=exp.optimizer_config,
            n_trials=exp.cfg.trials.n_trials,
            seed=exp.seed,
            trial_kwargs=exp.trial_kwargs(),
            progress=None,
            logger=logger)
    except OptimizerAbort as e:
        logger.error('Optimizer aborted: {}'.format(e))
        return EXIT_ABORT

    svcache.dump(
        rows,
        os.path.join(out_dir, 'sweep_{}.csv'.format(axis)),
        fieldnames=SWEEP_COLUMNS,
        comments=exp.comments())

    _print_table(rows, SWEEP_COLUMNS[1:-2])
    return EXIT_OK
