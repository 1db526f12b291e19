# Copyright (c) SVCache Authors. Licensed under the MIT License.

import svcache
from svcache.content import MBIT
from svcache.delay import baseline_delay
from svcache.policy import build_policy
from svcache.utils import ProgressBar
from .estimator import TrialConfig, estimate_delay

SWEEP_AXES = ('backhaul_rate', 'sbs_cache_size')

DEFAULT_POLICIES = ('NoCache', 'MPCP_NoSVC', 'MPLP_SVC', 'RandomSVC')

SWEEP_COLUMNS = ('axis_name', 'axis_value', 'policy', 'mode',
                 'analytic_delay_s', 'mc_delay_s', 'mc_stderr_s', 'n_trials',
                 'seed')


def sweep_point(axis, value, params, capacities):
    """
    Apply one grid value to the delay params and cache sizes.

    Args:
        axis (str): ``'backhaul_rate'`` (value in Mbit/s) or
            ``'sbs_cache_size'`` (value in Mbit).
        value (float): The grid value.
        params (:obj:`DelayParams`): The base params.
        capacities (dict): The base per-tier cache sizes in bits.

    Returns:
        tuple: The updated params and capacities.
    """
    if axis not in SWEEP_AXES:
        raise ValueError("axis must be one of {}, but got '{}'".format(
            SWEEP_AXES, axis))

    capacities = dict(capacities)
    if axis == 'backhaul_rate':
        params = params.replace(backhaul_rate=value * MBIT)
    else:
        capacities['sbs'] = value * MBIT
    return params, capacities


def sweep(axis,
          grid,
          library,
          params,
          capacities,
          tiers=None,
          policies=DEFAULT_POLICIES,
          modes=('sequential', ),
          optimizer_config=None,
          n_trials=None,
          seed=0,
          trial_kwargs=None,
          n_jobs=None,
          progress=False,
          logger=None):
    """
    Evaluate placement policies across a grid of backhaul rates or SBS cache
    sizes. Policies are rebuilt at every grid point, so the optimized policy
    is re-optimized for each point.

    Args:
        axis (str): ``'backhaul_rate'`` or ``'sbs_cache_size'``.
        grid (list[float]): The grid values in Mbit/s or Mbit.
        library (:obj:`VideoLibrary`): The SVC library.
        params (:obj:`DelayParams`): The base delay model constants.
        capacities (dict): The base per-tier cache sizes in bits.
        tiers (dict | None, optional): Tier configs, required when Monte
            Carlo runs. Default: ``None``.
        policies (list[str], optional): Registered policy names.
        modes (list[str], optional): Monte Carlo delivery modes. Default:
            ``('sequential', )``.
        optimizer_config (dict | None, optional): Settings of the optimized
            policy. Default: ``None``.
        n_trials (int | None, optional): Monte Carlo trials per row. If not
            specified, only analytic delays are computed. Default: ``None``.
        seed (int, optional): The Monte Carlo seed. Default: ``0``.
        trial_kwargs (dict | None, optional): Extra :obj:`TrialConfig`
            arguments. Default: ``None``.
        n_jobs (int | None, optional): Number of Monte Carlo workers.
            Default: ``None``.
        progress (bool, optional): Whether to show a progress bar. Default:
            ``False``.
        logger (:obj:`logging.Logger` | str | None, optional): The logger or
            name of the logger to use. Default: ``None``.

    Returns:
        list[dict]: Rows sorted by axis value, policy and mode.
    """
    if len(grid) == 0:
        raise ValueError('grid must not be empty')
    if n_trials is not None and tiers is None:
        raise ValueError('tiers are required for Monte Carlo')

    prog_bar = ProgressBar(num_tasks=len(grid) * len(policies),
                           active=progress)

    rows = []
    for value in grid:
        point_params, point_caps = sweep_point(axis, value, params,
                                               capacities)

        for name in policies:
            cfg = dict(type=name)
            if name == 'RandomSVC':
                cfg.update(config=optimizer_config, logger=logger)
            policy = build_policy(cfg)

            placement = policy.place(library, point_caps, params=point_params)
            analytic = baseline_delay(
                policy, library, point_params, placement=placement)

            for mode in modes:
                row = dict(
                    axis_name=axis,
                    axis_value=value,
                    policy=name,
                    mode=mode,
                    analytic_delay_s=analytic,
                    mc_delay_s=None,
                    mc_stderr_s=None,
                    n_trials=n_trials,
                    seed=seed)

                if n_trials is not None:
                    trial_cfg = TrialConfig(
                        policy.library_for(library),
                        tiers,
                        point_params,
                        placement,
                        n_trials=n_trials,
                        seed=seed,
                        mode=mode,
                        **(trial_kwargs or dict()))
                    est = estimate_delay(trial_cfg, n_jobs=n_jobs)
                    row.update(mc_delay_s=est.mean, mc_stderr_s=est.stderr)

                rows.append(row)

            prog_bar.update()

            if logger is not None:
                svcache.log_or_print(
                    '{}={}  {}: {:.6f} s'.format(axis, value, name, analytic),
                    logger)

    rows.sort(key=lambda r: (r['axis_value'], r['policy'], r['mode']))
    return rows
