# Copyright (c) SVCache Authors. Licensed under the MIT License.

import math

import numpy as np

import svcache
from svcache.delay import delay_gradient, expected_total_delay
from svcache.geometry import CACHE_TIERS
from svcache.policy import (POLICIES, CachingPolicy, RandomPlacement,
                            check_feasibility)
from svcache.utils import Timer
from .projection import project_capacity
from .trace import OptimizationTrace


class OptimizerAbort(RuntimeError):
    """
    Raised when gradient projection can not continue. The partial trace is
    kept in :obj:`self.trace`.
    """

    def __init__(self, msg, trace):
        self.trace = trace
        super(OptimizerAbort, self).__init__(msg)


class OptimizerConfig(object):
    """
    Settings of gradient projection with Armijo backtracking.

    Args:
        max_iterations (int, optional): Maximum number of iterations.
            Default: ``500``.
        tolerance (float, optional): Stop when the relative objective change
            of an accepted step falls below this. Default: ``1e-8``.
        initial_step (float, optional): The first trial step, in units of
            the largest probability change it may cause. Default: ``1.0``.
        shrink (float, optional): Backtracking factor. Default: ``0.5``.
        sufficient_decrease (float, optional): The Armijo constant.
            Default: ``1e-4``.
        max_backtracks (int, optional): Maximum number of step reductions
            per iteration. Default: ``60``.
        projection_tol_bits (float, optional): Largest capacity gap in bits
            the projection leaves when the capacity is tight. Default:
            ``1e-6``.
        log_interval (int, optional): Iterations between progress messages.
            Default: ``50``.
    """

    _FIELDS = ('max_iterations', 'tolerance', 'initial_step', 'shrink',
               'sufficient_decrease', 'max_backtracks',
               'projection_tol_bits', 'log_interval')

    def __init__(self,
                 max_iterations=500,
                 tolerance=1e-8,
                 initial_step=1.0,
                 shrink=0.5,
                 sufficient_decrease=1e-4,
                 max_backtracks=60,
                 projection_tol_bits=1e-6,
                 log_interval=50):
        if max_iterations < 0:
            raise ValueError('max_iterations must be non-negative')
        if not tolerance > 0:
            raise ValueError('tolerance must be positive, but got {}'.format(
                tolerance))
        if not initial_step > 0:
            raise ValueError('initial_step must be positive')
        if not 0 < shrink < 1:
            raise ValueError('shrink must be in (0, 1), but got {}'.format(
                shrink))
        if not 0 < sufficient_decrease < 1:
            raise ValueError(
                'sufficient_decrease must be in (0, 1), but got {}'.format(
                    sufficient_decrease))
        if max_backtracks < 1 or log_interval < 1:
            raise ValueError('max_backtracks and log_interval must be '
                             'positive')
        if not projection_tol_bits > 0:
            raise ValueError('projection_tol_bits must be positive')

        self.max_iterations = int(max_iterations)
        self.tolerance = float(tolerance)
        self.initial_step = float(initial_step)
        self.shrink = float(shrink)
        self.sufficient_decrease = float(sufficient_decrease)
        self.max_backtracks = int(max_backtracks)
        self.projection_tol_bits = float(projection_tol_bits)
        self.log_interval = int(log_interval)

    def __repr__(self):
        return '{}({})'.format(
            self.__class__.__name__,
            ', '.join('{}={}'.format(k, v) for k, v in self.to_dict().items()))

    def to_dict(self):
        return {k: getattr(self, k) for k in self._FIELDS}

    @staticmethod
    def from_dict(cfg):
        return OptimizerConfig(**(cfg or dict()))


def uniform_init(library, capacities):
    """
    The capacity-saturating uniform point ``p = min(1, C / sum(sizes))`` of
    every cache tier.
    """
    total = library.total_size_bits
    matrices = {
        t: np.full(library.shape, min(1.0, capacities[t] / total))
        for t in CACHE_TIERS
    }
    return RandomPlacement(matrices, capacities=capacities)


def gradient_projection(library,
                        params,
                        capacities,
                        config=None,
                        init=None,
                        logger=None):
    """
    Minimize the expected transmission delay over the caching probabilities
    of the D2D and SBS tiers by gradient projection.

    Every iteration takes a gradient step and projects each tier onto its
    capacity set independently. The step is found by Armijo backtracking and
    is accepted only if it does not increase the objective.

    Args:
        library (:obj:`VideoLibrary`): The library.
        params (:obj:`DelayParams`): The delay model constants.
        capacities (dict): Per-tier cache sizes in bits.
        config (:obj:`OptimizerConfig` | dict | None, optional): The
            optimizer settings. Default: ``None``.
        init (:obj:`RandomPlacement` | None, optional): A feasible initial
            point. If not specified, :obj:`uniform_init` is used. Default:
            ``None``.
        logger (:obj:`logging.Logger` | str | None, optional): The logger or
            name of the logger to use. Default: ``None``.

    Returns:
        tuple: The optimized :obj:`RandomPlacement` and the \
            :obj:`OptimizationTrace`.
    """
    if not isinstance(config, OptimizerConfig):
        config = OptimizerConfig.from_dict(config)

    capacities = {t: float(capacities[t]) for t in CACHE_TIERS}
    sizes = library.layer_sizes

    if init is None:
        init = uniform_init(library, capacities)

    init = RandomPlacement({t: init[t]
                            for t in CACHE_TIERS},
                           capacities=capacities)
    feasible, slack = check_feasibility(init, library)
    if not feasible:
        raise ValueError(
            'initial placement violates the cache sizes, slack: {}'.format(
                slack))

    def _log(msg):
        if logger is not None:
            svcache.log_or_print(msg, logger)

    timer = Timer()
    trace = OptimizationTrace(logger=logger)

    current = init
    obj = float(expected_total_delay(current, library, params))
    grad = delay_gradient(current, library, params, check=False)
    grad_norm = math.sqrt(sum(float(np.sum(grad[t]**2)) for t in CACHE_TIERS))
    trace.update(0, obj, 0, grad_norm, slack, timer.seconds())

    reason = 'max_iterations'
    for it in range(1, config.max_iterations + 1):
        if not all(np.all(np.isfinite(grad[t])) for t in CACHE_TIERS):
            raise OptimizerAbort(
                'non-finite gradient at iteration {}'.format(it), trace)

        gmax = max(float(np.max(np.abs(grad[t]))) for t in CACHE_TIERS)
        if gmax == 0:
            reason = 'zero_gradient'
            break

        step = config.initial_step / gmax
        accepted = None
        for _ in range(config.max_backtracks):
            cand = {
                t: project_capacity(
                    current[t] - step * grad[t],
                    sizes,
                    capacities[t],
                    tol_bits=config.projection_tol_bits)
                for t in CACHE_TIERS
            }
            delta = {t: cand[t] - current[t] for t in CACHE_TIERS}
            if all(not np.any(delta[t]) for t in CACHE_TIERS):
                break

            decrease = math.fsum(
                float(np.sum(grad[t] * delta[t])) for t in CACHE_TIERS)
            cand = RandomPlacement(cand, capacities=capacities)
            cand_obj = float(expected_total_delay(cand, library, params))

            if cand_obj <= obj + config.sufficient_decrease * decrease \
                    and cand_obj <= obj:
                accepted = cand, cand_obj
                break

            step *= config.shrink

        if accepted is None:
            reason = 'stalled'
            break

        change = (obj - accepted[1]) / max(abs(obj), np.finfo(float).tiny)
        current, obj = accepted

        grad = delay_gradient(current, library, params, check=False)
        grad_norm = math.sqrt(
            sum(float(np.sum(grad[t]**2)) for t in CACHE_TIERS))
        _, slack = check_feasibility(current, library)
        trace.update(it, obj, step, grad_norm, slack, timer.seconds())

        if it % config.log_interval == 0:
            _log('Iteration [{}/{}]  objective: {:.6f} s  step: {:.3e}  '
                 'grad_norm: {:.3e}'.format(it, config.max_iterations, obj,
                                            step, grad_norm))

        if change < config.tolerance:
            reason = 'converged'
            break

    _log('Gradient projection finished ({}) after {} iterations, objective: '
         '{:.6f} s, time: {:.2f} s'.format(reason,
                                           trace.iterations, obj,
                                           timer.seconds()))

    return current, trace


@POLICIES.register(name='RandomSVC')
class RandomSVC(CachingPolicy):
    """
    Random caching of SVC layers with probabilities optimized by
    :obj:`gradient_projection`.

    Args:
        config (:obj:`OptimizerConfig` | dict | None, optional): The
            optimizer settings. Default: ``None``.
        logger (:obj:`logging.Logger` | str | None, optional): The logger or
            name of the logger to use. Default: ``None``.
    """

    def __init__(self, config=None, logger=None):
        self._config = config
        self._logger = logger
        self.trace = None

    def place(self, library, capacities, params=None):
        if params is None:
            raise ValueError('RandomSVC requires delay params')

        placement, self.trace = gradient_projection(
            library,
            params,
            capacities,
            config=self._config,
            logger=self._logger)
        return placement
