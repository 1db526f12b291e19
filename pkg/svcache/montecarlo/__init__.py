# Copyright (c) SVCache Authors. Licensed under the MIT License.

from .estimator import (DelayEstimate, TrialConfig, empirical_hit_frequency,
                        estimate_delay, trial_delays)
from .sweep import (DEFAULT_POLICIES, SWEEP_AXES, SWEEP_COLUMNS, sweep,
                    sweep_point)
from .trial import (DELIVERIES, RATE_MODES, CachedNodes, LinkModel,
                    ParallelILTDelivery, SequentialDelivery, SLTDelivery,
                    run_trial, sample_contents)

__all__ = [
    'DelayEstimate', 'TrialConfig', 'empirical_hit_frequency',
    'estimate_delay', 'trial_delays', 'DEFAULT_POLICIES', 'SWEEP_AXES',
    'SWEEP_COLUMNS', 'sweep', 'sweep_point', 'DELIVERIES', 'RATE_MODES',
    'CachedNodes', 'LinkModel', 'ParallelILTDelivery', 'SequentialDelivery',
    'SLTDelivery', 'run_trial', 'sample_contents'
]
