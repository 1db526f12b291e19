# Copyright (c) SVCache Authors. Licensed under the MIT License.

from .complexity import complexity_probe, loglog_slope
from .gradient_projection import (OptimizerAbort, OptimizerConfig, RandomSVC,
                                  gradient_projection, uniform_init)
from .projection import project_capacity
from .trace import OptimizationTrace

__all__ = [
    'complexity_probe', 'loglog_slope', 'OptimizerAbort', 'OptimizerConfig',
    'RandomSVC', 'gradient_projection', 'uniform_init', 'project_capacity',
    'OptimizationTrace'
]
