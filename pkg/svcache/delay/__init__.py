# Copyright (c) SVCache Authors. Licensed under the MIT License.

from .baselines import baseline_delay, fractional_delay
from .objective import (ObjectiveValue, delay_gradient, expected_layer_delay,
                        expected_total_delay)
from .params import DelayParams, build_delay_params

__all__ = [
    'baseline_delay', 'fractional_delay', 'ObjectiveValue', 'delay_gradient',
    'expected_layer_delay', 'expected_total_delay', 'DelayParams',
    'build_delay_params'
]
