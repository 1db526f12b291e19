# Copyright (c) SVCache Authors. Licensed under the MIT License.

from .channel import (SpectralEfficiency, far_field_interference,
                      interference_radius, mean_spectral_efficiency,
                      pathloss_gain, sample_fading, sinr)
from .ppp import (NetworkRealization, hit_probability, sample_ppp,
                  sample_realization)
from .tier import CACHE_TIERS, TIER_NAMES, TierConfig, validate_tiers

__all__ = [
    'SpectralEfficiency', 'far_field_interference', 'interference_radius',
    'mean_spectral_efficiency', 'pathloss_gain',
    'sample_fading', 'sinr', 'NetworkRealization', 'hit_probability',
    'sample_ppp', 'sample_realization', 'CACHE_TIERS', 'TIER_NAMES',
    'TierConfig', 'validate_tiers'
]
