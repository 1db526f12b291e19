# Copyright (c) SVCache Authors. Licensed under the MIT License.

from .library import (MBIT, SuperLayer, VideoLibrary, build_library,
                      layer_request_prob, super_layer)
from .popularity import PopularityModel, QualityPreference, mz_pmf, zipf_pmf

__all__ = [
    'MBIT', 'SuperLayer', 'VideoLibrary', 'build_library',
    'layer_request_prob', 'super_layer', 'PopularityModel',
    'QualityPreference', 'mz_pmf', 'zipf_pmf'
]
