# Copyright (c) SVCache Authors. Licensed under the MIT License.

from .builder import (POLICIES, CachingPolicy, MPCPNoSVC, MPLPSVC, NoCache,
                      build_policy, mplp_place, mpcp_no_svc_place)
from .placement import (BinaryPlacement, FingerprintError,
                        FractionalPlacement, Placement, RandomPlacement,
                        check_feasibility)
from .sampling import sample_cache_contents

__all__ = [
    'POLICIES', 'CachingPolicy', 'MPCPNoSVC', 'MPLPSVC', 'NoCache',
    'build_policy', 'mplp_place', 'mpcp_no_svc_place', 'BinaryPlacement',
    'FingerprintError', 'FractionalPlacement', 'Placement',
    'RandomPlacement', 'check_feasibility', 'sample_cache_contents'
]
