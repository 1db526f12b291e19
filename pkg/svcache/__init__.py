# Copyright (c) SVCache Authors. Licensed under the MIT License.

from .io import *  # noqa
from .utils import *  # noqa
from .content import *  # noqa
from .geometry import *  # noqa
from .policy import *  # noqa
from .delay import *  # noqa
from .optim import *  # noqa
from .montecarlo import *  # noqa

__version__ = '0.1.0'
