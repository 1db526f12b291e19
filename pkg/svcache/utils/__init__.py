# Copyright (c) SVCache Authors. Licensed under the MIT License.

from .binder import bind_getter
from .config import CfgNode, Config, ConfigError
from .logger import get_logger, log_or_print
from .parallel import get_num_threads, parallel_map
from .progress import ProgressBar
from .registry import Registry, build_object
from .timer import Timer

__all__ = [
    'bind_getter', 'CfgNode', 'Config', 'ConfigError', 'get_logger',
    'log_or_print', 'get_num_threads', 'parallel_map', 'ProgressBar',
    'Registry', 'build_object', 'Timer'
]
