# Copyright (c) SVCache Authors. Licensed under the MIT License.

from .commands import (EXIT_ABORT, EXIT_CONFIG, EXIT_FINGERPRINT, EXIT_OK,
                       Experiment, cmd_evaluate, cmd_optimize, cmd_sweep)
from .main import build_parser, main
from .schema import (DEFAULT_CONFIG, SCHEMA_VERSION, load_experiment_config,
                     validate_config)

__all__ = [
    'EXIT_ABORT', 'EXIT_CONFIG', 'EXIT_FINGERPRINT', 'EXIT_OK', 'Experiment',
    'cmd_evaluate', 'cmd_optimize', 'cmd_sweep', 'build_parser', 'main',
    'DEFAULT_CONFIG', 'SCHEMA_VERSION', 'load_experiment_config',
    'validate_config'
]
