# Copyright (c) SVCache Authors. Licensed under the MIT License.

import math
from copy import deepcopy

import yaml

from svcache.geometry import TIER_NAMES
from svcache.montecarlo import DELIVERIES, RATE_MODES
from svcache.optim import OptimizerConfig
from svcache.policy import POLICIES
from svcache.utils import CfgNode, Config, ConfigError

SCHEMA_VERSION = '1.0'

DEFAULT_CONFIG = {
    'schema_version': SCHEMA_VERSION,
    'seed': 0,
    'library': {
        'file_count': 50,
        'layers_per_file': 8,
        'base_size_mbit': 50.0,
        'svc_overhead': 0.1,
        'layer_sizes_mbit': None,
        'popularity': {
            'alpha': 0.8,
            'plateau': 5.0
        },
        'preference': {
            'rho': 2.0
        }
    },
    'tiers': {
        'd2d': {
            'density_per_m2': 1e-3,
            'radius_m': 10.0,
            'power_w': 0.1,
            'pathloss_exp': 4.0,
            'bandwidth_hz': 1e7,
            'noise_w': 1e-13,
            'cache_size_mbit': 200.0
        },
        'sbs': {
            'density_per_m2': 2e-4,
            'radius_m': 30.0,
            'power_w': 1.0,
            'pathloss_exp': 4.0,
            'bandwidth_hz': 1e7,
            'noise_w': 1e-13,
            'cache_size_mbit': 500.0
        },
        'mbs': {
            'density_per_m2': 2e-5,
            'radius_m': None,
            'power_w': 10.0,
            'pathloss_exp': 4.0,
            'bandwidth_hz': 1e7,
            'noise_w': 1e-13,
            'cache_size_mbit': None
        }
    },
    'geometry': {
        'window_radius_m': 150.0,
        'min_distance_m': 0.5
    },
    'delay': {
        'backhaul_rate_mbps': 20.0,
        'rates_mbps': {
            'd2d': None,
            'sbs': None,
            'mbs': None
        },
        'rate_samples': 20000,
        'rate_seed': 0
    },
    'optimizer': {
        'max_iterations': 500,
        'tolerance': 1e-8,
        'initial_step': 1.0,
        'shrink': 0.5,
        'sufficient_decrease': 1e-4,
        'max_backtracks': 60,
        'projection_tol_bits': 1e-6,
        'log_interval': 50
    },
    'trials': {
        'n_trials': 10000,
        'mode': 'sequential',
        'rate_mode': 'mean',
        'min_sinr_db': -10.0,
        'truncate': False,
        'chunk_size': 2000
    },
    'sweep': {
        'backhaul_rate_mbps': [5.0, 10.0, 20.0, 40.0, 80.0],
        'sbs_cache_size_mbit': [100.0, 300.0, 500.0, 700.0, 900.0],
        'policies': ['NoCache', 'MPCP_NoSVC', 'MPLP_SVC', 'RandomSVC'],
        'modes': ['sequential']
    }
}


def _get(cfg, path):
    node = cfg
    for key in path.split('.'):
        node = node[key]
    return node


def _is_number(value):
    return isinstance(value, (int, float)) and not isinstance(value, bool) \
        and math.isfinite(value)


def _check_number(cfg, path, low=None, strict=False, integer=False,
                  nullable=False):
    value = _get(cfg, path)
    if value is None and nullable:
        return
    if integer and (not isinstance(value, int) or isinstance(value, bool)):
        raise ConfigError(path, 'expected an integer, but got {!r}'.format(
            value))
    if not _is_number(value):
        raise ConfigError(path, 'expected a finite number, but got {!r}'.format(
            value))
    if low is not None and (value <= low if strict else value < low):
        raise ConfigError(
            path, 'must be {} {}, but got {}'.format(
                'greater than' if strict else 'at least', low, value))


def _check_choices(cfg, path, choices, many=False):
    value = _get(cfg, path)
    values = value if many else [value]
    if many and (not isinstance(value, (list, tuple)) or len(value) == 0):
        raise ConfigError(path, 'expected a non-empty list')
    for v in values:
        if v not in choices:
            raise ConfigError(path, "unknown value '{}', expected one of "
                              '{}'.format(v, list(choices)))


def _check_grid(cfg, path):
    value = _get(cfg, path)
    if not isinstance(value, (list, tuple)) or len(value) == 0:
        raise ConfigError(path, 'expected a non-empty list')
    for v in value:
        if not _is_number(v) or v <= 0:
            raise ConfigError(path, 'grid values must be positive numbers, '
                              'but got {!r}'.format(v))


def validate_config(cfg):
    """
    Check the ranges and kinds of every field of an experiment config.

    Args:
        cfg (:obj:`CfgNode`): The merged config.

    Raises:
        :obj:`ConfigError`: If a field is invalid. The error names the dotted
            path of the field.
    """
    if cfg.schema_version != SCHEMA_VERSION:
        raise ConfigError(
            'schema_version', "expected '{}', but got '{}'".format(
                SCHEMA_VERSION, cfg.schema_version))
    _check_number(cfg, 'seed', low=0, integer=True)

    _check_number(cfg, 'library.file_count', low=1, integer=True)
    _check_number(cfg, 'library.layers_per_file', low=1, integer=True)
    _check_number(cfg, 'library.base_size_mbit', low=0, strict=True)
    _check_number(cfg, 'library.svc_overhead', low=0)
    _check_number(cfg, 'library.popularity.alpha', low=0)
    _check_number(cfg, 'library.popularity.plateau', low=0)
    _check_number(cfg, 'library.preference.rho', low=0, strict=True)

    sizes = cfg.library.layer_sizes_mbit
    if sizes is not None:
        if not isinstance(sizes, (list, tuple)) or \
                len(sizes) != cfg.library.layers_per_file:
            raise ConfigError(
                'library.layer_sizes_mbit',
                'expected a list of {} sizes'.format(
                    cfg.library.layers_per_file))
        if not all(_is_number(s) and s > 0 for s in sizes):
            raise ConfigError('library.layer_sizes_mbit',
                              'layer sizes must be positive numbers')

    for name in TIER_NAMES:
        prefix = 'tiers.{}.'.format(name)
        cached = name != 'mbs'
        _check_number(cfg, prefix + 'density_per_m2', low=0, strict=True)
        _check_number(
            cfg, prefix + 'radius_m', low=0, strict=True, nullable=not cached)
        _check_number(cfg, prefix + 'power_w', low=0, strict=True)
        _check_number(cfg, prefix + 'pathloss_exp', low=2, strict=True)
        _check_number(cfg, prefix + 'bandwidth_hz', low=0, strict=True)
        _check_number(cfg, prefix + 'noise_w', low=0, strict=True)
        _check_number(
            cfg, prefix + 'cache_size_mbit', low=0, nullable=not cached)

    density = [cfg.tiers[n].density_per_m2 for n in TIER_NAMES]
    if not density[0] > density[1] > density[2]:
        raise ConfigError('tiers', 'densities must satisfy d2d > sbs > mbs')

    _check_number(cfg, 'geometry.window_radius_m', low=0, strict=True)
    _check_number(cfg, 'geometry.min_distance_m', low=0, strict=True)
    if cfg.geometry.window_radius_m < max(cfg.tiers.d2d.radius_m,
                                          cfg.tiers.sbs.radius_m):
        raise ConfigError('geometry.window_radius_m',
                          'window must cover the serving radii')

    _check_number(cfg, 'delay.backhaul_rate_mbps', low=0, strict=True)
    for name in TIER_NAMES:
        _check_number(
            cfg,
            'delay.rates_mbps.{}'.format(name),
            low=0,
            strict=True,
            nullable=True)
    _check_number(cfg, 'delay.rate_samples', low=1, integer=True)
    _check_number(cfg, 'delay.rate_seed', low=0, integer=True)

    try:
        OptimizerConfig.from_dict(cfg.optimizer.to_dict())
    except (TypeError, ValueError) as e:
        raise ConfigError('optimizer', str(e))

    _check_number(cfg, 'trials.n_trials', low=1, integer=True)
    _check_choices(cfg, 'trials.mode', DELIVERIES.keys())
    _check_choices(cfg, 'trials.rate_mode', RATE_MODES)
    _check_number(cfg, 'trials.min_sinr_db')
    _check_number(cfg, 'trials.chunk_size', low=1, integer=True)
    if not isinstance(cfg.trials.truncate, bool):
        raise ConfigError('trials.truncate', 'expected a boolean')

    _check_grid(cfg, 'sweep.backhaul_rate_mbps')
    _check_grid(cfg, 'sweep.sbs_cache_size_mbit')
    _check_choices(cfg, 'sweep.policies', POLICIES.keys(), many=True)
    _check_choices(cfg, 'sweep.modes', DELIVERIES.keys(), many=True)


def _set(cfg, path, value):
    keys = path.split('.')
    node = cfg
    for idx, key in enumerate(keys[:-1]):
        if not isinstance(node.get(key), CfgNode):
            raise ConfigError('.'.join(keys[:idx + 1]), 'unknown field')
        node = node[key]
    if keys[-1] not in node:
        raise ConfigError(path, 'unknown field')
    node[keys[-1]] = value


def load_experiment_config(filename=None, overrides=None):
    """
    Load an experiment config, fill in every default and validate it.

    Args:
        filename (str | None, optional): Path to a ``json`` or ``yaml/yml``
            config. Only the fields to change need to be given. If not
            specified, the defaults are used. Default: ``None``.
        overrides (dict | None, optional): Values to set last, keyed by
            dotted field path, e.g. ``{'trials.n_trials': 100}``. Default:
            ``None``.

    Returns:
        :obj:`CfgNode`: The frozen, fully resolved config.
    """
    cfg = CfgNode(deepcopy(DEFAULT_CONFIG))

    if filename is not None:
        try:
            data = Config.from_file(filename).to_dict()
        except ConfigError:
            raise
        except (OSError, TypeError, ValueError, yaml.YAMLError) as e:
            raise ConfigError('', str(e))
        cfg.merge_strict(data)

    for path, value in (overrides or dict()).items():
        _set(cfg, path, value)

    validate_config(cfg)
    return cfg.freeze()
