# Copyright (c) SVCache Authors. Licensed under the MIT License.

import argparse
import sys

from svcache.utils import ConfigError, get_logger
from .commands import EXIT_CONFIG, cmd_evaluate, cmd_optimize, cmd_sweep

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


class _ArgumentParser(argparse.ArgumentParser):

    def error(self, message):
        raise ConfigError('args', message)


def _add_common(parser):
    parser.add_argument('--config', help='json or yaml experiment config')
    parser.add_argument('--out', required=True, help='output directory')
    parser.add_argument('--seed', type=int, help='override the config seed')
    parser.add_argument(
        '--log-level',
        default='INFO',
        type=str.upper,
        choices=LOG_LEVELS,
        help='log level of the svcache logger')


def _add_trials(parser):
    parser.add_argument(
        '--trials', type=int, help='override the number of Monte Carlo trials')
    parser.add_argument('--mode', help='override the delivery mode')


def build_parser():
    parser = _ArgumentParser(
        prog='svcache',
        description='Random caching of SVC video layers in three-tier '
        'wireless networks')
    subparsers = parser.add_subparsers(dest='command')

    optimize = subparsers.add_parser(
        'optimize', help='optimize the random caching probabilities')
    _add_common(optimize)

    evaluate = subparsers.add_parser(
        'evaluate', help='evaluate a placement against the baselines')
    _add_common(evaluate)
    _add_trials(evaluate)
    evaluate.add_argument(
        '--placement', required=True, help='placement json file')

    sweep = subparsers.add_parser(
        'sweep', help='sweep the backhaul rate or the sbs cache size')
    _add_common(sweep)
    _add_trials(sweep)
    sweep.add_argument(
        '--axis',
        required=True,
        help='backhaul_rate or sbs_cache_size')

    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise ConfigError('args', 'a command is required')
    except ConfigError as e:
        get_logger('svcache').error('Invalid arguments: {}'.format(e))
        return EXIT_CONFIG

    logger = get_logger('svcache')
    logger.setLevel(args.log_level)

    if args.command == 'optimize':
        return cmd_optimize(args.config, args.out, seed=args.seed,
                            logger=logger)
    elif args.command == 'evaluate':
        return cmd_evaluate(
            args.config,
            args.placement,
            args.out,
            seed=args.seed,
            n_trials=args.trials,
            mode=args.mode,
            logger=logger)
    return cmd_sweep(
        args.config,
        args.axis,
        args.out,
        seed=args.seed,
        n_trials=args.trials,
        mode=args.mode,
        logger=logger)


if __name__ == '__main__':
    sys.exit(main())
