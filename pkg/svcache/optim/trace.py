# Copyright (c) SVCache Authors. Licensed under the MIT License.

import math

import numpy as np

import svcache

_COLUMNS = ('iteration', 'objective_s', 'step', 'grad_norm', 'slack_d2d_bits',
            'slack_sbs_bits', 'wall_time_s')


class OptimizationTrace(object):
    """
    The iterate history of gradient projection. Record ``0`` is the initial
    point and every further record is an accepted iteration.

    Args:
        max_size (int | None, optional): Maximal number of records to keep.
            When it is exceeded, the oldest non-initial record is removed.
            Default: ``None``.
        logger (:obj:`logging.Logger` | str | None, optional): The logger or
            name of the logger to use. Default: ``None``.
    """

    columns = _COLUMNS

    def __init__(self, max_size=None, logger=None):
        self._max_size = max_size
        self._logger = logger
        self._records = []

    def __len__(self):
        return len(self._records)

    def __iter__(self):
        return iter(self._records)

    def __getitem__(self, idx):
        return dict(self._records[idx])

    def __repr__(self):
        return '{}(records={}, objective={})'.format(
            self.__class__.__name__, len(self),
            self.latest('objective_s') if len(self) > 0 else None)

    def update(self, iteration, objective, step, grad_norm, slack, wall_time):
        """
        Append a record.

        Args:
            iteration (int): The iteration number.
            objective (float): The objective value in seconds.
            step (float): The accepted step size.
            grad_norm (float): The Euclidean norm of the gradient.
            slack (dict): Capacity slack in bits by cache tier.
            wall_time (float): Seconds since the optimization started.
        """
        if self._max_size is not None and len(self) == self._max_size:
            svcache.log_or_print(
                'Number of trace records exceeds max size ({}), removing the '
                'oldest iteration'.format(self._max_size),
                self._logger,
                log_level='WARNING')
            self._records.pop(1)

        self._records.append(
            dict(
                iteration=int(iteration),
                objective_s=float(objective),
                step=float(step),
                grad_norm=float(grad_norm),
                slack_d2d_bits=float(slack['d2d']),
                slack_sbs_bits=float(slack['sbs']),
                wall_time_s=float(wall_time)))

    @property
    def iterations(self):
        """
        Number of the last recorded iteration, ``0`` when only the initial
        point was recorded.
        """
        return self._records[-1]['iteration'] if len(self) > 0 else 0

    def latest(self, key):
        return self._records[-1][key]

    def values(self, key):
        return np.array([r[key] for r in self._records])

    def objectives(self):
        return self.values('objective_s')

    def is_monotone(self):
        obj = self.objectives()
        return bool(np.all(obj[1:] <= obj[:-1]))

    def min_slack(self):
        return min(
            min(r['slack_d2d_bits'], r['slack_sbs_bits'])
            for r in self._records) if len(self) > 0 else math.inf

    def to_rows(self, wall_time=False):
        """
        Convert the trace into CSV rows.

        Args:
            wall_time (bool, optional): Whether to include wall times, which
                differ between otherwise identical runs. Default: ``False``.

        Returns:
            list[dict]: The rows.
        """
        keys = _COLUMNS if wall_time else _COLUMNS[:-1]
        return [{k: r[k] for k in keys} for r in self._records]
