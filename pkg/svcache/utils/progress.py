# Copyright (c) SVCache Authors. Licensed under the MIT License.

import sys
from math import ceil
from shutil import get_terminal_size

from .timer import Timer


class ProgressBar(object):
    """
    A progress bar for sweeps and long Monte Carlo runs. It writes to
    ``stderr`` so that results printed to ``stdout`` stay clean.

    Args:
        num_tasks (int | None, optional): The number of tasks. If not
            specified, only the completed count is shown. Default: ``None``.
        active (bool | None, optional): Whether to render anything. If not
            specified, the bar is active when ``stderr`` is a terminal.
            Default: ``None``.
    """

    _wb = '\r[{{}}] {}/{}, {:.2f} task/s, elapsed: {}, eta: {}{}'
    _ob = '\rcompleted: {}, elapsed: {}, {:.2f} tasks/s'

    def __init__(self, num_tasks=None, active=None):
        self._task_num = num_tasks
        self._completed = 0
        self._stream = sys.stderr
        self._active = self._stream.isatty() if active is None else active

        if self._active:
            if self._task_num is not None:
                msg = self._wb.format(0, self._task_num, 0, 0, 0, '')
                msg = msg.format(' ' * self._get_bar_width(msg))
            else:
                msg = self._ob.format(0, 0, 0)

            self._write(msg)
            self._last_length = len(msg)
            self._timer = Timer()

    def _write(self, msg):
        self._stream.write(msg)
        self._stream.flush()

    def _get_bar_width(self, msg):
        width, _ = get_terminal_size()
        bar_width = min(int(width - len(msg)) + 2, int(width * 0.6), 40)
        return max(2, bar_width)

    def _get_time_str(self, second):
        minute, second = divmod(int(second), 60)
        hour, minute = divmod(minute, 60)
        tokens = [(hour, 'h'), (minute, 'm'), (second, 's')]
        time_str = ''.join('{}{}'.format(v, u) for v, u in tokens if v > 0)
        return time_str or '0s'

    def update(self, times=1):
        if not self._active:
            return

        for _ in range(times):
            self._completed += 1
            ela = max(self._timer.seconds(), 1e-9)
            fps = self._completed / ela
            ela_str = self._get_time_str(ceil(ela))

            if self._task_num is not None:
                perc = self._completed / float(self._task_num)
                eta_str = self._get_time_str(ceil(ela * (1 - perc) / perc))
                msg = self._wb.format(
                    self._completed, self._task_num, fps, ela_str, eta_str,
                    '\n' if self._task_num == self._completed else '')
                bar_width = self._get_bar_width(msg)
                mark_width = int(bar_width * perc)
                chars = '>' * mark_width + ' ' * (bar_width - mark_width)
                msg = msg.format(chars)
            else:
                msg = self._ob.format(self._completed, ela_str, fps)

            self._write(msg.ljust(self._last_length))
            self._last_length = len(msg)
