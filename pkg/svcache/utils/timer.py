# Copyright (c) SVCache Authors. Licensed under the MIT License.

from time import perf_counter


class Timer(object):
    """
    A wall-clock timer for optimizer iterations and Monte Carlo runs.
    """

    def __init__(self):
        self.reset()

    def reset(self):
        """
        Reset the timer.
        """
        self._start = perf_counter()

    def seconds(self):
        """
        Return the number of seconds since the last reset.
        """
        return perf_counter() - self._start
