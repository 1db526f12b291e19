# Copyright (c) SVCache Authors. Licensed under the MIT License.

import os

from joblib import Parallel, delayed

_THREADS_ENV = 'SVC_CACHE_THREADS'


def get_num_threads():
    """
    Get the number of parallel workers allowed for Monte Carlo trials and
    sweep points.

    The environment variable ``SVC_CACHE_THREADS`` caps the count. When it is
    unset, all available cores are used.

    Returns:
        int: The number of workers (at least ``1``).
    """
    cores = os.cpu_count() or 1
    value = os.getenv(_THREADS_ENV)
    if value is None or value.strip() == '':
        return cores

    try:
        cap = int(value)
    except ValueError:
        raise ValueError("{} must be a positive integer, but got '{}'".format(
            _THREADS_ENV, value))

    if cap < 1:
        raise ValueError("{} must be a positive integer, but got '{}'".format(
            _THREADS_ENV, value))

    return min(cap, cores)


def parallel_map(func, items, n_jobs=None):
    """
    Apply a function to every item, optionally in parallel worker processes.

    The returned list is always in input order, so reductions over it are
    independent of the number of workers.

    Args:
        func (callable): A picklable function of one argument.
        items (list): The inputs.
        n_jobs (int | None, optional): Number of workers. If not specified,
            :obj:`get_num_threads` is used. Default: ``None``.

    Returns:
        list: ``[func(item) for item in items]``.
    """
    items = list(items)
    n_jobs = get_num_threads() if n_jobs is None else max(1, int(n_jobs))

    if n_jobs == 1 or len(items) <= 1:
        return [func(item) for item in items]

    n_jobs = min(n_jobs, len(items))
    return Parallel(n_jobs=n_jobs)(delayed(func)(item) for item in items)
