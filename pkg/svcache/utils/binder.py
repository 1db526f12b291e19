# Copyright (c) SVCache Authors. Licensed under the MIT License.

from copy import deepcopy

import numpy as np


def _frozen(value):
    if isinstance(value, np.ndarray):
        view = value.view()
        view.flags.writeable = False
        return view
    elif isinstance(value, dict):
        return {k: _frozen(v) for k, v in value.items()}
    elif isinstance(value, (int, float, str, bool, type(None), tuple)):
        return value
    return deepcopy(value)


def bind_getter(*vars):
    """
    A syntactic sugar for binding read-only getters to immutable domain
    types. This method is expected to be used as a decorator.

    Each name in ``vars`` is exposed as a property reading the member
    ``'_<name>'``. NumPy arrays are returned as non-writeable views so that
    callers can neither mutate the owner nor pay for a copy on every access.
    Dicts of arrays are frozen recursively and other mutable members are
    deep copied.

    Args:
        *vars: Names of the member variables to be bound with getters.

    Example:
        >>> @bind_getter('layer_sizes')
        >>> class Library:
        ...
        ...     def __init__(self, sizes):
        ...         self._layer_sizes = np.asarray(sizes)
        ...
        >>> lib = Library([[1.0, 2.0]])
        >>> lib.layer_sizes[0, 0] = 3.0
        ValueError: assignment destination is read-only
    """

    def _wrapper(cls):
        for var in vars:
            meth = property(lambda self, key='_{}'.format(var): _frozen(
                getattr(self, key, None)))
            setattr(cls, var, meth)
        return cls

    return _wrapper
