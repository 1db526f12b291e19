# Copyright (c) SVCache Authors. Licensed under the MIT License.

from .io import dump, dumps, load, loads

__all__ = ['dump', 'dumps', 'load', 'loads']
