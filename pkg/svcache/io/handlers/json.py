# Copyright (c) SVCache Authors. Licensed under the MIT License.

import json

import numpy as np

from .base import FileHandler


class _NumPyEncoder(json.JSONEncoder):

    def default(self, obj):
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        elif isinstance(obj, np.integer):
            return int(obj)
        elif isinstance(obj, np.floating):
            return float(obj)
        elif isinstance(obj, np.bool_):
            return bool(obj)
        return super(_NumPyEncoder, self).default(obj)


class JSONHandler(FileHandler):
    """
    Handler for JSON files. NumPy arrays and scalars are converted to plain
    lists and numbers, so placements and realizations can be dumped directly.
    Dumping is deterministic for a given object, which keeps repeated runs
    byte-identical.
    """

    def load_from_file(self, file, **kwargs):
        return json.load(file, **kwargs)

    def dump_to_file(self, obj, file, **kwargs):
        kwargs.setdefault('cls', _NumPyEncoder)
        json.dump(obj, file, **kwargs)

    def load_from_str(self, string, **kwargs):
        return json.loads(string, **kwargs)

    def dump_to_str(self, obj, **kwargs):
        kwargs.setdefault('cls', _NumPyEncoder)
        return json.dumps(obj, **kwargs)
