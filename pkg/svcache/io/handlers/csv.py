# Copyright (c) SVCache Authors. Licensed under the MIT License.

import csv
from io import StringIO
from numbers import Integral, Real

import numpy as np

from .base import FileHandler


def _format_value(value):
    if value is None:
        return ''
    elif isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    elif isinstance(value, Integral):
        return str(int(value))
    elif isinstance(value, Real):
        # repr of a Python float is the shortest round-trip decimal
        return repr(float(value))
    return str(value)


def _parse_value(value):
    if value == '':
        return None
    for cast in (int, float):
        try:
            return cast(value)
        except ValueError:
            pass
    if value in ('true', 'false'):
        return value == 'true'
    return value


class CSVHandler(FileHandler):
    """
    Handler for CSV result tables.

    Objects are lists of dicts sharing the same keys. Numbers are written with
    full round-trip precision. Optional header comments are written as
    ``# key: value`` lines before the column header, which is how result
    files carry the resolved config and seed they were produced with.
    """

    def load_from_file(self, file, parse=True, with_comments=False):
        comments, lines = dict(), []
        for line in file:
            if line.startswith('#'):
                key, _, value = line[1:].strip().partition(':')
                comments[key.strip()] = value.strip()
            elif line.strip():
                lines.append(line)

        rows = [dict(r) for r in csv.DictReader(lines)]
        if parse:
            rows = [{k: _parse_value(v) for k, v in r.items()} for r in rows]

        return (rows, comments) if with_comments else rows

    def dump_to_file(self, obj, file, fieldnames=None, comments=None):
        if isinstance(obj, dict):
            obj = [obj]

        if fieldnames is None:
            fieldnames = list(obj[0].keys()) if len(obj) > 0 else []

        for key, value in (comments or dict()).items():
            file.write('# {}: {}\n'.format(key, value))

        writer = csv.DictWriter(
            file, fieldnames=fieldnames, lineterminator='\n')
        writer.writeheader()
        for row in obj:
            writer.writerow({k: _format_value(row.get(k)) for k in fieldnames})

    def load_from_str(self, string, **kwargs):
        return self.load_from_file(StringIO(string), **kwargs)

    def dump_to_str(self, obj, **kwargs):
        io = StringIO()
        self.dump_to_file(obj, io, **kwargs)
        return io.getvalue()
