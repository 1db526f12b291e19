# Copyright (c) SVCache Authors. Licensed under the MIT License.

import yaml

from .base import FileHandler

try:
    from yaml import CSafeDumper as Dumper
    from yaml import CSafeLoader as Loader
except ImportError:
    from yaml import SafeDumper as Dumper
    from yaml import SafeLoader as Loader


class YAMLHandler(FileHandler):
    """
    Handler for YAML files. Only the safe subset of YAML is accepted, which
    is all an experiment config needs.
    """

    def load_from_file(self, file, **kwargs):
        return yaml.load(file, Loader=Loader, **kwargs)

    def dump_to_file(self, obj, file, **kwargs):
        kwargs.setdefault('sort_keys', False)
        yaml.dump(obj, file, Dumper=Dumper, **kwargs)

    def load_from_str(self, string, **kwargs):
        return yaml.load(string, Loader=Loader, **kwargs)

    def dump_to_str(self, obj, **kwargs):
        kwargs.setdefault('sort_keys', False)
        return yaml.dump(obj, Dumper=Dumper, **kwargs)
