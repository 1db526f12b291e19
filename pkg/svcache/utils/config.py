# Copyright (c) SVCache Authors. Licensed under the MIT License.

import os
from collections import OrderedDict
from copy import deepcopy

import svcache
from .binder import bind_getter


class ConfigError(ValueError):
    """
    Raised when a configuration is malformed. The dotted path of the
    offending field is kept in :obj:`self.path`.
    """

    def __init__(self, path, msg):
        self.path = path
        super(ConfigError, self).__init__('{}: {}'.format(path or '<root>',
                                                          msg))


class CfgNode(OrderedDict):
    """
    An extended :obj:`OrderedDict` class with several practical methods.

    The interface is the same as a dict object and also allows access config
    values as attributes. Nested dicts are converted into :obj:`CfgNode`
    recursively. A node can be frozen so that a resolved experiment config
    can not drift once it has been echoed into outputs.
    """

    @staticmethod
    def _set_freeze_state(obj, state):
        if isinstance(obj, CfgNode):
            super(CfgNode, obj).__setattr__('_frozen', state)
            for v in obj.values():
                CfgNode._set_freeze_state(v, state)
        elif isinstance(obj, (list, tuple)):
            for v in obj:
                CfgNode._set_freeze_state(v, state)

    def __init__(self, *args, **kwargs):
        if len(args) > 1:
            raise TypeError('too many arguments')

        if len(args) == 1:
            if isinstance(args[0], dict):
                kwargs.update(args[0])
            else:
                raise TypeError("unsupported type '{}'".format(type(args[0])))

        super(CfgNode, self).__setattr__('_frozen', False)
        for key, value in kwargs.items():
            self[key] = value

    def __setitem__(self, key, value):
        self._check_freeze_state()
        super(CfgNode, self).__setitem__(key, self._parse_value(value))

    def __getattr__(self, key):
        try:
            return self[key]
        except KeyError:
            raise AttributeError("attribute '{}' is not found".format(key))

    def __setattr__(self, key, value):
        if hasattr(self.__class__, key):
            raise AttributeError("attribute '{}' is read-only".format(key))
        self._check_freeze_state()
        self[key] = value

    def __reduce__(self):
        return (_rebuild_node, (self.__class__, self.to_dict(ordered=True),
                                self._frozen))

    def __deepcopy__(self, memo):
        other = self.__class__()
        memo[id(self)] = other
        for key, value in self.items():
            other[key] = deepcopy(value, memo)
        return other

    def __repr__(self):
        return super(OrderedDict, self).__repr__()

    def _parse_value(self, value):
        if isinstance(value, dict) and not isinstance(value, CfgNode):
            value = CfgNode(**value)
        elif isinstance(value, (list, tuple)):
            value = type(value)(self._parse_value(v) for v in value)
        return value

    def _check_freeze_state(self):
        if self._frozen:
            raise RuntimeError('can not modify a frozen {} object'.format(
                self.__class__.__name__))

    @property
    def frozen(self):
        return self._frozen

    def freeze(self):
        self._set_freeze_state(self, True)
        return self

    def unfreeze(self):
        self._set_freeze_state(self, False)
        return self

    def copy(self):
        return deepcopy(self)

    def merge_strict(self, other, prefix=''):
        """
        Merge a mapping into this node, rejecting keys that do not already
        exist. Nested dicts are merged recursively, everything else replaces
        the current value. Keys starting with ``'_'`` are ignored.

        Args:
            other (dict): The mapping to be merged.
            prefix (str, optional): The dotted path of this node, used in
                error messages. Default: ``''``.
        """
        if not isinstance(other, dict):
            raise ConfigError(prefix, 'expected a mapping, but got {}'.format(
                type(other).__name__))

        for key, value in other.items():
            if key.startswith('_'):
                continue

            path = '{}.{}'.format(prefix, key) if prefix else key
            if key not in self:
                raise ConfigError(path, 'unknown field')

            if isinstance(self[key], CfgNode):
                if not isinstance(value, dict):
                    raise ConfigError(
                        path, 'expected a mapping, but got {}'.format(
                            type(value).__name__))
                self[key].merge_strict(value, prefix=path)
            else:
                self[key] = value

    def to_dict(self, ordered=False):
        base = OrderedDict() if ordered else dict()
        for key, value in self.items():
            if isinstance(value, CfgNode):
                base[key] = value.to_dict(ordered=ordered)
            elif isinstance(value, (list, tuple)):
                base[key] = type(value)(
                    v.to_dict(ordered=ordered) if isinstance(v, CfgNode) else v
                    for v in value)
            else:
                base[key] = value
        return base

    def to_json(self, indent=None):
        return svcache.dumps(self.to_dict(), format='json', indent=indent)


@bind_getter('filename')
class Config(CfgNode):
    """
    A :obj:`CfgNode` that remembers where it was loaded from.

    Users can use the static method :obj:`Config.from_file` to create a
    :obj:`Config` object from a ``json`` or ``yaml/yml`` file. A file may name
    other files in a ``_base_`` field; they are merged first, in order, and
    the fields of the file itself are merged last.
    """

    @staticmethod
    def from_file(filename, freeze=False):
        """
        Build a :obj:`Config` object from a file.

        Args:
            filename (str): Path to the config file. Currently supported
                formats include ``json`` and ``yaml/yml``.
            freeze (bool, optional): Whether to freeze the config after
                initialization.  Default: ``False``.

        Returns:
            :obj:`Config`: The constructed config object.
        """
        filename = os.path.abspath(os.path.expanduser(filename))
        if not os.path.isfile(filename):
            raise FileNotFoundError("file '{}' not found".format(filename))

        format = os.path.splitext(filename)[1][1:].lower()
        if format not in ('json', 'yml', 'yaml'):
            raise TypeError("unsupported format: '{}'".format(format))

        cfg = svcache.load(filename)
        if not isinstance(cfg, dict):
            raise ConfigError('', 'top level of {} must be a mapping'.format(
                filename))

        if '_base_' in cfg:
            base = cfg.pop('_base_')
            if isinstance(base, str):
                base = [base]

            merged = dict()
            for name in base:
                path = os.path.join(os.path.dirname(filename), name)
                merged = _deep_update(merged,
                                      Config.from_file(path).to_dict())
            cfg = _deep_update(merged, cfg)

        return Config(cfg, filename=filename, freeze=freeze)

    def __init__(self, *args, filename=None, freeze=False, **kwargs):
        super(Config, self).__init__(*args, **kwargs)
        super(CfgNode, self).__setattr__('_filename', filename)

        if freeze:
            self.freeze()

    def __reduce__(self):
        return (_rebuild_config, (self.to_dict(ordered=True), self._filename,
                                  self._frozen))

    def __repr__(self):
        return '{}({}frozen={}): {}'.format(
            self.__class__.__name__, '' if self._filename is None else
            "filename='{}', ".format(self._filename), self._frozen,
            super(Config, self).__repr__())


def _rebuild_config(data, filename, frozen):
    return Config(data, filename=filename, freeze=frozen)


def _deep_update(base, other):
    out = dict(base)
    for key, value in other.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _deep_update(out[key], value)
        else:
            out[key] = value
    return out


def _rebuild_node(cls, data, frozen):
    node = cls(data)
    if frozen:
        node.freeze()
    return node
