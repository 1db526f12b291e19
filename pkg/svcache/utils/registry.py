# Copyright (c) SVCache Authors. Licensed under the MIT License.

from .binder import bind_getter


@bind_getter('name')
class Registry(object):
    """
    A registry to map strings to objects.

    Records in :obj:`self._items` map the registered name to the object
    itself, in registration order. The method :obj:`self.register` can be used
    as a decorator or a normal function. Placement policies and Monte Carlo
    delivery modes are looked up by name through registries, so config files
    and command line flags can refer to them as plain strings.

    Args:
        name (str): Name of the registry.

    Example:
        >>> DELIVERIES = Registry('delivery')
        >>> @DELIVERIES.register(name='sequential')
        >>> class SequentialDelivery(object):
        ...     pass

        >>> POLICIES = Registry('policy')
        >>> def no_cache(library, capacities):
        ...     pass
        >>> POLICIES.register(no_cache, name='NoCache')
    """

    def __init__(self, name):
        self._name = name
        self._items = dict()

    def __len__(self):
        return len(self._items)

    def __contains__(self, item):
        return item in self._items

    def __getattr__(self, key):
        if key.startswith('_'):
            raise AttributeError(key)

        if key in self._items:
            return self._items[key]

        raise AttributeError("registry has no attribute '{}'".format(key))

    def __repr__(self):
        return "{}(name='{}', items={})".format(self.__class__.__name__,
                                                self._name, self.keys())

    def _register(self, obj, name=None):
        if name is None:
            name = obj.__name__

        if name in self._items:
            raise KeyError('{} is already registered in {}'.format(
                name, self._name))

        self._items[name] = obj

    def keys(self):
        return list(self._items.keys())

    def get(self, key, default=None):
        return self._items.get(key, default)

    def require(self, key):
        """
        Get a registered object and fail loudly if it is missing.

        Args:
            key (str): Name of the object.

        Returns:
            any: The registered object.
        """
        if key not in self._items:
            raise KeyError("unknown {} '{}', expected one of {}".format(
                self._name, key, self.keys()))
        return self._items[key]

    def register(self, obj=None, name=None):
        if obj is not None:
            if isinstance(name, (list, tuple)):
                for n in name:
                    self._register(obj, name=n)
            else:
                self._register(obj, name=name)
            return obj

        def _wrapper(obj):
            self._register(obj, name=name)
            return obj

        return _wrapper

    def build(self, cfg, default=None, args=[], **kwargs):
        return build_object(cfg, self, default=default, args=args, **kwargs)


def build_object(cfg, parent, default=None, args=[], **kwargs):
    """
    Build an object from a dict.

    The dict must contain a key ``type`` naming a registered object.
    Remaining fields are treated as the arguments for constructing it.

    Args:
        cfg (any): The object, object config or object name.
        parent (:obj:`Registry`): The registry containing the expected
            object.
        default (any, optional): The value returned when the object is not
            found. Default: ``None``.
        args (list, optional): The positional arguments used to build the
            object. Default: ``[]``.

    Returns:
        any: The constructed object.
    """
    if isinstance(cfg, str):
        cfg = dict(type=cfg)
    elif cfg is None:
        return default
    elif not isinstance(cfg, dict):
        return cfg

    _cfg = dict(cfg)
    _cfg.update(kwargs)
    obj_type = _cfg.pop('type')

    obj_cls = parent.get(obj_type)
    return obj_cls(*args, **_cfg) if obj_cls is not None else default
