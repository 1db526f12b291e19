# Copyright (c) SVCache Authors. Licensed under the MIT License.


class FileHandler(object):
    """
    Base class for file handlers. The inherited classes can optionally override
    :obj:`load_from_file`, :obj:`dump_to_file`, :obj:`load_from_str`, and
    :obj:`dump_to_str` methods to support loading or dumping data.
    """

    def load_from_file(self, file, **kwargs):
        raise NotImplementedError

    def dump_to_file(self, obj, file, **kwargs):
        raise NotImplementedError

    def load_from_str(self, string, **kwargs):
        raise NotImplementedError

    def dump_to_str(self, obj, **kwargs):
        raise NotImplementedError

    def load_from_path(self, path, mode='r', **kwargs):
        with open(path, mode, encoding='utf-8') as f:
            return self.load_from_file(f, **kwargs)

    def dump_to_path(self, obj, path, mode='w', **kwargs):
        with open(path, mode, encoding='utf-8', newline='') as f:
            self.dump_to_file(obj, f, **kwargs)
