# Copyright (c) SVCache Authors. Licensed under the MIT License.

from .base import FileHandler
from .csv import CSVHandler
from .json import JSONHandler
from .yaml import YAMLHandler

__all__ = ['FileHandler', 'CSVHandler', 'JSONHandler', 'YAMLHandler']
