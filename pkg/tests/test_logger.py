# Copyright (c) SVCache Authors. Licensed under the MIT License.

import logging
import tempfile
from platform import system

import pytest

import svcache


def test_get_logger():
    logger1 = svcache.get_logger('svcache_test1')
    assert isinstance(logger1, logging.Logger)
    assert logger1.level == logging.INFO
    assert len(logger1.handlers) == 2
    assert all(isinstance(h, logging.StreamHandler) for h in logger1.handlers)
    assert logger1.handlers[1].level == logging.WARNING

    logger2 = svcache.get_logger('svcache_test2', log_level=logging.DEBUG)
    assert logger2.level == logging.DEBUG
    assert len(logger2.handlers) == 2

    if system() != 'Windows':
        with tempfile.NamedTemporaryFile() as f:
            logger3 = svcache.get_logger('svcache_test3', log_file=f.name)
        assert len(logger3.handlers) == 3
        assert isinstance(logger3.handlers[2], logging.FileHandler)

    logger4 = svcache.get_logger('svcache_test2')
    assert id(logger4) == id(logger2)
    assert svcache.get_logger(logger4) is logger4

    with pytest.raises(ValueError):
        svcache.get_logger('svcache_test5', fmt='%(message)s [end]')


def test_stream_split(capsys):
    logger = svcache.get_logger('svcache_test_split')
    logger.info('result line')
    logger.warning('something odd')

    captured = capsys.readouterr()
    assert 'result line' in captured.out
    assert 'something odd' not in captured.out
    assert 'something odd' in captured.err


def test_log_or_print(capsys):
    svcache.log_or_print('plain message')
    svcache.log_or_print('bad message', log_level='WARNING')

    captured = capsys.readouterr()
    assert captured.out == 'plain message\n'
    assert 'bad message' in captured.err
