# Copyright (c) SVCache Authors. Licensed under the MIT License.

import os
import pickle

import pytest

import svcache
from svcache.cli import DEFAULT_CONFIG, load_experiment_config

DATA = os.path.join(os.path.dirname(__file__), 'data')


def test_construct():
    cfg = svcache.Config()
    assert cfg.filename is None
    assert len(cfg) == 0
    with pytest.raises(TypeError):
        svcache.Config([0, 1])


def test_from_file():
    cfg_file = os.path.join(DATA, 'small.json')
    cfg = svcache.Config.from_file(cfg_file)
    assert isinstance(cfg, svcache.Config)
    assert cfg.filename == cfg_file
    assert cfg.library.popularity.alpha == 1.0
    assert isinstance(cfg.library, svcache.CfgNode)

    with pytest.raises(FileNotFoundError):
        svcache.Config.from_file('no_such_file.json')
    with pytest.raises(TypeError):
        svcache.Config.from_file(os.path.join(DATA, '..', 'test_config.py'))


def test_base_merge():
    cfg = svcache.Config.from_file(os.path.join(DATA, 'child.yaml'))
    assert '_base_' not in cfg
    assert cfg.seed == 7
    assert cfg.library.file_count == 6
    assert cfg.library.layers_per_file == 2
    assert cfg.library.popularity.alpha == 1.0
    assert cfg.library.preference.rho == 0.5
    assert cfg.trials.mode == 'parallel_ilt'
    assert cfg.trials.n_trials == 400


def test_attributes_and_freeze():
    cfg = svcache.Config(dict(a=dict(b=1), c=[dict(d=2)]))
    assert cfg.a.b == 1
    assert cfg.c[0].d == 2
    with pytest.raises(AttributeError):
        cfg.not_exist

    cfg.e = 3
    assert cfg['e'] == 3

    assert cfg.freeze() is cfg
    assert cfg.frozen
    with pytest.raises(RuntimeError):
        cfg.e = 4
    with pytest.raises(RuntimeError):
        cfg.a.b = 2

    other = cfg.copy()
    assert other == cfg
    assert cfg.unfreeze() is cfg
    cfg.a.b = 5
    assert other.a.b == 1


def test_pickle_keeps_frozen_state():
    cfg = svcache.Config(dict(a=dict(b=1)), filename='x.json', freeze=True)
    restored = pickle.loads(pickle.dumps(cfg))
    assert restored == cfg
    assert restored.frozen
    assert restored.filename == 'x.json'


def test_merge_strict():
    cfg = svcache.CfgNode(dict(a=dict(b=1, c=2), d=None))
    cfg.merge_strict(dict(a=dict(b=3), d=[1, 2]))
    assert cfg.a.b == 3 and cfg.a.c == 2
    assert cfg.d == [1, 2]

    with pytest.raises(svcache.ConfigError) as e:
        cfg.merge_strict(dict(a=dict(x=1)))
    assert e.value.path == 'a.x'
    assert 'unknown field' in str(e.value)

    with pytest.raises(svcache.ConfigError) as e:
        cfg.merge_strict(dict(a=5))
    assert e.value.path == 'a'


def test_experiment_defaults():
    cfg = load_experiment_config()
    assert cfg.frozen
    assert cfg.to_dict() == DEFAULT_CONFIG
    assert cfg.library.base_size_mbit == 50.0
    assert cfg.tiers.d2d.cache_size_mbit == 200.0
    assert cfg.tiers.sbs.cache_size_mbit == 500.0
    assert cfg.tiers.d2d.radius_m == 10.0
    assert cfg.tiers.sbs.radius_m == 30.0

    shipped = svcache.load(
        os.path.join(os.path.dirname(__file__), '..', 'configs',
                     'default.json'))
    assert shipped == DEFAULT_CONFIG


def test_experiment_overrides():
    cfg = load_experiment_config(
        os.path.join(DATA, 'child.yaml'),
        overrides={
            'seed': 11,
            'trials.n_trials': 5
        })
    assert cfg.seed == 11
    assert cfg.trials.n_trials == 5
    assert cfg.library.layers_per_file == 2
    assert cfg.tiers.mbs.power_w == 10.0

    with pytest.raises(svcache.ConfigError):
        load_experiment_config(overrides={'trials.colour': 1})


@pytest.mark.parametrize('filename,path', [
    ('negative_cache.json', 'tiers.sbs.cache_size_mbit'),
    ('unknown_field.yaml', 'library.colour'),
])
def test_experiment_invalid(filename, path):
    with pytest.raises(svcache.ConfigError) as e:
        load_experiment_config(os.path.join(DATA, filename))
    assert e.value.path == path
    assert str(e.value).startswith(path + ':')


def test_experiment_ranges():
    bad = [
        ({'library.file_count': 0}, 'library.file_count'),
        ({'library.preference.rho': 0.0}, 'library.preference.rho'),
        ({'tiers.d2d.pathloss_exp': 2.0}, 'tiers.d2d.pathloss_exp'),
        ({'tiers.sbs.density_per_m2': 0.01}, 'tiers'),
        ({'trials.mode': 'multicast'}, 'trials.mode'),
        ({'sweep.policies': ['Oracle']}, 'sweep.policies'),
        ({'optimizer.shrink': 1.5}, 'optimizer'),
        ({'schema_version': '2.0'}, 'schema_version'),
    ]
    for overrides, path in bad:
        with pytest.raises(svcache.ConfigError) as e:
            load_experiment_config(overrides=overrides)
        assert e.value.path == path
