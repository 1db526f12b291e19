# Copyright (c) SVCache Authors. Licensed under the MIT License.

import json
import os

import numpy as np
import pytest

import svcache
from svcache.cli import (EXIT_CONFIG, EXIT_FINGERPRINT, EXIT_OK, Experiment,
                         build_parser, load_experiment_config, main)
from svcache.content import build_library
from svcache.delay import delay_gradient
from svcache.montecarlo import SWEEP_COLUMNS, sweep
from svcache.policy import RandomPlacement

CONFIGS = os.path.join(os.path.dirname(__file__), '..', 'configs')
TOY = os.path.abspath(os.path.join(CONFIGS, 'toy.yaml'))


@pytest.fixture(autouse=True)
def single_worker(monkeypatch):
    monkeypatch.setenv('SVC_CACHE_THREADS', '1')


def _read(path):
    with open(path, 'rb') as f:
        return f.read()


def _optimize(out_dir):
    code = main(['optimize', '--config', TOY, '--out', str(out_dir)])
    assert code == EXIT_OK
    return os.path.join(str(out_dir), 'placement.json')


def test_optimize(tmp_path):
    placement_path = _optimize(tmp_path / 'a')
    data = svcache.load(placement_path)
    assert data['kind'] == 'random'
    assert data['seed'] == 0
    assert data['config']['library']['file_count'] == 10
    assert data['capacities_bits'] == dict(d2d=40e6, sbs=100e6)
    assert np.array(data['tiers']['d2d']).shape == (10, 4)

    rows, comments = svcache.load(
        str(tmp_path / 'a' / 'trace.csv'), with_comments=True)
    assert rows[0]['iteration'] == 0
    assert 'wall_time_s' not in rows[0]
    assert rows[-1]['objective_s'] <= rows[0]['objective_s']
    assert comments['seed'] == '0'
    assert json.loads(comments['config'])['trials']['n_trials'] == 2000

    _optimize(tmp_path / 'b')
    for name in ('placement.json', 'trace.csv'):
        assert _read(str(tmp_path / 'a' / name)) == \
            _read(str(tmp_path / 'b' / name))


def test_evaluate(tmp_path, capsys):
    placement_path = _optimize(tmp_path)
    args = [
        'evaluate', '--config', TOY, '--placement', placement_path, '--out',
        str(tmp_path / 'eval'), '--trials', '300', '--seed', '3'
    ]
    assert main(args) == EXIT_OK

    rows = svcache.load(str(tmp_path / 'eval' / 'evaluate.csv'))
    assert [r['policy'] for r in rows] == [
        'placement', 'NoCache', 'MPCP_NoSVC', 'MPLP_SVC'
    ]
    delay = {r['policy']: r['analytic_delay_s'] for r in rows}
    assert delay['placement'] <= delay['MPLP_SVC'] * (1 + 1e-6)
    assert delay['MPLP_SVC'] < delay['NoCache']
    for row in rows:
        assert row['n_trials'] == 300 and row['seed'] == 3
        assert row['mode'] == 'sequential'
        assert row['mc_half_width_s'] == pytest.approx(
            1.96 * row['mc_stderr_s'])

    breakdown = svcache.load(str(tmp_path / 'eval' / 'breakdown.csv'))
    assert len(breakdown) == 40
    assert sum(r['delay_contribution'] for r in breakdown) == pytest.approx(
        delay['placement'], rel=1e-9)

    assert 'MPLP_SVC' in capsys.readouterr().out

    args[args.index('--out') + 1] = str(tmp_path / 'again')
    assert main(args) == EXIT_OK
    assert _read(str(tmp_path / 'eval' / 'evaluate.csv')) == \
        _read(str(tmp_path / 'again' / 'evaluate.csv'))


def test_evaluate_zero_placement(tmp_path):
    library = build_library(load_experiment_config(TOY).library)
    placement_path = str(tmp_path / 'zeros.json')
    svcache.dump(
        RandomPlacement.zeros(library.shape).to_dict(library=library),
        placement_path)

    assert main([
        'evaluate', '--config', TOY, '--placement', placement_path, '--out',
        str(tmp_path), '--trials', '50', '--mode', 'slt'
    ]) == EXIT_OK

    rows = svcache.load(str(tmp_path / 'evaluate.csv'))
    delay = {r['policy']: r['analytic_delay_s'] for r in rows}
    assert delay['placement'] == pytest.approx(delay['NoCache'], abs=1e-12)
    assert all(r['mode'] == 'slt' for r in rows)


def test_evaluate_fingerprint_mismatch(tmp_path):
    placement_path = _optimize(tmp_path)

    other = str(tmp_path / 'other.yaml')
    with open(other, 'w') as f:
        f.write('_base_: {}\nlibrary:\n  preference:\n    rho: 0.5\n'.format(
            TOY))

    assert main([
        'evaluate', '--config', other, '--placement', placement_path,
        '--out', str(tmp_path / 'eval')
    ]) == EXIT_FINGERPRINT
    assert not os.path.exists(str(tmp_path / 'eval' / 'evaluate.csv'))


def test_sweep(tmp_path):
    assert main([
        'sweep', '--config', TOY, '--axis', 'sbs_cache_size', '--out',
        str(tmp_path), '--trials', '100'
    ]) == EXIT_OK

    rows, comments = svcache.load(
        str(tmp_path / 'sweep_sbs_cache_size.csv'), with_comments=True)
    assert len(rows) == 2 * 4
    assert list(rows[0]) == list(SWEEP_COLUMNS)
    assert sorted({r['axis_value'] for r in rows}) == [50.0, 150.0]
    assert all(r['mc_delay_s'] > 0 for r in rows)
    assert comments['seed'] == '0'

    for value in (50.0, 150.0):
        delay = {
            r['policy']: r['analytic_delay_s']
            for r in rows if r['axis_value'] == value
        }
        assert delay['RandomSVC'] <= delay['MPLP_SVC'] * (1 + 1e-6)


def test_invalid_invocations(tmp_path):
    bad = str(tmp_path / 'bad.json')
    svcache.dump(dict(tiers=dict(sbs=dict(cache_size_mbit=-5.0))), bad)

    assert main(['optimize', '--config', bad, '--out', str(tmp_path)]) == \
        EXIT_CONFIG
    assert main([
        'optimize', '--config',
        str(tmp_path / 'missing.yaml'), '--out',
        str(tmp_path)
    ]) == EXIT_CONFIG
    assert main(['optimize']) == EXIT_CONFIG
    assert main([]) == EXIT_CONFIG
    assert main(['train', '--out', str(tmp_path)]) == EXIT_CONFIG
    assert main([
        'sweep', '--config', TOY, '--axis', 'd2d_cache_size', '--out',
        str(tmp_path)
    ]) == EXIT_CONFIG
    assert main([
        'evaluate', '--config', TOY, '--placement',
        str(tmp_path / 'missing.json'), '--out',
        str(tmp_path)
    ]) == EXIT_CONFIG
    assert main([
        'evaluate', '--config', TOY, '--placement', bad, '--out',
        str(tmp_path), '--mode', 'multicast'
    ]) == EXIT_CONFIG
    assert not os.path.exists(str(tmp_path / 'placement.json'))


def test_log_level(tmp_path):
    args = build_parser().parse_args(
        ['optimize', '--out', str(tmp_path), '--log-level', 'debug'])
    assert args.log_level == 'DEBUG'
    assert build_parser().parse_args(
        ['optimize', '--out', str(tmp_path)]).log_level == 'INFO'

    assert main([
        'optimize', '--config', TOY, '--out',
        str(tmp_path), '--log-level', 'LOUD'
    ]) == EXIT_CONFIG
    assert not os.path.exists(str(tmp_path / 'placement.json'))


@pytest.fixture(scope='module')
def default_experiment():
    return Experiment(load_experiment_config())


def test_default_estimated_rates(default_experiment):
    params = default_experiment.params
    assert params.d2d_rate > params.sbs_rate > params.mbs_rate
    t_d, t_s, t_m = params.per_bit_times()
    assert t_d <= t_s <= t_m

    library = default_experiment.library
    placement = RandomPlacement({
        t: np.full(library.shape, 0.05)
        for t in ('d2d', 'sbs')
    })
    grad = delay_gradient(placement, library, params)
    assert all(np.all(grad[t] < 0) for t in ('d2d', 'sbs'))


@pytest.mark.parametrize('axis', ['backhaul_rate', 'sbs_cache_size'])
def test_default_sweep_ordering(default_experiment, axis):
    exp = default_experiment
    grid = exp.cfg.sweep.backhaul_rate_mbps if axis == 'backhaul_rate' \
        else exp.cfg.sweep.sbs_cache_size_mbit
    assert len(grid) == 5

    rows = sweep(
        axis,
        list(grid),
        exp.library,
        exp.params,
        exp.capacities,
        optimizer_config=exp.optimizer_config)

    delay = {(r['policy'], r['axis_value']): r['analytic_delay_s']
             for r in rows}
    for value in grid:
        assert delay['NoCache', value] >= delay['MPCP_NoSVC', value]
        assert delay['MPCP_NoSVC', value] >= delay['MPLP_SVC', value]
        assert delay['RandomSVC', value] <= \
            delay['MPLP_SVC', value] * (1 + 1e-6)

    # more backhaul or more SBS storage never slows delivery down
    for name in ('NoCache', 'MPCP_NoSVC', 'MPLP_SVC', 'RandomSVC'):
        curve = [delay[name, v] for v in sorted(grid)]
        assert all(b <= a * (1 + 1e-6) for a, b in zip(curve, curve[1:]))
    if axis == 'backhaul_rate':
        curve = [delay['MPLP_SVC', v] for v in sorted(grid)]
        assert all(b < a for a, b in zip(curve, curve[1:]))
