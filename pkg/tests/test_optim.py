# Copyright (c) SVCache Authors. Licensed under the MIT License.

import importlib
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from svcache.content import (PopularityModel, QualityPreference,
                             VideoLibrary, build_library)
from svcache.delay import DelayParams, baseline_delay, expected_total_delay
from svcache.optim import (OptimizationTrace, OptimizerAbort,
                           OptimizerConfig, RandomSVC, complexity_probe,
                           gradient_projection, loglog_slope,
                           project_capacity, uniform_init)
from svcache.policy import POLICIES, RandomPlacement, check_feasibility


def _params(**kwargs):
    fields = dict(
        d2d_rate=40e6,
        sbs_rate=20e6,
        mbs_rate=10e6,
        backhaul_rate=5e6,
        d2d_density=1e-3,
        d2d_radius=10.0,
        sbs_density=2e-4,
        sbs_radius=30.0)
    fields.update(kwargs)
    return DelayParams(**fields)


def _toy_library():
    return build_library(
        dict(
            file_count=10,
            layers_per_file=4,
            base_size_mbit=50.0,
            svc_overhead=0.1,
            popularity=dict(alpha=0.8, plateau=5.0),
            preference=dict(rho=2.0)))


def test_projection_examples():
    sizes = np.array([1.0, 2.0])

    inside = np.array([0.3, 0.2])
    np.testing.assert_array_equal(project_capacity(inside, sizes, 2.0),
                                  inside)
    np.testing.assert_array_equal(
        project_capacity(np.array([-0.5, 1.5]), sizes, 10.0), [0.0, 1.0])

    proj = project_capacity(
        np.array([1.5, 1.5]), sizes, 2.0, tol_bits=1e-12)
    np.testing.assert_allclose(proj, [1.0, 0.5], atol=1e-9)
    assert np.dot(proj, sizes) <= 2.0

    # brute force over a dense grid of the feasible set
    grid = np.linspace(0, 1, 1001)
    p1, p2 = np.meshgrid(grid, grid, indexing='ij')
    feasible = p1 + 2 * p2 <= 2.0
    dist = (p1 - 1.5)**2 + (p2 - 1.5)**2
    best = dist[feasible].min()
    assert np.sum((proj - 1.5)**2) <= best + 1e-9
    assert best - np.sum((proj - 1.5)**2) < 1e-5

    np.testing.assert_array_equal(
        project_capacity(np.array([0.5, 0.5]), sizes, 0.0), [0.0, 0.0])
    np.testing.assert_array_equal(
        project_capacity(np.array([2.0, 0.5]), sizes, math.inf), [1.0, 0.5])


def test_projection_invalid():
    with pytest.raises(ValueError):
        project_capacity(np.ones(2), np.ones(3), 1.0)
    with pytest.raises(ValueError):
        project_capacity(np.array([np.nan, 0.0]), np.ones(2), 1.0)
    with pytest.raises(ValueError):
        project_capacity(np.ones(2), np.array([1.0, 0.0]), 1.0)
    with pytest.raises(ValueError):
        project_capacity(np.ones(2), np.ones(2), -1.0)
    with pytest.raises(ValueError):
        project_capacity(np.ones(2), np.ones(2), 1.0, tol_bits=0.0)


def test_projection_capacity_gap():
    sizes = np.array([4e6, 6e6, 8e6])
    v = np.array([0.9, 0.8, 0.7])
    capacity = 1e7

    proj = project_capacity(v, sizes, capacity)
    gap = capacity - math.fsum(proj * sizes)
    assert -1e-8 <= gap <= 1e-6
    placement = RandomPlacement(dict(d2d=proj.reshape(1, 3)))
    library = VideoLibrary(sizes.reshape(1, 3))
    assert check_feasibility(placement, library, dict(d2d=capacity))[0]

    coarse = project_capacity(v, sizes, capacity, tol_bits=1e3)
    assert 0 <= capacity - math.fsum(coarse * sizes) <= 1e3


@settings(max_examples=100, deadline=None)
@given(
    v=arrays(float, 6, elements=st.floats(-3, 3)),
    sizes=arrays(float, 6, elements=st.floats(0.1, 10)),
    fraction=st.floats(0, 1),
    seed=st.integers(0, 2**16))
def test_projection_properties(v, sizes, fraction, seed):
    capacity = fraction * sizes.sum()
    proj = project_capacity(v, sizes, capacity, tol_bits=1e-12)

    assert np.all((proj >= 0) & (proj <= 1))
    assert math.fsum(proj * sizes) <= capacity
    np.testing.assert_array_equal(
        project_capacity(proj, sizes, capacity), proj)

    # no feasible point is closer to v
    rng = np.random.default_rng(seed)
    for _ in range(20):
        y = rng.random(6)
        y *= min(1.0, capacity / max(np.dot(y, sizes), 1e-300))
        assert np.sum((v - proj)**2) <= np.sum((v - y)**2) + 1e-9


def test_trace():
    trace = OptimizationTrace(max_size=3)
    slack = dict(d2d=1.0, sbs=2.0)
    for it, obj in enumerate([3.0, 2.0, 1.5, 1.0]):
        trace.update(it, obj, 0.1, 1.0, slack, 0.01 * it)

    assert len(trace) == 3
    assert trace[0]['iteration'] == 0
    np.testing.assert_array_equal(trace.values('iteration'), [0, 2, 3])
    assert trace.latest('objective_s') == 1.0
    assert trace.iterations == 3
    assert trace.is_monotone()
    assert trace.min_slack() == 1.0

    rows = trace.to_rows()
    assert 'wall_time_s' not in rows[0]
    assert list(trace.to_rows(wall_time=True)[0]) == list(trace.columns)

    assert OptimizationTrace().min_slack() == math.inf
    assert OptimizationTrace().iterations == 0


def test_optimizer_config():
    cfg = OptimizerConfig.from_dict(dict(max_iterations=10, shrink=0.25))
    assert cfg.max_iterations == 10 and cfg.shrink == 0.25
    assert OptimizerConfig.from_dict(cfg.to_dict()).to_dict() == cfg.to_dict()
    assert OptimizerConfig.from_dict(None).max_iterations == 500

    for bad in (dict(shrink=1.0), dict(tolerance=0.0), dict(max_backtracks=0),
                dict(sufficient_decrease=1.0)):
        with pytest.raises(ValueError):
            OptimizerConfig(**bad)
    with pytest.raises(TypeError):
        OptimizerConfig.from_dict(dict(momentum=0.9))


def test_uniform_init():
    library = _toy_library()
    capacities = dict(d2d=40e6, sbs=1e15)
    init = uniform_init(library, capacities)
    assert math.isclose(init['d2d'][0, 0], 40e6 / library.total_size_bits)
    assert np.all(init['sbs'] == 1.0)
    assert check_feasibility(init, library)[0]


def test_grid_search_optimum():
    library = VideoLibrary(
        np.ones((2, 2)),
        popularity=PopularityModel(alpha=1.0, plateau=0.0),
        preference=QualityPreference([0.4, 0.6]))
    params = _params(d2d_density=1e-2)
    capacities = dict(d2d=1.5, sbs=0.0)

    placement, trace = gradient_projection(library, params, capacities)
    opt = float(expected_total_delay(placement, library, params))
    assert placement['sbs'].sum() == 0
    assert check_feasibility(placement, library)[0]
    assert trace.is_monotone()
    assert trace.latest('objective_s') == opt

    # the delay decreases in every p, so the optimum saturates the capacity
    a, _, c = params.per_bit_times()
    k_d = params.hit_scale('d2d')
    weight = library.layer_request_probs().ravel()
    grid = np.linspace(0, 1, 1001)
    p1, p2 = np.meshgrid(grid, grid, indexing='ij')
    best = math.inf
    for p3 in np.linspace(0, 1, 101):
        p4 = 1.5 - p1 - p2 - p3
        mask = (p4 >= 0) & (p4 <= 1)
        delay = 0
        for w, p in zip(weight, (p1, p2, p3, p4)):
            hit = -np.expm1(-k_d * p)
            delay = delay + w * (hit * a + (1 - hit) * c)
        if mask.any():
            best = min(best, float(delay[mask].min()))

    assert opt <= best * (1 + 1e-6)
    assert (best - opt) / best < 1e-3


def test_gradient_projection_default_scale():
    library = _toy_library()
    params = _params()
    capacities = dict(d2d=40e6, sbs=100e6)

    placement, trace = gradient_projection(
        library, params, capacities, config=dict(max_iterations=300))
    assert len(trace) >= 2
    assert trace.is_monotone()
    assert trace.min_slack() >= -1e-9 * 100e6
    assert trace[0]['objective_s'] == float(
        expected_total_delay(
            uniform_init(library, capacities), library, params))

    optimized = float(expected_total_delay(placement, library, params))
    mplp = baseline_delay('MPLP_SVC', library, params, capacities)
    none = baseline_delay('NoCache', library, params, capacities)
    assert optimized <= mplp * (1 + 1e-6)
    assert mplp < none

    policy = POLICIES.require('RandomSVC')(config=dict(max_iterations=300))
    again = policy(library, capacities, params=params)
    np.testing.assert_array_equal(again['d2d'], placement['d2d'])
    assert len(policy.trace) == len(trace)

    with pytest.raises(ValueError):
        RandomSVC()(library, capacities)


def test_gradient_projection_warm_start():
    library = _toy_library()
    params = _params()
    capacities = dict(d2d=40e6, sbs=100e6)
    config = dict(max_iterations=5000)

    placement, trace = gradient_projection(
        library, params, capacities, config=config)
    assert trace.iterations < 5000
    final = trace.latest('objective_s')

    # restarting at the optimum settles at once
    _, restart = gradient_projection(
        library, params, capacities, config=config, init=placement)
    assert restart.iterations <= 2
    assert restart.latest('objective_s') <= final
    assert restart.latest('objective_s') >= final * (1 - 1e-6)


def test_gradient_projection_stops():
    library = VideoLibrary(np.ones((2, 2)), preference=QualityPreference(
        [1.0, 0.0]))
    params = _params()

    # nothing can be cached, so no step ever moves the point
    placement, trace = gradient_projection(
        library, params, dict(d2d=0.0, sbs=0.0))
    assert len(trace) == 1
    assert placement['d2d'].sum() == 0

    placement, trace = gradient_projection(
        library, params, dict(d2d=10.0, sbs=10.0),
        config=dict(max_iterations=0))
    assert len(trace) == 1

    bad = RandomPlacement(dict(d2d=np.ones((2, 2))))
    with pytest.raises(ValueError):
        gradient_projection(
            library, params, dict(d2d=1.0, sbs=1.0), init=bad)


def test_optimizer_abort(monkeypatch):
    module = importlib.import_module('svcache.optim.gradient_projection')

    def _broken(placement, library, params, check=True):
        return dict(
            d2d=np.full(placement.shape, np.nan),
            sbs=np.zeros(placement.shape))

    monkeypatch.setattr(module, 'delay_gradient', _broken)
    with pytest.raises(OptimizerAbort) as e:
        gradient_projection(_toy_library(), _params(),
                            dict(d2d=40e6, sbs=100e6))
    assert len(e.value.trace) == 1
    assert 'non-finite' in str(e.value)


def test_gradient_cost_scaling():
    rows = complexity_probe(
        file_counts=(1, ), layer_counts=(1, ), repeats=1, min_units=10)
    assert rows[0]['units'] == 1
    assert rows[0]['seconds'] > 0

    file_counts = (4000, 8000, 16000, 32000, 64000)
    rows = complexity_probe(
        file_counts=file_counts, repeats=5, min_units=1000000)
    units = [r['units'] for r in rows]
    assert units == [8 * f for f in file_counts]
    assert units[-1] / units[0] >= 10
    assert abs(loglog_slope(rows) - 1.0) <= 0.15

    # doubling F doubles the cost once the arrays dominate
    ratio = rows[-1]['seconds'] / rows[-2]['seconds']
    assert 1.7 <= ratio <= 2.3

    with pytest.raises(ValueError):
        loglog_slope(rows[:1])
