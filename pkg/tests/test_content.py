# Copyright (c) SVCache Authors. Licensed under the MIT License.

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import svcache
from svcache.content import (MBIT, PopularityModel, QualityPreference,
                             VideoLibrary, build_library, layer_request_prob,
                             mz_pmf, super_layer, zipf_pmf)


def _library_cfg(**kwargs):
    cfg = dict(
        file_count=50,
        layers_per_file=8,
        base_size_mbit=50.0,
        svc_overhead=0.1,
        popularity=dict(alpha=0.8, plateau=5.0),
        preference=dict(rho=2.0))
    cfg.update(kwargs)
    return cfg


def test_mz_pmf():
    pmf = mz_pmf(3, 1.0, 0.0)
    np.testing.assert_allclose(pmf, [6 / 11, 3 / 11, 2 / 11], rtol=1e-12)

    for num_files in (1, 4, 17):
        np.testing.assert_allclose(
            mz_pmf(num_files, 0.0, 0.0), np.full(num_files, 1 / num_files))

    np.testing.assert_array_equal(mz_pmf(20, 0.8, 0.0), zipf_pmf(20, 0.8))


@given(
    num_files=st.integers(min_value=1, max_value=300),
    alpha=st.floats(min_value=0, max_value=3),
    plateau=st.floats(min_value=0, max_value=50))
def test_mz_pmf_properties(num_files, alpha, plateau):
    pmf = mz_pmf(num_files, alpha, plateau)
    assert pmf.shape == (num_files, )
    assert math.isclose(pmf.sum(), 1.0, abs_tol=1e-9)
    assert np.all(pmf > 0)
    assert np.all(np.diff(pmf) <= 1e-15)


def test_mz_pmf_invalid():
    with pytest.raises(ValueError):
        mz_pmf(0, 0.8, 5.0)
    with pytest.raises(ValueError):
        mz_pmf(10, -0.1, 5.0)
    with pytest.raises(ValueError):
        mz_pmf(10, 0.8, -1.0)
    with pytest.raises(TypeError):
        mz_pmf(2.5, 0.8, 5.0)


def test_quality_preference():
    uniform = QualityPreference.truncated_geometric(4, rho=1.0)
    np.testing.assert_allclose(uniform.pmf, np.full(4, 0.25))
    np.testing.assert_allclose(uniform.tail(), [1.0, 0.75, 0.5, 0.25])
    assert math.isclose(uniform.mean(), 2.5)

    pref = QualityPreference.truncated_geometric(3, rho=2.0)
    np.testing.assert_allclose(pref.pmf, [1 / 7, 2 / 7, 4 / 7])
    assert pref.rho == 2.0

    low = QualityPreference.truncated_geometric(3, rho=0.5)
    assert low.mean() < 2 < pref.mean()

    # large exponents must not overflow
    steep = QualityPreference.truncated_geometric(8, rho=1e80)
    assert np.all(np.isfinite(steep.pmf))
    assert math.isclose(steep.pmf[-1], 1.0)

    point = QualityPreference.point_mass(4, 2)
    np.testing.assert_array_equal(point.tail(), [1, 1, 0, 0])
    with pytest.raises(IndexError):
        QualityPreference.point_mass(4, 5)

    with pytest.raises(ValueError):
        QualityPreference([0.5, 0.4])
    with pytest.raises(ValueError):
        QualityPreference.truncated_geometric(4, rho=0)


@given(
    levels=st.integers(min_value=1, max_value=16),
    rho=st.floats(min_value=1e-3, max_value=1e3))
def test_tail_properties(levels, rho):
    tail = QualityPreference.truncated_geometric(levels, rho=rho).tail()
    assert tail[0] == 1.0
    assert np.all(np.diff(tail) <= 0)
    assert np.all(tail >= 0)


def test_layer_request_prob():
    library = VideoLibrary(
        np.ones((2, 2)),
        popularity=PopularityModel(alpha=0.0, plateau=0.0),
        preference=QualityPreference.truncated_geometric(2, rho=1.0))
    assert layer_request_prob(library, 1, 1) == 0.5
    assert layer_request_prob(library, 2, 2) == 0.25

    library = build_library(_library_cfg())
    pmf = library.file_pmf()
    for f in (1, 10, 50):
        assert layer_request_prob(library, f, 1) == pmf[f - 1]

    probs = library.layer_request_probs()
    assert np.all(np.diff(probs, axis=1) <= 0)
    assert np.all(np.diff(probs, axis=0) <= 0)

    # total request mass: sum over files and qualities of P_f * pref(q)
    mass = np.outer(pmf, library.preference.pmf).sum()
    assert math.isclose(mass, 1.0, abs_tol=1e-12)

    with pytest.raises(IndexError):
        layer_request_prob(library, 0, 1)
    with pytest.raises(IndexError):
        layer_request_prob(library, 1, 9)
    with pytest.raises(IndexError):
        layer_request_prob(library, 51, 1)


def test_build_library():
    library = build_library(_library_cfg())
    assert library.shape == (50, 8)
    assert np.all(library.layer_sizes == 6.875 * MBIT)
    assert library.plain_size_bits == 50 * MBIT
    assert math.isclose(library.layer_sizes[0].sum(), 55 * MBIT)
    assert library.popularity == PopularityModel(0.8, 5.0)

    single = build_library(
        _library_cfg(svc_overhead=0.0, layers_per_file=1))
    assert single.layer_sizes[0, 0] == 50 * MBIT

    quarter = build_library(
        _library_cfg(base_size_mbit=40.0, layers_per_file=4))
    assert math.isclose(quarter.layer_sizes[0, 0], 11 * MBIT)

    explicit = build_library(
        _library_cfg(layers_per_file=2, layer_sizes_mbit=[30.0, 25.0]))
    np.testing.assert_allclose(explicit.layer_sizes[3], [30e6, 25e6])

    with pytest.raises(ValueError):
        build_library(_library_cfg(layers_per_file=2, layer_sizes_mbit=[1.0]))
    with pytest.raises(ValueError):
        build_library(_library_cfg(base_size_mbit=0.0))


def test_super_layer():
    library = build_library(_library_cfg())
    assert super_layer(library, 1, 1).size_bits == library.layer_sizes[0, 0]
    assert math.isclose(super_layer(library, 4, 3).size_bits, 20.625 * MBIT)
    assert super_layer(library, 2, 8).size_bits == \
        library.layer_sizes[1].sum()
    with pytest.raises(IndexError):
        super_layer(library, 1, 0)


def test_library_is_read_only():
    library = build_library(_library_cfg(file_count=3, layers_per_file=2))
    with pytest.raises(ValueError):
        library.layer_sizes[0, 0] = 1.0

    probs = library.layer_request_probs()
    probs[:] = 0
    assert library.layer_request_probs().sum() > 0


def test_fingerprint_and_without_svc():
    a = build_library(_library_cfg())
    b = build_library(_library_cfg())
    c = build_library(_library_cfg(preference=dict(rho=0.5)))
    assert a.fingerprint() == b.fingerprint()
    assert a.fingerprint() != c.fingerprint()

    plain = a.without_svc()
    assert plain.shape == (50, 1)
    assert np.all(plain.layer_sizes == 50 * MBIT)
    np.testing.assert_array_equal(plain.layer_request_probs()[:, 0],
                                  a.file_pmf())
    assert plain.fingerprint() != a.fingerprint()

    data = svcache.loads(svcache.dumps(a.to_dict()))
    assert data['layers_per_file'] == 8
    assert data['popularity'] == dict(alpha=0.8, plateau=5.0)
