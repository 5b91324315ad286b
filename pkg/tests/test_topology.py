import math

import numpy as np
import pytest

from lemsched.topology import (
    Deployment,
    distance_matrix,
    format_deployment,
    gen_deployment,
    load_deployment,
    parse_deployment,
    save_deployment,
)


def test_paper_scale_direct_distances_in_range():
    dep = gen_deployment(50, 500, 2, 65, seed=7)
    assert dep.k == 50
    d = dep.direct_distances()
    assert np.all((d >= 2) & (d <= 65))
    assert np.all((dep.tx >= 0) & (dep.tx <= 500))
    np.testing.assert_allclose(np.diag(distance_matrix(dep)), d)


def test_single_pair():
    dep = gen_deployment(1, seed=3)
    assert dep.k == 1 and dep.tx.shape == (1, 2)


def test_same_seed_same_layout():
    a = gen_deployment(20, seed=42)
    b = gen_deployment(20, seed=42)
    assert a == b
    assert np.array_equal(distance_matrix(a), distance_matrix(b))
    assert gen_deployment(20, seed=43) != a


@pytest.mark.parametrize("kw", [dict(k=0), dict(k=5, r_min=10, r_max=10), dict(k=5, r_min=20, r_max=10), dict(k=5, r_max=600)])
def test_invalid_parameters(kw):
    with pytest.raises(ValueError):
        gen_deployment(**kw)


def test_frozen_arrays():
    dep = gen_deployment(3, seed=1)
    with pytest.raises(ValueError):
        dep.tx[0, 0] = 1.0


def test_distance_matrix_hand_values():
    dep = Deployment(tx=[(0, 0), (10, 0)], rx=[(3, 4), (10, 6)])
    D = distance_matrix(dep)
    assert D[0, 0] == 5.0
    assert D[0, 1] == pytest.approx(math.sqrt(49 + 16), abs=1e-12)
    assert D[0, 1] == pytest.approx(8.0623, abs=1e-4)
    assert D[1, 1] == 6.0


def test_coincident_pairs_give_identical_rows():
    dep = Deployment(tx=[(1, 2), (1, 2), (40, 9)], rx=[(5, 5), (5, 5), (30, 30)])
    D = distance_matrix(dep)
    assert np.array_equal(D[0], D[1])


def test_distance_matrix_properties():
    dep = gen_deployment(30, seed=11)
    D = distance_matrix(dep)
    assert np.all(np.isfinite(D)) and np.all(D >= 0)


def test_receivers_may_leave_the_square():
    # no clipping: over many corner-heavy drops some receivers fall outside
    outside = 0
    for seed in range(20):
        dep = gen_deployment(50, seed=seed)
        outside += np.sum((dep.rx < 0) | (dep.rx > 500))
    assert outside > 0


def test_text_roundtrip(tmp_path):
    dep = gen_deployment(6, seed=9)
    text = format_deployment(dep)
    header, *lines = text.splitlines()
    assert header.split() == ["6", "500.0", "9"]
    assert len(lines) == 6 and all(len(ln.split()) == 4 for ln in lines)
    assert parse_deployment(text) == dep
    path = tmp_path / "dep.txt"
    save_deployment(dep, path)
    assert load_deployment(path) == dep


@pytest.mark.parametrize("text", ["", "2 500 1\n0 0 1 1\n", "1 500\n0 0 1 1\n", "1 500 0\n0 0 1\n"])
def test_bad_text_rejected(text):
    with pytest.raises(ValueError):
        parse_deployment(text)
