import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lemsched.channel import (
    ChannelParams,
    ChannelRealization,
    breakpoint_distance,
    db_to_linear,
    dbm_to_watts,
    draw_fading,
    gain_matrix,
    itu1411_pathloss_db,
    linear_to_db,
    noise_power_watts,
    sum_rate,
)
from lemsched.topology import Deployment, gen_deployment


def pathloss_oracle(d, fc=2.4e9, h1=1.5, h2=1.5):
    # scalar re-evaluation of the two-slope LOS formula
    lam = 3e8 / fc
    rbp = 4 * h1 * h2 / lam
    lbp = abs(20 * math.log10(lam * lam / (8 * math.pi * h1 * h2)))
    return lbp + 6 + (20 if d <= rbp else 40) * math.log10(d / rbp)


def test_breakpoint_values():
    assert breakpoint_distance() == pytest.approx(72.0, rel=1e-12)
    assert itu1411_pathloss_db(72.0) == pytest.approx(pathloss_oracle(72.0), abs=1e-12)
    assert itu1411_pathloss_db(72.0) == pytest.approx(77.17, abs=0.005)


@pytest.mark.parametrize("d, approx", [(10.0, 60.02), (720.0, 117.17)])
def test_pathloss_slopes(d, approx):
    assert itu1411_pathloss_db(d) == pytest.approx(pathloss_oracle(d), abs=1e-12)
    assert itu1411_pathloss_db(d) == pytest.approx(approx, abs=0.01)


def test_pathloss_rejects_nonpositive():
    with pytest.raises(ValueError):
        itu1411_pathloss_db(0.0)


def test_fading_statistics():
    big = draw_fading(1000, seed=5)
    assert big.mean() == pytest.approx(1.0, abs=0.01)
    assert np.all(big > 0)
    assert np.array_equal(draw_fading(7, 3), draw_fading(7, 3))
    assert not np.array_equal(draw_fading(7, 3), draw_fading(7, 4))


def test_gain_matrix_symmetric_geometry():
    dep = Deployment(tx=[(0, 0), (100, 0)], rx=[(0, 20), (100, 20)])
    g = gain_matrix(dep, np.ones((2, 2))).gain
    assert g[0, 1] == pytest.approx(g[1, 0], rel=1e-12)
    assert g[0, 0] == pytest.approx(g[1, 1], rel=1e-12)


def test_gain_drops_40db_per_decade_past_breakpoint():
    dep = Deployment(tx=[(0, 0), (0, 0)], rx=[(100, 0), (200, 0)])
    g = gain_matrix(dep, np.ones((2, 2))).gain
    assert g[1, 1] / g[0, 0] == pytest.approx(10 ** (-40 * math.log10(2) / 10), rel=1e-12)
    assert g[1, 1] / g[0, 0] == pytest.approx(0.0625, rel=0.01)


def test_gain_formula():
    dep = gen_deployment(4, seed=2)
    fad = draw_fading(4, 9)
    p = ChannelParams()
    g = gain_matrix(dep, fad, p).gain
    for i in range(4):
        for j in range(4):
            d = math.dist(dep.tx[j], dep.rx[i])
            expected = 10 ** ((2 * 2.5 - pathloss_oracle(d)) / 10) * fad[i, j]
            assert g[i, j] == pytest.approx(expected, rel=1e-12)


def test_unit_gain_case():
    # zero antenna gain, distance where the path loss is 0 dB, unit fading
    p = ChannelParams(g_ant=0.0)
    lam = 3e8 / p.fc
    rbp = 4 * p.h_ant**2 / lam
    l_bp = abs(20 * math.log10(lam**2 / (8 * math.pi * p.h_ant**2)))
    d0 = rbp * 10 ** (-(l_bp + 6) / 20)
    dep = Deployment(tx=[(0, 0)], rx=[(d0, 0)])
    assert gain_matrix(dep, np.ones((1, 1)), p).gain[0, 0] == pytest.approx(1.0, rel=1e-9)


def test_noise_power():
    assert noise_power_watts(-169, 5e6) == pytest.approx(10 ** ((-169 + 10 * math.log10(5e6) - 30) / 10), rel=1e-12)
    assert noise_power_watts(-169, 5e6) == pytest.approx(6.29e-14, rel=1e-3)
    assert 10 * math.log10(noise_power_watts(-169, 5e6) * 1e3) == pytest.approx(-102.01, abs=0.005)
    assert noise_power_watts(-169, 1) == pytest.approx(10**-19.9, rel=1e-12)
    assert noise_power_watts(0, 1) == pytest.approx(1e-3, rel=1e-12)
    with pytest.raises(ValueError):
        noise_power_watts(-169, 0)


def test_params_defaults():
    p = ChannelParams()
    assert p.p_tx_watts == pytest.approx(10.0)
    assert p.noise_watts == pytest.approx(noise_power_watts(-169, 5e6))
    with pytest.raises(ValueError):
        ChannelParams(bandwidth=0)


@given(st.floats(-200, 200))
def test_db_roundtrip(db):
    assert linear_to_db(db_to_linear(db)) == pytest.approx(db, rel=1e-12, abs=1e-12)
    assert float(dbm_to_watts(30.0)) == pytest.approx(1.0)


def test_sum_rate_examples():
    B = 5e6
    assert sum_rate([1], [[1.0]], 1.0, 1.0, B) == pytest.approx(5e6)
    g = np.array([[1e-9, 1e-10], [1e-10, 1e-9]])
    assert sum_rate([0, 0], g, 10.0, 1e-10, B) == 0.0
    expected = 2 * B * math.log2(1 + 10e-9 / (10 * 1e-10 + 1e-10))
    assert sum_rate([1, 1], g, 10.0, 1e-10, B) == pytest.approx(expected, rel=1e-12)
    assert sum_rate([1, 1], ChannelRealization(g), 10.0, 1e-10, B) == pytest.approx(expected, rel=1e-12)


def test_sum_rate_batched_matches_single():
    rng = np.random.default_rng(0)
    g = rng.exponential(size=(5, 5)) * 1e-9
    X = rng.integers(0, 2, size=(16, 5))
    batch = sum_rate(X, g, 10.0, 1e-10, 5e6)
    np.testing.assert_allclose(batch, [sum_rate(x, g, 10.0, 1e-10, 5e6) for x in X], rtol=1e-12)


def test_realization_validation():
    with pytest.raises(ValueError):
        ChannelRealization(np.ones((2, 3)))
    with pytest.raises(ValueError):
        ChannelRealization([[1.0, np.inf], [1.0, 1.0]])


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**31), st.floats(1.01, 100))
def test_sum_rate_nonincreasing_in_cross_gain(k, seed, factor):
    rng = np.random.default_rng(seed)
    g = rng.exponential(size=(k, k)) * 1e-9
    x = rng.integers(0, 2, size=k)
    i, j = rng.choice(k, size=2, replace=False)
    g2 = g.copy()
    g2[i, j] *= factor
    assert sum_rate(x, g2, 10.0, 1e-13, 5e6) <= sum_rate(x, g, 10.0, 1e-13, 5e6)
