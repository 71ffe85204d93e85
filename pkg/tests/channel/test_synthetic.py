import math

import numpy as np
import pytest

from hetroute.channel.synthetic import (
    SPEED_OF_LIGHT,
    SyntheticChannelParams,
    build_synthetic_table,
    path_loss_exponent,
    shadowing_factor,
    synthetic_gain,
)
from hetroute.channel.technology import Technology
from hetroute.common.exceptions.channel_error import ChannelError

UHF = Technology(id=0, center_frequency=400e6, num_subbands=1)
ISM = Technology(id=1, center_frequency=2.4e9, num_subbands=1)
FLAT = SyntheticChannelParams(shadowing_db=0.0)


def test_exponent_grows_with_frequency():
    assert path_loss_exponent(400e6) == pytest.approx(3.0)
    assert path_loss_exponent(4e9) == pytest.approx(3.5)


def test_gain_without_shadowing_matches_closed_form():
    gain = synthetic_gain([0, 0, 0], [10, 0, 0], UHF, fading_seed=0, params=FLAT)
    free_space = (SPEED_OF_LIGHT / (4 * math.pi * 400e6)) ** 2
    assert gain == pytest.approx(free_space * 10.0**-3.0)


def test_gain_decreases_with_distance_and_frequency():
    near = synthetic_gain([0, 0, 0], [10, 0, 0], UHF, 0, FLAT)
    far = synthetic_gain([0, 0, 0], [100, 0, 0], UHF, 0, FLAT)
    higher = synthetic_gain([0, 0, 0], [10, 0, 0], ISM, 0, FLAT)
    assert far < near
    assert higher < near


def test_shadowing_is_symmetric_and_seeded():
    a, b = [1.0, 2.0, 3.0], [40.0, 5.0, 1.0]
    assert shadowing_factor(a, b, 0, 11, 6.0) == shadowing_factor(b, a, 0, 11, 6.0)
    assert shadowing_factor(a, b, 0, 11, 6.0) == shadowing_factor(a, b, 0, 11, 6.0)
    assert shadowing_factor(a, b, 0, 11, 6.0) != shadowing_factor(a, b, 0, 12, 6.0)
    assert shadowing_factor(a, b, 0, 11, 6.0) != shadowing_factor(a, b, 1, 11, 6.0)
    assert shadowing_factor(a, b, 0, 11, 0.0) == 1.0


def test_shadowing_spread_is_close_to_configured_sigma():
    rng = np.random.default_rng(5)
    samples = [
        10 * math.log10(shadowing_factor(rng.uniform(size=3), rng.uniform(size=3), 0, 1, 6.0))
        for _ in range(4000)
    ]
    assert abs(np.mean(samples)) < 0.5
    assert np.std(samples) == pytest.approx(6.0, rel=0.08)


def test_coincident_positions_raise():
    with pytest.raises(ChannelError, match="coincident nodes"):
        synthetic_gain([1, 1, 1], [1, 1, 1], UHF, 0)


def test_build_table_covers_every_pair():
    positions = np.array([[0, 0, 0], [10, 0, 0], [0, 20, 0]], dtype=float)
    table = build_synthetic_table(positions, [UHF, ISM], fading_seed=3)
    assert table.technology_ids == (0, 1)
    assert table.num_nodes == 3
    assert table.gain(0, 2, 1) == synthetic_gain(positions[0], positions[2], ISM, 3)
