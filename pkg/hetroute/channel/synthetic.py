"""Log-distance path loss with deterministic lognormal shadowing.

The model stands in for site-specific ray-traced channels:

    gain = (c / (4 pi f_c d0))^2 * (d0 / d)^alpha(f_c) * X

with alpha(f_c) = intercept + slope * log10(f_c / f_ref) and X a lognormal
factor whose log is drawn from a hash of the unordered link endpoints, the
technology and a fading seed, so the same link always fades the same way and
both directions see the same gain.
"""

import hashlib
import math
from typing import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from hetroute.channel.channel_table import ChannelTable
from hetroute.channel.technology import Technology
from hetroute.common.exceptions.channel_error import ChannelError

SPEED_OF_LIGHT = 299_792_458.0
_TWO_POW_64 = float(2**64)


class SyntheticChannelParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    reference_distance: float = Field(default=1.0, gt=0)
    shadowing_db: float = Field(default=6.0, ge=0)
    exponent_intercept: float = Field(default=3.0, gt=0)
    exponent_slope: float = Field(default=0.5)
    reference_frequency: float = Field(default=400e6, gt=0)


DEFAULT_SYNTHETIC_PARAMS = SyntheticChannelParams()


def path_loss_exponent(
    center_frequency: float, params: SyntheticChannelParams = DEFAULT_SYNTHETIC_PARAMS
) -> float:
    return params.exponent_intercept + params.exponent_slope * math.log10(
        center_frequency / params.reference_frequency
    )


def _standard_normal_from_key(key: bytes) -> float:
    """Box-Muller on two 64-bit words of a keyed digest."""
    digest = hashlib.blake2b(key, digest_size=16).digest()
    u1 = (int.from_bytes(digest[:8], "little") + 0.5) / _TWO_POW_64
    u2 = (int.from_bytes(digest[8:], "little") + 0.5) / _TWO_POW_64
    return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)


def shadowing_factor(
    tx_pos: Sequence[float],
    rx_pos: Sequence[float],
    technology_id: int,
    fading_seed: int,
    shadowing_db: float,
) -> float:
    """Linear lognormal factor X, symmetric in its two endpoints."""
    if shadowing_db == 0:
        return 1.0
    a = np.asarray(tx_pos, dtype=np.float64).tobytes()
    b = np.asarray(rx_pos, dtype=np.float64).tobytes()
    low, high = sorted((a, b))
    key = b"|".join(
        [low, high, str(technology_id).encode(), str(int(fading_seed)).encode()]
    )
    z = _standard_normal_from_key(key)
    return 10.0 ** (shadowing_db * z / 10.0)


def synthetic_gain(
    tx_pos: Sequence[float],
    rx_pos: Sequence[float],
    tech: Technology,
    fading_seed: int,
    params: SyntheticChannelParams = DEFAULT_SYNTHETIC_PARAMS,
) -> float:
    """Linear power gain |h|^2 of one link under the synthetic model."""
    distance = math.dist(tx_pos, rx_pos)
    if distance == 0:
        raise ChannelError("coincident nodes", f"{tuple(tx_pos)}")

    d0 = params.reference_distance
    free_space = (SPEED_OF_LIGHT / (4.0 * math.pi * tech.center_frequency * d0)) ** 2
    alpha = path_loss_exponent(tech.center_frequency, params)
    fading = shadowing_factor(tx_pos, rx_pos, tech.id, fading_seed, params.shadowing_db)
    return free_space * (d0 / distance) ** alpha * fading


def build_synthetic_table(
    positions: np.ndarray,
    technologies: Sequence[Technology],
    fading_seed: int,
    params: SyntheticChannelParams = DEFAULT_SYNTHETIC_PARAMS,
) -> ChannelTable:
    """Materialize the synthetic model for every pair of the given positions."""
    positions = np.asarray(positions, dtype=float)
    n = positions.shape[0]
    gains = np.zeros((len(technologies), n, n))
    for k, tech in enumerate(technologies):
        for a in range(n):
            for b in range(a + 1, n):
                g = synthetic_gain(positions[a], positions[b], tech, fading_seed, params)
                gains[k, a, b] = g
                gains[k, b, a] = g
    return ChannelTable(technology_ids=tuple(t.id for t in technologies), gains=gains)
