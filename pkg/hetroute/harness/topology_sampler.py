"""Random routing instances and the seed streams they are drawn from.

Node positions are laid out once per run from the `layout` stream. Every
topology then draws its active relays and, for synthetic channels, its own
shadowing realization.
"""

from typing import Dict, List, Optional

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict

from hetroute.channel.channel_table import ChannelTable
from hetroute.channel.gain_grid import load_gain_grid
from hetroute.channel.synthetic import build_synthetic_table
from hetroute.common.exceptions.config_validation_error import ConfigValidationError
from hetroute.harness.config import ExperimentConfig
from hetroute.network.topology import Topology

STREAM_NAMES = (
    "layout",
    "train_topologies",
    "exploration",
    "network_init",
    "replay",
    "eval_topologies",
)


class SeedStreams(BaseModel):
    """Independent child seeds of the master seed, one per named purpose."""

    master: int
    children: Dict[str, int]

    @classmethod
    def from_master(cls, master: int) -> "SeedStreams":
        spawned = np.random.SeedSequence(master).spawn(len(STREAM_NAMES))
        return cls(
            master=master,
            children={
                name: int(child.generate_state(1, dtype=np.uint64)[0])
                for name, child in zip(STREAM_NAMES, spawned)
            },
        )

    def generator(self, name: str) -> np.random.Generator:
        return np.random.default_rng(self.children[name])


def sample_layout(config: ExperimentConfig, rng: np.random.Generator) -> np.ndarray:
    """Uniform node positions in the arena, shape (pool_size, 3)."""
    size = np.array(config.arena.size)
    return rng.uniform(0.0, 1.0, size=(config.nodes.pool_size, 3)) * size


class TopologySampler(BaseModel):
    """Callable drawing one Topology per call from the generator it is given."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    config: ExperimentConfig
    positions: np.ndarray
    grid: Optional[ChannelTable] = None

    @classmethod
    def from_config(
        cls, config: ExperimentConfig, streams: SeedStreams
    ) -> "TopologySampler":
        positions = sample_layout(config, streams.generator("layout"))
        grid = None
        if config.channel.source == "grid":
            grid = load_gain_grid(
                config.channel.grid_file,
                num_nodes=config.nodes.pool_size,
                technology_ids=[t.id for t in config.technologies],
            )
        return cls(config=config, positions=positions, grid=grid)

    def relay_count(self, rng: np.random.Generator) -> int:
        nodes = self.config.nodes
        if nodes.relay_count is not None:
            return nodes.relay_count
        low, high = nodes.relay_count_range
        return int(rng.integers(low, high + 1))

    def sample(self, rng: np.random.Generator) -> Topology:
        return sample_topology(self.config, rng, self.positions, self.grid, self.relay_count(rng))

    def __call__(self, rng: np.random.Generator) -> Topology:
        return self.sample(rng)

    def sample_many(self, count: int, rng: np.random.Generator) -> List[Topology]:
        return [self.sample(rng) for _ in range(count)]


def sample_topology(
    config: ExperimentConfig,
    rng: np.random.Generator,
    positions: Optional[np.ndarray] = None,
    grid: Optional[ChannelTable] = None,
    relay_count: Optional[int] = None,
) -> Topology:
    """
    Fixed source and destination plus a uniform random subset of relays.

    Raises:
        ConfigValidationError: the requested subset is larger than the relay pool.
    """
    nodes = config.nodes
    pool = nodes.relay_pool
    if relay_count is None:
        relay_count = nodes.relay_count if nodes.relay_count is not None else len(pool)
    if relay_count > len(pool):
        raise ConfigValidationError(
            [f"relay subset of {relay_count} exceeds a pool of {len(pool)} relays"]
        )
    if positions is None:
        positions = sample_layout(config, rng)

    relays = sorted(int(n) for n in rng.choice(pool, size=relay_count, replace=False))
    active = tuple(sorted([nodes.source_id, nodes.destination_id, *relays]))

    if grid is not None:
        channels = grid
    else:
        fading_seed = int(rng.integers(0, 2**63 - 1))
        channels = build_synthetic_table(
            positions, config.technologies, fading_seed, config.channel.synthetic
        )
    logger.debug(f"sampled topology with {len(active)} active nodes")
    return Topology(
        node_positions=positions,
        active_nodes=active,
        source=nodes.source_id,
        destination=nodes.destination_id,
        technologies=config.technologies,
        channels=channels,
        radio=config.radio,
        arena_size=config.arena.size,
    )
