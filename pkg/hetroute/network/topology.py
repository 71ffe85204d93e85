import math
from functools import cached_property
from typing import Dict, FrozenSet, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from hetroute.channel.channel_table import ChannelTable
from hetroute.channel.technology import CommResource, Technology, resource_catalog
from hetroute.network.radio import RadioParams


class Topology(BaseModel):
    """One routing instance: node layout, active subset, endpoints and channels.

    Node ids index `node_positions` and the channel table; only ids listed in
    `active_nodes` take part in routing.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    node_positions: np.ndarray
    active_nodes: Tuple[int, ...]
    source: int
    destination: int
    technologies: Tuple[Technology, ...]
    channels: ChannelTable
    radio: RadioParams = Field(default_factory=RadioParams)
    arena_size: Tuple[float, float, float] = (250.0, 250.0, 9.5)

    @model_validator(mode="after")
    def _validate(self) -> "Topology":
        positions = self.node_positions
        if positions.ndim != 2 or positions.shape[1] != 3:
            raise ValueError(f"node_positions must be (n, 3), got {positions.shape}")
        n = positions.shape[0]
        if self.channels.num_nodes != n:
            raise ValueError(
                f"channel table covers {self.channels.num_nodes} nodes, layout has {n}"
            )
        if sorted({t.id for t in self.technologies}) != sorted(
            self.channels.technology_ids
        ):
            raise ValueError("technologies do not match the channel table")
        if len(set(self.active_nodes)) != len(self.active_nodes):
            raise ValueError("duplicate active node ids")
        if any(node < 0 or node >= n for node in self.active_nodes):
            raise ValueError(f"active node ids must lie in [0, {n})")
        if self.source == self.destination:
            raise ValueError("source and destination must differ")
        if self.source not in self.active_nodes or self.destination not in self.active_nodes:
            raise ValueError("source and destination must both be active")
        return self

    @cached_property
    def active_set(self) -> FrozenSet[int]:
        return frozenset(self.active_nodes)

    @cached_property
    def active_nodes_sorted(self) -> Tuple[int, ...]:
        return tuple(sorted(self.active_nodes))

    @cached_property
    def resources(self) -> List[CommResource]:
        return resource_catalog(self.technologies)

    @cached_property
    def resource_indices(self) -> Dict[CommResource, int]:
        return {resource: index for index, resource in enumerate(self.resources)}

    @cached_property
    def technology_by_id(self) -> Dict[int, Technology]:
        return {technology.id: technology for technology in self.technologies}

    @cached_property
    def arena_diagonal(self) -> float:
        return math.sqrt(sum(side * side for side in self.arena_size))

    @property
    def num_active(self) -> int:
        return len(self.active_nodes)

    def technology(self, technology_id: int) -> Technology:
        return self.technology_by_id[technology_id]

    def position(self, node: int) -> np.ndarray:
        return self.node_positions[node]

    def distance(self, a: int, b: int) -> float:
        return math.dist(self.node_positions[a], self.node_positions[b])

    def gain(self, tx: int, rx: int, technology_id: int) -> float:
        return self.channels.gain(tx, rx, technology_id)
