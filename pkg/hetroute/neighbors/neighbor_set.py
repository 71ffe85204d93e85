from enum import Enum
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class NeighborStrategy(str, Enum):
    DISTANCE = "distance"
    CHANNEL = "channel"
    RATE = "rate"


class NeighborSet(BaseModel):
    """Up to `size` candidate next hops, best first; trailing slots are padding."""

    model_config = ConfigDict(frozen=True)

    nodes: Tuple[int, ...]
    strategy: NeighborStrategy
    size: int = Field(ge=1)

    @model_validator(mode="after")
    def _validate(self) -> "NeighborSet":
        if len(self.nodes) > self.size:
            raise ValueError(f"{len(self.nodes)} neighbors exceed {self.size} slots")
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError(f"duplicate neighbors {self.nodes}")
        return self

    @property
    def mask(self) -> Tuple[bool, ...]:
        """True for slots holding a real neighbor."""
        return tuple(slot < len(self.nodes) for slot in range(self.size))

    @property
    def num_padded(self) -> int:
        return self.size - len(self.nodes)

    def __len__(self) -> int:
        return len(self.nodes)
