from typing import Any, List, Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

# Total bandwidth of a technology is 1% of its carrier unless overridden.
BANDWIDTH_FRACTION = 0.01


class Technology(BaseModel):
    """One radio technology carried by every node.

    Attributes:
        id: small integer identifying the technology in channel tables.
        center_frequency: carrier frequency in Hz.
        total_bandwidth: bandwidth in Hz shared equally by the subbands. When
            omitted it is derived as `BANDWIDTH_FRACTION * center_frequency`.
        num_subbands: number of equal subbands the bandwidth is split into.
    """

    model_config = ConfigDict(frozen=True)

    id: int = Field(ge=0)
    center_frequency: float = Field(gt=0)
    total_bandwidth: float = Field(gt=0)
    num_subbands: int = Field(ge=1)

    @model_validator(mode="before")
    @classmethod
    def _default_bandwidth(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("total_bandwidth") is None:
            data = dict(data)
            center_frequency = data.get("center_frequency")
            if isinstance(center_frequency, (int, float)):
                data["total_bandwidth"] = BANDWIDTH_FRACTION * center_frequency
        return data

    @property
    def subband_bandwidth(self) -> float:
        return self.total_bandwidth / self.num_subbands


class CommResource(BaseModel):
    """A (technology, subband) pair: the spectrum unit a hop transmits on."""

    model_config = ConfigDict(frozen=True)

    technology_id: int = Field(ge=0)
    subband_index: int = Field(ge=0)

    def __str__(self) -> str:
        return f"t{self.technology_id}.{self.subband_index}"


def resource_catalog(technologies: Sequence[Technology]) -> List[CommResource]:
    """The ordered resource set: technologies in declaration order, subbands ascending.

    The position of a resource in this list is its resource index, used for
    deterministic tie-breaking everywhere.
    """
    seen = set()
    for technology in technologies:
        if technology.id in seen:
            raise ValueError(f"Duplicate technology id {technology.id}")
        seen.add(technology.id)
    return [
        CommResource(technology_id=technology.id, subband_index=subband)
        for technology in technologies
        for subband in range(technology.num_subbands)
    ]

