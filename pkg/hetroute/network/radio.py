from pydantic import BaseModel, ConfigDict, Field


class RadioParams(BaseModel):
    """Transmit power and noise level shared by every node.

    `intra_flow_interference=False` switches off the interference terms so
    routes can be compared on interference-free link rates.
    """

    model_config = ConfigDict(frozen=True)

    transmit_power: float = Field(default=1.0, gt=0)  # W
    noise_density: float = Field(default=1e-17, gt=0)  # W/Hz
    intra_flow_interference: bool = True
