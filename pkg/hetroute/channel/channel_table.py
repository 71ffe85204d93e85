from functools import cached_property
from typing import Dict, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from hetroute.common.exceptions.channel_error import ChannelError


class ChannelTable(BaseModel):
    """Per-technology linear power gains |h|^2 between every pair of pool nodes.

    `gains[k, a, b]` is the dimensionless power gain from node `a` to node `b`
    on the k-th technology of `technology_ids`. Gains are flat across the
    subbands of a technology and reciprocal. The diagonal is unused and held at
    zero. The array is made read-only once validated.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    technology_ids: Tuple[int, ...]
    gains: np.ndarray

    @model_validator(mode="after")
    def _validate(self) -> "ChannelTable":
        gains = self.gains
        if gains.ndim != 3 or gains.shape[1] != gains.shape[2]:
            raise ChannelError("malformed table", f"gain array shape {gains.shape}")
        if gains.shape[0] != len(self.technology_ids):
            raise ChannelError(
                "malformed table",
                f"{gains.shape[0]} gain matrices for {len(self.technology_ids)} technologies",
            )
        off_diagonal = ~np.eye(gains.shape[1], dtype=bool)
        values = gains[:, off_diagonal]
        if not np.all(np.isfinite(values)):
            raise ChannelError("non-finite gain")
        if np.any(values <= 0):
            raise ChannelError("non-positive gain")
        if not np.array_equal(gains, np.transpose(gains, (0, 2, 1))):
            raise ChannelError("non-reciprocal gain")
        gains.setflags(write=False)
        return self

    @property
    def num_nodes(self) -> int:
        return int(self.gains.shape[1])

    @cached_property
    def technology_positions(self) -> Dict[int, int]:
        return {tech_id: k for k, tech_id in enumerate(self.technology_ids)}

    def matrix(self, technology_id: int) -> np.ndarray:
        """The read-only gain matrix of one technology."""
        try:
            return self.gains[self.technology_positions[technology_id]]
        except KeyError:
            raise ChannelError("unknown technology", str(technology_id))

    def gain(self, tx: int, rx: int, technology_id: int) -> float:
        if tx == rx:
            raise ChannelError("coincident nodes", f"node {tx}")
        return float(self.matrix(technology_id)[tx, rx])

    @classmethod
    def from_matrices(
        cls, technology_ids: Sequence[int], matrices: Sequence[np.ndarray]
    ) -> "ChannelTable":
        """Stack per-technology matrices, zeroing the diagonal."""
        gains = np.array([np.asarray(matrix, dtype=float) for matrix in matrices])
        for k in range(gains.shape[0]):
            np.fill_diagonal(gains[k], 0.0)
        return cls(technology_ids=tuple(technology_ids), gains=gains)
