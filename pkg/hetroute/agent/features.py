"""State vector the agent sees for one communication resource.

For every neighbor slot, four features in slot-major order:
  a. neighbor-to-destination distance / arena diagonal
  b. angle between the frontier->destination and frontier->neighbor bearings / pi
  c. frontier->neighbor gain on the resource's technology, in dB, squashed
  d. interference power at the neighbor on the resource, in dB, squashed
Padded slots stay all-zero.
"""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from hetroute.channel.technology import CommResource
from hetroute.network.rates import interference_power
from hetroute.neighbors.neighbor_set import NeighborSet
from hetroute.routing.route_state import RouteState

FEATURES_PER_NEIGHBOR = 4


class FeatureScaling(BaseModel):
    """dB window mapped onto [0, 1] for the gain and interference features."""

    model_config = ConfigDict(frozen=True)

    db_floor: float = -150.0
    db_ceiling: float = -30.0

    @model_validator(mode="after")
    def _validate(self) -> "FeatureScaling":
        if self.db_ceiling <= self.db_floor:
            raise ValueError("db_ceiling must exceed db_floor")
        return self

    def squash(self, power: float) -> float:
        """Linear power -> [0, 1]; zero power maps to 0."""
        if power <= 0.0:
            return 0.0
        db = 10.0 * math.log10(power)
        unit = (db - self.db_floor) / (self.db_ceiling - self.db_floor)
        return min(max(unit, 0.0), 1.0)


DEFAULT_SCALING = FeatureScaling()


def bearing_difference(origin: np.ndarray, target: np.ndarray, point: np.ndarray) -> float:
    """Angle in [0, pi] between origin->target and origin->point."""
    u = np.asarray(target, dtype=np.float64) - origin
    v = np.asarray(point, dtype=np.float64) - origin
    cross = float(np.linalg.norm(np.cross(u, v)))
    return math.atan2(cross, float(np.dot(u, v)))


def featurize(
    state: RouteState,
    neighbors: NeighborSet,
    resource: CommResource,
    scaling: FeatureScaling = DEFAULT_SCALING,
) -> np.ndarray:
    """Vector of length 4 * neighbors.size for `resource` at the frontier."""
    if len(neighbors) == 0:
        raise ValueError("cannot featurize an empty neighbor set")
    topo = state.topo
    frontier = state.frontier
    destination = topo.destination
    frontier_pos = topo.position(frontier)
    destination_pos = topo.position(destination)
    interferers = state.interferers_on(resource)

    features = np.zeros(FEATURES_PER_NEIGHBOR * neighbors.size)
    for slot, node in enumerate(neighbors.nodes):
        base = FEATURES_PER_NEIGHBOR * slot
        features[base] = topo.distance(node, destination) / topo.arena_diagonal
        features[base + 1] = (
            bearing_difference(frontier_pos, destination_pos, topo.position(node))
            / math.pi
        )
        features[base + 2] = scaling.squash(
            topo.gain(frontier, node, resource.technology_id)
        )
        features[base + 3] = scaling.squash(
            interference_power(node, resource, interferers, topo)
        )
    return features
