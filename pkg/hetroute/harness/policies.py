"""Policy registry keyed by the names used in configuration files."""

from typing import Callable, Dict, Optional

from hetroute.agent.evaluation import greedy_policy
from hetroute.baselines.greedy import (
    BestDirectionPolicy,
    ClosestToDestinationPolicy,
    DestinationDirectlyPolicy,
    GreedyPolicy,
    LargestDataRatePolicy,
    LeastInterferedPolicy,
    StrongestNeighborPolicy,
)
from hetroute.baselines.widest_path_policy import WidestPathPolicy
from hetroute.harness.config import ExperimentConfig
from hetroute.nn.q_network import QNetwork
from hetroute.routing.routing_policy import RoutingPolicy

GREEDY_BUILDERS: Dict[str, Callable[[], GreedyPolicy.Builder]] = {
    "strongest": StrongestNeighborPolicy.Builder,
    "direction": BestDirectionPolicy.Builder,
    "closest": ClosestToDestinationPolicy.Builder,
    "least_interf": LeastInterferedPolicy.Builder,
    "max_rate": LargestDataRatePolicy.Builder,
    "direct": DestinationDirectlyPolicy.Builder,
}


def build_policy(
    name: str, config: ExperimentConfig, net: Optional[QNetwork] = None
) -> RoutingPolicy:
    """
    Instantiate the policy registered under `name`.

    Raises:
        ValueError: unknown name, or `dqn` requested without a network.
    """
    if name == "dqn":
        if net is None:
            raise ValueError("policy 'dqn' needs a trained network or a checkpoint")
        return greedy_policy(
            net,
            config.training.neighbor_strategy,
            config.training.scaling,
            name="dqn",
        )
    if name == "widest":
        return WidestPathPolicy.Builder().name("widest").build()
    if name in GREEDY_BUILDERS:
        return (
            GREEDY_BUILDERS[name]()
            .name(name)
            .candidate_scope(config.bench.candidate_scope)
            .num_neighbors(config.training.num_neighbors)
            .neighbor_strategy(config.training.neighbor_strategy)
            .build()
        )
    raise ValueError(f"unknown policy '{name}'")
