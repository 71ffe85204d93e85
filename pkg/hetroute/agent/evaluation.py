"""Greedy evaluation of a policy over a fixed list of topologies."""

from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from hetroute.agent.dqn_policy import DQNPolicy
from hetroute.agent.features import DEFAULT_SCALING, FeatureScaling
from hetroute.common.containers.container import container
from hetroute.common.event_stores.event_store_in_memory import EventStoreInMemory
from hetroute.common.events.event import Event
from hetroute.common.models.run_context import RunContext
from hetroute.neighbors.neighbor_set import NeighborStrategy
from hetroute.network.topology import Topology
from hetroute.nn.q_network import QNetwork
from hetroute.routing.episode import run_episode
from hetroute.routing.routing_policy import RoutingPolicy

PERCENTILES = (10, 50, 90)


class EpisodeOutcome(BaseModel):
    topology_index: int
    delivered: bool
    rate: float
    hops: int
    failure_reason: Optional[str] = None


class EvaluationReport(BaseModel):
    """Per-topology outcomes plus summary statistics.

    `mean_rate` counts failed episodes as rate 0; `mean_delivered_rate` and
    the percentiles are over delivered episodes only.
    """

    policy_name: str
    outcomes: List[EpisodeOutcome]
    mean_rate: float
    mean_delivered_rate: float
    delivery_ratio: float
    percentiles: Dict[str, float]

    @property
    def rates(self) -> List[float]:
        return [outcome.rate for outcome in self.outcomes]


def summarize(policy_name: str, outcomes: List[EpisodeOutcome]) -> EvaluationReport:
    rates = np.array([o.rate for o in outcomes], dtype=np.float64)
    delivered = np.array([o.rate for o in outcomes if o.delivered], dtype=np.float64)
    return EvaluationReport(
        policy_name=policy_name,
        outcomes=outcomes,
        mean_rate=float(rates.mean()) if rates.size else 0.0,
        mean_delivered_rate=float(delivered.mean()) if delivered.size else 0.0,
        delivery_ratio=float(delivered.size / rates.size) if rates.size else 0.0,
        percentiles={
            f"p{q}": float(np.percentile(delivered, q)) if delivered.size else 0.0
            for q in PERCENTILES
        },
    )


def _run_one(
    job: Tuple[int, Topology, RoutingPolicy, Optional[int], Optional[RunContext]],
) -> EpisodeOutcome:
    index, topo, policy, max_hops, run_context = job
    result = run_episode(topo, policy, max_hops, run_context=run_context)
    return EpisodeOutcome(
        topology_index=index,
        delivered=result.delivered,
        rate=result.rate,
        hops=result.hops,
        failure_reason=result.failure_reason,
    )


def _run_in_worker(
    job: Tuple[int, Topology, RoutingPolicy, Optional[int], Optional[RunContext]],
) -> Tuple[EpisodeOutcome, List[Event]]:
    """Pool entry point: runs one episode and hands its events back to the parent."""
    store = EventStoreInMemory()
    container.register_event_store(EventStoreInMemory, store)
    outcome = _run_one(job)
    return outcome, store.get_events()


def evaluate_policy(
    policy: RoutingPolicy,
    topologies: Sequence[Topology],
    max_hops: Optional[int] = None,
    workers: Optional[int] = None,
    run_context: Optional[RunContext] = None,
) -> EvaluationReport:
    """
    Run `policy` once on every topology and summarize the outcomes.

    With `workers` > 1 episodes are spread over a process pool; results keep
    the order of `topologies`, so the report does not depend on the worker
    count. The policy must be deterministic (no exploration).
    """
    jobs = [(i, topo, policy, max_hops, run_context) for i, topo in enumerate(topologies)]
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_in_worker, jobs))
        outcomes = [outcome for outcome, _ in results]
        if container.event_store:
            for _, events in results:
                container.event_store.record_events(events)
    else:
        outcomes = [_run_one(job) for job in jobs]
    return summarize(policy.name, outcomes)


def greedy_policy(
    net: QNetwork,
    strategy: NeighborStrategy = NeighborStrategy.RATE,
    scaling: FeatureScaling = DEFAULT_SCALING,
    name: str = "dqn",
) -> DQNPolicy:
    """epsilon = 0 policy around a frozen copy of `net`."""
    return (
        DQNPolicy.Builder()
        .name(name)
        .net(net.snapshot())
        .strategy(strategy)
        .scaling(scaling)
        .epsilon(0.0)
        .build()
    )


def evaluate(
    net: QNetwork,
    topologies: Sequence[Topology],
    strategy: NeighborStrategy = NeighborStrategy.RATE,
    scaling: FeatureScaling = DEFAULT_SCALING,
    max_hops: Optional[int] = None,
    workers: Optional[int] = None,
    run_context: Optional[RunContext] = None,
) -> EvaluationReport:
    return evaluate_policy(
        greedy_policy(net, strategy, scaling),
        topologies,
        max_hops=max_hops,
        workers=workers,
        run_context=run_context,
    )
