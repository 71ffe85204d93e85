"""Ground-truth optimum by enumerating every route and resource assignment.

The search is a depth-first walk over (next node, resource) extensions of the
partial route. Per-hop interference sums are kept incrementally and added in
hop order, the order the network model uses, so a complete route's rate is
bit-identical to `end_to_end_rate`. Adding a hop can only add interference and
another min term, so the partial bottleneck bounds every completion; with
pruning on, branches that cannot strictly beat the incumbent are skipped. The
incumbent is only replaced on strict improvement, which makes pruned and
unpruned searches return the same route.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Tuple

from loguru import logger
from openinference.semconv.trace import OpenInferenceSpanKindValues, SpanAttributes
from pydantic import BaseModel, ConfigDict, Field

from hetroute.channel.technology import CommResource
from hetroute.common.exceptions.oracle_guard_error import OracleGuardError
from hetroute.common.instrumentations.tracing import tracer
from hetroute.network.rates import noise_power, shannon_rate
from hetroute.network.route import Route
from hetroute.network.topology import Topology

DEFAULT_MAX_NODES = 9


class OracleResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    nodes: List[int]
    resources: List[CommResource]
    rate: float
    routes_enumerated: int = 0
    branches_pruned: int = 0

    @property
    def route(self) -> Route:
        return Route(nodes=list(self.nodes), resources=list(self.resources))

    def to_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "resources": [str(r) for r in self.resources],
            "rate": self.rate,
            "routes_enumerated": self.routes_enumerated,
            "branches_pruned": self.branches_pruned,
        }


class _Incumbent(BaseModel):
    rate: float = -math.inf
    nodes: List[int] = Field(default_factory=list)
    resources: List[CommResource] = Field(default_factory=list)
    routes_enumerated: int = 0
    branches_pruned: int = 0


class _Search:
    """Depth-first enumeration from a fixed route prefix."""

    def __init__(self, topo: Topology, prune: bool):
        self.topo = topo
        self.prune = prune
        self.power = topo.radio.transmit_power
        self.interference_on = topo.radio.intra_flow_interference
        self.noise = {
            r: noise_power(topo.technology(r.technology_id), topo.radio)
            for r in topo.resources
        }
        self.bandwidth = {
            r: topo.technology(r.technology_id).subband_bandwidth for r in topo.resources
        }
        self.matrix = {
            r: topo.channels.matrix(r.technology_id) for r in topo.resources
        }
        self.best = _Incumbent()

    def _rate(self, tx: int, rx: int, resource: CommResource, interference: float) -> float:
        tech_id = resource.technology_id
        signal = self.power * self.topo.gain(tx, rx, tech_id)
        return shannon_rate(
            self.bandwidth[resource], signal / (self.noise[resource] + interference)
        )

    def extend(
        self,
        nodes: List[int],
        resources: List[CommResource],
        interference: List[float],
        rates: List[float],
        nxt: int,
        resource: CommResource,
    ) -> Tuple[List[float], List[float]]:
        """Interference sums and hop rates after appending hop frontier->nxt."""
        tx = nodes[-1]
        interference = list(interference)
        rates = list(rates)
        matrix = self.matrix[resource]
        own = 0.0
        if self.interference_on:
            for j, used in enumerate(resources):
                if used == resource:
                    own += self.power * float(matrix[nodes[j], nxt])
                    interference[j] += self.power * float(matrix[tx, nodes[j + 1]])
                    rates[j] = self._rate(nodes[j], nodes[j + 1], used, interference[j])
        interference.append(own)
        rates.append(self._rate(tx, nxt, resource, own))
        return interference, rates

    def run(
        self,
        nodes: List[int],
        resources: List[CommResource],
        interference: List[float],
        rates: List[float],
    ) -> None:
        bottleneck = min(rates) if rates else math.inf
        if nodes[-1] == self.topo.destination:
            self.best.routes_enumerated += 1
            if bottleneck > self.best.rate:
                self.best.rate = bottleneck
                self.best.nodes = list(nodes)
                self.best.resources = list(resources)
            return
        if self.prune and bottleneck <= self.best.rate:
            self.best.branches_pruned += 1
            return

        visited = set(nodes)
        last = resources[-1] if resources else None
        for nxt in self.topo.active_nodes_sorted:
            if nxt in visited:
                continue
            for resource in self.topo.resources:
                if resource == last:
                    continue
                new_interference, new_rates = self.extend(
                    nodes, resources, interference, rates, nxt, resource
                )
                nodes.append(nxt)
                resources.append(resource)
                self.run(nodes, resources, new_interference, new_rates)
                nodes.pop()
                resources.pop()


def _first_hops(topo: Topology) -> List[Tuple[int, CommResource]]:
    return [
        (node, resource)
        for node in topo.active_nodes_sorted
        if node != topo.source
        for resource in topo.resources
    ]


def _search_branch(job: Tuple[Topology, bool, int, CommResource]) -> _Incumbent:
    topo, prune, nxt, resource = job
    search = _Search(topo, prune)
    nodes, resources = [topo.source], []
    interference, rates = search.extend(nodes, resources, [], [], nxt, resource)
    search.run([topo.source, nxt], [resource], interference, rates)
    return search.best


def exhaustive_optimum(
    topo: Topology,
    max_nodes: int = DEFAULT_MAX_NODES,
    prune: bool = True,
    workers: Optional[int] = None,
) -> OracleResult:
    """
    Best (route, resource assignment) by end-to-end rate.

    Args:
        topo: the instance; its active node count must not exceed `max_nodes`.
        max_nodes: refusal threshold, the search is factorial in the node count.
        prune: skip branches whose partial bottleneck cannot beat the incumbent.
        workers: when > 1, first-hop branches are searched in a process pool.

    Raises:
        OracleGuardError: the instance is larger than `max_nodes`.
    """
    if topo.num_active > max_nodes:
        raise OracleGuardError(topo.num_active, max_nodes)

    with tracer.start_as_current_span("oracle.exhaustive_optimum") as span:
        span.set_attribute(
            SpanAttributes.OPENINFERENCE_SPAN_KIND,
            OpenInferenceSpanKindValues.EVALUATOR.value,
        )
        span.set_attribute("active_nodes", topo.num_active)
        span.set_attribute("prune", prune)

        if workers and workers > 1:
            jobs = [(topo, prune, nxt, r) for nxt, r in _first_hops(topo)]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                branches = list(pool.map(_search_branch, jobs))
            best = _Incumbent()
            for branch in branches:
                best.routes_enumerated += branch.routes_enumerated
                best.branches_pruned += branch.branches_pruned
                if branch.rate > best.rate:
                    best.rate = branch.rate
                    best.nodes = branch.nodes
                    best.resources = branch.resources
        else:
            search = _Search(topo, prune)
            search.run([topo.source], [], [], [])
            best = search.best

        span.set_attribute("rate", best.rate)
        span.set_attribute("routes_enumerated", best.routes_enumerated)

    logger.debug(
        f"oracle: rate={best.rate:.6g} over {best.routes_enumerated} routes "
        f"({best.branches_pruned} branches pruned)"
    )
    return OracleResult(
        nodes=best.nodes,
        resources=best.resources,
        rate=best.rate,
        routes_enumerated=best.routes_enumerated,
        branches_pruned=best.branches_pruned,
    )
