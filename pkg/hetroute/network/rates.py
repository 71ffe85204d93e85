"""SINR, single-hop rate and bottleneck rate with intra-flow interference.

All rates are bits/s. Interference on a hop comes only from other transmitters
of the same flow that use the same communication resource.
"""

import math
from typing import Iterable, List

from hetroute.channel.technology import CommResource, Technology
from hetroute.common.exceptions.route_constraint_error import RouteConstraintError
from hetroute.network.radio import RadioParams
from hetroute.network.route import Route, check_route
from hetroute.network.topology import Topology


def noise_power(tech: Technology, radio: RadioParams) -> float:
    """AWGN power in one subband: Omega * N0 / B (W)."""
    return tech.total_bandwidth * radio.noise_density / tech.num_subbands


def shannon_rate(bandwidth: float, sinr_value: float) -> float:
    return bandwidth * math.log2(1.0 + sinr_value)


def interference_power(
    receiver: int,
    resource: CommResource,
    interferers: Iterable[int],
    topo: Topology,
) -> float:
    """Total power received at `receiver` from `interferers` on `resource` (W).

    Summed in the iteration order of `interferers`.
    """
    if not topo.radio.intra_flow_interference:
        return 0.0
    power = topo.radio.transmit_power
    matrix = topo.channels.matrix(resource.technology_id)
    total = 0.0
    for k in interferers:
        if k == receiver:
            raise RouteConstraintError(
                "receiver transmits", f"node {receiver} listed as its own interferer"
            )
        total += power * float(matrix[k, receiver])
    return total


def sinr(
    receiver: int,
    signal_tx: int,
    resource: CommResource,
    interferers: Iterable[int],
    topo: Topology,
) -> float:
    """P g(tx, rx) / (noise + sum over interferers of P g(k, rx))."""
    if receiver == signal_tx:
        raise RouteConstraintError("self link", f"node {receiver} cannot receive from itself")
    interferers = list(interferers)
    if signal_tx in interferers:
        raise RouteConstraintError(
            "interferer set contains the signal transmitter", f"node {signal_tx}"
        )
    for node in (receiver, signal_tx):
        if node not in topo.active_set:
            raise RouteConstraintError("inactive node", f"node {node}")

    tech = topo.technology(resource.technology_id)
    signal = topo.radio.transmit_power * topo.gain(signal_tx, receiver, tech.id)
    denominator = noise_power(tech, topo.radio) + interference_power(
        receiver, resource, interferers, topo
    )
    return signal / denominator


def link_rate(
    tx: int,
    rx: int,
    resource: CommResource,
    interferers: Iterable[int],
    topo: Topology,
) -> float:
    """(Omega / B) * log2(1 + SINR) in bits/s."""
    tech = topo.technology(resource.technology_id)
    return shannon_rate(tech.subband_bandwidth, sinr(rx, tx, resource, interferers, topo))


def hop_interferers(route: Route, hop: int) -> List[int]:
    """Transmitters of the other hops on the same resource, in route order."""
    resource = route.resources[hop]
    return [
        route.nodes[j]
        for j, other in enumerate(route.resources)
        if j != hop and other == resource
    ]


def hop_rates(route: Route, topo: Topology) -> List[float]:
    """Rate of every hop with full-route interference."""
    check_route(route, topo)
    return [
        link_rate(tx, rx, resource, hop_interferers(route, i), topo)
        for i, (tx, rx, resource) in enumerate(route.hops())
    ]


def end_to_end_rate(route: Route, topo: Topology) -> float:
    """Bottleneck rate: the minimum hop rate of the complete route."""
    return min(hop_rates(route, topo))
