"""Maximum-bottleneck path with deterministic tie-breaking.

First a Dijkstra variant finds the best achievable bottleneck. Then, over the
edges at least that wide, the path with the fewest hops is walked from the
source, always stepping to the lowest node id that keeps the hop count
minimal. Only positive-weight edges are usable.
"""

import heapq
import math
from typing import Dict, List

import networkx as nx

from hetroute.baselines.link_graph import LinkGraph
from hetroute.common.exceptions.unreachable_error import UnreachableError


def max_bottleneck(graph: LinkGraph, src: int, dst: int) -> float:
    """Widest achievable min-edge weight from src to dst."""
    digraph = graph.digraph
    width: Dict[int, float] = {src: math.inf}
    heap = [(-math.inf, src)]
    done = set()
    while heap:
        neg, node = heapq.heappop(heap)
        if node in done:
            continue
        done.add(node)
        if node == dst:
            return -neg
        for succ in digraph.successors(node):
            weight = digraph[node][succ]["weight"]
            if weight <= 0.0 or succ in done:
                continue
            candidate = min(-neg, weight)
            if candidate > width.get(succ, 0.0):
                width[succ] = candidate
                heapq.heappush(heap, (-candidate, succ))
    raise UnreachableError(src, dst)


def widest_path(graph: LinkGraph, src: int, dst: int) -> List[int]:
    """
    Node path from src to dst whose minimum edge weight is maximal.

    Ties go to the fewest hops, then to the lexicographically smallest node
    sequence.

    Raises:
        UnreachableError: no positive-weight path joins src to dst.
    """
    if src == dst:
        return [src]
    best = max_bottleneck(graph, src, dst)

    digraph = graph.digraph
    wide = nx.subgraph_view(
        digraph, filter_edge=lambda u, v: digraph[u][v]["weight"] >= best
    )
    # hop distance to dst over the wide edges
    hops = nx.single_source_shortest_path_length(nx.reverse_view(wide), dst)

    path = [src]
    node = src
    while node != dst:
        node = min(
            succ for succ in wide.successors(node) if hops.get(succ) == hops[node] - 1
        )
        path.append(node)
    return path
