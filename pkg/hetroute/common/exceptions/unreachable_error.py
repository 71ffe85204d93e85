from hetroute.common.exceptions.hetroute_error import HetRouteError


class UnreachableError(HetRouteError):
    """Raised when no positive-weight path joins two nodes."""

    def __init__(self, source: int, destination: int):
        super().__init__(f"Node {destination} is unreachable from node {source}")
        self.source = source
        self.destination = destination
