from hetroute.common.exceptions.hetroute_error import HetRouteError


class OracleGuardError(HetRouteError):
    """Raised when an instance is too large for exhaustive search."""

    def __init__(self, active_nodes: int, max_nodes: int):
        super().__init__(
            f"Instance has {active_nodes} active nodes, above the max_nodes guard "
            f"of {max_nodes}; exhaustive search refused"
        )
        self.active_nodes = active_nodes
        self.max_nodes = max_nodes
