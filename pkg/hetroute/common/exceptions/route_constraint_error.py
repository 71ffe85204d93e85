"""Exception for routes or decisions that break the loop/resource constraints."""

from hetroute.common.exceptions.hetroute_error import HetRouteError


class RouteConstraintError(HetRouteError):
    """Raised when a route or a decision violates a routing constraint."""

    def __init__(self, constraint: str, detail: str = ""):
        super().__init__(f"{constraint}: {detail}" if detail else constraint)
        self.constraint = constraint
        self.detail = detail
