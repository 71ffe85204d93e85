"""Exception wrapping a failure raised inside a routing policy."""

from hetroute.common.exceptions.hetroute_error import HetRouteError


class PolicyError(HetRouteError):
    """Raised when a decision callback fails; carries the hop index."""

    def __init__(self, policy_name: str, hop_index: int, cause: BaseException):
        super().__init__(f"Policy '{policy_name}' failed at hop {hop_index}: {cause}")
        self.policy_name = policy_name
        self.hop_index = hop_index
        self.cause = cause
