"""Exception for invalid channel geometry or gain-grid content."""

from typing import Optional

from hetroute.common.exceptions.hetroute_error import HetRouteError


class ChannelError(HetRouteError):
    """Raised for coincident nodes and for malformed gain grids."""

    def __init__(self, reason: str, detail: Optional[str] = None):
        message = reason if not detail else f"{reason}: {detail}"
        super().__init__(message)
        self.reason = reason
        self.detail = detail
