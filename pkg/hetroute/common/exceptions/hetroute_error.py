class HetRouteError(Exception):
    """Base class for every error raised by the simulator."""
