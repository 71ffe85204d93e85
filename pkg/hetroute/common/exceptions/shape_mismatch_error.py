from hetroute.common.exceptions.hetroute_error import HetRouteError


class ShapeMismatchError(HetRouteError):
    """Raised when an input or a checkpoint does not fit the network shapes."""

    def __init__(self, name: str, expected: tuple, actual: tuple):
        super().__init__(f"Shape mismatch for '{name}': expected {expected}, got {actual}")
        self.name = name
        self.expected = expected
        self.actual = actual
