from hetroute.common.exceptions.hetroute_error import HetRouteError


class NonFiniteGradientError(HetRouteError):
    """Raised by the optimizer when a gradient entry is NaN or infinite."""

    def __init__(self, parameter: str, flat_index: int):
        super().__init__(
            f"Non-finite gradient in parameter '{parameter}' at index {flat_index}"
        )
        self.parameter = parameter
        self.flat_index = flat_index
