from hetroute.common.exceptions.hetroute_error import HetRouteError


class TrainingDivergedError(HetRouteError):
    """Raised when the regression loss stops being finite."""

    def __init__(self, episode: int, loss: float):
        super().__init__(f"Training diverged at episode {episode}: loss={loss}")
        self.episode = episode
        self.loss = loss
