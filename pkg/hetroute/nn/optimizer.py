"""Adam update for QNetwork parameters."""

from typing import Dict

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from hetroute.common.exceptions.non_finite_gradient_error import NonFiniteGradientError
from hetroute.common.exceptions.shape_mismatch_error import ShapeMismatchError
from hetroute.nn.q_network import Gradients, QNetwork


class OptimizerState(BaseModel):
    """First/second moment accumulators mirroring the network parameters."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    learning_rate: float = Field(default=1e-4, gt=0)
    beta1: float = Field(default=0.9, ge=0, lt=1)
    beta2: float = Field(default=0.999, ge=0, lt=1)
    epsilon: float = Field(default=1e-8, gt=0)
    step_count: int = 0
    first_moment: Dict[str, np.ndarray]
    second_moment: Dict[str, np.ndarray]

    @classmethod
    def for_network(
        cls,
        net: QNetwork,
        learning_rate: float = 1e-4,
        beta1: float = 0.9,
        beta2: float = 0.999,
        epsilon: float = 1e-8,
    ) -> "OptimizerState":
        return cls(
            learning_rate=learning_rate,
            beta1=beta1,
            beta2=beta2,
            epsilon=epsilon,
            first_moment={k: np.zeros_like(v) for k, v in net.params.items()},
            second_moment={k: np.zeros_like(v) for k, v in net.params.items()},
        )


def check_gradients(net: QNetwork, gradients: Gradients) -> None:
    """Every parameter has a gradient of matching shape with finite entries."""
    for name, param in net.params.items():
        if name not in gradients:
            raise ShapeMismatchError(name, param.shape, ())
        grad = gradients[name]
        if grad.shape != param.shape:
            raise ShapeMismatchError(name, param.shape, grad.shape)
        bad = np.flatnonzero(~np.isfinite(grad))
        if bad.size:
            raise NonFiniteGradientError(name, int(bad[0]))


def step(net: QNetwork, state: OptimizerState, gradients: Gradients) -> QNetwork:
    """
    Apply one bias-corrected Adam update to `net` in place and return it.

    Gradients are checked before anything is touched, so a rejected step leaves
    both the parameters and the moments unchanged.
    """
    check_gradients(net, gradients)
    state.step_count += 1
    t = state.step_count
    correction1 = 1.0 - state.beta1**t
    correction2 = 1.0 - state.beta2**t
    for name, param in net.params.items():
        grad = gradients[name]
        m = state.first_moment[name]
        v = state.second_moment[name]
        m *= state.beta1
        m += (1.0 - state.beta1) * grad
        v *= state.beta2
        v += (1.0 - state.beta2) * grad * grad
        param -= state.learning_rate * (m / correction1) / (
            np.sqrt(v / correction2) + state.epsilon
        )
    return net
