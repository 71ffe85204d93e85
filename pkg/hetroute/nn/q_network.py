"""Dueling Q-network on numpy with hand-written backpropagation.

Layout: a ReLU trunk, then a value stream ending in one unit and an advantage
stream ending in one unit per neighbor slot, recombined as
Q = V + A - mean(A). Parameters are float64 so gradients can be checked
against finite differences.
"""

import copy
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from hetroute.common.exceptions.shape_mismatch_error import ShapeMismatchError

FEATURES_PER_NEIGHBOR = 4
TRUNK_WIDTHS = (300, 300, 300)
STREAM_WIDTHS = (300, 150)

Gradients = Dict[str, np.ndarray]
# (input, pre-activation) of every dense layer of one stack
_StackCache = List[Tuple[np.ndarray, np.ndarray]]


def _stack_names(prefix: str, num_layers: int) -> List[Tuple[str, str]]:
    return [(f"{prefix}.{i}.weight", f"{prefix}.{i}.bias") for i in range(num_layers)]


class QNetwork(BaseModel):
    """Dueling MLP shared by every node and every communication resource."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    num_neighbors: int
    trunk_widths: Tuple[int, ...] = TRUNK_WIDTHS
    stream_widths: Tuple[int, ...] = STREAM_WIDTHS
    params: Dict[str, np.ndarray]

    @property
    def input_width(self) -> int:
        return FEATURES_PER_NEIGHBOR * self.num_neighbors

    @classmethod
    def layer_shapes(
        cls,
        num_neighbors: int,
        trunk_widths: Sequence[int] = TRUNK_WIDTHS,
        stream_widths: Sequence[int] = STREAM_WIDTHS,
    ) -> Dict[str, Tuple[int, ...]]:
        """Parameter name -> shape, in the order parameters are stored."""
        shapes: Dict[str, Tuple[int, ...]] = {}
        widths = [FEATURES_PER_NEIGHBOR * num_neighbors, *trunk_widths]
        for (w, b), fan_in, fan_out in zip(
            _stack_names("trunk", len(trunk_widths)), widths[:-1], widths[1:]
        ):
            shapes[w], shapes[b] = (fan_in, fan_out), (fan_out,)
        for prefix, outputs in (("value", 1), ("advantage", num_neighbors)):
            widths = [trunk_widths[-1], *stream_widths, outputs]
            for (w, b), fan_in, fan_out in zip(
                _stack_names(prefix, len(stream_widths) + 1), widths[:-1], widths[1:]
            ):
                shapes[w], shapes[b] = (fan_in, fan_out), (fan_out,)
        return shapes

    @classmethod
    def initialize(
        cls,
        num_neighbors: int,
        rng: np.random.Generator,
        trunk_widths: Sequence[int] = TRUNK_WIDTHS,
        stream_widths: Sequence[int] = STREAM_WIDTHS,
    ) -> "QNetwork":
        """Uniform fan-in weights U(-1/sqrt(fan_in), 1/sqrt(fan_in)), zero biases."""
        params: Dict[str, np.ndarray] = {}
        for name, shape in cls.layer_shapes(
            num_neighbors, trunk_widths, stream_widths
        ).items():
            if name.endswith(".weight"):
                bound = 1.0 / np.sqrt(shape[0])
                params[name] = rng.uniform(-bound, bound, size=shape)
            else:
                params[name] = np.zeros(shape)
        return cls(
            num_neighbors=num_neighbors,
            trunk_widths=tuple(trunk_widths),
            stream_widths=tuple(stream_widths),
            params=params,
        )

    def snapshot(self) -> "QNetwork":
        """Independent copy of the parameters, safe to hand to evaluators."""
        return QNetwork(
            num_neighbors=self.num_neighbors,
            trunk_widths=self.trunk_widths,
            stream_widths=self.stream_widths,
            params=copy.deepcopy(self.params),
        )

    def _check_input(self, states: np.ndarray) -> np.ndarray:
        states = np.asarray(states, dtype=np.float64)
        if states.shape[-1] != self.input_width or states.ndim not in (1, 2):
            raise ShapeMismatchError(
                "state", ("batch?", self.input_width), tuple(states.shape)
            )
        if not np.all(np.isfinite(states)):
            raise ValueError("state vector contains non-finite entries")
        return states

    def _stack_forward(
        self, prefix: str, num_layers: int, h: np.ndarray, relu_last: bool
    ) -> Tuple[np.ndarray, _StackCache]:
        cache: _StackCache = []
        for i, (w, b) in enumerate(_stack_names(prefix, num_layers)):
            z = h @ self.params[w] + self.params[b]
            cache.append((h, z))
            h = np.maximum(z, 0.0) if (relu_last or i < num_layers - 1) else z
        return h, cache

    def _stack_backward(
        self,
        prefix: str,
        num_layers: int,
        grad_out: np.ndarray,
        cache: _StackCache,
        relu_last: bool,
        grads: Gradients,
    ) -> np.ndarray:
        names = _stack_names(prefix, num_layers)
        grad = grad_out
        for i in reversed(range(num_layers)):
            w, b = names[i]
            h_in, z = cache[i]
            if relu_last or i < num_layers - 1:
                grad = grad * (z > 0)
            grads[w] = h_in.T @ grad
            grads[b] = grad.sum(axis=0)
            grad = grad @ self.params[w].T
        return grad

    def _forward_with_cache(self, states: np.ndarray):
        trunk_out, trunk_cache = self._stack_forward(
            "trunk", len(self.trunk_widths), states, relu_last=True
        )
        stream_layers = len(self.stream_widths) + 1
        value, value_cache = self._stack_forward(
            "value", stream_layers, trunk_out, relu_last=False
        )
        advantage, advantage_cache = self._stack_forward(
            "advantage", stream_layers, trunk_out, relu_last=False
        )
        q = value + advantage - advantage.mean(axis=1, keepdims=True)
        return q, value, advantage, (trunk_cache, value_cache, advantage_cache)

    def forward(self, state: np.ndarray) -> np.ndarray:
        """Q-values (Ne,) for one state vector (4·Ne,), or (B, Ne) for a batch (B, 4·Ne)."""
        states = self._check_input(state)
        single = states.ndim == 1
        q, _, _, _ = self._forward_with_cache(np.atleast_2d(states))
        return q[0] if single else q

    def value_and_advantage(self, state: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """The two streams before aggregation, for a batch of states."""
        states = np.atleast_2d(self._check_input(state))
        _, value, advantage, _ = self._forward_with_cache(states)
        return value[:, 0], advantage

    def loss_and_gradients(
        self,
        states: np.ndarray,
        actions: np.ndarray,
        targets: np.ndarray,
        action_masks: Optional[np.ndarray] = None,
    ) -> Tuple[float, Gradients]:
        """
        Mean squared error between Q[action] and the target over the batch.

        Args:
            states: (B, 4*Ne) state vectors.
            actions: (B,) slot indices.
            targets: (B,) regression targets.
            action_masks: optional (B, Ne) booleans, False on padded slots.

        Raises:
            ValueError: an action points at a padded slot or lies out of range.
        """
        states = np.atleast_2d(self._check_input(states))
        actions = np.asarray(actions, dtype=np.int64).reshape(-1)
        targets = np.asarray(targets, dtype=np.float64).reshape(-1)
        batch = states.shape[0]
        if actions.shape[0] != batch or targets.shape[0] != batch:
            raise ShapeMismatchError(
                "batch", (batch,), (actions.shape[0], targets.shape[0])
            )
        if np.any(actions < 0) or np.any(actions >= self.num_neighbors):
            raise ValueError(f"action index out of range [0, {self.num_neighbors})")
        if action_masks is not None:
            masks = np.asarray(action_masks, dtype=bool).reshape(batch, -1)
            picked = masks[np.arange(batch), actions]
            if not np.all(picked):
                sample = int(np.flatnonzero(~picked)[0])
                raise ValueError(
                    f"sample {sample} uses masked slot {int(actions[sample])}"
                )

        q, _, _, (trunk_cache, value_cache, advantage_cache) = (
            self._forward_with_cache(states)
        )
        rows = np.arange(batch)
        error = q[rows, actions] - targets
        loss = float(np.mean(error**2))

        grad_q = np.zeros_like(q)
        grad_q[rows, actions] = 2.0 * error / batch
        grad_value = grad_q.sum(axis=1, keepdims=True)
        grad_advantage = grad_q - grad_q.mean(axis=1, keepdims=True)

        grads: Gradients = {}
        stream_layers = len(self.stream_widths) + 1
        grad_trunk = self._stack_backward(
            "value", stream_layers, grad_value, value_cache, False, grads
        )
        grad_trunk = grad_trunk + self._stack_backward(
            "advantage", stream_layers, grad_advantage, advantage_cache, False, grads
        )
        self._stack_backward(
            "trunk", len(self.trunk_widths), grad_trunk, trunk_cache, True, grads
        )
        return loss, {name: grads[name] for name in self.params}
