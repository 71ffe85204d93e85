from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from hetroute.channel.technology import CommResource


class Experience(BaseModel):
    """One decision of a finished episode, labelled with the episode's reward."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    state: np.ndarray
    resource: CommResource
    action: int = Field(ge=0)
    reward: float = Field(ge=0)
    action_mask: Tuple[bool, ...]

    @model_validator(mode="after")
    def _validate(self) -> "Experience":
        if self.action >= len(self.action_mask) or not self.action_mask[self.action]:
            raise ValueError(f"action {self.action} points at a padded slot")
        return self


class ReplayBatch(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    states: np.ndarray
    actions: np.ndarray
    rewards: np.ndarray
    action_masks: np.ndarray


class ReplayBuffer(BaseModel):
    """Fixed-capacity ring of experiences; the oldest entry is overwritten first.

    Storage is allocated on the first push, when the state width is known.
    """

    capacity: int = Field(default=100_000, ge=1)

    _states: Optional[np.ndarray] = PrivateAttr(default=None)
    _actions: Optional[np.ndarray] = PrivateAttr(default=None)
    _rewards: Optional[np.ndarray] = PrivateAttr(default=None)
    _masks: Optional[np.ndarray] = PrivateAttr(default=None)
    _cursor: int = PrivateAttr(default=0)
    _size: int = PrivateAttr(default=0)

    def __len__(self) -> int:
        return self._size

    def _allocate(self, experience: Experience) -> None:
        self._states = np.zeros((self.capacity, experience.state.shape[0]))
        self._actions = np.zeros(self.capacity, dtype=np.int64)
        self._rewards = np.zeros(self.capacity)
        self._masks = np.zeros((self.capacity, len(experience.action_mask)), dtype=bool)

    def push(self, experience: Experience) -> None:
        if self._states is None:
            self._allocate(experience)
        i = self._cursor
        self._states[i] = experience.state
        self._actions[i] = experience.action
        self._rewards[i] = experience.reward
        self._masks[i] = experience.action_mask
        self._cursor = (i + 1) % self.capacity
        self._size = min(self._size + 1, self.capacity)

    def extend(self, experiences: List[Experience]) -> None:
        for experience in experiences:
            self.push(experience)

    def sample(self, batch_size: int, rng: np.random.Generator) -> ReplayBatch:
        """Uniform draw with replacement over the current contents."""
        if self._size == 0:
            raise ValueError("cannot sample from an empty replay buffer")
        idx = rng.integers(0, self._size, size=batch_size)
        return ReplayBatch(
            states=self._states[idx],
            actions=self._actions[idx],
            rewards=self._rewards[idx],
            action_masks=self._masks[idx],
        )
