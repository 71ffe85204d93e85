"""Episode loop that fits the shared Q-network to end-to-end route rates.

Every decision of an episode is stored with the same label: the bottleneck
rate of the route it produced, divided by `reference_rate`, or
`failure_reward` when the flow never reached the destination. No bootstrapped
target is used, so `gamma` is carried for completeness only.
"""

import math
from typing import Callable, List, Optional, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field

from hetroute.agent.dqn_policy import DQNPolicy
from hetroute.agent.features import FeatureScaling
from hetroute.agent.replay_buffer import Experience, ReplayBuffer
from hetroute.common.exceptions.training_diverged_error import TrainingDivergedError
from hetroute.common.models.run_context import RunContext
from hetroute.neighbors.neighbor_set import NeighborStrategy
from hetroute.network.topology import Topology
from hetroute.nn.optimizer import OptimizerState, step
from hetroute.nn.q_network import STREAM_WIDTHS, TRUNK_WIDTHS, QNetwork
from hetroute.routing.episode import EpisodeResult, run_episode

TopologySampler = Callable[[np.random.Generator], Topology]


class EpsilonSchedule(BaseModel):
    """Linear decay from `start` to `end` over the first `decay_fraction` of
    the episodes, then 0 for the rest of training."""

    model_config = ConfigDict(frozen=True)

    start: float = Field(default=1.0, ge=0, le=1)
    end: float = Field(default=0.05, ge=0, le=1)
    decay_fraction: float = Field(default=0.8, ge=0, le=1)

    def decay_episodes(self, total_episodes: int) -> int:
        return int(round(self.decay_fraction * total_episodes))

    def value(self, episode: int, total_episodes: int) -> float:
        decay = self.decay_episodes(total_episodes)
        if episode >= decay:
            return 0.0
        if decay == 1:
            return self.start
        return self.start + (self.end - self.start) * episode / (decay - 1)


class TrainingParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    episodes: int = Field(default=50_000, ge=1)
    num_neighbors: int = Field(default=5, ge=1)
    neighbor_strategy: NeighborStrategy = NeighborStrategy.RATE
    trunk_widths: Tuple[int, ...] = TRUNK_WIDTHS
    stream_widths: Tuple[int, ...] = STREAM_WIDTHS
    learning_rate: float = Field(default=2.5e-4, gt=0)
    beta1: float = 0.9
    beta2: float = 0.999
    adam_epsilon: float = 1e-8
    batch_size: int = Field(default=256, ge=1)
    # roughly the decisions of the last 7.5k episodes
    replay_capacity: int = Field(default=30_000, ge=1)
    gradient_steps: int = Field(default=2, ge=0)
    reference_rate: float = Field(default=1e7, gt=0)
    failure_reward: float = Field(default=0.0, ge=0)
    gamma: float = Field(default=0.0, ge=0, le=1)
    epsilon: EpsilonSchedule = Field(default_factory=EpsilonSchedule)
    scaling: FeatureScaling = Field(default_factory=FeatureScaling)
    max_hops: Optional[int] = None
    log_every: int = Field(default=1000, ge=1)


class TrainingStreams(BaseModel):
    """Independent generators for each source of randomness in training."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    topologies: np.random.Generator
    exploration: np.random.Generator
    init: np.random.Generator
    replay: np.random.Generator

    @classmethod
    def from_seed(cls, seed) -> "TrainingStreams":
        children = np.random.SeedSequence(seed).spawn(4)
        topologies, exploration, init, replay = (
            np.random.default_rng(child) for child in children
        )
        return cls(
            topologies=topologies, exploration=exploration, init=init, replay=replay
        )


class EpisodeLog(BaseModel):
    episode: int
    epsilon: float
    reward: float
    loss: Optional[float]
    hops: int
    delivered: bool
    rate: float


class TrainingResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    net: QNetwork
    log: List[EpisodeLog]


def episode_experiences(
    result: EpisodeResult, reward: float
) -> List[Experience]:
    """Every learned decision of the episode, labelled with the same reward."""
    return [
        Experience(
            state=hop.decision.observation,
            resource=hop.decision.resource,
            action=hop.decision.slot,
            reward=reward,
            action_mask=hop.decision.slot_mask,
        )
        for hop in result.trace
        if hop.decision.observation is not None and hop.decision.slot is not None
    ]


def episode_reward(result: EpisodeResult, params: TrainingParams) -> float:
    if not result.delivered:
        return params.failure_reward
    return result.rate / params.reference_rate


def regression_step(
    net: QNetwork,
    optimizer: OptimizerState,
    buffer: ReplayBuffer,
    batch_size: int,
    rng: np.random.Generator,
    episode: int,
) -> float:
    """One Adam step on a uniformly sampled minibatch; returns the loss."""
    batch = buffer.sample(batch_size, rng)
    loss, gradients = net.loss_and_gradients(
        batch.states, batch.actions, batch.rewards, batch.action_masks
    )
    if not math.isfinite(loss):
        raise TrainingDivergedError(episode, loss)
    step(net, optimizer, gradients)
    return loss


def train(
    params: TrainingParams,
    sampler: TopologySampler,
    streams: TrainingStreams,
    net: Optional[QNetwork] = None,
    run_context: Optional[RunContext] = None,
    on_episode: Optional[Callable[[EpisodeLog], None]] = None,
) -> TrainingResult:
    """
    Train the shared Q-network over `params.episodes` sampled topologies.

    Args:
        params: training hyper-parameters.
        sampler: draws one topology from the generator it is handed.
        streams: random streams for topologies, exploration, init and replay.
        net: starting network; a fresh one is initialized when omitted.
        run_context: context for the episode events.
        on_episode: called with every log row as it is produced.

    Raises:
        TrainingDivergedError: the regression loss stopped being finite.
    """
    if net is None:
        net = QNetwork.initialize(
            params.num_neighbors,
            streams.init,
            params.trunk_widths,
            params.stream_widths,
        )
    optimizer = OptimizerState.for_network(
        net,
        learning_rate=params.learning_rate,
        beta1=params.beta1,
        beta2=params.beta2,
        epsilon=params.adam_epsilon,
    )
    buffer = ReplayBuffer(capacity=params.replay_capacity)
    policy = (
        DQNPolicy.Builder()
        .name("DQNPolicy.train")
        .net(net)
        .strategy(params.neighbor_strategy)
        .scaling(params.scaling)
        .rng(streams.exploration)
        .build()
    )

    logger.info(
        f"Training for {params.episodes} episodes "
        f"(Ne={params.num_neighbors}, strategy={params.neighbor_strategy.value})"
    )
    log: List[EpisodeLog] = []
    for episode in range(params.episodes):
        policy.epsilon = params.epsilon.value(episode, params.episodes)
        topo = sampler(streams.topologies)
        result = run_episode(topo, policy, params.max_hops, run_context=run_context)
        reward = episode_reward(result, params)
        buffer.extend(episode_experiences(result, reward))

        loss: Optional[float] = None
        if len(buffer) > 0:
            for _ in range(params.gradient_steps):
                loss = regression_step(
                    net, optimizer, buffer, params.batch_size, streams.replay, episode
                )

        row = EpisodeLog(
            episode=episode,
            epsilon=policy.epsilon,
            reward=reward,
            loss=loss,
            hops=result.hops,
            delivered=result.delivered,
            rate=result.rate,
        )
        log.append(row)
        if on_episode is not None:
            on_episode(row)
        if (episode + 1) % params.log_every == 0:
            recent = log[-params.log_every :]
            delivered = [r.rate for r in recent if r.delivered]
            logger.info(
                f"episode {episode + 1}/{params.episodes} eps={policy.epsilon:.3f} "
                f"delivery={len(delivered) / len(recent):.3f} "
                f"mean_rate={np.mean(delivered) if delivered else 0.0:.4g}"
            )
        else:
            logger.debug(
                f"episode {episode} reward={reward:.4g} hops={result.hops} loss={loss}"
            )

    return TrainingResult(net=net, log=log)
