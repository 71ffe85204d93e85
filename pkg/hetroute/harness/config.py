"""Experiment configuration: a pydantic model tree loaded from JSON.

File keys can be overridden with dotted `key=value` pairs before validation,
and every validation problem is reported at once.
"""

import hashlib
import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple, Union

from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, FilePath, ValidationError, model_validator

from hetroute.agent.trainer import TrainingParams
from hetroute.channel.synthetic import SyntheticChannelParams
from hetroute.channel.technology import Technology
from hetroute.common.exceptions.config_validation_error import ConfigValidationError
from hetroute.neighbors.neighbor_set import NeighborStrategy
from hetroute.network.radio import RadioParams

POLICY_NAMES = (
    "dqn",
    "strongest",
    "direction",
    "closest",
    "least_interf",
    "max_rate",
    "direct",
    "widest",
)

# Settings that change how a run executes but not what it produces
EXECUTION_KEYS = ("output_dir", "workers", "event_store_capacity")


class _Section(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class ArenaConfig(_Section):
    width: float = Field(default=250.0, gt=0)  # m
    depth: float = Field(default=250.0, gt=0)  # m
    height: float = Field(default=9.5, gt=0)  # m

    @property
    def size(self) -> Tuple[float, float, float]:
        return (self.width, self.depth, self.height)


class NodesConfig(_Section):
    """Node pool and how each topology picks its active relays.

    `relay_count` fixes the number of active relays; otherwise it is drawn
    uniformly from `relay_count_range` (inclusive) for every topology.
    """

    pool_size: int = Field(default=15, ge=2)
    source_id: int = Field(default=0, ge=0)
    destination_id: int = Field(default=14, ge=0)
    relay_count: Optional[int] = Field(default=None, ge=0)
    relay_count_range: Tuple[int, int] = (5, 13)

    @property
    def relay_pool(self) -> List[int]:
        return [
            n
            for n in range(self.pool_size)
            if n not in (self.source_id, self.destination_id)
        ]


class ChannelConfig(_Section):
    source: Literal["synthetic", "grid"] = "synthetic"
    synthetic: SyntheticChannelParams = Field(default_factory=SyntheticChannelParams)
    grid_file: Optional[FilePath] = None


class EvaluationConfig(_Section):
    topologies: int = Field(default=200, ge=1)


class BenchConfig(_Section):
    topologies: int = Field(default=100, ge=1)
    policies: Tuple[str, ...] = POLICY_NAMES
    candidate_scope: Literal["all", "neighbors"] = "all"
    include_oracle: bool = True


class OracleConfig(_Section):
    topologies: int = Field(default=1, ge=1)
    max_nodes: int = Field(default=9, ge=2)
    prune: bool = True


class SweepConfig(_Section):
    """Grid of training settings for sweep mode.

    `subband_counts` re-splits every technology's bandwidth into that many
    subbands; left empty, the configured technologies are used as they are.
    """

    strategies: Tuple[NeighborStrategy, ...] = tuple(NeighborStrategy)
    neighbor_counts: Tuple[int, ...] = (5,)
    subband_counts: Tuple[int, ...] = ()


def default_technologies() -> Tuple[Technology, ...]:
    return (
        Technology(id=0, center_frequency=400e6, num_subbands=3),
        Technology(id=1, center_frequency=2.4e9, num_subbands=3),
    )


class ExperimentConfig(BaseModel):
    """Everything a run depends on; with `seed` it fully determines the outputs."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = "hetroute"
    seed: int = Field(default=0, ge=0)
    output_dir: Path = Path("runs")
    workers: int = Field(default=1, ge=1)
    policy: str = "dqn"
    checkpoint: Optional[FilePath] = None
    event_store_capacity: Optional[int] = Field(default=10_000, ge=1)

    arena: ArenaConfig = Field(default_factory=ArenaConfig)
    nodes: NodesConfig = Field(default_factory=NodesConfig)
    technologies: Tuple[Technology, ...] = Field(default_factory=default_technologies)
    radio: RadioParams = Field(default_factory=RadioParams)
    channel: ChannelConfig = Field(default_factory=ChannelConfig)
    training: TrainingParams = Field(default_factory=TrainingParams)
    evaluation: EvaluationConfig = Field(default_factory=EvaluationConfig)
    bench: BenchConfig = Field(default_factory=BenchConfig)
    oracle: OracleConfig = Field(default_factory=OracleConfig)
    sweep: SweepConfig = Field(default_factory=SweepConfig)

    @model_validator(mode="after")
    def _validate(self) -> "ExperimentConfig":
        problems = consistency_problems(self)
        if problems:
            raise ValueError("; ".join(problems))
        return self

    def with_subbands(self, num_subbands: int) -> "ExperimentConfig":
        """Same configuration with every technology split into `num_subbands`."""
        technologies = tuple(
            technology.model_copy(update={"num_subbands": num_subbands})
            for technology in self.technologies
        )
        return self.model_copy(update={"technologies": technologies})

    def snapshot(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")

    def run_id(self, mode: str) -> str:
        """Content hash of the mode and every result-bearing setting, seed included."""
        content = {
            key: value
            for key, value in self.snapshot().items()
            if key not in EXECUTION_KEYS
        }
        content["mode"] = mode
        canonical = json.dumps(content, sort_keys=True, separators=(",", ":"))
        return hashlib.sha1(canonical.encode("utf-8")).hexdigest()[:12]


def consistency_problems(config: ExperimentConfig) -> List[str]:
    problems: List[str] = []
    nodes = config.nodes
    for label, node in (("source_id", nodes.source_id), ("destination_id", nodes.destination_id)):
        if node >= nodes.pool_size:
            problems.append(f"nodes.{label} {node} outside a pool of {nodes.pool_size}")
    if nodes.source_id == nodes.destination_id:
        problems.append("nodes.source_id and nodes.destination_id must differ")
    relays = nodes.pool_size - 2
    low, high = nodes.relay_count_range
    if nodes.relay_count is not None and nodes.relay_count > relays:
        problems.append(f"nodes.relay_count {nodes.relay_count} exceeds the {relays} relays in the pool")
    if not 0 <= low <= high:
        problems.append(f"nodes.relay_count_range {nodes.relay_count_range} is not an interval")
    elif nodes.relay_count is None and high > relays:
        problems.append(f"nodes.relay_count_range {nodes.relay_count_range} exceeds the {relays} relays in the pool")
    ids = [t.id for t in config.technologies]
    if not ids:
        problems.append("at least one technology is required")
    if len(set(ids)) != len(ids):
        problems.append(f"duplicate technology ids {ids}")
    if config.channel.source == "grid" and config.channel.grid_file is None:
        problems.append("channel.grid_file is required when channel.source is 'grid'")
    for policy in (config.policy, *config.bench.policies):
        if policy not in POLICY_NAMES:
            problems.append(f"unknown policy '{policy}', expected one of {list(POLICY_NAMES)}")
    if any(n < 1 for n in config.sweep.neighbor_counts):
        problems.append("sweep.neighbor_counts must all be >= 1")
    if any(b < 1 for b in config.sweep.subband_counts):
        problems.append("sweep.subband_counts must all be >= 1")
    return problems


def _parse_value(raw: str) -> Any:
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def apply_overrides(data: Dict[str, Any], overrides: Sequence[str]) -> Dict[str, Any]:
    """Set `dotted.key=value` pairs on a raw config dict; values parse as JSON
    when they can, otherwise stay strings."""
    data = json.loads(json.dumps(data))
    problems: List[str] = []
    for item in overrides:
        key, sep, raw = item.partition("=")
        if not sep or not key:
            problems.append(f"override '{item}' is not of the form key=value")
            continue
        target = data
        *parents, leaf = key.split(".")
        for part in parents:
            child = target.setdefault(part, {})
            if not isinstance(child, dict):
                problems.append(f"override '{key}': '{part}' is not a section")
                break
            target = child
        else:
            target[leaf] = _parse_value(raw)
    if problems:
        raise ConfigValidationError(problems)
    return data


def _format_errors(error: ValidationError) -> List[str]:
    problems = []
    for item in error.errors():
        message = item["msg"].removeprefix("Value error, ")
        if not item["loc"]:
            # cross-field checks arrive joined in one root-level error
            problems.extend(message.split("; "))
            continue
        location = ".".join(str(part) for part in item["loc"])
        problems.append(f"{location}: {message}")
    return problems


def build_config(data: Dict[str, Any], overrides: Sequence[str] = ()) -> ExperimentConfig:
    """
    Validate a raw config dict after applying overrides.

    Raises:
        ConfigValidationError: with one line per problem found.
    """
    data = apply_overrides(data, overrides)
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        problems = _format_errors(e)
        logger.error(f"Invalid configuration: {len(problems)} problem(s)")
        raise ConfigValidationError(problems) from e


def load_config(
    path: Optional[Union[str, Path]] = None, overrides: Sequence[str] = ()
) -> ExperimentConfig:
    """Read a JSON config file (defaults only when `path` is None)."""
    data: Dict[str, Any] = {}
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise ConfigValidationError([f"config file {path} does not exist"])
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as e:
            raise ConfigValidationError([f"{path}: invalid JSON ({e})"]) from e
        if not isinstance(data, dict):
            raise ConfigValidationError([f"{path}: top level must be an object"])
    return build_config(data, overrides)
