"""Experiment orchestration for the train, eval, bench, oracle and sweep modes."""

from typing import Any, Dict, List, Optional

import numpy as np
from loguru import logger
from openinference.semconv.trace import OpenInferenceSpanKindValues
from pydantic import BaseModel, ConfigDict, Field

from hetroute.agent.evaluation import EvaluationReport, evaluate_policy
from hetroute.agent.trainer import TrainingResult, TrainingStreams, train
from hetroute.common.decorators.record_experiment_execution import (
    record_experiment_execution,
)
from hetroute.common.models.run_context import RunContext
from hetroute.harness.config import ExperimentConfig
from hetroute.harness.policies import build_policy
from hetroute.harness.topology_sampler import SeedStreams, TopologySampler
from hetroute.network.topology import Topology
from hetroute.nn.checkpoint import load_checkpoint
from hetroute.nn.q_network import QNetwork
from hetroute.oracle.exhaustive import exhaustive_optimum

MODES = ("train", "eval", "bench", "oracle", "sweep")


class ExperimentResult(BaseModel):
    """What a run produced: the summary, per-episode rows and maybe a network."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    mode: str
    run_id: str
    summary: Dict[str, Any]
    episodes: List[Dict[str, Any]] = Field(default_factory=list)
    net: Optional[QNetwork] = None


def report_summary(report: EvaluationReport) -> Dict[str, Any]:
    return {
        "policy": report.policy_name,
        "episodes": len(report.outcomes),
        "mean_rate": report.mean_rate,
        "mean_delivered_rate": report.mean_delivered_rate,
        "delivery_ratio": report.delivery_ratio,
        **report.percentiles,
    }


def report_rows(report: EvaluationReport) -> List[Dict[str, Any]]:
    return [
        {"policy": report.policy_name, **outcome.model_dump()}
        for outcome in report.outcomes
    ]


class ExperimentRunner(BaseModel):
    """
    Runs one experiment mode from a validated configuration.

    Randomness comes only from the named seed streams of `config.seed`:
    training topologies and evaluation topologies use different streams, so
    held-out instances never come from the training stream.
    """

    name: str = "ExperimentRunner"
    type: str = "ExperimentRunner"
    oi_span_type: OpenInferenceSpanKindValues = OpenInferenceSpanKindValues.CHAIN

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @record_experiment_execution
    def execute(
        self, run_context: RunContext, config: ExperimentConfig
    ) -> ExperimentResult:
        handlers = {
            "train": self.run_train,
            "eval": self.run_eval,
            "bench": self.run_bench,
            "oracle": self.run_oracle,
            "sweep": self.run_sweep,
        }
        if run_context.mode not in handlers:
            raise ValueError(f"unknown mode '{run_context.mode}', expected one of {MODES}")
        logger.info(f"Running {run_context.mode} (run {run_context.run_id})")
        streams = SeedStreams.from_master(config.seed)
        sampler = TopologySampler.from_config(config, streams)
        result = handlers[run_context.mode](run_context, config, streams, sampler)
        result.summary = {
            "mode": run_context.mode,
            "run_id": run_context.run_id,
            "seed": config.seed,
            **result.summary,
        }
        return result

    def eval_topologies(
        self, count: int, streams: SeedStreams, sampler: TopologySampler
    ) -> List[Topology]:
        return sampler.sample_many(count, streams.generator("eval_topologies"))

    def train_network(
        self,
        run_context: RunContext,
        config: ExperimentConfig,
        streams: SeedStreams,
        sampler: TopologySampler,
        params=None,
    ) -> TrainingResult:
        return train(
            params or config.training,
            sampler,
            TrainingStreams(
                topologies=streams.generator("train_topologies"),
                exploration=streams.generator("exploration"),
                init=streams.generator("network_init"),
                replay=streams.generator("replay"),
            ),
            run_context=run_context,
        )

    def trained_or_loaded(
        self,
        run_context: RunContext,
        config: ExperimentConfig,
        streams: SeedStreams,
        sampler: TopologySampler,
    ) -> QNetwork:
        if config.checkpoint is not None:
            logger.info(f"Loading network from {config.checkpoint}")
            return load_checkpoint(config.checkpoint)
        logger.info("No checkpoint configured, training a network first")
        return self.train_network(run_context, config, streams, sampler).net

    def run_train(self, run_context, config, streams, sampler) -> ExperimentResult:
        trained = self.train_network(run_context, config, streams, sampler)
        report = evaluate_policy(
            build_policy("dqn", config, trained.net),
            self.eval_topologies(config.evaluation.topologies, streams, sampler),
            max_hops=config.training.max_hops,
            workers=config.workers,
            run_context=run_context,
        )
        log = trained.log
        tail = log[-max(1, len(log) // 10) :]
        return ExperimentResult(
            mode="train",
            run_id=run_context.run_id,
            summary={
                "training": {
                    "episodes": len(log),
                    "final_epsilon": log[-1].epsilon,
                    "final_loss": log[-1].loss,
                    "tail_delivery_ratio": float(np.mean([r.delivered for r in tail])),
                    "tail_mean_rate": float(np.mean([r.rate for r in tail])),
                },
                "evaluation": report_summary(report),
            },
            episodes=[row.model_dump() for row in log],
            net=trained.net,
        )

    def run_eval(self, run_context, config, streams, sampler) -> ExperimentResult:
        net = None
        if config.policy == "dqn":
            net = self.trained_or_loaded(run_context, config, streams, sampler)
        report = evaluate_policy(
            build_policy(config.policy, config, net),
            self.eval_topologies(config.evaluation.topologies, streams, sampler),
            max_hops=config.training.max_hops,
            workers=config.workers,
            run_context=run_context,
        )
        return ExperimentResult(
            mode="eval",
            run_id=run_context.run_id,
            summary={"evaluation": report_summary(report)},
            episodes=report_rows(report),
            # a network trained here is kept so the run writes its checkpoint
            net=net if config.checkpoint is None else None,
        )

    def run_bench(self, run_context, config, streams, sampler) -> ExperimentResult:
        topologies = self.eval_topologies(config.bench.topologies, streams, sampler)
        net = None
        if "dqn" in config.bench.policies:
            net = self.trained_or_loaded(run_context, config, streams, sampler)

        reports = [
            evaluate_policy(
                build_policy(name, config, net),
                topologies,
                max_hops=config.training.max_hops,
                workers=config.workers,
                run_context=run_context,
            )
            for name in config.bench.policies
        ]
        summary: Dict[str, Any] = {"table": [report_summary(r) for r in reports]}
        rows = [row for report in reports for row in report_rows(report)]

        if config.bench.include_oracle:
            feasible = [
                i for i, t in enumerate(topologies) if t.num_active <= config.oracle.max_nodes
            ]
            oracle_rates = [
                exhaustive_optimum(
                    topologies[i],
                    max_nodes=config.oracle.max_nodes,
                    prune=config.oracle.prune,
                    workers=config.workers,
                ).rate
                for i in feasible
            ]
            oracle_mean = float(np.mean(oracle_rates)) if oracle_rates else 0.0
            summary["oracle"] = {
                "topologies": len(feasible),
                "mean_rate": oracle_mean,
                "policies": {
                    report.policy_name: self._subset_comparison(report, feasible, oracle_mean)
                    for report in reports
                },
            }
            rows.extend(
                {
                    "policy": "oracle",
                    "topology_index": i,
                    "delivered": True,
                    "rate": rate,
                    "hops": None,
                    "failure_reason": None,
                }
                for i, rate in zip(feasible, oracle_rates)
            )
        return ExperimentResult(
            mode="bench", run_id=run_context.run_id, summary=summary, episodes=rows, net=net
        )

    @staticmethod
    def _subset_comparison(
        report: EvaluationReport, subset: List[int], oracle_mean: float
    ) -> Dict[str, float]:
        rates = [report.outcomes[i].rate for i in subset]
        mean = float(np.mean(rates)) if rates else 0.0
        return {
            "mean_rate": mean,
            "fraction_of_oracle": mean / oracle_mean if oracle_mean > 0 else 0.0,
        }

    def run_oracle(self, run_context, config, streams, sampler) -> ExperimentResult:
        topologies = self.eval_topologies(config.oracle.topologies, streams, sampler)
        results = [
            exhaustive_optimum(
                topo,
                max_nodes=config.oracle.max_nodes,
                prune=config.oracle.prune,
                workers=config.workers,
            )
            for topo in topologies
        ]
        return ExperimentResult(
            mode="oracle",
            run_id=run_context.run_id,
            summary={"optima": [r.to_dict() for r in results]},
            episodes=[
                {
                    "topology_index": i,
                    "rate": r.rate,
                    "hops": len(r.resources),
                    "route": " ".join(str(n) for n in r.nodes),
                    "resources": " ".join(str(x) for x in r.resources),
                    "routes_enumerated": r.routes_enumerated,
                }
                for i, r in enumerate(results)
            ],
        )

    def run_sweep(self, run_context, config, streams, sampler) -> ExperimentResult:
        table: List[Dict[str, Any]] = []
        rows: List[Dict[str, Any]] = []
        for num_subbands in config.sweep.subband_counts or (None,):
            base, cell_sampler, suffix, extra = config, sampler, "", {}
            if num_subbands is not None:
                # same layout and seeds, only the spectrum split changes
                base = config.with_subbands(num_subbands)
                cell_sampler = TopologySampler.from_config(base, streams)
                suffix, extra = f"-b{num_subbands}", {"num_subbands": num_subbands}
            topologies = self.eval_topologies(
                config.evaluation.topologies, streams, cell_sampler
            )
            for strategy in config.sweep.strategies:
                for n_e in config.sweep.neighbor_counts:
                    label = f"{strategy.value}-ne{n_e}{suffix}"
                    logger.info(f"Sweep cell {label}")
                    params = config.training.model_copy(
                        update={"neighbor_strategy": strategy, "num_neighbors": n_e}
                    )
                    trained = self.train_network(
                        run_context, base, streams, cell_sampler, params
                    )
                    cell_config = base.model_copy(update={"training": params})
                    policy = build_policy("dqn", cell_config, trained.net)
                    policy.name = label
                    report = evaluate_policy(
                        policy,
                        topologies,
                        max_hops=params.max_hops,
                        workers=config.workers,
                        run_context=run_context,
                    )
                    table.append(
                        {
                            "neighbor_strategy": strategy.value,
                            "num_neighbors": n_e,
                            **extra,
                            **report_summary(report),
                        }
                    )
                    rows.extend(report_rows(report))
        return ExperimentResult(
            mode="sweep", run_id=run_context.run_id, summary={"table": table}, episodes=rows
        )
