"""`route-sim` command line entry point."""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from loguru import logger

from hetroute.common.containers.container import container
from hetroute.common.event_stores.event_store_in_memory import EventStoreInMemory
from hetroute.common.exceptions.config_validation_error import ConfigValidationError
from hetroute.common.exceptions.hetroute_error import HetRouteError
from hetroute.common.models.run_context import RunContext
from hetroute.harness.config import ExperimentConfig, load_config
from hetroute.harness.results import write_results
from hetroute.harness.runner import MODES, ExperimentResult, ExperimentRunner

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="route-sim",
        description="Train, evaluate and benchmark joint relay/resource routing policies.",
    )
    parser.add_argument("mode", choices=MODES)
    parser.add_argument("--config", type=Path, help="JSON experiment configuration")
    parser.add_argument("--seed", type=int, help="master seed")
    parser.add_argument("--out", type=Path, help="output directory")
    parser.add_argument("--workers", type=int, help="worker processes for evaluation")
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a config key, e.g. --set training.episodes=2000",
    )
    parser.add_argument("--log-level", default="INFO")
    return parser


def cli_overrides(args: argparse.Namespace) -> List[str]:
    overrides = []
    if args.seed is not None:
        overrides.append(f"seed={args.seed}")
    if args.out is not None:
        overrides.append(f"output_dir={args.out.as_posix()}")
    if args.workers is not None:
        overrides.append(f"workers={args.workers}")
    return overrides + list(args.overrides)


def run(mode: str, config: ExperimentConfig) -> ExperimentResult:
    """Register the run's context and event store, then execute `mode`."""
    run_context = RunContext(run_id=config.run_id(mode), mode=mode, seed=config.seed)
    container.register_event_store(
        EventStoreInMemory, EventStoreInMemory(capacity=config.event_store_capacity)
    )
    container.register_run_context(run_context)
    return ExperimentRunner().execute(run_context, config)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logger.remove()
    logger.add(sys.stderr, level=args.log_level.upper())

    try:
        config = load_config(args.config, cli_overrides(args))
        result = run(args.mode, config)
        write_results(result, config, config.output_dir)
    except ConfigValidationError as e:
        logger.error(str(e))
        return EXIT_CONFIG
    except HetRouteError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_FAILURE
    except (OSError, ValueError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
