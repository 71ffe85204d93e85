"""Results bundle written for every run.

<out>/<run_id>/
    config.snapshot.json   validated configuration, seed included
    summary.json           summary statistics, byte-stable across reruns
    episodes.csv           one row per training episode or evaluated topology
    checkpoint.bin         network parameters, when the run produced a network
"""

import json
from pathlib import Path
from typing import Any, Dict

import pandas as pd
from loguru import logger

from hetroute.harness.config import ExperimentConfig
from hetroute.harness.runner import ExperimentResult
from hetroute.nn.checkpoint import save_checkpoint

SNAPSHOT_FILE = "config.snapshot.json"
SUMMARY_FILE = "summary.json"
EPISODES_FILE = "episodes.csv"
CHECKPOINT_FILE = "checkpoint.bin"


def dump_json(data: Dict[str, Any], path: Path) -> None:
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")


def write_results(
    result: ExperimentResult, config: ExperimentConfig, out_dir: Path
) -> Path:
    """Write the bundle under `out_dir / result.run_id` and return that directory."""
    run_dir = Path(out_dir) / result.run_id
    try:
        run_dir.mkdir(parents=True, exist_ok=True)
        dump_json(config.snapshot(), run_dir / SNAPSHOT_FILE)
        dump_json(result.summary, run_dir / SUMMARY_FILE)
        pd.DataFrame(result.episodes).to_csv(run_dir / EPISODES_FILE, index=False)
        if result.net is not None:
            save_checkpoint(
                result.net,
                run_dir / CHECKPOINT_FILE,
                extra={"run_id": result.run_id, "seed": config.seed},
            )
    except OSError as e:
        logger.error(f"Could not write results to {run_dir}: {e}")
        raise
    logger.info(f"Results written to {run_dir}")
    return run_dir
