"""Reading and writing gain grids: CSV `tech_id,tx,rx,gain_linear` with a header."""

import math
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np
import pandas as pd
from loguru import logger

from hetroute.channel.channel_table import ChannelTable
from hetroute.common.exceptions.channel_error import ChannelError

GRID_COLUMNS = ["tech_id", "tx", "rx", "gain_linear"]
_ID_COLUMNS = GRID_COLUMNS[:3]


def _to_float(text: object) -> float:
    # round-trips the writer's %.17g text exactly
    try:
        return float(text)
    except (TypeError, ValueError):
        return math.nan


def _parse_rows(frame: pd.DataFrame) -> pd.DataFrame:
    """Convert the raw string frame to typed columns, reporting the first bad row."""
    numeric = frame[_ID_COLUMNS].apply(pd.to_numeric, errors="coerce")
    numeric["gain_linear"] = frame["gain_linear"].map(_to_float)
    bad = numeric.isna().any(axis=1)
    ids = numeric[_ID_COLUMNS]
    bad |= ~(ids.fillna(-1) == ids.fillna(-1).round()).all(axis=1)
    bad |= (ids.fillna(0) < 0).any(axis=1)
    bad |= ~np.isfinite(numeric["gain_linear"].fillna(0.0))
    if bad.any():
        row = int(np.flatnonzero(bad.to_numpy())[0])
        # +2: one for the header, one for 1-based line numbers
        raise ChannelError(
            "malformed row", f"line {row + 2}: {','.join(map(str, frame.iloc[row]))}"
        )
    parsed = numeric.astype({column: "int64" for column in _ID_COLUMNS})
    return parsed


def load_gain_grid(
    path: Union[str, Path],
    num_nodes: Optional[int] = None,
    technology_ids: Optional[Sequence[int]] = None,
) -> ChannelTable:
    """
    Load a gain grid into a ChannelTable.

    Args:
        path: CSV file with header `tech_id,tx,rx,gain_linear`.
        num_nodes: declared node count; the file must cover exactly nodes
            0..num_nodes-1. Inferred from the largest id when omitted.
        technology_ids: declared technologies; the file must cover exactly
            these. Inferred from the file when omitted.

    Raises:
        ChannelError: malformed row, non-positive gain, incomplete matrix,
            node-count mismatch, technology mismatch or non-reciprocal gain.
    """
    path = Path(path)
    try:
        frame = pd.read_csv(path, dtype=str, skipinitialspace=True)
    except pd.errors.ParserError as e:
        logger.error(f"Failed to parse gain grid {path}: {e}")
        raise ChannelError("malformed row", str(e))

    if [column.strip() for column in frame.columns] != GRID_COLUMNS:
        raise ChannelError("malformed row", f"header {list(frame.columns)}")
    frame.columns = GRID_COLUMNS
    rows = _parse_rows(frame)

    if (rows["gain_linear"] <= 0).any():
        row = int(np.flatnonzero((rows["gain_linear"] <= 0).to_numpy())[0])
        raise ChannelError("non-positive gain", f"line {row + 2}")

    self_links = rows["tx"] == rows["rx"]
    if self_links.any():
        logger.debug(f"Ignoring {int(self_links.sum())} self-link rows in {path}")
        rows = rows[~self_links]

    if rows.duplicated(subset=_ID_COLUMNS).any():
        duplicate = rows[rows.duplicated(subset=_ID_COLUMNS)].iloc[0]
        raise ChannelError(
            "malformed row",
            f"duplicate entry for tech {duplicate.tech_id} link "
            f"{duplicate.tx}->{duplicate.rx}",
        )

    file_nodes = int(max(rows["tx"].max(), rows["rx"].max())) + 1 if len(rows) else 0
    if num_nodes is None:
        num_nodes = file_nodes
    elif file_nodes != num_nodes:
        raise ChannelError(
            "node-count mismatch",
            f"file covers {file_nodes} nodes, {num_nodes} declared",
        )

    file_techs = sorted(int(t) for t in rows["tech_id"].unique())
    if technology_ids is None:
        technology_ids = file_techs
    elif sorted(technology_ids) != file_techs:
        raise ChannelError(
            "technology mismatch",
            f"file has {file_techs}, declared {sorted(technology_ids)}",
        )
    tech_position = {tech_id: k for k, tech_id in enumerate(technology_ids)}

    gains = np.full((len(technology_ids), num_nodes, num_nodes), np.nan)
    gains[
        rows["tech_id"].map(tech_position).to_numpy(),
        rows["tx"].to_numpy(),
        rows["rx"].to_numpy(),
    ] = rows["gain_linear"].to_numpy(dtype=float)
    for k in range(gains.shape[0]):
        np.fill_diagonal(gains[k], 0.0)

    missing = np.argwhere(np.isnan(gains))
    if len(missing):
        k, tx, rx = missing[0]
        raise ChannelError(
            "incomplete matrix",
            f"no gain for tech {technology_ids[k]} link {tx}->{rx} "
            f"({len(missing)} entries missing)",
        )

    transposed = np.transpose(gains, (0, 2, 1))
    if not np.allclose(gains, transposed, rtol=1e-9, atol=0.0):
        k, tx, rx = np.argwhere(~np.isclose(gains, transposed, rtol=1e-9, atol=0.0))[0]
        raise ChannelError(
            "non-reciprocal gain", f"tech {technology_ids[k]} link {tx}<->{rx}"
        )
    # Round-off level asymmetry is averaged away
    gains = 0.5 * (gains + transposed)

    logger.info(
        f"Loaded gain grid {path}: {num_nodes} nodes, technologies {list(technology_ids)}"
    )
    return ChannelTable(technology_ids=tuple(technology_ids), gains=gains)


def write_gain_grid(table: ChannelTable, path: Union[str, Path]) -> None:
    """Write every off-diagonal entry of the table in the gain-grid format."""
    n = table.num_nodes
    tx, rx = np.nonzero(~np.eye(n, dtype=bool))
    frames = [
        pd.DataFrame(
            {
                "tech_id": tech_id,
                "tx": tx,
                "rx": rx,
                "gain_linear": table.matrix(tech_id)[tx, rx],
            }
        )
        for tech_id in table.technology_ids
    ]
    grid = pd.concat(frames, ignore_index=True)[GRID_COLUMNS]
    grid.to_csv(path, index=False, float_format="%.17g")
