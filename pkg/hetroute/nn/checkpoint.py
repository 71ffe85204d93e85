"""Versioned parameter checkpoint.

The file is a numpy ``.npz`` archive written through a file handle, so any
extension works. It holds one array per parameter plus a ``__meta__`` entry
with the format version and the architecture as JSON.
"""

import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np
from loguru import logger

from hetroute.common.exceptions.shape_mismatch_error import ShapeMismatchError
from hetroute.nn.q_network import QNetwork

CHECKPOINT_VERSION = 1
META_KEY = "__meta__"


def save_checkpoint(
    net: QNetwork,
    path: Union[str, Path],
    extra: Optional[Dict[str, Any]] = None,
) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    meta = {
        "version": CHECKPOINT_VERSION,
        "num_neighbors": net.num_neighbors,
        "trunk_widths": list(net.trunk_widths),
        "stream_widths": list(net.stream_widths),
        "shapes": {name: list(value.shape) for name, value in net.params.items()},
        "extra": extra or {},
    }
    arrays = {name: value for name, value in net.params.items()}
    arrays[META_KEY] = np.array(json.dumps(meta, sort_keys=True))
    with path.open("wb") as handle:
        np.savez(handle, **arrays)
    logger.info(f"Checkpoint written to {path}")
    return path


def read_metadata(path: Union[str, Path]) -> Dict[str, Any]:
    with np.load(Path(path), allow_pickle=False) as archive:
        return json.loads(str(archive[META_KEY]))


def load_checkpoint(
    path: Union[str, Path], expected: Optional[QNetwork] = None
) -> QNetwork:
    """
    Rebuild a QNetwork from a checkpoint.

    Args:
        path: file written by `save_checkpoint`.
        expected: when given, the loaded parameters must have exactly its shapes.

    Raises:
        ValueError: unknown format version.
        ShapeMismatchError: a stored array does not fit the architecture.
    """
    with np.load(Path(path), allow_pickle=False) as archive:
        meta = json.loads(str(archive[META_KEY]))
        if meta.get("version") != CHECKPOINT_VERSION:
            raise ValueError(f"Unsupported checkpoint version {meta.get('version')}")
        shapes = QNetwork.layer_shapes(
            meta["num_neighbors"], meta["trunk_widths"], meta["stream_widths"]
        )
        params: Dict[str, np.ndarray] = {}
        for name, shape in shapes.items():
            if name not in archive.files:
                raise ShapeMismatchError(name, shape, ())
            value = np.array(archive[name], dtype=np.float64)
            if value.shape != shape:
                raise ShapeMismatchError(name, shape, value.shape)
            params[name] = value

    if expected is not None:
        for name, value in expected.params.items():
            actual = params[name].shape if name in params else ()
            if actual != value.shape:
                raise ShapeMismatchError(name, value.shape, actual)
        if set(params) != set(expected.params):
            raise ShapeMismatchError(
                "parameters", tuple(expected.params), tuple(params)
            )

    return QNetwork(
        num_neighbors=meta["num_neighbors"],
        trunk_widths=tuple(meta["trunk_widths"]),
        stream_widths=tuple(meta["stream_widths"]),
        params=params,
    )
