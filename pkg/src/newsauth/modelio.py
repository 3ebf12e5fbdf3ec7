"""Versioned binary container for neural model artifacts.

Layout: 4-byte magic, u32 format version, u32 header length, UTF-8 JSON
header, then the raw tensor bytes.  The header echoes the model kind,
its configuration, any preprocessing state (feature scaler bounds or
the tag vocabulary) and a manifest of tensor names/shapes in a fixed
order, which makes the file bytes a pure function of its contents.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

MAGIC = b"NANN"
FORMAT_VERSION = 1


def save_model(path: str | Path, kind: str, config: dict, params: dict[str, np.ndarray],
               preprocessing: dict | None = None, training_log: list | None = None) -> None:
    names = sorted(params)
    header = {
        "kind": kind,
        "config": config,
        "preprocessing": preprocessing or {},
        "training_log": training_log or [],
        "tensors": [
            {"name": n, "shape": list(params[n].shape), "dtype": "float64"} for n in names
        ],
    }
    header_bytes = json.dumps(header, sort_keys=True).encode("utf-8")
    with open(path, "wb") as handle:
        handle.write(MAGIC)
        handle.write(struct.pack("<II", FORMAT_VERSION, len(header_bytes)))
        handle.write(header_bytes)
        for name in names:
            handle.write(np.ascontiguousarray(params[name], dtype="<f8").tobytes())


def load_model(path: str | Path) -> tuple[dict, dict[str, np.ndarray]]:
    """Returns (header, params)."""
    data = Path(path).read_bytes()
    if data[:4] != MAGIC:
        raise ValueError(f"{path}: not a neural model file")
    version, header_len = struct.unpack_from("<II", data, 4)
    if version != FORMAT_VERSION:
        raise ValueError(f"{path}: unsupported format version {version}")
    header = json.loads(data[12:12 + header_len].decode("utf-8"))
    offset = 12 + header_len
    params = {}
    for spec in header["tensors"]:
        shape = tuple(spec["shape"])
        count = int(np.prod(shape)) if shape else 1
        array = np.frombuffer(data, dtype="<f8", count=count, offset=offset).reshape(shape)
        params[spec["name"]] = array.copy()
        offset += count * 8
    return header, params
