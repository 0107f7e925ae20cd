"""Deterministic memory cost model.

Structures report an inventory of nodes, pointer fields, integer fields,
sets, maps and 64-bit bitmaps; the model prices them in bytes.  Set
``DYNCONN_MEMMODEL`` to a key=value file to override the defaults.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields


@dataclass
class MemoryModel:
    bytes_per_node_base: int = 16
    bytes_per_link: int = 8
    bytes_per_int: int = 8
    set_base: int = 64
    set_per_entry: int = 8
    map_base: int = 64
    map_per_entry: int = 16
    bitmap64_bytes: int = 8


def model_from_env() -> MemoryModel:
    model = MemoryModel()
    path = os.environ.get("DYNCONN_MEMMODEL")
    if not path:
        return model
    names = {f.name for f in fields(MemoryModel)}
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, val = line.partition("=")
            key = key.strip()
            if key not in names:
                raise ValueError(f"unknown memory-model key {key!r}")
            setattr(model, key, int(val))
    return model


def measure_memory(structure, model: MemoryModel | None = None) -> int:
    """Price the structure's declared container inventory."""
    if model is None:
        model = MemoryModel()
    inv = structure.memory_inventory()
    total = (
        inv.get("nodes", 0) * model.bytes_per_node_base
        + inv.get("links", 0) * model.bytes_per_link
        + inv.get("ints", 0) * model.bytes_per_int
        + inv.get("sets", 0) * model.set_base
        + inv.get("set_entries", 0) * model.set_per_entry
        + inv.get("maps", 0) * model.map_base
        + inv.get("map_entries", 0) * model.map_per_entry
        + inv.get("bitmaps", 0) * model.bitmap64_bytes
    )
    return total
