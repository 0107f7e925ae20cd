"""Fully-dynamic graph connectivity structures behind one interface."""

from .core import (
    ConnectivityStructure,
    STRUCTURE_NAMES,
    StructureStats,
    UpdateOutcome,
    make_structure,
)
from .graph import normalize_edge
from .oracle import OracleGraph

__all__ = [
    "ConnectivityStructure",
    "OracleGraph",
    "STRUCTURE_NAMES",
    "StructureStats",
    "UpdateOutcome",
    "make_structure",
    "normalize_edge",
]
