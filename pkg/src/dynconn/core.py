"""Common interface for the ten connectivity structures."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import UnknownStructure

# Insert outcomes
NEW_TREE_EDGE = "new_tree_edge"
NEW_NONTREE_EDGE = "new_nontree_edge"
DUPLICATE_IGNORED = "duplicate_ignored"
# Delete outcomes
NONTREE_REMOVED = "nontree_removed"
SPLIT_RECONNECTED = "split_reconnected"
SPLIT_PERMANENT = "split_permanent"
MISSING_IGNORED = "missing_ignored"


@dataclass(frozen=True)
class UpdateOutcome:
    kind: str
    replacement: Optional[tuple[int, int]] = None


OUT_NEW_TREE = UpdateOutcome(NEW_TREE_EDGE)
OUT_NEW_NONTREE = UpdateOutcome(NEW_NONTREE_EDGE)
OUT_DUPLICATE = UpdateOutcome(DUPLICATE_IGNORED)
OUT_NONTREE_REMOVED = UpdateOutcome(NONTREE_REMOVED)
OUT_SPLIT_PERMANENT = UpdateOutcome(SPLIT_PERMANENT)
OUT_MISSING = UpdateOutcome(MISSING_IGNORED)


def reconnected(replacement: tuple[int, int]) -> UpdateOutcome:
    return UpdateOutcome(SPLIT_RECONNECTED, replacement)


@dataclass
class StructureStats:
    node_count: int = 0
    max_height: int = 0
    level_histogram: list[int] = field(default_factory=list)
    memory_bytes: int = 0


class ConnectivityStructure:
    """Base class: insert_edge / delete_edge / connected / stats.

    ``connected`` must answer queries without changing the represented
    forest; the link-cut tree is allowed to splay internally.  Deleting an
    absent edge and re-inserting a present one are tolerated, matching
    workload-replay semantics.
    """

    name = "abstract"

    def insert_edge(self, u: int, v: int) -> UpdateOutcome:
        raise NotImplementedError

    def delete_edge(self, u: int, v: int) -> UpdateOutcome:
        raise NotImplementedError

    def connected(self, u: int, v: int) -> bool:
        raise NotImplementedError

    def stats(self) -> StructureStats:
        raise NotImplementedError

    def component_labels(self) -> dict[int, int]:
        """Vertex -> component representative, as induced by ``connected``.

        Verification hook: every structure answers ``connected(u, v)`` by
        comparing root representatives, so two vertices share a label here
        exactly when ``connected`` would return True for them.
        """
        raise NotImplementedError

    def audit(self) -> None:
        """Check internal invariants; raises AssertionError on violation."""

    def memory_inventory(self) -> dict[str, int]:
        """Container/field counts consumed by the memory cost model."""
        raise NotImplementedError


STRUCTURE_NAMES = ("dtree", "lct", "hks", "hk", "hdt", "st", "stv", "lt", "ltv", "lzt")


def make_structure(name: str, seed: int = 0, beta: int = 2) -> ConnectivityStructure:
    """Instantiate one of the ten structures by name."""
    from . import dtree, euler, localtree, lct, structural

    if name == "dtree":
        return dtree.DTree()
    if name == "lct":
        return lct.LinkCutForest()
    if name == "hks":
        return euler.HKS(seed=seed)
    if name == "hk":
        return euler.HK(seed=seed)
    if name == "hdt":
        return euler.HDT(seed=seed)
    if name == "st":
        return structural.ST()
    if name == "stv":
        return structural.STV()
    if name == "lt":
        return localtree.LT()
    if name == "ltv":
        return localtree.LTV()
    if name == "lzt":
        return localtree.LzT(beta=beta)
    raise UnknownStructure(name)
