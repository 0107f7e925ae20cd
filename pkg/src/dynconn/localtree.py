"""Local trees: structural trees re-shaped as height-bounded binary trees.

Below every super node the structural children are grouped into rank
trees (two nodes of equal rank pair up under a fresh parent, rank =
floor(log2(nl))), and the at most log n remaining rank roots hang off a
path of connecting nodes with larger ranks closer to the super node.
Every node carries per-level bit masks saying whether some leaf below has
a tree / non-tree neighbor on that level, so replacement searches descend
only into marked subtrees.

``LT`` keeps two bitmaps per node, ``LTV`` keeps a single merged bitmap
(and pays kind probes while scanning), ``LzT`` stages children with
nl < beta in a buffer subtree on the left branch of each super node and
moves the buffer wholesale into the lazy (right) branch as a bottom tree
once it reaches beta leaves.
"""

from __future__ import annotations

from .core import StructureStats
from .errors import BitUnset, NotAChild, RankMismatch, UnsortedInput
from .graph import NONTREE, TREE
from .structural import RecursiveForestBase

LEAF = 0
SUPER = 1
RANK = 2
CONN = 3
DEAD = 4


class LtNode:
    __slots__ = (
        "key", "kind", "left", "right", "parent",
        "nl", "rank", "level", "bm_t", "bm_nt", "bottom", "serial",
    )

    def __init__(self, key: int, kind: int, serial: int, level: int = -1):
        self.key = key
        self.kind = kind
        self.left = None
        self.right = None
        self.parent = None
        self.nl = 1
        self.rank = 0
        self.level = level
        self.bm_t = 0
        self.bm_nt = 0
        self.bottom = False
        self.serial = serial


def _pair_order(a: LtNode, b: LtNode):
    if (a.nl, a.serial) <= (b.nl, b.serial):
        return a, b
    return b, a


class LT(RecursiveForestBase):
    name = "lt"

    def __init__(self):
        super().__init__()
        self._serial = 0
        self.conn_count = 0  # internal (rank + connecting) nodes

    # -- node factory ------------------------------------------------------

    def _next_serial(self) -> int:
        self._serial += 1
        return self._serial

    def _make_leaf(self, v: int):
        n = LtNode(v, LEAF, self._next_serial(), level=1)
        return n

    def _new_super(self, level: int):
        self._sseq += 1
        self.super_count += 1
        n = LtNode(-self._sseq, SUPER, self._next_serial(), level=level)
        n.nl = 0
        return n

    def _free_super(self, node) -> None:
        assert node.left is None and node.right is None
        node.kind = DEAD
        self.super_count -= 1

    def _new_internal(self, kind: int) -> LtNode:
        self.conn_count += 1
        return LtNode(0, kind, self._next_serial())

    def _free_internal(self, node) -> None:
        node.kind = DEAD
        self.conn_count -= 1

    def _is_live(self, node) -> bool:
        return node.kind != DEAD

    def _is_super(self, node) -> bool:
        return node.kind == SUPER

    # -- rank machinery ------------------------------------------------------

    def pair(self, x: LtNode, y: LtNode) -> LtNode:
        """Join two equal-rank trees below a fresh rank root."""
        if x.rank != y.rank:
            raise RankMismatch((x.rank, y.rank))
        x, y = _pair_order(x, y)
        par = self._new_internal(RANK)
        par.left = x
        par.right = y
        x.parent = par
        y.parent = par
        par.nl = x.nl + y.nl
        par.rank = x.rank + 1
        par.bm_t = x.bm_t | y.bm_t
        par.bm_nt = x.bm_nt | y.bm_nt
        return par

    def _carry_pair(self, nodes: list[LtNode]) -> list[LtNode]:
        """Pair equal ranks until unique; returns roots sorted by rank."""
        by_rank: dict[int, LtNode] = {}
        for cur in sorted(nodes, key=lambda n: (n.rank, n.nl, n.serial)):
            while cur.rank in by_rank:
                cur = self.pair(by_rank.pop(cur.rank), cur)
            by_rank[cur.rank] = cur
        return [by_rank[r] for r in sorted(by_rank)]

    def _chain_top(self, roots: list[LtNode]) -> LtNode | None:
        """Connecting path over rank roots sorted ascending; the root with
        the largest rank ends up closest to the returned top."""
        for a, b in zip(roots, roots[1:]):
            if a.rank >= b.rank:
                raise UnsortedInput("rank roots must strictly increase")
        if not roots:
            return None
        top = roots[0]
        for nxt in roots[1:]:
            c = self._new_internal(CONN)
            c.left = top
            c.right = nxt
            top.parent = c
            nxt.parent = c
            c.nl = top.nl + nxt.nl
            c.rank = nxt.rank
            c.bm_t = top.bm_t | nxt.bm_t
            c.bm_nt = top.bm_nt | nxt.bm_nt
            top = c
        return top

    def _wire(self, sup: LtNode, roots: list[LtNode]) -> None:
        """Attach rank roots below the super node per the construct rules."""
        if not roots:
            sup.left = sup.right = None
        elif len(roots) == 1:
            sup.left = roots[0]
            roots[0].parent = sup
            sup.right = None
        else:
            top = self._chain_top(roots[:-1])
            sup.left = top
            top.parent = sup
            last = roots[-1]
            sup.right = last
            last.parent = sup
        self._refresh(sup)

    def _refresh(self, n: LtNode) -> None:
        """Recompute aggregates of an internal or super node from children."""
        nl = 0
        bt = bn = 0
        if n.left is not None:
            nl += n.left.nl
            bt |= n.left.bm_t
            bn |= n.left.bm_nt
        if n.right is not None:
            nl += n.right.nl
            bt |= n.right.bm_t
            bn |= n.right.bm_nt
        n.nl = nl
        n.bm_t = bt
        n.bm_nt = bn
        if n.kind != SUPER:
            n.rank = max(
                n.left.rank if n.left is not None else 0,
                n.right.rank if n.right is not None else 0,
            )

    def _parse_roots(self, sup: LtNode) -> list[LtNode]:
        """Read the rank roots back off the connecting path, ascending."""
        out = []
        if sup.right is not None:
            out.append(sup.right)
        n = sup.left
        if n is None:
            return out[::-1]
        while n.kind == CONN:
            out.append(n.right)
            n = n.left
        out.append(n)
        return out[::-1]

    def _dissolve_path(self, sup: LtNode) -> None:
        """Free the connecting nodes between the super node and rank roots."""
        n = sup.left
        if n is not None:
            while n.kind == CONN:
                nxt = n.left
                n.left = n.right = n.parent = None
                self._free_internal(n)
                n = nxt
            n.parent = None
        if sup.right is not None:
            sup.right.parent = None
        sup.left = sup.right = None

    # -- organizer ops ------------------------------------------------------

    def _set_rank(self, x: LtNode) -> None:
        x.rank = x.nl.bit_length() - 1

    def _org_insert(self, sup: LtNode, x: LtNode) -> None:
        self._set_rank(x)
        roots = self._parse_roots(sup)
        self._dissolve_path(sup)
        roots.append(x)
        self._wire(sup, self._carry_pair(roots))

    def _org_remove(self, sup: LtNode, x: LtNode) -> None:
        # free x's rank ancestors; their siblings become independent roots
        sibs = []
        n = x
        while n.parent is not None and n.parent.kind == RANK:
            p = n.parent
            sibs.append(p.left if p.right is n else p.right)
            n = p
        root = n  # rank root whose tree contains x
        roots = self._parse_roots(sup)
        if root not in roots:
            raise NotAChild(x.key)
        roots.remove(root)
        self._dissolve_path(sup)
        n = x.parent
        x.parent = None
        while n is not None and n.kind == RANK:
            p = n.parent
            n.left = n.right = n.parent = None
            self._free_internal(n)
            n = p
        for s in sibs:
            s.parent = None
        self._wire(sup, self._carry_pair(roots + sibs))

    # -- structural hooks (nl changes re-key every ancestor) -----------------

    def _parent_of(self, node):
        p = node.parent
        while p is not None and p.kind != SUPER:
            p = p.parent
        return p

    def _detach_ancestry(self, sup: LtNode) -> list[tuple[LtNode, LtNode]]:
        out = []
        s = sup
        while True:
            p = self._parent_of(s)
            if p is None:
                break
            self._org_remove_any(p, s)
            out.append((p, s))
            s = p
        return out

    def _org_remove_any(self, sup, child) -> None:
        self._org_remove(sup, child)

    def _org_insert_any(self, sup, child) -> None:
        self._org_insert(sup, child)

    def _add_child(self, parent, child) -> None:
        chain = self._detach_ancestry(parent)
        self._org_insert_any(parent, child)
        for p, s in chain:
            self._org_insert_any(p, s)

    def _remove_child(self, parent, child) -> None:
        if self._parent_of(child) is not parent:
            raise NotAChild(child.key)
        chain = self._detach_ancestry(parent)
        self._org_remove_any(parent, child)
        for p, s in chain:
            self._org_insert_any(p, s)

    def _children_of(self, node) -> list:
        out = []
        stack = []
        if node.left is not None:
            stack.append(node.left)
        if node.right is not None:
            stack.append(node.right)
        while stack:
            n = stack.pop()
            if n.kind == LEAF or n.kind == SUPER:
                out.append(n)
                continue
            if n.left is not None:
                stack.append(n.left)
            if n.right is not None:
                stack.append(n.right)
        return out

    def _has_children(self, node) -> bool:
        return node.left is not None or node.right is not None

    # -- bitmaps --------------------------------------------------------------

    def _leaf_masks(self, v: int) -> tuple[int, int]:
        bt = bn = 0
        g = self.g
        for lvl in g.adj_t.get(v, ()):
            bt |= 1 << lvl
        for lvl in g.adj_nt.get(v, ()):
            bn |= 1 << lvl
        return bt, bn

    def _leaf_adjacency_changed(self, v: int) -> None:
        leaf = self.leaves.get(v)
        if leaf is None:
            return
        bt, bn = self._leaf_masks(v)
        if leaf.bm_t == bt and leaf.bm_nt == bn:
            return
        leaf.bm_t = bt
        leaf.bm_nt = bn
        n = leaf.parent
        while n is not None:
            old = (n.bm_t, n.bm_nt)
            bt = bn = 0
            if n.left is not None:
                bt |= n.left.bm_t
                bn |= n.left.bm_nt
            if n.right is not None:
                bt |= n.right.bm_t
                bn |= n.right.bm_nt
            n.bm_t = bt
            n.bm_nt = bn
            if (n.bm_t, n.bm_nt) == old:
                break
            n = n.parent

    # -- searches ---------------------------------------------------------------

    def bitmap_search(self, root: LtNode, i: int, kind: int) -> LtNode:
        """Descend set bits only; returns a leaf with a level-i neighbor of
        the requested kind (left child first on ties)."""
        bit = 1 << i
        mask = root.bm_t if kind == TREE else root.bm_nt
        if not mask & bit:
            raise BitUnset((root.key, i, kind))
        n = root
        while n.kind != LEAF:
            l, r = n.left, n.right
            if l is not None and ((l.bm_t if kind == TREE else l.bm_nt) & bit):
                n = l
            else:
                n = r
        return n

    def _marked_leaves(self, node: LtNode, i: int, kind: int) -> list[LtNode]:
        bit = 1 << i
        out = []
        stack = [node]
        tree = kind == TREE
        while stack:
            n = stack.pop()
            self.scan_visits += 1
            if not ((n.bm_t if tree else n.bm_nt) & bit):
                continue
            if n.kind == LEAF:
                out.append(n)
                continue
            if n.right is not None:
                stack.append(n.right)
            if n.left is not None:
                stack.append(n.left)
        return out

    def _collect_tree_edges(self, members, side, i) -> list[tuple[int, int]]:
        out = []
        g = self.g
        for m in members:
            for leaf in self._marked_leaves(m, i, TREE):
                x = leaf.key
                for y in g.tree_neighbors(x, i):
                    self.scan_visits += 1
                    if x < y:
                        out.append((x, y))
        return out

    def _collect_candidates(self, side, i, frag_node) -> list[tuple[int, int]]:
        cands = set()
        g = self.g
        for leaf in self._marked_leaves(frag_node, i, NONTREE):
            x = leaf.key
            for y in g.nontree_neighbors(x, i):
                self.scan_visits += 1
                cands.add((x, y) if x < y else (y, x))
        return sorted(cands)

    # -- reporting ----------------------------------------------------------------

    def stats(self) -> StructureStats:
        height = 0
        for leaf in self.leaves.values():
            d = 0
            n = leaf
            while n.parent is not None:
                n = n.parent
                d += 1
            if d > height:
                height = d
        return StructureStats(
            node_count=len(self.leaves) + self.super_count + self.conn_count,
            max_height=height,
            level_histogram=self.level_histogram(),
        )

    def _adj_records(self) -> int:
        g = self.g
        if g.merged:
            return sum(len(per) for per in g.adj.values())
        return sum(len(per) for per in g.adj_t.values()) + sum(
            len(per) for per in g.adj_nt.values()
        )

    def memory_inventory(self) -> dict[str, int]:
        n = len(self.leaves)
        nodes = n + self.super_count + self.conn_count
        records = self._adj_records()
        return {
            "nodes": nodes,
            "links": 3 * nodes,  # left, right, parent
            "ints": 6 * nodes,  # nl, rank, level, kind, serial, lazy marker
            "sets": records,
            "set_entries": 2 * len(self.g.edges),
            "maps": (1 if self.g.merged else 2) * n + 1,
            "map_entries": records + n,
            "bitmaps": 2 * nodes,
        }

    # -- invariants -------------------------------------------------------------

    def depth_audit(self) -> None:
        """Bounded-height checks only: rank-root counts, rank pairing,
        connecting-path depths, and the node depth bound, per super node."""
        n_global = max(2, len(self.leaves))
        logn = max(1, n_global.bit_length() - 1)
        roots = {id(self._root_of(l)): self._root_of(l) for l in self.leaves.values()}
        supers = list(roots.values())
        while supers:
            sup = supers.pop()
            self._depth_audit_one(sup, logn, supers)

    def _depth_audit_one(self, sup, logn, supers) -> None:
        roots = self._parse_roots(sup)
        ranks = [r.rank for r in roots]
        assert ranks == sorted(set(ranks)), "rank roots must have unique ascending ranks"
        # ranks 0..X-1 need 2^X - 1 leaves, so X <= floor(log2(nl + 1))
        assert len(roots) <= max(1, (sup.nl + 1).bit_length() - 1), "too many rank roots"
        top_rank = sup.nl.bit_length() - 1
        for r in roots:
            assert self._depth_below(sup, r) <= 1 + top_rank - r.rank, "connecting path too deep"
            assert r.rank <= r.nl.bit_length() - 1, "rank tree taller than log2 of its leaves"
        stack = [(c, 1) for c in (sup.left, sup.right) if c is not None]
        while stack:
            n, d = stack.pop()
            if n.kind == LEAF or n.kind == SUPER:
                assert d <= top_rank - (n.nl.bit_length() - 1) + 1, "local depth bound broken"
                if n.kind == SUPER:
                    supers.append(n)
                continue
            if n.kind == RANK:
                assert n.left.rank == n.right.rank == n.rank - 1, "rank pairing broken"
            if n.left is not None:
                stack.append((n.left, d + 1))
            if n.right is not None:
                stack.append((n.right, d + 1))

    def audit(self) -> None:
        n_global = max(2, len(self.leaves))
        logn = n_global.bit_length() - 1
        roots = {}
        for v, leaf in self.leaves.items():
            assert leaf.level == self.g.vertex_level(v), f"stale level at {v}"
            assert (leaf.bm_t, leaf.bm_nt) == self._leaf_masks(v), f"leaf bitmap stale at {v}"
            r = self._root_of(leaf)
            roots[id(r)] = r
        total = 0
        for r in roots.values():
            assert r.kind == SUPER and r.level == 0
            total += self._audit_super_tree(r, logn)
        assert total == len(self.leaves), "leaves must partition the vertex set"

    def _audit_super_tree(self, sup: LtNode, logn: int) -> int:
        """Audit one super node's organizer and recurse; returns leaf count."""
        self._audit_organizer(sup, logn)
        got = 0
        for c in self._children_of(sup):
            assert c.level == sup.level + 1, "levels must step by one"
            if c.kind == SUPER:
                got += self._audit_super_tree(c, logn)
            else:
                got += 1
        assert sup.nl == got, f"nl mismatch at super {sup.key}"
        return got

    @staticmethod
    def _depth_below(sup: LtNode, x: LtNode) -> int:
        d = 0
        n = x
        while n is not sup:
            n = n.parent
            d += 1
        return d

    def _audit_organizer(self, sup: LtNode, logn: int) -> None:
        roots = self._parse_roots(sup)
        ranks = [r.rank for r in roots]
        assert ranks == sorted(set(ranks)), "rank roots must have unique ascending ranks"
        assert len(roots) <= max(1, (sup.nl + 1).bit_length() - 1), "too many rank roots"
        top_rank = sup.nl.bit_length() - 1
        for r in roots:
            d = self._depth_below(sup, r)
            assert d <= 1 + top_rank - r.rank, "connecting path too deep"
            self._audit_rank_tree(r, logn)
        self._audit_aggregates_and_depths(sup)

    def _audit_aggregates_and_depths(self, sup: LtNode) -> None:
        limit_top = sup.nl.bit_length() - 1
        stack = [(c, 1) for c in (sup.left, sup.right) if c is not None]
        while stack:
            n, d = stack.pop()
            if n.kind in (LEAF, SUPER):
                # executable form of the local-tree depth theorem
                assert d <= limit_top - (n.nl.bit_length() - 1) + 1, "local depth bound broken"
                continue
            assert n.nl == (n.left.nl if n.left else 0) + (n.right.nl if n.right else 0)
            bt = (n.left.bm_t if n.left else 0) | (n.right.bm_t if n.right else 0)
            bn = (n.left.bm_nt if n.left else 0) | (n.right.bm_nt if n.right else 0)
            assert n.bm_t == bt and n.bm_nt == bn, "stale internal bitmap"
            if n.left is not None:
                stack.append((n.left, d + 1))
            if n.right is not None:
                stack.append((n.right, d + 1))
        bt = (sup.left.bm_t if sup.left else 0) | (sup.right.bm_t if sup.right else 0)
        bn = (sup.left.bm_nt if sup.left else 0) | (sup.right.bm_nt if sup.right else 0)
        assert sup.bm_t == bt and sup.bm_nt == bn, "stale super bitmap"

    def _audit_rank_tree(self, root: LtNode, logn: int) -> None:
        stack = [(root, 0)]
        height = 0
        while stack:
            n, d = stack.pop()
            height = max(height, d)
            assert d == root.rank - n.rank, "rank-tree depth identity broken"
            if n.kind == RANK:
                assert n.left.rank == n.right.rank == n.rank - 1, "rank pairing broken"
                stack.append((n.left, d + 1))
                stack.append((n.right, d + 1))
        assert height <= max(1, root.nl.bit_length() - 1), "rank tree too tall"


class LTV(LT):
    """Local tree over merged per-level neighbor sets and a single bitmap.

    The merged bitmap flags any level-i neighbor, so scans must probe each
    edge's kind against the tree-edge index; both masks of a node hold the
    same merged value to reuse the bitmap plumbing.
    """

    name = "ltv"
    merged = True

    def _leaf_masks(self, v: int) -> tuple[int, int]:
        bm = 0
        for lvl in self.g.adj.get(v, ()):
            bm |= 1 << lvl
        return bm, bm

    def _collect_tree_edges(self, members, side, i) -> list[tuple[int, int]]:
        out = []
        g = self.g
        for m in members:
            for leaf in self._marked_leaves(m, i, TREE):
                x = leaf.key
                per = g.adj[x].get(i)
                if not per:
                    continue
                for y in per:
                    self.scan_visits += 1
                    if x < y and g.edges[(x, y)][1] == TREE:
                        out.append((x, y))
        return out

    def _collect_candidates(self, side, i, frag_node) -> list[tuple[int, int]]:
        cands = set()
        g = self.g
        for leaf in self._marked_leaves(frag_node, i, NONTREE):
            x = leaf.key
            per = g.adj[x].get(i)
            if not per:
                continue
            for y in per:
                self.scan_visits += 1
                k = (x, y) if x < y else (y, x)
                if g.edges[k][1] == NONTREE:
                    cands.add(k)
        return sorted(cands)

    def memory_inventory(self) -> dict[str, int]:
        inv = super().memory_inventory()
        inv["bitmaps"] = len(self.leaves) + self.super_count + self.conn_count
        inv["maps"] += 1  # tree-edge index alongside merged adjacency
        inv["map_entries"] += len(self.g.edges)
        return inv


class LzT(LT):
    """Lazy local tree: every super node buffers small children on its left
    branch and keeps a plain local tree of big children and bottom trees on
    its right (lazy) branch."""

    name = "lzt"

    def __init__(self, beta: int = 2):
        super().__init__()
        if beta < 2:
            raise ValueError("beta must be at least 2")
        self.beta = beta

    # -- branch plumbing ---------------------------------------------------

    def _take_branch(self, sup: LtNode, right: bool) -> list[LtNode]:
        """Detach a branch, free its connecting chain, return rank roots."""
        n = sup.right if right else sup.left
        if right:
            sup.right = None
        else:
            sup.left = None
        out = []
        if n is None:
            return out
        n.parent = None
        while n.kind == CONN and not n.bottom:
            out.append(n.right)
            nxt = n.left
            n.left = n.right = n.parent = None
            self._free_internal(n)
            n = nxt
        out.append(n)
        for r in out:
            r.parent = None
        return out[::-1]

    def _wire_branch(self, sup: LtNode, right: bool, roots: list[LtNode]) -> None:
        top = self._chain_top(roots) if roots else None
        if right:
            sup.right = top
        else:
            sup.left = top
        if top is not None:
            top.parent = sup
        self._refresh(sup)

    def _buffer_nl(self, sup: LtNode) -> int:
        return sup.left.nl if sup.left is not None else 0

    # -- organizer ops -------------------------------------------------------

    def _org_insert(self, sup: LtNode, x: LtNode) -> None:
        self._set_rank(x)
        if x.nl < self.beta:
            roots = self._take_branch(sup, right=False)
            roots = self._carry_pair(roots + [x])
            self._wire_branch(sup, False, roots)
            if sup.left is not None and sup.left.nl >= self.beta:
                bottom = sup.left
                sup.left = None
                bottom.parent = None
                bottom.bottom = True
                self._set_rank(bottom)
                self._lazy_insert(sup, bottom)
            self._refresh(sup)
        else:
            self._lazy_insert(sup, x)

    def _lazy_insert(self, sup: LtNode, x: LtNode) -> None:
        roots = self._take_branch(sup, right=True)
        roots = self._carry_pair(roots + [x])
        self._wire_branch(sup, True, roots)

    def _org_remove(self, sup: LtNode, x: LtNode) -> None:
        top = x
        while top.parent is not None and top.parent is not sup:
            top = top.parent
        if top.parent is not sup:
            raise NotAChild(x.key)
        in_buffer = top is sup.left
        if in_buffer:
            roots = self._take_branch(sup, right=False)
            roots = self._dissolve_to(roots, x)
            self._wire_branch(sup, False, roots)
            self._refresh(sup)
            return
        # lazy branch: check whether x sits inside a bottom tree
        bottom = None
        n = x
        while n is not sup:
            if n.bottom:
                bottom = n
                break
            n = n.parent
        roots = self._take_branch(sup, right=True)
        if bottom is None:
            roots = self._dissolve_to(roots, x)
            self._wire_branch(sup, True, roots)
            self._refresh(sup)
            return
        # drop the bottom tree off the branch first
        roots = self._dissolve_to(roots, bottom)
        survivors = [c for c in self._children_of(bottom) if c is not x]
        self._free_subtree_internals(bottom)
        x.parent = None
        total = sum(c.nl for c in survivors)
        if total >= self.beta:
            regrouped = self._carry_pair(survivors)
            nb = self._chain_top(regrouped)
            nb.bottom = True
            self._set_rank(nb)
            roots = self._carry_pair(roots + [nb])
            self._wire_branch(sup, True, roots)
            self._refresh(sup)
        else:
            self._wire_branch(sup, True, roots)
            self._refresh(sup)
            for c in survivors:
                self._org_insert(sup, c)  # back into the buffer
        x.parent = None

    def _dissolve_to(self, roots: list[LtNode], x: LtNode) -> list[LtNode]:
        """Remove x from whichever rank tree holds it; pair the remains."""
        sibs = []
        n = x
        while n.parent is not None:
            p = n.parent
            sibs.append(p.left if p.right is n else p.right)
            n = p
        if n is not x and n not in roots:
            raise NotAChild(x.key)
        if n is x:
            roots = [r for r in roots if r is not x]
        else:
            roots = [r for r in roots if r is not n]
            m = x.parent
            x.parent = None
            while m is not None:
                p = m.parent
                m.left = m.right = m.parent = None
                self._free_internal(m)
                m = p
            for s in sibs:
                s.parent = None
        return self._carry_pair(roots + sibs)

    def _free_subtree_internals(self, node: LtNode) -> None:
        """Free grouping nodes of a dissolved bottom tree; keep members."""
        stack = [node]
        while stack:
            n = stack.pop()
            if n.kind in (LEAF, SUPER):
                n.parent = None
                continue
            if n.left is not None:
                stack.append(n.left)
            if n.right is not None:
                stack.append(n.right)
            n.left = n.right = n.parent = None
            self._free_internal(n)

    # -- invariants -----------------------------------------------------------

    def _audit_organizer(self, sup: LtNode, logn: int) -> None:
        buf = sup.left
        if buf is not None:
            assert buf.nl < self.beta, "buffer tree reached beta"
            assert not buf.bottom
            for r in self._branch_roots(buf):
                self._audit_rank_tree_shallow(r, logn)
        lazy = sup.right
        if lazy is not None:
            roots = self._branch_roots(lazy)
            ranks = [r.rank for r in roots]
            assert ranks == sorted(set(ranks)), "lazy rank roots must be unique"
            top_rank = lazy.nl.bit_length() - 1
            for r in roots:
                d = self._depth_below(lazy, r)
                assert d <= 2 + top_rank - r.rank, "lazy connecting path too deep"
                self._audit_rank_tree_shallow(r, logn)
            for b in self._bottom_nodes(lazy):
                assert b.nl >= self.beta, "undersized bottom tree"
        self._audit_lzt_aggregates(sup)

    def _branch_roots(self, top: LtNode) -> list[LtNode]:
        out = []
        n = top
        while n.kind == CONN and not n.bottom:
            out.append(n.right)
            n = n.left
        out.append(n)
        return out[::-1]

    def _bottom_nodes(self, top: LtNode) -> list[LtNode]:
        out = []
        stack = [top]
        while stack:
            n = stack.pop()
            if n.bottom:
                out.append(n)
                continue
            if n.kind in (LEAF, SUPER):
                continue
            if n.left is not None:
                stack.append(n.left)
            if n.right is not None:
                stack.append(n.right)
        return out

    def _audit_rank_tree_shallow(self, root: LtNode, logn: int) -> None:
        # inside rank trees the depth identity holds until a bottom boundary
        stack = [(root, 0)]
        while stack:
            n, d = stack.pop()
            assert d == root.rank - n.rank, "rank-tree depth identity broken"
            if n.kind == RANK and not n.bottom:
                assert n.left.rank == n.right.rank == n.rank - 1
                if not n.left.bottom:
                    stack.append((n.left, d + 1))
                if not n.right.bottom:
                    stack.append((n.right, d + 1))

    def _audit_lzt_aggregates(self, sup: LtNode) -> None:
        stack = [c for c in (sup.left, sup.right) if c is not None]
        while stack:
            n = stack.pop()
            if n.kind in (LEAF, SUPER):
                continue
            assert n.nl == (n.left.nl if n.left else 0) + (n.right.nl if n.right else 0)
            bt = (n.left.bm_t if n.left else 0) | (n.right.bm_t if n.right else 0)
            bn = (n.left.bm_nt if n.left else 0) | (n.right.bm_nt if n.right else 0)
            assert n.bm_t == bt and n.bm_nt == bn, "stale internal bitmap"
            if n.left is not None:
                stack.append(n.left)
            if n.right is not None:
                stack.append(n.right)
        bt = (sup.left.bm_t if sup.left else 0) | (sup.right.bm_t if sup.right else 0)
        bn = (sup.left.bm_nt if sup.left else 0) | (sup.right.bm_nt if sup.right else 0)
        assert sup.bm_t == bt and sup.bm_nt == bn, "stale super bitmap"


    def _depth_audit_one(self, sup, logn, supers) -> None:
        buf = sup.left
        if buf is not None:
            assert buf.nl < self.beta, "buffer tree reached beta"
        lazy = sup.right
        if lazy is not None:
            roots = self._branch_roots(lazy)
            ranks = [r.rank for r in roots]
            assert ranks == sorted(set(ranks)), "lazy rank roots must be unique"
            assert len(roots) <= max(1, (lazy.nl + 1).bit_length() - 1), "too many lazy rank roots"
            top_rank = lazy.nl.bit_length() - 1
            for r in roots:
                assert self._depth_below(lazy, r) <= 1 + top_rank - r.rank
                assert r.rank <= r.nl.bit_length() - 1, "rank tree taller than log2 of its leaves"
            for b in self._bottom_nodes(lazy):
                assert b.nl >= self.beta, "undersized bottom tree"
        # node depth bound with slack for the buffer/bottom junctions
        top_rank = sup.nl.bit_length() - 1
        stack = [(c, 1) for c in (sup.left, sup.right) if c is not None]
        while stack:
            n, d = stack.pop()
            if n.kind == LEAF or n.kind == SUPER:
                assert d <= top_rank - (n.nl.bit_length() - 1) + 3, "lazy depth bound broken"
                if n.kind == SUPER:
                    supers.append(n)
                continue
            if n.kind == RANK and not n.bottom:
                assert n.left.rank == n.right.rank == n.rank - 1, "rank pairing broken"
            if n.left is not None:
                stack.append((n.left, d + 1))
            if n.right is not None:
                stack.append((n.right, d + 1))
