import pytest

from conftest import drive_against_oracle
from dynconn.core import SPLIT_PERMANENT, SPLIT_RECONNECTED
from dynconn.errors import SelfLoop
from dynconn.structural import ST, STV, smaller_side


def leveled_example(cls):
    """Component whose delete of (2, 3) pushes the side {1, 2, 5} down.

    Spanning tree (1,5), (2,5), (2,3), (3,4), (3,6), (6,7), (7,8) plus the
    non-tree edges (1,2), (1,3); everything starts at level 0.
    """
    s = cls()
    for u, v in [(1, 5), (2, 5), (2, 3), (3, 4), (3, 6), (6, 7), (7, 8)]:
        assert s.insert_edge(u, v).kind == "new_tree_edge"
    for u, v in [(1, 2), (1, 3)]:
        assert s.insert_edge(u, v).kind == "new_nontree_edge"
    return s


def test_two_singletons_merge_under_one_root():
    s = ST()
    s.insert_edge(1, 2)
    assert s.super_count == 1
    root = s._root_of(s.leaves[1])
    assert root.nl == 2
    assert {c.key for c in root.children} == {1, 2}


def test_larger_root_keeps_its_place():
    s = ST()
    for i in range(1, 5):
        s.insert_edge(0, i)  # five leaves
    for i in range(11, 13):
        s.insert_edge(10, i)  # three leaves
    big_root = s._root_of(s.leaves[0])
    s.insert_edge(11, 3)
    assert s._root_of(s.leaves[11]) is big_root
    assert big_root.nl == 8
    s.audit()


def test_delete_pushes_smaller_side_down():
    s = leveled_example(ST)
    out = s.delete_edge(2, 3)
    assert out.kind == SPLIT_RECONNECTED
    assert out.replacement == (1, 3)
    levels = s.edge_levels()
    assert levels[(1, 5)] == (1, 0) and levels[(2, 5)] == (1, 0)
    assert levels[(1, 2)] == (1, 1)  # visited non-replacement pushed down
    assert levels[(1, 3)] == (0, 0)  # replacement became a level-0 tree edge
    assert levels[(3, 4)] == (0, 0)
    for v in (1, 2, 5):
        assert s.leaves[v].level == 2
    root = s._root_of(s.leaves[1])
    assert root.level == 0 and root.nl == 8
    s.audit()


def test_delete_bridge_splits_component():
    s = ST()
    s.insert_edge(1, 2)
    s.insert_edge(2, 3)
    out = s.delete_edge(1, 2)
    assert out.kind == SPLIT_PERMANENT
    assert not s.connected(1, 2)
    assert s.connected(2, 3)
    s.audit()


def test_find_root_singleton():
    s = ST()
    s.insert_edge(1, 2)
    s.delete_edge(1, 2)
    r1 = s.find_root(1)
    assert r1 < 0  # its own level-0 super node
    assert s.find_root(2) != r1


def test_self_loop_rejected():
    s = ST()
    with pytest.raises(SelfLoop):
        s.insert_edge(4, 4)


def test_stv_answers_match_st():
    import random

    rng = random.Random(9)
    a, b = ST(), STV()
    present = []
    for _ in range(500):
        if present and rng.random() < 0.4:
            u, v = present.pop(rng.randrange(len(present)))
            oa = a.delete_edge(u, v)
            ob = b.delete_edge(u, v)
        else:
            u, v = rng.randrange(25), rng.randrange(25)
            if u == v:
                continue
            oa = a.insert_edge(u, v)
            ob = b.insert_edge(u, v)
            if oa.kind != "duplicate_ignored":
                present.append((min(u, v), max(u, v)))
        assert oa == ob
        assert a.edge_levels() == b.edge_levels()


def test_stv_scans_at_least_as_many_edges_as_st():
    s = leveled_example(ST)
    t = leveled_example(STV)
    s.scan_visits = t.scan_visits = 0
    s.delete_edge(2, 3)
    t.delete_edge(2, 3)
    assert t.scan_visits >= s.scan_visits


def test_height_bound_and_oracle_equivalence():
    for seed in (21, 22):
        s = ST()
        drive_against_oracle(s, n=30, steps=500, seed=seed, audit_every=10)
        st = s.stats()
        n = len(s.leaves)
        assert st.max_height <= max(1, n.bit_length() - 1) + 1


def test_oracle_equivalence_stv():
    s = STV()
    drive_against_oracle(s, n=30, steps=500, seed=23, audit_every=10)


def test_smaller_side_tie_prefers_first_endpoint():
    s = ST()
    s.insert_edge(1, 2)
    s.insert_edge(1, 0)
    s.insert_edge(2, 4)
    s.g.remove_edge((1, 2))
    side, is_a = smaller_side(s.g, 1, 2, 0)
    assert is_a and side == {0, 1}


def test_level_histogram_sums_to_edge_count():
    s = leveled_example(ST)
    s.delete_edge(2, 3)
    hist = s.level_histogram()
    assert sum(hist) == len(s.g.edges) == 8
