import random

from dynconn.oracle import OracleGraph


def test_isolated_vertices_disconnected():
    g = OracleGraph()
    g.add_vertex(0)
    g.add_vertex(1)
    assert not g.connected(0, 1)
    assert g.connected(0, 0)


def test_fig1_component_is_connected():
    g = OracleGraph()
    edges = [(1, 2), (1, 3), (2, 3), (3, 4), (2, 5), (1, 5), (3, 6), (7, 6), (7, 8), (8, 5)]
    for u, v in edges:
        g.insert_edge(u, v)
    assert g.connected(4, 8)
    assert g.connected(1, 7)
    assert g.component_count() == 1


def test_delete_chain_of_cuts():
    g = OracleGraph()
    edges = [(1, 2), (1, 3), (2, 3), (3, 4), (2, 5), (1, 5), (3, 6), (7, 6), (7, 8), (8, 5)]
    for u, v in edges:
        g.insert_edge(u, v)
    for u, v in [(2, 3), (1, 3), (3, 6), (3, 4)]:
        g.delete_edge(u, v)
    assert not g.connected(3, 1)
    assert g.connected(3, 3)


def test_incremental_labels_match_bfs_relabel():
    rng = random.Random(7)
    g = OracleGraph()
    present = []
    for _ in range(600):
        if present and rng.random() < 0.4:
            u, v = present.pop(rng.randrange(len(present)))
            g.delete_edge(u, v)
        else:
            u, v = rng.randrange(25), rng.randrange(25)
            if u == v:
                continue
            if not g.has_edge(u, v):
                present.append((u, v))
            g.insert_edge(u, v)
        inc = g.component_labels()
        full = g.recompute_labels()
        groups_inc = {}
        for x, lab in inc.items():
            groups_inc.setdefault(lab, set()).add(x)
        groups_full = {}
        for x, lab in full.items():
            groups_full.setdefault(lab, set()).add(x)
        assert sorted(map(sorted, groups_inc.values())) == sorted(map(sorted, groups_full.values()))
