import random

import pytest

from dynconn.euler import HDT
from dynconn.levelsim import LevelSimulator
from dynconn.localtree import LT, LTV, LzT
from dynconn.structural import ST, STV


def test_simulator_running_example():
    sim = LevelSimulator()
    for u, v in [(1, 5), (2, 5), (2, 3), (3, 4), (3, 6), (6, 7), (7, 8), (1, 2), (1, 3)]:
        sim.insert_edge(u, v)
    rep = sim.delete_edge(2, 3)
    assert rep == (1, 3)
    levels = sim.edge_levels()
    assert levels[(1, 5)] == (1, 0)
    assert levels[(2, 5)] == (1, 0)
    assert levels[(1, 2)] == (1, 1)
    assert levels[(1, 3)] == (0, 0)


@pytest.mark.parametrize("make", [lambda: HDT(seed=3), ST, STV, LT, LTV, LzT])
def test_structures_track_simulator_exactly(make):
    s = make()
    sim = LevelSimulator()
    rng = random.Random(77)
    present = []
    for step in range(700):
        if present and rng.random() < 0.4:
            u, v = present.pop(rng.randrange(len(present)))
            s.delete_edge(u, v)
            sim.delete_edge(u, v)
        else:
            u, v = rng.randrange(24), rng.randrange(24)
            if u == v:
                continue
            out = s.insert_edge(u, v)
            sim.insert_edge(u, v)
            if out.kind != "duplicate_ignored":
                present.append((min(u, v), max(u, v)))
        assert s.edge_levels() == sim.edge_levels(), f"divergence at step {step}"
