"""Acceptance suite: one test per release criterion, tolerances pinned.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one line per
criterion.  The full module takes on the order of ten minutes.
"""

import sys
import time

import pytest
from scipy import stats

from dynconn.bench import read_csv, run_benchmark, strip_timing
from dynconn.cli import main as cli_main
from dynconn.core import STRUCTURE_NAMES, make_structure
from dynconn.datasets import gen_graph
from dynconn.euler import HDT, HK, HKS
from dynconn.levelsim import LevelSimulator
from dynconn.localtree import LT, LTV, LzT
from dynconn.memmodel import measure_memory
from dynconn.oracle import OracleGraph
from dynconn.structural import ST, STV
from dynconn.workload import WorkloadConfig, generate_churn, generate_updates

N_WORKLOADS = 50
OPS_PER_WORKLOAD = 5000
URS = (3, 10, 50)


def report(num: int, text: str) -> None:
    print(f"ACCEPTANCE {num} PASS: {text}", file=sys.stderr, flush=True)


def criterion1_workload(i: int):
    universe, n = gen_graph(("gnm", 100, 300), seed=i)
    cfg = WorkloadConfig(u_r=URS[i % len(URS)], seed=i)
    return generate_churn(universe, cfg, OPS_PER_WORKLOAD)


def same_partition(la: dict, lb: dict) -> bool:
    m = {}
    taken = set()
    for v, ra in la.items():
        rb = lb[v]
        got = m.get(ra)
        if got is None:
            if rb in taken:
                return False
            m[ra] = rb
            taken.add(rb)
        elif got != rb:
            return False
    return True


def replay(structure, ops, per_op=None):
    oracle = OracleGraph()
    for idx, op in enumerate(ops):
        if op[0] == "I":
            structure.insert_edge(op[1], op[2])
            oracle.insert_edge(op[1], op[2])
        else:
            structure.delete_edge(op[1], op[2])
            oracle.delete_edge(op[1], op[2])
        if per_op is not None:
            per_op(idx, op, oracle)
    return oracle


def test_criterion_1_oracle_equivalence():
    """Ten structures, 50 workloads on G(100, 300), all-pairs agreement
    with the BFS oracle after every operation, under ten minutes."""
    t0 = time.monotonic()
    workloads = [criterion1_workload(i) for i in range(N_WORKLOADS)]
    mismatches = 0
    for name in STRUCTURE_NAMES:
        for i, ops in enumerate(workloads):
            s = make_structure(name, seed=i)

            def check(idx, op, oracle):
                nonlocal mismatches
                la = s.component_labels()
                lb = oracle.component_labels()
                if len(la) != len(lb) or not same_partition(la, lb):
                    mismatches += 1
                    raise AssertionError(
                        f"{name}: partition mismatch in workload {i} after op {idx} {op}"
                    )

            oracle = replay(s, ops, check)
            assert set(s.component_labels()) == set(oracle.component_labels())
    elapsed = time.monotonic() - t0
    assert mismatches == 0
    assert elapsed < 600, f"criterion 1 exceeded its runtime budget: {elapsed:.0f}s"
    report(1, f"oracle equivalence, 10 structures x {N_WORKLOADS} workloads "
              f"x {OPS_PER_WORKLOAD} ops, 0 mismatches in {elapsed:.0f}s")


def test_criterion_2_alg1_fidelity():
    """HDT / ST / LT level histograms equal the slow push-down simulator
    on 20 seeded workloads (n = 64), exactly."""
    makers = {"hdt": lambda i: HDT(seed=i), "st": lambda i: ST(), "lt": lambda i: LT()}
    urs = (3, 5, 10)
    for i in range(20):
        universe, _ = gen_graph(("gnm", 64, 160), seed=100 + i)
        ops = generate_churn(universe, WorkloadConfig(u_r=urs[i % 3], seed=100 + i), 1500)
        sim = LevelSimulator()
        for op in ops:
            if op[0] == "I":
                sim.insert_edge(op[1], op[2])
            else:
                sim.delete_edge(op[1], op[2])
        for name, make in makers.items():
            s = make(i)
            for op in ops:
                if op[0] == "I":
                    s.insert_edge(op[1], op[2])
                else:
                    s.delete_edge(op[1], op[2])
            assert s.level_histogram() == sim.level_histogram(), (
                f"{name}: histogram diverges from simulator on workload {i}"
            )
            assert s.edge_levels() == sim.edge_levels()
    report(2, "HDT/ST/LT level histograms match the slow simulator on 20 workloads")


def test_criterion_3_height_bounds():
    """Structural-tree heights and local-tree depth/rank bounds hold after
    every operation of the criterion-1 workloads."""
    makers = {
        "st": lambda i: ST(),
        "stv": lambda i: STV(),
        "lt": lambda i: LT(),
        "ltv": lambda i: LTV(),
        "lzt": lambda i: LzT(),
    }
    for name, make in makers.items():
        for i in range(N_WORKLOADS):
            ops = criterion1_workload(i)
            s = make(i)
            for op in ops:
                if op[0] == "I":
                    s.insert_edge(op[1], op[2])
                else:
                    s.delete_edge(op[1], op[2])
                s.depth_audit()
    report(3, "height, depth, and rank bounds held at every step for st/stv/lt/ltv/lzt")


def test_criterion_4_tour_validity():
    """HKS / HK / HDT tours decode to the level forests (length 2n-1 per
    tree) after every operation of the criterion-1 workloads."""
    makers = {"hks": lambda i: HKS(seed=i), "hk": lambda i: HK(seed=i), "hdt": lambda i: HDT(seed=i)}
    for name, make in makers.items():
        for i in range(N_WORKLOADS):
            ops = criterion1_workload(i)
            s = make(i)
            for op in ops:
                if op[0] == "I":
                    s.insert_edge(op[1], op[2])
                else:
                    s.delete_edge(op[1], op[2])
                s.tour_audit()
    report(4, "tours decoded to level forests at every step for hks/hk/hdt")


def test_criterion_5_memory_ordering():
    """Insert-only gnm(1e4, 1e5): dtree < st <= stv < lt with 5% margins on
    the strict inequalities, and hk the maximum over all ten."""
    edges, _ = gen_graph(("gnm", 10_000, 100_000), seed=0)
    mems = {}
    for name in STRUCTURE_NAMES:
        s = make_structure(name, seed=0)
        for u, v in edges:
            s.insert_edge(u, v)
        mems[name] = measure_memory(s)
    assert mems["dtree"] * 1.05 <= mems["st"], mems
    assert mems["st"] <= mems["stv"], mems
    assert mems["stv"] * 1.05 <= mems["lt"], mems
    second = sorted(mems.values())[-2]
    assert mems["hk"] == max(mems.values()) and second * 1.05 <= mems["hk"], mems
    report(5, "memory ordering dtree < st <= stv < lt and hk maximal, 5% margins")


def _mean_delete(structure: str, dataset, seed: int) -> float:
    edges, n = gen_graph(dataset, seed=seed)
    ops = generate_updates(edges, WorkloadConfig(u_r=1000, seed=seed))
    res = run_benchmark(structure, str(dataset), ops, n, 1000, seed)
    row = next(r for r in res.rows if r.op_class == "delete")
    return row.mean_ns


def test_criterion_6_directional_runtime():
    """Mean delete: HDT at least 10x HKS on Path(1e5); LCT at least 10x
    D-tree on gnm(1e4, 1e5); u_r = 1000, three seeds each, every seed."""
    ratios_pg = []
    for seed in (0, 1, 2):
        hks = _mean_delete("hks", ("path", 100_000), seed)
        hdt = _mean_delete("hdt", ("path", 100_000), seed)
        ratios_pg.append(hdt / hks)
        assert hdt >= 10 * hks, f"seed {seed}: HDT/HKS ratio {hdt / hks:.1f}x < 10x"
    ratios_rg = []
    for seed in (0, 1, 2):
        dtree = _mean_delete("dtree", ("gnm", 10_000, 100_000), seed)
        lct = _mean_delete("lct", ("gnm", 10_000, 100_000), seed)
        ratios_rg.append(lct / dtree)
        assert lct >= 10 * dtree, f"seed {seed}: LCT/D-tree ratio {lct / dtree:.1f}x < 10x"
    report(6, "mean-delete ratios HDT/HKS " + "/".join(f"{r:.0f}x" for r in ratios_pg)
           + " and LCT/D-tree " + "/".join(f"{r:.0f}x" for r in ratios_rg))


def test_criterion_7_determinism(tmp_path):
    """Same CLI invocation twice: identical workload files and identical
    non-timing CSV columns, byte for byte."""
    w1, w2 = tmp_path / "w1.txt", tmp_path / "w2.txt"
    gen = ["gen-workload", "--dataset", "gnm:60,180", "--ur", "5", "--seed", "42",
           "--test-num", "4", "--queries-per-point", "9"]
    assert cli_main(gen + ["--out", str(w1)]) == 0
    assert cli_main(gen + ["--out", str(w2)]) == 0
    assert w1.read_bytes() == w2.read_bytes()
    c1, c2 = tmp_path / "r1.csv", tmp_path / "r2.csv"
    bench = ["bench", "--structure", "all", "--dataset", "gnm:60,180", "--ur", "5",
             "--seed", "42", "--test-num", "4", "--queries-per-point", "9"]
    assert cli_main(bench + ["--out", str(c1)]) == 0
    assert cli_main(bench + ["--out", str(c2)]) == 0
    a = strip_timing(read_csv(str(c1)))
    b = strip_timing(read_csv(str(c2)))
    assert repr(a) == repr(b)
    assert a == b
    report(7, "workload files byte-identical; non-timing CSV columns identical")


def _sampler_configs():
    """(structure, tour root, expected edge -> entry count) setups."""
    configs = []

    def running(seed):
        s = HK(seed=seed)
        for u, v in [(5, 8), (5, 1), (5, 2), (2, 3), (3, 4), (8, 7), (7, 6)]:
            s.insert_edge(u, v)
        for u, v in [(1, 2), (1, 3), (3, 6)]:
            s.insert_edge(u, v)
        return s

    s = running(1)
    configs.append((s, s.levels[0].root_of(1), {(1, 2): 2, (1, 3): 2, (3, 6): 2}))

    s = running(2)
    s.levels[0].cut((2, 3), 2, 3)
    del s.tree_level[(2, 3)]
    configs.append((s, s.levels[0].root_of(3), {(1, 3): 1, (3, 6): 1}))

    def path_with_chords(seed):
        s = HK(seed=seed)
        for i in range(4):
            s.insert_edge(i, i + 1)
        for u, v in [(0, 2), (1, 3), (0, 4)]:
            s.insert_edge(u, v)
        return s

    s = path_with_chords(3)
    s.levels[0].cut((3, 4), 3, 4)
    del s.tree_level[(3, 4)]
    # side {0,1,2,3}: (0,2) and (1,3) internal (2 entries), (0,4) crossing (1)
    configs.append((s, s.levels[0].root_of(0), {(0, 2): 2, (1, 3): 2, (0, 4): 1}))

    s = path_with_chords(4)
    configs.append((s, s.levels[0].root_of(0), {(0, 2): 2, (1, 3): 2, (0, 4): 2}))

    s = running(5)
    s.levels[0].cut((2, 3), 2, 3)
    del s.tree_level[(2, 3)]
    # side {1,2,5,6,7,8}: (1,2) internal, (1,3) and (3,6) cross once each
    configs.append((s, s.levels[0].root_of(2), {(1, 2): 2, (1, 3): 1, (3, 6): 1}))
    return configs


def test_criterion_8_sampler_statistics():
    """Sampled non-tree edges are entry-weight proportional: chi-square
    p > 0.01 on five fixed configurations, ten thousand draws each."""
    draws = 10_000
    for idx, (s, root, expected) in enumerate(_sampler_configs()):
        total = sum(expected.values())
        assert root.weight == total
        counts = {k: 0 for k in expected}
        for _ in range(draws):
            counts[s.sample_nontree(root)] += 1
        keys = sorted(expected)
        obs = [counts[k] for k in keys]
        exp = [draws * expected[k] / total for k in keys]
        p = stats.chisquare(obs, exp).pvalue
        assert p > 0.01, f"configuration {idx}: chi-square p = {p:.4f}"
    report(8, "weight-proportional sampling passed chi-square (p > 0.01) on 5 configs")
