import pytest

from dynconn.bench import BenchRow, emit_csv, read_csv, run_benchmark, strip_timing
from dynconn.datasets import gen_graph
from dynconn.errors import UnknownStructure
from dynconn.workload import WorkloadConfig, generate_updates, place_testing_points


def small_ops(test_num=0, qpp=5):
    edges, n = gen_graph(("gnm", 40, 120), seed=3)
    cfg = WorkloadConfig(u_r=5, test_num=test_num, queries_per_point=qpp, seed=3)
    ops = generate_updates(edges, cfg)
    if test_num:
        ops = place_testing_points(ops, cfg)
    return ops, n


def test_insert_only_run_reports_no_delete_rows():
    edges, n = gen_graph(("star", 50), seed=0)
    ops = [("I", u, v) for u, v in edges]
    res = run_benchmark("dtree", "star:50", ops, n, 0, 0)
    classes = {r.op_class for r in res.rows}
    assert classes == {"insert"}
    assert not res.timed_out


def test_rows_cover_all_three_classes():
    ops, n = small_ops(test_num=4)
    res = run_benchmark("hks", "gnm:40,120", ops, n, 5, 3)
    classes = {r.op_class for r in res.rows}
    assert classes == {"insert", "delete", "query"}
    q = next(r for r in res.rows if r.op_class == "query")
    assert q.count == 4 * 5
    for r in res.rows:
        assert r.mean_ns == pytest.approx(r.total_ns / r.count)
        assert r.memory_bytes > 0


def test_unknown_structure():
    with pytest.raises(UnknownStructure):
        run_benchmark("btree", "x", [], 2, 0, 0)


def test_timeout_reports_partial():
    ops, n = small_ops()
    ops = ops * 200
    # keep only inserts/deletes consistent: replay tolerates duplicates
    res = run_benchmark("lct", "gnm", ops, n, 5, 0, timeout_secs=0.001)
    assert res.timed_out
    assert res.ops_done < len(ops)
    assert res.rows  # partial rows still reported


def test_csv_roundtrip(tmp_path):
    ops, n = small_ops(test_num=2)
    res = run_benchmark("st", "gnm:40,120", ops, n, 5, 7)
    path = tmp_path / "out.csv"
    emit_csv(res.rows, str(path))
    back = read_csv(str(path))
    assert len(back) == len(res.rows)
    for row, d in zip(res.rows, back):
        assert d["structure"] == row.structure
        assert int(d["count"]) == row.count
        assert int(d["memory_bytes"]) == row.memory_bytes
        assert int(d["seed"]) == row.seed


def test_empty_report_gives_header_only(tmp_path):
    path = tmp_path / "empty.csv"
    emit_csv([], str(path))
    text = path.read_text()
    assert text.splitlines() == [
        "structure,dataset,u_r,op_class,count,total_ns,mean_ns,p99_ns,memory_bytes,max_height,seed"
    ]


def test_non_timing_columns_deterministic(tmp_path):
    ops, n = small_ops(test_num=3)

    def run():
        res = run_benchmark("hdt", "gnm:40,120", ops, n, 5, 11)
        p = tmp_path / "x.csv"
        emit_csv(res.rows, str(p))
        return strip_timing(read_csv(str(p)))

    assert run() == run()
