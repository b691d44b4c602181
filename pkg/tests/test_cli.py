import json
from fractions import Fraction

from graphsolitons import Graph, solve_weights
from graphsolitons.cli import main
from conftest import PAW_TEXT

NONPOS_TEXT = "5\n1 4\n1 5\n2 4\n2 5\n3 4\n3 5\n4 5\n"


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------- analyze

def test_analyze_paw(tmp_path, capsys):
    path = _write(tmp_path, "paw.graph", PAW_TEXT)
    code, out, err = _run(capsys, ["analyze", path])
    assert code == 0 and err == ""
    report = json.loads(out)
    assert report["p"] == 4 and report["q"] == 4
    assert report["positive"] is True and report["degenerate"] is False
    assert report["edges"] == [[2, 3], [1, 3], [1, 2], [3, 4]]
    assert report["weights"] == ["1/6", "1/6", "1/3", "1/3"]
    assert report["nu"] == "4/3"
    assert report["components"] == [[1, 2], [3], [4]]
    assert report["component_flags"] == ["complete", "discrete", "discrete"]
    assert report["coherence_edges"] == [[1, 2], [2, 3]]
    assert report["aut_order"] == 2
    assert report["sym_derivation_dim"] == 5
    sol = report["soliton"]
    assert sol["soliton"] is True
    assert sol["c"] == "-2/3"
    assert sol["residual"] == "0"
    assert sol["derivation_diagonal"] == [
        "5/12", "5/12", "1/3", "1/2", "3/4", "3/4", "5/6", "5/6",
    ]


def test_analyze_deterministic_output(tmp_path, capsys):
    path = _write(tmp_path, "paw.graph", PAW_TEXT)
    _, out1, _ = _run(capsys, ["analyze", path])
    _, out2, _ = _run(capsys, ["analyze", path])
    assert out1 == out2


def test_analyze_nonpositive(tmp_path, capsys):
    path = _write(tmp_path, "bad.graph", NONPOS_TEXT)
    code, out, err = _run(capsys, ["analyze", path])
    assert code == 1
    report = json.loads(out)
    assert report["positive"] is False
    assert report["failing_edge_indices"] == [7]
    assert report["unnormalized_weights"] == ["1/6"] * 6 + ["0"]
    assert "soliton" not in report


def test_analyze_edgeless(tmp_path, capsys):
    path = _write(tmp_path, "edgeless.graph", "3\n")
    code, out, err = _run(capsys, ["analyze", path])
    assert code == 0
    report = json.loads(out)
    assert report["positive"] is True and report["degenerate"] is True
    assert "weights" not in report
    assert report["soliton"]["soliton"] is True
    assert report["soliton"]["c"] == "0"
    assert report["sym_derivation_dim"] == 6


def test_analyze_parse_error(tmp_path, capsys):
    path = _write(tmp_path, "bad.graph", "3\n2 2\n")
    code, out, err = _run(capsys, ["analyze", path])
    assert code == 2 and out == ""
    assert "error" in err.lower() or "loop" in err.lower()


def test_analyze_missing_file(tmp_path, capsys):
    code, out, err = _run(capsys, ["analyze", str(tmp_path / "nope.graph")])
    assert code == 2 and out == ""
    assert err


def test_usage_error(capsys):
    code, out, err = _run(capsys, [])
    assert code == 2


def test_invalid_soliton_mode(tmp_path, capsys, monkeypatch):
    path = _write(tmp_path, "paw.graph", PAW_TEXT)
    monkeypatch.setenv("SOLITON_MODE", "symbolic")
    code, out, err = _run(capsys, ["analyze", path])
    assert code == 2
    assert "SOLITON_MODE" in err


def test_float_soliton_mode(tmp_path, capsys, monkeypatch):
    path = _write(tmp_path, "paw.graph", PAW_TEXT)
    monkeypatch.setenv("SOLITON_MODE", "float")
    code, out, err = _run(capsys, ["analyze", path])
    assert code == 0
    report = json.loads(out)
    sol = report["soliton"]
    assert sol["soliton"] is True
    assert abs(sol["c"] - (-2 / 3)) < 1e-12
    assert sol["residual"] <= 1e-9
    # exact fields unaffected by the mode
    assert report["weights"] == ["1/6", "1/6", "1/3", "1/3"]


# ---------------------------------------------------------------- solsoliton

def test_solsoliton_einstein(tmp_path, capsys):
    path = _write(tmp_path, "paw.graph", PAW_TEXT)
    code, out, err = _run(capsys, ["solsoliton", path, "--einstein"])
    assert code == 0
    report = json.loads(out)
    assert report["r"] == 1 and report["dim"] == 9
    assert report["soliton"] is True and report["einstein"] is True
    assert report["c"] == "-2/3" and report["residual"] == "0"
    assert report["derivation_is_diagonal"] is True
    assert all(x == "0" for x in report["derivation_diagonal"])
    assert report["canonical_subspace"] == [["1", "1", "4/5", "6/5"]]


def test_solsoliton_subspace_file(tmp_path, capsys):
    gpath = _write(tmp_path, "paw.graph", PAW_TEXT)
    spath = _write(tmp_path, "line.vec", "1 0 0 0\n")
    code, out, err = _run(capsys, ["solsoliton", gpath, "--subspace", spath])
    assert code == 0
    report = json.loads(out)
    assert report["r"] == 1 and report["dim"] == 9
    assert report["subspace"] == [["1", "0", "0", "0"]]
    assert report["soliton"] is True and report["einstein"] is False
    assert report["derivation_is_diagonal"] is True
    assert report["c"] == "-2/3"


def test_solsoliton_rank_warning(tmp_path, capsys):
    gpath = _write(tmp_path, "paw.graph", PAW_TEXT)
    spath = _write(tmp_path, "dep.vec", "1 0 0 0\n2 0 0 0\n")
    code, out, err = _run(capsys, ["solsoliton", gpath, "--subspace", spath])
    assert code == 0
    assert "span only 1" in err
    assert json.loads(out)["r"] == 1


def test_solsoliton_nonpositive(tmp_path, capsys):
    gpath = _write(tmp_path, "bad.graph", NONPOS_TEXT)
    code, out, err = _run(capsys, ["solsoliton", gpath, "--einstein"])
    assert code == 1
    report = json.loads(out)
    assert report["positive"] is False
    assert report["failing_edge_indices"] == [7]


def test_solsoliton_edgeless(tmp_path, capsys):
    gpath = _write(tmp_path, "edgeless.graph", "3\n")
    code, out, err = _run(capsys, ["solsoliton", gpath, "--einstein"])
    assert code == 1
    report = json.loads(out)
    assert report["positive"] is True and report["degenerate"] is True


def test_solsoliton_requires_subspace_choice(tmp_path, capsys):
    gpath = _write(tmp_path, "paw.graph", PAW_TEXT)
    code, out, err = _run(capsys, ["solsoliton", gpath])
    assert code == 2


# ---------------------------------------------------------------- classify

def test_classify_equivalent(tmp_path, capsys):
    gpath = _write(tmp_path, "paw.graph", PAW_TEXT)
    a = _write(tmp_path, "a.vec", "1 0 0 0\n")
    b = _write(tmp_path, "b.vec", "0 1 0 0\n")
    code, out, err = _run(capsys, ["classify", gpath, a, b])
    assert code == 0
    report = json.loads(out)
    assert report["r_a"] == 1 and report["r_b"] == 1
    assert report["equivalent"] is True
    assert report["witness"] == [2, 1, 3, 4]
    assert report["canonical_a"] == report["canonical_b"]


def test_classify_inequivalent(tmp_path, capsys):
    gpath = _write(tmp_path, "paw.graph", PAW_TEXT)
    a = _write(tmp_path, "a.vec", "0 0 1 0\n")
    b = _write(tmp_path, "b.vec", "0 0 0 1\n")
    code, out, err = _run(capsys, ["classify", gpath, a, b])
    assert code == 1
    report = json.loads(out)
    assert report["equivalent"] is False and report["witness"] is None
    assert report["canonical_a"] != report["canonical_b"]


# ---------------------------------------------------------------- census

def test_census_small(tmp_path, capsys):
    out_path = tmp_path / "census.jsonl"
    code, out, err = _run(capsys, ["census", "--max-p", "5", "-o", str(out_path)])
    assert code == 0
    summary = json.loads(out)
    assert summary["classes"] == 31
    assert summary["positive"] == 30 and summary["nonpositive"] == 1
    assert summary["per_p"]["5"] == {"classes": 21, "positive": 20, "nonpositive": 1}

    records = [json.loads(line) for line in out_path.read_text().splitlines()]
    assert len(records) == 31
    # re-derive each stored weighting from the canonical edges
    for record in records:
        if "weights" not in record:
            continue
        g = Graph(p=record["p"], edges=tuple(tuple(e) for e in record["canonical_edges"]))
        w = solve_weights(g)
        assert [Fraction(x) for x in record["weights"]] == list(w.c)
        assert Fraction(record["nu"]) == w.nu


def test_census_parallel_matches_serial(tmp_path, capsys):
    serial = tmp_path / "serial.jsonl"
    parallel = tmp_path / "parallel.jsonl"
    code1, _, _ = _run(capsys, ["census", "--max-p", "4", "-o", str(serial)])
    code2, _, _ = _run(
        capsys, ["census", "--max-p", "4", "--jobs", "2", "-o", str(parallel)]
    )
    assert code1 == code2 == 0
    assert serial.read_bytes() == parallel.read_bytes()


def test_census_all_includes_disconnected(tmp_path, capsys):
    out_path = tmp_path / "all.jsonl"
    code, out, err = _run(capsys, ["census", "--max-p", "3", "--all", "-o", str(out_path)])
    assert code == 0
    summary = json.loads(out)
    assert summary["classes"] == 7 and summary["connected_only"] is False


# ---------------------------------------------------------------- table1

def test_table1_small(capsys):
    code, out, err = _run(capsys, ["table1", "--max", "4"])
    assert code == 0
    report = json.loads(out)
    assert report["mismatches"] == []
    assert report["max_size"] == 4
    assert report["checked"] == sum(report["per_row"].values())
    assert set(report["per_row"]) == {
        "complete", "bipartite", "split",
        "triangle-ddd", "triangle-ddc",
        "path-ddc", "path-dcc", "path-cdc", "path-ccc",
    }
