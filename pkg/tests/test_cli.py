import json

import pytest

from localdom import cli
from localdom.graph import cycle_graph, format_edgelist, path_graph


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


@pytest.fixture
def corpus(tmp_path):
    d = tmp_path / "corpus"
    d.mkdir()
    (d / "c6.txt").write_text(format_edgelist(cycle_graph(6)))
    (d / "p5.txt").write_text(format_edgelist(path_graph(5)))
    return d


def test_gen_writes_edges_and_sidecar(capsys, tmp_path):
    out = tmp_path / "g.txt"
    code, _, _ = run(capsys, "gen", "cycle", 6, "--certify", "--out", out)
    assert code == 0
    meta = json.loads((tmp_path / "g.txt.json").read_text())
    assert meta["n"] == 6 and meta["m"] == 6 and meta["certified_t"] == 3
    code, text, _ = run(capsys, "gen", "fan", 3, "--seed", 1)
    assert code == 0 and text.startswith("#")


def test_gen_usage_errors(capsys):
    assert run(capsys, "gen", "cycle", 2)[0] == 2
    assert run(capsys, "gen", "nonsense", 5)[0] == 2
    assert run(capsys, "gen", "cycle", 5, "--param", "novalue")[0] == 2
    assert run(capsys, "gen", "cycle", 5, "--param", "bogus=1")[0] == 2


def test_run_rows(capsys, corpus):
    code, text, _ = run(capsys, "run", corpus, "--algo", "algo1", "--algo", "3round", "--no-timestamp")
    assert code == 0
    out = rows(text)
    body = [r for r in out if r["type"] == "row"]
    assert len(body) == 4 and out[-1]["type"] == "summary"
    c6 = next(r for r in body if r["instance"] == "c6.txt" and r["algorithm"] == "algo1")
    assert c6["exact_size"] == 2 and c6["ratio"] == "3/1" and c6["ratio_decimal"] == 3.0
    assert c6["guarantee"] == "held" and c6["rounds"] == 70
    assert out[-1]["valid"] == 4 and out[-1]["max_ratio"]["file/algo1"] == 3.0


def test_run_is_byte_identical(capsys, corpus, tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    for dest in (a, b):
        assert run(capsys, "run", corpus, "--algo", "algo1", "--algo", "mvc", "--no-timestamp", "--out", dest)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_run_header_has_timestamp(capsys, corpus):
    code, text, _ = run(capsys, "run", corpus / "c6.txt")
    assert code == 0
    assert "timestamp" in rows(text)[0]


def test_run_plan(capsys, tmp_path):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({
        "algorithms": ["3round"],
        "instances": [{"family": "cycle", "size": 7}, {"family": "tree", "size": 9, "seed": 4}],
    }))
    code, text, _ = run(capsys, "run", "--plan", plan, "--no-timestamp", "--certify")
    assert code == 0
    body = [r for r in rows(text) if r["type"] == "row"]
    assert [r["family"] for r in body] == ["cycle", "tree"]
    assert body[0]["certified_t"] == 3 and body[1]["certified_t"] == 2


def test_run_errors(capsys, tmp_path, corpus):
    code, text, _ = run(capsys, "run", tmp_path / "missing.txt")
    assert code == 2 and text == ""
    assert run(capsys, "run")[0] == 2
    assert run(capsys, "run", corpus, "--algo", "nope")[0] == 2
    assert run(capsys, "run", corpus, "--r1", 0)[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "run", "--plan", bad)[0] == 2
    broken = tmp_path / "broken.txt"
    broken.write_text("3 1\n0 7\n")
    code, text, _ = run(capsys, "run", broken)
    assert code == 2 and text == ""


def test_run_degree2_on_non_tree_is_reported(capsys, corpus):
    code, text, err = run(capsys, "run", corpus / "c6.txt", "--algo", "degree2", "--no-timestamp")
    assert code == 2 and "degree2" in err


def test_exact(capsys, corpus):
    code, text, _ = run(capsys, "exact", corpus / "p5.txt")
    assert code == 0 and rows(text)[0]["set"] == [0, 3]
    code, text, _ = run(capsys, "exact", corpus / "c6.txt", "--problem", "mvc")
    assert code == 0 and rows(text)[0]["size"] == 3
    assert run(capsys, "exact", corpus / "c6.txt", "--exact-cap", 4)[0] == 2


def test_verify_golden(capsys):
    code, text, _ = run(capsys, "verify", "--no-timestamp")
    out = rows(text)
    assert code == 0, [r for r in out if not r.get("pass", True)]
    assert out[-1] == {"type": "summary", "files": 6, "failed": 0, "parse_errors": 0}


def test_verify_corrupted_corpus(capsys, corpus):
    (corpus / "zz.txt").write_text("4 2\n0 1\nx y\n")
    code, text, err = run(capsys, "verify", corpus)
    assert code == 2 and "zz.txt" in err
    out = rows(text)
    assert any(r["type"] == "error" for r in out)
    assert all(r["pass"] for r in out if r["type"] == "file")


def test_verify_expected_mismatch(capsys, corpus):
    (corpus / "expected.json").write_text(json.dumps({"c6.txt": {"exact": 3}}))
    code, text, _ = run(capsys, "verify", corpus)
    assert code == 1


def test_verify_empty_and_missing(capsys, tmp_path):
    code, text, err = run(capsys, "verify", tmp_path)
    assert code == 0 and "warning" in err
    assert run(capsys, "verify", tmp_path / "nope")[0] == 2


def test_report(capsys, corpus, tmp_path):
    rep = tmp_path / "r.jsonl"
    run(capsys, "run", corpus, "--algo", "algo1", "--out", rep)
    code, text, _ = run(capsys, "report", rep)
    assert code == 0
    (agg,) = rows(text)
    assert agg["rows"] == 2 and agg["valid"] == 2 and agg["max_ratio"] == "3/1"
    junk = tmp_path / "junk.jsonl"
    junk.write_text("not json\n")
    assert run(capsys, "report", junk)[0] == 2
    assert run(capsys, "report", tmp_path / "absent")[0] == 2


def test_no_subcommand(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "--help")[0] == 0
