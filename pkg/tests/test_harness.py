import json
import subprocess
import sys
from pathlib import Path

import pytest

from antipaths import OrientedGraph, cycle_blowup, format_edge_list, graph_hash
from antipaths.harness import (
    ConfigError,
    ExperimentConfig,
    derive_seed,
    execute,
    parse_construction,
    records_from_csv,
    records_to_csv,
    records_to_json_lines,
    run,
)
from antipaths.witnesses import validate_antipath
import antipaths.harness as harness
import antipaths.cli as cli


def run_cli(*args, check=False):
    proc = subprocess.run(
        [sys.executable, "-m", "antipaths", *args],
        capture_output=True,
        text=True,
        cwd=str(Path(__file__).resolve().parent.parent),
    )
    if check and proc.returncode != 0:
        raise AssertionError(f"CLI failed ({proc.returncode}): {proc.stderr}")
    return proc


# ---------------------------------------------------------------------------
# config validation


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(mode="verify-theorem", k=3),
        dict(mode="verify-theorem", k=4, n=4),
        dict(mode="verify-theorem", k=4, samples=0),
        dict(mode="verify-theorem", k=4, construction="random:p=0.5"),
        dict(mode="tightness", k=5),
        dict(mode="tightness", k=2),
        dict(mode="exhaustive-lemmas", n=6),
        dict(mode="exhaustive-lemmas", n=4, k_min=5, k_max=4),
        dict(mode="audit", k=4, construction="nonsense"),
        dict(mode="audit", k=4, construction="random:p"),
        dict(mode="search"),
        dict(mode="nonsense"),
        dict(mode="audit", k=4, output_format="xml"),
        dict(mode="audit", k=4, jobs=0),
    ],
)
def test_config_rejections(kwargs):
    with pytest.raises(ConfigError):
        ExperimentConfig(**kwargs).validate()


def test_config_defaults():
    cfg = ExperimentConfig(mode="verify-theorem", k=4)
    cfg.validate()
    assert cfg.n == 10 and cfg.samples == 1000


def test_parse_construction():
    assert parse_construction("cycle-blowup:ell=3,b=2") == ("cycle-blowup", {"ell": 3, "b": 2})
    assert parse_construction("random:p=0.25") == ("random", {"p": 0.25})
    with pytest.raises(ConfigError):
        parse_construction("cycle-blowup:ell=3")  # missing b


def test_derive_seed_is_stable():
    assert derive_seed(0, 0) == derive_seed(0, 0)
    assert derive_seed(0, 0) != derive_seed(0, 1)
    assert derive_seed(1, 0) != derive_seed(0, 0)
    # frozen value (first 8 bytes of sha256(b"0:0")): the cross-release contract
    import hashlib

    expected = int.from_bytes(hashlib.sha256(b"0:0").digest()[:8], "big")
    assert expected == 0xAC72368A586A18C1
    assert derive_seed(0, 0) == expected


# ---------------------------------------------------------------------------
# record semantics


def records_for(**kwargs):
    cfg = ExperimentConfig(**kwargs)
    cfg.validate()
    return run(cfg)


def test_verify_records_and_witnesses_revalidate():
    records = records_for(mode="verify-theorem", k=4, samples=10, seed=5)
    assert len(records) == 10
    for r in records:
        assert r["ok"]
        g = OrientedGraph.from_arcs(r["graph"]["n"], [tuple(a) for a in r["graph"]["arcs"]])
        assert graph_hash(g) == r["graph"]["hash"]
        for shape in r["shapes"]:
            assert shape["found"]
            verts = [int(x) for x in shape["witness"].split("dir=")[0].split()[1:]]
            wit = validate_antipath(g, verts)
            assert wit.length == 4
            assert shape["witness"].endswith("+" if wit.start_forward else "-")


def test_tightness_records():
    (r,) = records_for(mode="tightness", k=4)
    assert r["ok"] and r["pd"] == 2 and r["longest_len"] == 3
    (r6,) = records_for(mode="tightness", k=6)
    assert r6["ok"] and r6["pd"] == 3 and r6["longest_len"] == 5


def test_exhaustive_records_n3_vacuous():
    records = records_for(mode="exhaustive-lemmas", n=3)
    assert len(records) == 27
    assert all(r["ok"] for r in records)
    # no 3-vertex graph clears the degree hypothesis for k >= 4
    assert all(r["pd"] <= 1 for r in records)


def test_exhaustive_holds_across_wide_k_range():
    # the supporting statements are claimed for every k >= 1, not just 4..10
    records = records_for(mode="exhaustive-lemmas", n=4, k_min=1, k_max=12)
    assert len(records) == 729
    assert all(not r["violations"] for r in records)


def test_audit_with_blowup_construction_is_not_a_failure():
    records = records_for(
        mode="audit", k=4, n=6, samples=1, construction="cycle-blowup:ell=3,b=2"
    )
    (r,) = records
    assert r["ok"]
    assert r["longest_len"] == 3
    assert r["checks"]["below_target_length"] is False  # degree floor unmet, nothing to enforce
    assert r["audit"]["extension_openings"] == []


def test_audit_random_sampling():
    records = records_for(mode="audit", k=4, samples=8, seed=11)
    assert len(records) == 8
    for r in records:
        assert r["ok"]
        if r["audit"] is not None:
            assert r["audit"]["extension_openings"] == []


# ---------------------------------------------------------------------------
# reproducibility and format parity


def test_repeat_runs_are_byte_identical():
    a = records_to_json_lines(records_for(mode="verify-theorem", k=4, samples=6, seed=1))
    b = records_to_json_lines(records_for(mode="verify-theorem", k=4, samples=6, seed=1))
    assert a == b
    c = records_to_json_lines(records_for(mode="verify-theorem", k=4, samples=6, seed=2))
    assert c != a


def test_parallel_runs_match_serial():
    serial = records_for(mode="audit", k=4, samples=6, seed=3, jobs=1)
    parallel = records_for(mode="audit", k=4, samples=6, seed=3, jobs=2)
    assert records_to_json_lines(serial) == records_to_json_lines(parallel)
    e1 = records_for(mode="exhaustive-lemmas", n=3, jobs=1)
    e2 = records_for(mode="exhaustive-lemmas", n=3, jobs=2)
    assert records_to_json_lines(e1) == records_to_json_lines(e2)


def test_csv_json_parity():
    records = records_for(mode="verify-theorem", k=4, samples=4, seed=9)
    csv_text = records_to_csv(records)
    parsed = records_from_csv(csv_text)
    json_records = [json.loads(line) for line in records_to_json_lines(records).splitlines()]
    assert parsed == json_records


def test_execute_writes_stream_and_reports(tmp_path, capsys):
    out = tmp_path / "records.jsonl"
    cfg = ExperimentConfig(mode="tightness", k=4, output_path=str(out))
    assert execute(cfg) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 1
    assert json.loads(lines[0])["ok"]
    assert "tightness: 1 records, 0 failures" in capsys.readouterr().err


def test_execute_exit_one_on_failures(monkeypatch):
    monkeypatch.setitem(
        harness._RUNNERS, "tightness", lambda cfg: [{"ok": False, "mode": "tightness"}]
    )
    cfg = ExperimentConfig(mode="tightness", k=4, output_path="/dev/null")
    assert execute(cfg) == 1


# ---------------------------------------------------------------------------
# CLI surface


def test_cli_main_exit_codes(tmp_path):
    assert cli.main(["tightness", "--k", "4", "--out", str(tmp_path / 'a.jsonl')]) == 0
    assert cli.main(["tightness", "--k", "5", "--out", str(tmp_path / 'b.jsonl')]) == 2
    assert cli.main(["exhaustive-lemmas", "--n", "6"]) == 2
    assert cli.main(["search", "--input", str(tmp_path / "missing.el")]) == 2


def test_cli_subprocess_streams_json():
    proc = run_cli("tightness", "--k", "4", check=True)
    record = json.loads(proc.stdout.splitlines()[0])
    assert record["pd"] == 2 and record["longest_len"] == 3


def test_cli_search_roundtrip(tmp_path):
    el = tmp_path / "blowup.el"
    el.write_text(format_edge_list(cycle_blowup(3, 2)))
    dot = tmp_path / "blowup.dot"
    proc = run_cli("search", "--input", str(el), "--dot", str(dot), check=True)
    record = json.loads(proc.stdout)
    assert record["longest_len"] == 3
    assert record["heuristic_len"] <= record["longest_len"]
    assert record["agreement"] is True
    text = dot.read_text()
    assert text.count("->") == 12
    assert "color=red" in text


def test_cli_search_parse_error_names_line(tmp_path):
    el = tmp_path / "bad.el"
    el.write_text("2 1\n1 x\n")
    proc = run_cli("search", "--input", str(el))
    assert proc.returncode == 2
    assert "line 2" in proc.stderr


def test_cli_search_arcless(tmp_path):
    el = tmp_path / "empty.el"
    el.write_text("5 0\n")
    proc = run_cli("search", "--input", str(el), check=True)
    record = json.loads(proc.stdout)
    assert record["pd"] == 0 and record["longest_len"] is None


def test_cli_csv_format(tmp_path):
    out = tmp_path / "r.csv"
    assert cli.main(["tightness", "--k", "4", "--format", "csv", "--out", str(out)]) == 0
    rows = records_from_csv(out.read_text())
    assert rows[0]["pd"] == 2
