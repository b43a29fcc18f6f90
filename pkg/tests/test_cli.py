import csv
import io
import json
import subprocess
import sys

import pytest

from aua.benchmark import BenchmarkRow, best_cells, render_benchmark
from aua.cli import main
from aua.errors import InvalidInput
from aua.extreal import ExtendedReal
from aua.metrics import MetricReport


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_ok(capsys, fixtures_dir):
    code, out, _ = run(capsys, "parse", fixtures_dir / "full_aua.jsonl")
    assert code == 0
    assert out == "1 record, 2 authors, 1 institution\n"


def test_parse_malformed(capsys, fixtures_dir):
    code, out, err = run(capsys, "parse", fixtures_dir / "malformed.jsonl")
    assert code == 1
    assert out == ""
    assert "line 1" in err


def test_parse_bad_month(capsys, fixtures_dir):
    code, _, err = run(capsys, "parse", fixtures_dir / "bad_month.jsonl")
    assert code == 2
    assert "career_start.month" in err


def test_parse_bibtex_by_extension(capsys, fixtures_dir):
    code, out, _ = run(capsys, "parse", fixtures_dir / "sample.bib", "--sidecar", fixtures_dir / "sample_sidecar.json")
    assert code == 0
    assert out == "2 records, 4 authors, 2 institutions\n"


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "parse", tmp_path / "nope.jsonl")
    assert code == 1
    assert "cannot read" in err


def test_metrics_json(capsys, fixtures_dir):
    code, out, _ = run(capsys, "metrics", fixtures_dir / "full_aua.jsonl")
    assert code == 0
    (doc,) = json.loads(out)
    assert {k: doc[k] for k in ("nsa", "geil", "ssim", "acdc")} == {"nsa": 2, "geil": 1.0, "ssim": 96.0, "acdc": "inf"}
    assert doc["record"] == "ours"


def test_metrics_json_round_trips(capsys, fixtures_dir):
    _, out, _ = run(capsys, "metrics", fixtures_dir / "no_header.jsonl")
    docs = json.loads(out)
    reports = [MetricReport.from_json(d) for d in docs]
    assert [d["record"] for d in docs] == ["p1", "p2"]
    assert reports[0].acdc.is_undefined and reports[0].geil.value == 0.5
    assert [r.to_json() for r in reports] == [{k: v for k, v in d.items() if k != "record"} for d in docs]


def test_metrics_csv(capsys, fixtures_dir):
    code, out, _ = run(capsys, "metrics", fixtures_dir / "full_aua.jsonl", "--output", "csv")
    assert code == 0
    assert out == "record,nsa,geil,ssim,acdc\nours,2,1.0,96.0,inf\n"


def test_metrics_csv_undefined(capsys, fixtures_dir):
    _, out, _ = run(capsys, "metrics", fixtures_dir / "no_header.jsonl", "--output", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["acdc"] == "undefined"


def test_metrics_filter(capsys, fixtures_dir):
    _, out, _ = run(capsys, "metrics", fixtures_dir / "full_aua.jsonl", "--metric", "nsa")
    (doc,) = json.loads(out)
    assert doc == {"record": "ours", "nsa": 2, "notes": []}


def test_metrics_markdown(capsys, fixtures_dir):
    _, out, _ = run(capsys, "metrics", fixtures_dir / "full_aua.jsonl", "--output", "markdown")
    assert out.splitlines()[-1] == "| ours | 2 | 1.00 | 96.00 | ∞ |"


def test_metrics_bad_filter(capsys, fixtures_dir):
    code, _, err = run(capsys, "metrics", fixtures_dir / "full_aua.jsonl", "--metric", "nsa,h-index")
    assert code == 2


def test_output_is_deterministic(capsys, fixtures_dir):
    outs = {run(capsys, "metrics", fixtures_dir / "no_header.jsonl")[1] for _ in range(3)}
    assert len(outs) == 1


def test_detect(capsys, fixtures_dir):
    code, out, _ = run(capsys, "detect", fixtures_dir / "full_aua.jsonl")
    assert code == 0
    (cluster,) = json.loads(out)
    assert cluster["level"] == "full_aua"
    assert len(cluster["members"]) == 2
    assert "merged_profile" not in cluster


def test_detect_distinct(capsys, fixtures_dir):
    _, out, _ = run(capsys, "detect", fixtures_dir / "distinct.jsonl")
    assert json.loads(out) == []


def test_detect_demoted(capsys, fixtures_dir):
    _, out, _ = run(capsys, "detect", fixtures_dir / "name_institution.jsonl")
    assert [c["level"] for c in json.loads(out)] == ["name+institution"]


def test_detect_savings_and_profiles(capsys, fixtures_dir):
    _, out, _ = run(capsys, "detect", fixtures_dir / "full_aua.jsonl", "--savings", "--profiles", "--chars-per-page", "1500")
    doc = json.loads(out)
    assert doc["page_savings"] == {"ours": 0.01}
    assert doc["clusters"][0]["merged_profile"]["publications_per_year"] == {"2024": 1}


def test_config_file_and_flag_override(capsys, fixtures_dir, tmp_path, monkeypatch):
    cfg = tmp_path / "aua.cfg"
    cfg.write_text("# defaults\noutput = csv\nmetric = nsa, ssim\n", encoding="utf-8")
    monkeypatch.setenv("AUA_CONFIG", str(cfg))
    _, out, _ = run(capsys, "metrics", fixtures_dir / "full_aua.jsonl")
    assert out == "record,nsa,ssim\nours,2,96.0\n"
    _, out, _ = run(capsys, "metrics", fixtures_dir / "full_aua.jsonl", "--output", "json")
    assert json.loads(out)[0]["ssim"] == 96.0


def test_bad_config_file(capsys, fixtures_dir, tmp_path, monkeypatch):
    cfg = tmp_path / "aua.cfg"
    cfg.write_text("just words\n", encoding="utf-8")
    monkeypatch.setenv("AUA_CONFIG", str(cfg))
    code, _, _ = run(capsys, "parse", fixtures_dir / "full_aua.jsonl")
    assert code == 2


def test_gender_categories_flag(capsys, fixtures_dir):
    _, out, _ = run(capsys, "metrics", fixtures_dir / "full_aua.jsonl", "--gender-categories", "female,male")
    assert json.loads(out)[0]["geil"] == 1.0  # census (3, 1) -> 2 / 2


def test_console_script_entry(fixtures_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "aua.cli", "parse", str(fixtures_dir / "bad_month.jsonl")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
    assert proc.stdout == ""


# ---- benchmark rendering ---------------------------------------------------


def row(label, nsa, geil, ssim, acdc, computed=True):
    cells = {k: ExtendedReal.from_float(v) for k, v in zip(("nsa", "geil", "ssim", "acdc"), (nsa, geil, ssim, acdc))}
    flags = {k: computed for k in cells}
    prov = {} if computed else {k: "stored" for k in cells}
    return BenchmarkRow(label, cells, flags, prov)


def test_single_row_all_bold():
    text = render_benchmark([row("Only", 0, 1, 2, 3)])
    assert "| Only | **0.00** | **1.00** | **2.00** | **3.00** |" in text


def test_ties_all_bold():
    best = best_cells([row("a", 0, 1, 5, 1), row("b", 0, 2, 5, 2)])
    assert best["ssim"] == {0, 1}
    assert best["geil"] == {0}
    assert best["acdc"] == {1}


def test_undefined_never_bold():
    best = best_cells([row("a", 0, float("nan"), 1, float("nan")), row("b", 0, float("nan"), 2, 3)])
    assert best["geil"] == set()
    assert best["acdc"] == {1}


def test_infinity_wins():
    best = best_cells([row("a", 0, 0, 0, 1e300), row("b", 0, 0, 0, float("inf"))])
    assert best["acdc"] == {1}


def test_empty_rows():
    with pytest.raises(InvalidInput):
        render_benchmark([])


def test_constants_need_provenance():
    cells = {k: ExtendedReal.finite(1) for k in ("nsa", "geil", "ssim", "acdc")}
    with pytest.raises(Exception):
        BenchmarkRow("x", cells, {k: False for k in cells}, {})


def test_custom_fixtures_file(capsys, tmp_path, fixtures_dir):
    (tmp_path / "mine.jsonl").write_bytes((fixtures_dir / "full_aua.jsonl").read_bytes())
    spec = {
        "rows": [
            {"label": "Mine", "corpus": "mine.jsonl", "record": "ours"},
            {"label": "Theirs", "constants": {m: {"value": "inf", "provenance": "made up"} for m in ("nsa", "geil", "ssim", "acdc")}},
        ]
    }
    path = tmp_path / "table.json"
    path.write_text(json.dumps(spec), encoding="utf-8")
    code, out, _ = run(capsys, "table", "--fixtures", path)
    assert code == 0
    assert "| Mine | 2.00 | **1.00** | 96.00 | **∞** |" in out
    assert "| Theirs | **∞** | ∞ | **∞** | **∞** |" in out
    assert "- Theirs NSA: made up" in out
