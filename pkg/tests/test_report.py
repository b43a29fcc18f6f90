import pytest

from aua.bibdata import parse_jsonl
from aua.errors import ValidationError
from aua.bibdata import Corpus, Institution, PaperRecord
from aua.metrics import MetricReport, compute_report

from conftest import corpus_of, mention


def test_ours_report(fixtures_dir):
    corpus = parse_jsonl((fixtures_dir / "full_aua.jsonl").read_bytes())
    report = compute_report(corpus.records[0], corpus)
    assert report.nsa == 2
    assert report.geil.value == 1.0
    assert report.ssim.value == pytest.approx(96.0, abs=1e-9)
    assert report.acdc.is_inf


def test_degenerate_single_unknown_author():
    corpus = corpus_of(("r", 2020, [mention(gender="unknown", start=None, inst="Abc Def")]))
    report = compute_report(corpus.records[0], corpus)
    assert report.nsa == 0
    assert report.geil.is_undefined
    assert report.ssim.value == 2 * 6
    assert report.acdc.is_undefined
    assert any(n.startswith("geil: undefined (UnknownGender") for n in report.notes)
    assert any(n.startswith("acdc: undefined (MissingCareerData") for n in report.notes)


def test_otto_fixture_computes_literal_infinity():
    from importlib import resources

    corpus = parse_jsonl(resources.files("aua.data").joinpath("otto.jsonl").read_bytes())
    report = compute_report(corpus.records[0], corpus)
    assert (report.nsa, report.geil.value) == (2, 1.0)
    assert report.ssim.value == pytest.approx(52.0, abs=1e-9)
    assert report.acdc.is_inf
    assert any("denominator" in n for n in report.notes)


def test_unresolvable_institution():
    record = PaperRecord("r", "t", 2020, (mention(inst="nowhere"),))
    corpus = Corpus((), (Institution("fau", "FAU"),))
    with pytest.raises(ValidationError):
        compute_report(record, corpus)


def test_report_json_round_trip(fixtures_dir):
    corpus = parse_jsonl((fixtures_dir / "full_aua.jsonl").read_bytes())
    report = compute_report(corpus.records[0], corpus)
    assert MetricReport.from_json(report.to_json()) == report
