from pathlib import Path

import pytest
from hypothesis import settings

from aua.bibdata import AuthorMention, CareerStart, Corpus, Institution, PaperRecord

settings.register_profile("default", deadline=None)
settings.load_profile("default")

FIXTURES = Path(__file__).parent / "fixtures"


def mention(forename="Vanessa", surname="Wirth", inst="fau", gender="female", start=(1, 4)):
    career = CareerStart(*start) if start is not None else None
    return AuthorMention(forename, surname, inst, gender, career)


def corpus_of(*records, institutions=None):
    """Records given as (id, year, [mentions]); institutions default to ids == names."""
    recs = [PaperRecord(rid, f"title {rid}", year, tuple(authors)) for rid, year, authors in records]
    if institutions is None:
        ids = sorted({a.institution for r in recs for a in r.authors})
        institutions = {i: i for i in ids}
    return Corpus(tuple(recs), tuple(Institution(k, v) for k, v in institutions.items()))


@pytest.fixture
def fixtures_dir():
    return FIXTURES


# acceptance reporting: one PASS/FAIL line per criterion in the terminal summary
_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if call.when != "call" and call.excinfo is None:
        return
    number, title = marker.args
    ok = call.excinfo is None
    prev = _criteria.get(number, (title, True))
    _criteria[number] = (title, prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"AC{number:<2} {'PASS' if ok else 'FAIL'}  {title}")
