import pytest

from aua.bibdata import Gender, load_sidecar, parse_bibtex_subset, split_author_field
from aua.errors import ParseError, ValidationError
from aua.metrics import count_letters


@pytest.fixture
def sample(fixtures_dir):
    sidecar = load_sidecar((fixtures_dir / "sample_sidecar.json").read_bytes())
    return parse_bibtex_subset((fixtures_dir / "sample.bib").open("rb"), sidecar)


def test_sample_records(sample):
    assert [r.id for r in sample.records] == ["wirth2024", "mueller2020"]
    wirth = sample.records[0]
    assert wirth.year == 2024
    assert wirth.venue == "Proceedings of the Shared Names Workshop"
    assert wirth.title == "Two Co-authors, One Name"
    a, b = wirth.authors
    assert a.name_key == b.name_key
    assert (a.forename, a.surname) == ("Vanessa", "Wirth")


def test_escapes_decoded_and_institutions_shared(sample):
    names = [i.display_name for i in sample.institutions]
    assert names == ["Friedrich-Alexander-Universität Erlangen-Nürnberg (FAU)", "Universität Wien"]
    assert count_letters(names[0]) == 48
    mueller = sample.records[1]
    assert [(a.forename, a.surname) for a in mueller.authors] == [("Jürgen", "Müller"), ("Götz", "Straßer")]
    assert mueller.title == "On École names"


def test_sidecar_supplies_gender_and_career(sample):
    wirth = sample.records[0].authors[0]
    assert wirth.gender is Gender.FEMALE
    assert (wirth.career_start.day, wirth.career_start.month) == (1, 4)
    juergen, goetz = sample.records[1].authors
    assert juergen.gender is Gender.MALE and juergen.career_start.month == 10
    assert goetz.gender is Gender.UNKNOWN and goetz.career_start is None


def test_no_sidecar_defaults(fixtures_dir):
    corpus = parse_bibtex_subset((fixtures_dir / "sample.bib").read_bytes())
    assert all(a.gender is Gender.UNKNOWN and a.career_start is None for _, _, a in corpus.mentions())


@pytest.mark.parametrize(
    "value, expected",
    [
        ("Wirth, Vanessa and Wirth, Vanessa", [("Vanessa", "Wirth"), ("Vanessa", "Wirth")]),
        ("Vanessa Wirth", [("Vanessa", "Wirth")]),
        ("Anna Maria Schmidt AND Otto, Philipp", [("Anna Maria", "Schmidt"), ("Philipp", "Otto")]),
        ("{Barnes and Noble} Staff and Jo Doe", [("{Barnes and Noble}", "Staff"), ("Jo", "Doe")]),
        ("Doe, Jr, John", [("John", "Doe")]),
    ],
)
def test_split_author_field(value, expected):
    assert split_author_field(value) == expected


def test_missing_author_names_entry():
    with pytest.raises(ParseError) as exc:
        parse_bibtex_subset(b"@article{nokey2020, title={T}, year={2020}, institution={I}}")
    assert exc.value.entry == "nokey2020"


def test_duplicate_keys():
    entry = b"@article{k, author={A B}, year={2020}, institution={I}}\n"
    with pytest.raises(ValidationError) as exc:
        parse_bibtex_subset(entry * 2)
    assert exc.value.entry == "k"


def test_unbalanced_braces_entry():
    with pytest.raises(ParseError) as exc:
        parse_bibtex_subset(b"@article{broken, author={A {B}, year={2020}")
    assert exc.value.entry == "broken"


def test_unbalanced_brace_inside_quoted_value_has_offset():
    src = '@article{q, author = "A} B", year={2020}, institution={I}}'
    with pytest.raises(ParseError) as exc:
        parse_bibtex_subset(src.encode())
    assert exc.value.entry == "q"


def test_nested_braces_depth_two():
    src = b"@book{n, author={{Wirth}, {Van{e}ssa}}, year={2020}, institution={{Inst {X}}}}"
    corpus = parse_bibtex_subset(src)
    a = corpus.records[0].authors[0]
    assert (a.forename, a.surname) == ("Vanessa", "Wirth")
    assert corpus.institutions[0].display_name == "Inst X"


def test_missing_institution_without_sidecar():
    with pytest.raises(ValidationError) as exc:
        parse_bibtex_subset(b"@misc{m, author={A B}, year={2020}}")
    assert exc.value.field == "institution"


def test_institution_from_sidecar():
    corpus = parse_bibtex_subset(
        b"@misc{m, author={Ada Lovelace}, year={2020}}", {"ada lovelace": {"institution": "Engine Society"}}
    )
    assert corpus.records[0].authors[0].institution == "Engine Society"


def test_string_macros_unsupported():
    with pytest.raises(ParseError):
        parse_bibtex_subset(b"@article{m, author={A B}, journal=jacm, year={2020}}")


def test_bad_year():
    with pytest.raises(ValidationError) as exc:
        parse_bibtex_subset(b"@misc{m, author={A B}, year={soon}, institution={I}}")
    assert exc.value.field == "year"
