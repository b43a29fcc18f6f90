"""NSA, GEIL, SSIM and ACDC over a list of author mentions.

Conventions shared by all four metrics:

* double sums over "distinct pairs" run over unordered pairs;
* name and institution equality use :func:`normalize_text` keys, while
  letter counts use the institution name exactly as printed;
* ACDC is evaluated in exact rational arithmetic, so a vanishing
  denominator is detected as exactly zero rather than as float noise.
"""

from __future__ import annotations

import math
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from .bibdata.model import DEFAULT_GENDERS, AuthorMention, Corpus, Gender, PaperRecord
from .bibdata.text import CanonicalName, normalize_text
from .errors import (
    AuaError,
    DegenerateCensus,
    EmptyAuthorSet,
    MissingCareerData,
    UnknownGender,
    ValidationError,
)
from .extreal import ExtendedReal

METRIC_NAMES = ("nsa", "geil", "ssim", "acdc")


def _check_nonempty(authors: Sequence[AuthorMention]) -> None:
    if not authors:
        raise EmptyAuthorSet("author set is empty")


def nsa(authors: Sequence[AuthorMention]) -> int:
    """Number of mentions whose full name occurs at least twice in the set."""
    _check_nonempty(authors)
    counts = Counter(a.name_key for a in authors)
    return sum(n for n in counts.values() if n >= 2)


def gender_census(
    authors: Sequence[AuthorMention], categories: Sequence[Gender] = DEFAULT_GENDERS
) -> Dict[Gender, int]:
    """Per-category author counts, each padded by one outside person."""
    categories = [Gender(c) for c in categories]
    if len(set(categories)) != len(categories):
        raise DegenerateCensus(f"duplicate gender categories: {categories}")
    if Gender.UNKNOWN in categories:
        raise DegenerateCensus("'unknown' cannot be a census category")
    if len(categories) < 2:
        raise DegenerateCensus("GEIL needs at least two gender categories")
    census = {g: 1 for g in categories}
    for a in authors:
        if a.gender not in census:
            raise UnknownGender(f"{a.display_name} has gender {a.gender.value!r}, not in {[g.value for g in categories]}")
        census[a.gender] += 1
    return census


def geil(authors: Sequence[AuthorMention], categories: Sequence[Gender] = DEFAULT_GENDERS) -> float:
    """Gender imbalance level; 0 means every census count is equal."""
    census = gender_census(authors, categories)
    counts = list(census.values())
    total = sum(abs(a - b) for a, b in combinations(counts, 2))
    return total / (2 * (len(counts) - 1))


def count_letters(name: str) -> int:
    """Alphabetic code points in ``name`` after NFC (so ``ü`` counts once)."""
    return sum(1 for ch in unicodedata.normalize("NFC", name) if ch.isalpha())


def differs(x1: CanonicalName, x2: CanonicalName) -> int:
    return 0 if x1 == x2 else 1


def _pair_mean(values: Sequence, n: int) -> float:
    # -(1/(n-1)) * sum over unordered pairs; the empty sum for n == 1 is 0
    if n < 2:
        return 0.0
    return -sum(differs(a, b) for a, b in combinations(values, 2)) / (n - 1)


def ssim(authors: Sequence[AuthorMention], institutions: Sequence[str]) -> float:
    """Name/institution similarity scaled by the longest institution name.

    ``institutions`` holds the display name of each author's institution,
    aligned with ``authors``.
    """
    _check_nonempty(authors)
    if len(institutions) != len(authors):
        raise ValidationError(
            f"need one institution per author: {len(authors)} authors, {len(institutions)} institutions",
            field="institution",
        )
    for name in institutions:
        if not name or not name.strip():
            raise ValidationError("empty institution name", field="institution")
    n = len(authors)
    keys = [a.name_key for a in authors]
    name_term = 0.0
    if n >= 2:
        pair_sum = sum(
            differs(f1, f2) + differs(s1, s2) for (f1, s1), (f2, s2) in combinations(keys, 2)
        )
        name_term = -pair_sum / (n - 1)
    inst_term = _pair_mean([normalize_text(u) for u in institutions], n)
    longest = max(count_letters(u) for u in institutions)
    if longest == 0:
        raise ValidationError("no institution name contains a letter", field="institution")
    return (math.exp(name_term) + math.exp(inst_term)) * longest


def _deviation_term(values: Sequence[int], label: str, notes: List[str]) -> ExtendedReal:
    n = len(values)
    mean = Fraction(sum(values), n)
    dev = [Fraction(v) - mean for v in values]
    numerator = sum(di * dj for di in dev for dj in dev)
    denominator = sum(dev)
    if denominator == 0:
        notes.append(
            f"acdc: {label} denominator sum_i({label}_i - mean {label}) vanished "
            f"(numerator {numerator}); {label} term set to +inf"
        )
        return ExtendedReal.inf()
    return ExtendedReal.finite(float(numerator / denominator))


def acdc_with_notes(authors: Sequence[AuthorMention]) -> Tuple[ExtendedReal, List[str]]:
    """ACDC plus the notes explaining which denominators vanished."""
    _check_nonempty(authors)
    missing = sorted({a.display_name for a in authors if a.career_start is None})
    if missing:
        raise MissingCareerData(f"no career start for: {', '.join(missing)}")
    notes: List[str] = []
    days = [a.career_start.day for a in authors]
    months = [a.career_start.month for a in authors]
    value = _deviation_term(days, "day", notes) + _deviation_term(months, "month", notes)
    return value, notes


def acdc(authors: Sequence[AuthorMention]) -> ExtendedReal:
    """Academic career correlation of career-start days and months."""
    return acdc_with_notes(authors)[0]


@dataclass(frozen=True)
class MetricReport:
    nsa: int
    geil: ExtendedReal
    ssim: ExtendedReal
    acdc: ExtendedReal
    notes: Tuple[str, ...] = field(default_factory=tuple)

    def value(self, name: str):
        return getattr(self, name)

    def to_json(self, metrics: Sequence[str] = METRIC_NAMES) -> Dict[str, object]:
        out: Dict[str, object] = {}
        for name in metrics:
            v = self.value(name)
            out[name] = v if name == "nsa" else v.to_json()
        out["notes"] = [n for n in self.notes if n.split(":", 1)[0] in metrics]
        return out

    @classmethod
    def from_json(cls, obj: Dict[str, object]) -> "MetricReport":
        return cls(
            nsa=int(obj["nsa"]),
            geil=ExtendedReal.from_json(obj["geil"]),
            ssim=ExtendedReal.from_json(obj["ssim"]),
            acdc=ExtendedReal.from_json(obj["acdc"]),
            notes=tuple(obj.get("notes", ())),
        )


def compute_report(
    record: PaperRecord, corpus: Corpus, categories: Sequence[Gender] = DEFAULT_GENDERS
) -> MetricReport:
    """All four metrics for one record; failing metrics become undefined with a note."""
    authors = list(record.authors)
    institutions = [corpus.institution(a.institution).display_name for a in authors]
    notes: List[str] = []

    def guarded(name: str, fn) -> ExtendedReal:
        try:
            return fn()
        except AuaError as exc:
            notes.append(f"{name}: undefined ({type(exc).__name__}: {exc})")
            return ExtendedReal.undefined()

    geil_v = guarded("geil", lambda: ExtendedReal.finite(geil(authors, categories)))
    ssim_v = guarded("ssim", lambda: ExtendedReal.finite(ssim(authors, institutions)))

    def _acdc() -> ExtendedReal:
        value, acdc_notes = acdc_with_notes(authors)
        notes.extend(acdc_notes)
        return value

    acdc_v = guarded("acdc", _acdc)
    return MetricReport(nsa(authors), geil_v, ssim_v, acdc_v, tuple(notes))
