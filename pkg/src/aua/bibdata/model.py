"""Immutable records: author mentions, institutions, papers and corpora."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterator, Mapping, Optional, Tuple

from ..errors import InvalidName, ValidationError
from .text import CanonicalName, normalize_text


class Gender(str, enum.Enum):
    FEMALE = "female"
    MALE = "male"
    DIVERSE = "diverse"
    UNKNOWN = "unknown"


DEFAULT_GENDERS: Tuple[Gender, ...] = (Gender.FEMALE, Gender.MALE, Gender.DIVERSE)


@dataclass(frozen=True)
class CareerStart:
    day: int
    month: int

    def __post_init__(self) -> None:
        for name, value, hi in (("day", self.day, 31), ("month", self.month, 12)):
            if isinstance(value, bool) or not isinstance(value, int) or not 1 <= value <= hi:
                raise ValidationError(
                    f"career_start.{name} must be an integer in [1, {hi}], got {value!r}",
                    field=f"career_start.{name}",
                )


def _has_letter(text: str) -> bool:
    return any(ch.isalpha() for ch in text)


@dataclass(frozen=True)
class AuthorMention:
    forename: str
    surname: str
    institution: str
    gender: Gender = Gender.UNKNOWN
    career_start: Optional[CareerStart] = None

    def __post_init__(self) -> None:
        for name in ("forename", "surname"):
            value = getattr(self, name).strip()
            if not _has_letter(value):
                raise InvalidName(f"{name} needs at least one letter: {getattr(self, name)!r}", field=name)
            object.__setattr__(self, name, value)
        object.__setattr__(self, "gender", Gender(self.gender))

    @property
    def display_name(self) -> str:
        return f"{self.forename} {self.surname}"

    @property
    def name_key(self) -> Tuple[CanonicalName, CanonicalName]:
        return normalize_text(self.forename), normalize_text(self.surname)


@dataclass(frozen=True)
class Institution:
    id: str
    display_name: str

    def __post_init__(self) -> None:
        if not self.display_name.strip():
            raise ValidationError(f"institution {self.id!r} has an empty display name", field="display_name")


@dataclass(frozen=True)
class PaperRecord:
    id: str
    title: str
    year: int
    authors: Tuple[AuthorMention, ...]
    venue: Optional[str] = None
    citations_per_year: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "authors", tuple(self.authors))
        if not self.authors:
            raise ValidationError(f"record {self.id!r} has no authors", field="authors")
        if isinstance(self.year, bool) or not isinstance(self.year, int):
            raise ValidationError(f"year must be an integer, got {self.year!r}", field="year")
        cites = {}
        for year, count in self.citations_per_year.items():
            if isinstance(count, bool) or not isinstance(count, int) or count < 0:
                raise ValidationError(f"citation count for {year} must be a non-negative integer", field="citations_per_year")
            cites[int(year)] = count
        object.__setattr__(self, "citations_per_year", dict(sorted(cites.items())))


@dataclass(frozen=True)
class Corpus:
    records: Tuple[PaperRecord, ...] = ()
    institutions: Tuple[Institution, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))
        object.__setattr__(self, "institutions", tuple(self.institutions))
        seen = set()
        for inst in self.institutions:
            if inst.id in seen:
                raise ValidationError(f"duplicate institution id {inst.id!r}", field="institutions")
            seen.add(inst.id)
        ids = set()
        for rec in self.records:
            if rec.id in ids:
                raise ValidationError(f"duplicate record id {rec.id!r}", field="id")
            ids.add(rec.id)
            for i, author in enumerate(rec.authors):
                if author.institution not in seen:
                    raise ValidationError(
                        f"record {rec.id!r} author {i} references unknown institution {author.institution!r}",
                        field="institution",
                    )

    @cached_property
    def institution_map(self) -> Dict[str, Institution]:
        return {inst.id: inst for inst in self.institutions}

    @cached_property
    def record_map(self) -> Dict[str, PaperRecord]:
        return {rec.id: rec for rec in self.records}

    def institution(self, inst_id: str) -> Institution:
        try:
            return self.institution_map[inst_id]
        except KeyError:
            raise ValidationError(f"unresolvable institution reference {inst_id!r}", field="institution") from None

    def mentions(self) -> Iterator[Tuple[PaperRecord, int, AuthorMention]]:
        for rec in self.records:
            for i, author in enumerate(rec.authors):
                yield rec, i, author

    @property
    def n_mentions(self) -> int:
        return sum(len(rec.authors) for rec in self.records)
