"""Corpus-level detection of name-, institution- and career-sharing co-authors."""

from __future__ import annotations

import enum
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .bibdata.model import AuthorMention, Corpus, PaperRecord
from .bibdata.text import CanonicalName
from .errors import InvalidConfig, ValidationError


class SharingLevel(enum.IntEnum):
    NAME = 1
    NAME_AND_INSTITUTION = 2
    FULL_AUA = 3

    @property
    def label(self) -> str:
        return _LABELS[self]

    @classmethod
    def from_label(cls, label: str) -> "SharingLevel":
        for level, text in _LABELS.items():
            if text == label:
                return level
        raise ValueError(f"unknown sharing level {label!r}")


_LABELS = {
    SharingLevel.NAME: "name",
    SharingLevel.NAME_AND_INSTITUTION: "name+institution",
    SharingLevel.FULL_AUA: "full_aua",
}

MemberRef = Tuple[str, int]  # (record id, author index)


@dataclass(frozen=True)
class AuaCluster:
    members: Tuple[MemberRef, ...]
    canonical_name: CanonicalName
    level: SharingLevel

    def to_json(self) -> Dict[str, object]:
        return {
            "canonical_name": self.canonical_name,
            "level": self.level.label,
            "members": [{"record": rid, "author_index": idx} for rid, idx in self.members],
        }


@dataclass(frozen=True)
class MergedProfile:
    cluster: AuaCluster
    publications_per_year: Dict[int, int]
    citations_per_year: Dict[int, int]

    def to_json(self) -> Dict[str, object]:
        return {
            "publications_per_year": {str(y): n for y, n in self.publications_per_year.items()},
            "citations_per_year": {str(y): n for y, n in self.citations_per_year.items()},
        }


def career_sharing(a: AuthorMention, b: AuthorMention) -> bool:
    """Same contract start day and month; the year is not compared."""
    if a.career_start is None or b.career_start is None:
        return False
    return (a.career_start.day, a.career_start.month) == (b.career_start.day, b.career_start.month)


def sharing_level(mentions: Sequence[AuthorMention]) -> SharingLevel:
    """Highest level whose conditions hold for every mention (names assumed equal)."""
    first = mentions[0]
    if any(m.institution != first.institution for m in mentions):
        return SharingLevel.NAME
    if all(career_sharing(first, m) for m in mentions):
        return SharingLevel.FULL_AUA
    return SharingLevel.NAME_AND_INSTITUTION


def detect_clusters(corpus: Corpus) -> List[AuaCluster]:
    """One cluster per canonical full name with two or more mentions, sorted by name."""
    groups: Dict[Tuple[str, str], List[Tuple[MemberRef, AuthorMention]]] = defaultdict(list)
    for rec, idx, author in corpus.mentions():
        groups[author.name_key].append(((rec.id, idx), author))
    clusters = []
    for key in sorted(groups):
        members = sorted(groups[key], key=lambda item: item[0])
        if len(members) < 2:
            continue
        level = sharing_level([m for _, m in members])
        clusters.append(AuaCluster(tuple(ref for ref, _ in members), CanonicalName(" ".join(key)), level))
    clusters.sort(key=lambda c: (c.canonical_name, c.members))
    return clusters


def merge_profiles(cluster: AuaCluster, corpus: Corpus) -> MergedProfile:
    """Bundle the publication and citation history of every cluster member.

    A record co-authored by several members counts once.
    """
    records: Dict[str, PaperRecord] = {}
    for rid, idx in cluster.members:
        rec = corpus.record_map.get(rid)
        if rec is None or not 0 <= idx < len(rec.authors):
            raise ValidationError(f"dangling cluster member ({rid!r}, {idx})", field="members")
        records[rid] = rec
    pubs: Counter = Counter()
    cites: Counter = Counter()
    for rec in records.values():
        pubs[rec.year] += 1
        for year, n in rec.citations_per_year.items():
            cites[year] += n
    return MergedProfile(cluster, dict(sorted(pubs.items())), dict(sorted(cites.items())))


def render_author_list(authors: Sequence[AuthorMention]) -> str:
    return ", ".join(a.display_name for a in authors)


def unified_author_list(authors: Sequence[AuthorMention]) -> List[AuthorMention]:
    """Collapse each run of consecutive identical names into its first mention."""
    out: List[AuthorMention] = []
    for a in authors:
        if out and out[-1].name_key == a.name_key:
            continue
        out.append(a)
    return out


def page_savings(record: PaperRecord, chars_per_page: int = 3000) -> float:
    """Fraction of a page saved by unifying repeated names, capped at one half."""
    if isinstance(chars_per_page, bool) or not isinstance(chars_per_page, int) or chars_per_page <= 0:
        raise InvalidConfig(f"chars_per_page must be a positive integer, got {chars_per_page!r}")
    if not record.authors:
        raise ValidationError("record has no authors", field="authors")
    original = len(render_author_list(record.authors))
    unified = len(render_author_list(unified_author_list(record.authors)))
    return min(0.5, (original - unified) / chars_per_page)
