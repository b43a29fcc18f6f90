"""JSON-lines corpus reader and canonical writer.

One record object per line.  An optional first line
``{"institutions": {"<id>": "<display name>"}}`` declares the institution
table; without it, institution strings are registered by display name.
"""

from __future__ import annotations

import io
import json
import logging
from typing import Any, BinaryIO, Dict, Iterable, List, Optional, Union

from ..errors import ParseError, ValidationError
from .model import AuthorMention, CareerStart, Corpus, Gender, Institution, PaperRecord

log = logging.getLogger(__name__)

RECORD_FIELDS = {"id", "title", "year", "venue", "authors", "citations_per_year"}
AUTHOR_FIELDS = {"forename", "surname", "gender", "institution", "career_start"}


def _require(obj: Dict[str, Any], key: str, kind: type, line: int, prefix: str = "") -> Any:
    if key not in obj:
        raise ValidationError("missing required field", line=line, field=prefix + key)
    value = obj[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise ValidationError(
            f"expected {kind.__name__}, got {type(value).__name__}", line=line, field=prefix + key
        )
    return value


def _warn_unknown(obj: Dict[str, Any], known: set, line: int, prefix: str = "") -> None:
    for key in sorted(set(obj) - known):
        log.warning("line %d: ignoring unknown field %r", line, prefix + key)


def _career(raw: Any, line: int, prefix: str) -> Optional[CareerStart]:
    if raw is None:
        return None
    if not isinstance(raw, dict):
        raise ValidationError("expected an object", line=line, field=prefix + "career_start")
    day = _require(raw, "day", int, line, prefix + "career_start.")
    month = _require(raw, "month", int, line, prefix + "career_start.")
    try:
        return CareerStart(day, month)
    except ValidationError as exc:
        raise ValidationError(str(exc), line=line, field=prefix + exc.field) from None


class _Reader:
    def __init__(self) -> None:
        self.header: Optional[Dict[str, Institution]] = None
        self.auto: Dict[str, Institution] = {}
        self.records: List[PaperRecord] = []
        self.ids: set = set()

    def resolve(self, name: str, line: int, field: str) -> str:
        if self.header is not None:
            if name not in self.header:
                raise ValidationError(f"unknown institution id {name!r}", line=line, field=field)
            return name
        if name not in self.auto:
            try:
                self.auto[name] = Institution(name, name)
            except ValidationError as exc:
                raise ValidationError(str(exc), line=line, field=field) from None
        return name

    def read_header(self, obj: Dict[str, Any], line: int) -> None:
        table = obj["institutions"]
        if not isinstance(table, dict):
            raise ValidationError("institutions header must map id -> display name", line=line, field="institutions")
        self.header = {}
        for inst_id, display in table.items():
            if not isinstance(display, str):
                raise ValidationError("display name must be a string", line=line, field=f"institutions.{inst_id}")
            try:
                self.header[inst_id] = Institution(inst_id, display)
            except ValidationError as exc:
                raise ValidationError(str(exc), line=line, field=f"institutions.{inst_id}") from None

    def read_record(self, obj: Dict[str, Any], line: int) -> None:
        _warn_unknown(obj, RECORD_FIELDS, line)
        rec_id = _require(obj, "id", str, line)
        if rec_id in self.ids:
            raise ValidationError(f"duplicate record id {rec_id!r}", line=line, field="id")
        self.ids.add(rec_id)
        title = _require(obj, "title", str, line)
        year = _require(obj, "year", int, line)
        venue = obj.get("venue")
        if venue is not None and not isinstance(venue, str):
            raise ValidationError("expected str", line=line, field="venue")
        raw_authors = _require(obj, "authors", list, line)
        if not raw_authors:
            raise ValidationError("authors must be non-empty", line=line, field="authors")
        authors = []
        for i, raw in enumerate(raw_authors):
            prefix = f"authors[{i}]."
            if not isinstance(raw, dict):
                raise ValidationError("expected an object", line=line, field=f"authors[{i}]")
            _warn_unknown(raw, AUTHOR_FIELDS, line, prefix)
            forename = _require(raw, "forename", str, line, prefix)
            surname = _require(raw, "surname", str, line, prefix)
            gender = raw.get("gender", "unknown")
            try:
                gender = Gender(gender)
            except ValueError:
                raise ValidationError(f"invalid gender {gender!r}", line=line, field=prefix + "gender") from None
            inst = self.resolve(_require(raw, "institution", str, line, prefix), line, prefix + "institution")
            career = _career(raw.get("career_start"), line, prefix)
            try:
                authors.append(AuthorMention(forename, surname, inst, gender, career))
            except ValidationError as exc:
                raise ValidationError(str(exc), line=line, field=prefix + (exc.field or "")) from None

        cites_raw = obj.get("citations_per_year") or {}
        if not isinstance(cites_raw, dict):
            raise ValidationError("expected an object", line=line, field="citations_per_year")
        cites = {}
        for key, count in cites_raw.items():
            try:
                year_key = int(key)
            except ValueError:
                raise ValidationError(f"year key {key!r} is not an integer", line=line, field="citations_per_year") from None
            cites[year_key] = count
        try:
            self.records.append(PaperRecord(rec_id, title, year, tuple(authors), venue, cites))
        except ValidationError as exc:
            raise ValidationError(str(exc), line=line, field=exc.field) from None

    def corpus(self) -> Corpus:
        table = self.header if self.header is not None else self.auto
        return Corpus(tuple(self.records), tuple(table.values()))


def _lines(stream: Union[BinaryIO, bytes, str, Iterable]) -> Iterable:
    if isinstance(stream, (bytes, str)):
        stream = io.BytesIO(stream.encode("utf-8") if isinstance(stream, str) else stream)
    return stream


def parse_jsonl(stream: Union[BinaryIO, bytes, str]) -> Corpus:
    """Parse a JSON-lines corpus from a byte stream (bytes/str also accepted)."""
    reader = _Reader()
    seen_record = False
    for lineno, raw in enumerate(_lines(stream), start=1):
        if isinstance(raw, bytes):
            try:
                raw = raw.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise ParseError(f"invalid UTF-8: {exc.reason}", line=lineno) from None
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed JSON: {exc.msg}", line=lineno) from None
        if not isinstance(obj, dict):
            raise ParseError("each line must be a JSON object", line=lineno)
        if set(obj) == {"institutions"}:
            if seen_record or reader.header is not None:
                raise ParseError("institutions header must be the first line", line=lineno)
            reader.read_header(obj, lineno)
            continue
        seen_record = True
        reader.read_record(obj, lineno)
    return reader.corpus()


def record_to_json(rec: PaperRecord) -> Dict[str, Any]:
    out: Dict[str, Any] = {"id": rec.id, "title": rec.title, "year": rec.year}
    if rec.venue is not None:
        out["venue"] = rec.venue
    authors = []
    for a in rec.authors:
        item: Dict[str, Any] = {
            "forename": a.forename,
            "surname": a.surname,
            "gender": a.gender.value,
            "institution": a.institution,
        }
        if a.career_start is not None:
            item["career_start"] = {"day": a.career_start.day, "month": a.career_start.month}
        authors.append(item)
    out["authors"] = authors
    if rec.citations_per_year:
        out["citations_per_year"] = {str(y): c for y, c in rec.citations_per_year.items()}
    return out


def serialize_jsonl(corpus: Corpus) -> str:
    """Canonical JSON-lines text; parsing it back yields an equal corpus."""
    lines = []
    if corpus.institutions:
        table = {inst.id: inst.display_name for inst in corpus.institutions}
        lines.append(json.dumps({"institutions": table}, ensure_ascii=False))
    for rec in corpus.records:
        lines.append(json.dumps(record_to_json(rec), ensure_ascii=False))
    return "".join(line + "\n" for line in lines)
