"""A small BibTeX reader: braced/quoted/numeric field values, no macros.

Gender and career data are not BibTeX fields; they come from a JSON sidecar
keyed by ``"forename|surname|institution-id"`` or ``"forename surname"``
(both normalized before lookup).
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from typing import Any, BinaryIO, Dict, List, Mapping, Optional, Tuple, Union

from ..errors import ParseError, ValidationError
from .model import AuthorMention, CareerStart, Corpus, Gender, Institution, PaperRecord
from .text import decode_latex_escapes, normalize_text

log = logging.getLogger(__name__)

_IDENT = re.compile(r"[A-Za-z0-9_:\-.]+")
_SKIPPED_TYPES = {"comment", "preamble", "string"}


@dataclass
class RawEntry:
    type: str
    key: str
    fields: Dict[str, Tuple[str, int]]  # name -> (raw value, char offset of value)
    offset: int


class _Scanner:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def byte_offset(self, pos: int) -> int:
        return len(self.text[:pos].encode("utf-8"))

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def braced(self, key: Optional[str]) -> Tuple[str, int]:
        """Read ``{...}`` starting at the opening brace; return the inner text."""
        start = self.pos
        depth = 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "\\":
                self.pos += 2
                continue
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    self.pos += 1
                    return self.text[start + 1:self.pos - 1], start + 1
            self.pos += 1
        raise ParseError("unbalanced braces", entry=key, offset=self.byte_offset(start))

    def quoted(self, key: Optional[str]) -> Tuple[str, int]:
        start = self.pos
        self.pos += 1
        depth = 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "\\":
                self.pos += 2
                continue
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth < 0:
                    break
            elif ch == '"' and depth == 0:
                self.pos += 1
                return self.text[start + 1:self.pos - 1], start + 1
            self.pos += 1
        raise ParseError("unterminated quoted value", entry=key, offset=self.byte_offset(start))

    def entries(self) -> List[RawEntry]:
        out = []
        while True:
            at = self.text.find("@", self.pos)
            if at == -1:
                return out
            self.pos = at + 1
            m = _IDENT.match(self.text, self.pos)
            if not m:
                continue
            etype = m.group().lower()
            self.pos = m.end()
            self.skip_ws()
            if self.peek() != "{":
                raise ParseError(f"expected '{{' after @{etype}", offset=self.byte_offset(self.pos))
            if etype in _SKIPPED_TYPES:
                if etype != "comment":
                    log.warning("skipping unsupported @%s block", etype)
                self.braced(None)
                continue
            out.append(self.entry(etype, at))

    def entry(self, etype: str, at: int) -> RawEntry:
        self.pos += 1
        comma = self.text.find(",", self.pos)
        close = self.text.find("}", self.pos)
        if comma == -1 or (close != -1 and close < comma):
            end = close if close != -1 else len(self.text)
            key = self.text[self.pos:end].strip() or None
            raise ParseError("entry has no fields", entry=key, offset=self.byte_offset(at))
        key = self.text[self.pos:comma].strip()
        if not key:
            raise ParseError("entry without a citation key", offset=self.byte_offset(at))
        self.pos = comma + 1
        fields: Dict[str, Tuple[str, int]] = {}
        while True:
            self.skip_ws()
            ch = self.peek()
            if ch == "}":
                self.pos += 1
                return RawEntry(etype, key, fields, at)
            if not ch:
                raise ParseError("unbalanced braces: entry not closed", entry=key, offset=self.byte_offset(at))
            m = _IDENT.match(self.text, self.pos)
            if not m:
                raise ParseError(f"unexpected character {ch!r}", entry=key, offset=self.byte_offset(self.pos))
            name = m.group().lower()
            self.pos = m.end()
            self.skip_ws()
            if self.peek() != "=":
                raise ParseError(f"expected '=' after field {name!r}", entry=key, offset=self.byte_offset(self.pos))
            self.pos += 1
            self.skip_ws()
            ch = self.peek()
            if ch == "{":
                value = self.braced(key)
            elif ch == '"':
                value = self.quoted(key)
            else:
                m = re.compile(r"\d+").match(self.text, self.pos)
                if not m:
                    raise ParseError(
                        f"field {name!r}: only braced, quoted or numeric values are supported",
                        entry=key,
                        offset=self.byte_offset(self.pos),
                    )
                value = (m.group(), self.pos)
                self.pos = m.end()
            if name in fields:
                log.warning("entry %r: duplicate field %r, keeping the last value", key, name)
            fields[name] = value
            self.skip_ws()
            if self.peek() == ",":
                self.pos += 1
            elif self.peek() != "}":
                if not self.peek():
                    raise ParseError("unbalanced braces: entry not closed", entry=key, offset=self.byte_offset(at))
                raise ParseError("expected ',' or '}'", entry=key, offset=self.byte_offset(self.pos))


def _split_depth0(text: str, pattern: re.Pattern) -> List[Tuple[str, int]]:
    """Split on ``pattern`` matches that sit at brace depth 0; keep offsets."""
    depth = 0
    mask = []
    for ch in text:
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
        mask.append(depth == 0)
    parts = []
    start = 0
    for m in pattern.finditer(text):
        if all(mask[m.start():m.end()]):
            parts.append((text[start:m.start()], start))
            start = m.end()
    parts.append((text[start:], start))
    return parts


_AND = re.compile(r"\s+and\s+", re.IGNORECASE)
_COMMA = re.compile(r",")
_SPACE = re.compile(r"\s+")


def split_author_field(value: str) -> List[Tuple[str, str]]:
    """Split an ``author`` value into raw ``(forename, surname)`` pairs.

    ``"Last, First"`` and ``"First Last"`` are both accepted; in the latter the
    final token is the surname.  Name particles are not recognized.
    """
    names = []
    for chunk, _ in _split_depth0(value.strip(), _AND):
        chunk = chunk.strip()
        parts = [p.strip() for p, _ in _split_depth0(chunk, _COMMA)]
        if len(parts) >= 2:
            # "Last, Jr, First" keeps only Last and First
            names.append((parts[-1], parts[0]))
            continue
        tokens = [t for t, _ in _split_depth0(chunk, _SPACE) if t]
        names.append((" ".join(tokens[:-1]), tokens[-1] if tokens else ""))
    return names


def _sidecar_index(sidecar: Optional[Mapping[str, Any]]) -> Dict[Tuple[str, ...], Dict[str, Any]]:
    index: Dict[Tuple[str, ...], Dict[str, Any]] = {}
    for key, meta in (sidecar or {}).items():
        if not isinstance(meta, dict):
            raise ValidationError(f"sidecar entry {key!r} must be an object", field="sidecar")
        if "|" in key:
            parts = tuple(normalize_text(p) for p in key.split("|"))
        else:
            parts = (normalize_text(key),)
        index[parts] = meta
    return index


def load_sidecar(stream: Union[BinaryIO, bytes, str]) -> Dict[str, Any]:
    if hasattr(stream, "read"):
        stream = stream.read()
    try:
        data = json.loads(stream)
    except json.JSONDecodeError as exc:
        raise ParseError(f"sidecar is not valid JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(data, dict):
        raise ValidationError("sidecar must be a JSON object", field="sidecar")
    return data


def _decode(raw: str, offset: int, scanner: _Scanner, key: str) -> str:
    try:
        return " ".join(decode_latex_escapes(raw).split())
    except ParseError as exc:
        raise ParseError(
            exc.message, entry=key, offset=scanner.byte_offset(offset) + (exc.offset or 0)
        ) from None


def parse_bibtex_subset(
    stream: Union[BinaryIO, bytes, str], sidecar: Optional[Mapping[str, Any]] = None
) -> Corpus:
    """Parse BibTeX entries into a corpus; entry keys become record ids."""
    if hasattr(stream, "read"):
        stream = stream.read()
    if isinstance(stream, bytes):
        try:
            stream = stream.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"invalid UTF-8: {exc.reason}", offset=exc.start) from None
    scanner = _Scanner(stream)
    meta_index = _sidecar_index(sidecar)
    institutions: Dict[str, Institution] = {}
    records: List[PaperRecord] = []
    seen = set()

    for entry in scanner.entries():
        key = entry.key
        if key in seen:
            raise ValidationError("duplicate entry key", entry=key, field="key")
        seen.add(key)
        f = entry.fields
        if "author" not in f:
            raise ParseError("missing 'author' field", entry=key)

        def text(name: str) -> Optional[str]:
            if name not in f:
                return None
            return _decode(f[name][0], f[name][1], scanner, key)

        year_raw = text("year")
        try:
            year = int(year_raw) if year_raw is not None else None
        except ValueError:
            year = None
        if year is None:
            raise ValidationError(f"year must be an integer, got {year_raw!r}", entry=key, field="year")
        inst_name = text("institution") or text("school")
        venue = text("journal") or text("booktitle")

        author_raw, author_off = f["author"]
        _decode(author_raw, author_off, scanner, key)  # brace check with a located error
        authors = []
        for i, (fore_raw, sur_raw) in enumerate(split_author_field(author_raw)):
            forename = " ".join(decode_latex_escapes(fore_raw).split())
            surname = " ".join(decode_latex_escapes(sur_raw).split())
            if not forename or not surname:
                raise ValidationError(
                    f"author {i} needs both forename and surname, got {forename!r} / {surname!r}",
                    entry=key,
                    field="author",
                )
            name_keys = (normalize_text(forename), normalize_text(surname))
            by_name = meta_index.get((" ".join(name_keys),), {})
            inst = inst_name or by_name.get("institution")
            if inst is None:
                raise ValidationError(
                    f"no institution for author {forename} {surname}: add an 'institution'/'school' field "
                    "or an 'institution' in the sidecar",
                    entry=key,
                    field="institution",
                )
            if inst not in institutions:
                institutions[inst] = Institution(inst, inst)
            meta = meta_index.get(name_keys + (normalize_text(inst),), by_name)
            try:
                gender = Gender(meta.get("gender", "unknown"))
            except ValueError:
                raise ValidationError(f"invalid gender {meta.get('gender')!r} in sidecar", entry=key, field="gender") from None
            career = None
            cs = meta.get("career_start")
            if cs is not None:
                try:
                    career = CareerStart(cs["day"], cs["month"])
                except (KeyError, TypeError):
                    raise ValidationError("sidecar career_start needs day and month", entry=key, field="career_start") from None
                except ValidationError as exc:
                    raise ValidationError(str(exc), entry=key, field=exc.field) from None
            try:
                authors.append(AuthorMention(forename, surname, inst, gender, career))
            except ValidationError as exc:
                raise ValidationError(str(exc), entry=key, field="author") from None
        records.append(PaperRecord(key, text("title") or "", year, tuple(authors), venue))

    return Corpus(tuple(records), tuple(institutions.values()))
