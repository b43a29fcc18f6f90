"""Author records, ingestion (JSON lines, BibTeX subset) and name normalization."""

from .bibtex import load_sidecar, parse_bibtex_subset, split_author_field
from .jsonl import parse_jsonl, serialize_jsonl
from .model import (
    DEFAULT_GENDERS,
    AuthorMention,
    CareerStart,
    Corpus,
    Gender,
    Institution,
    PaperRecord,
)
from .text import CanonicalName, decode_latex_escapes, normalize_text

__all__ = [
    "DEFAULT_GENDERS",
    "AuthorMention",
    "CanonicalName",
    "CareerStart",
    "Corpus",
    "Gender",
    "Institution",
    "PaperRecord",
    "decode_latex_escapes",
    "load_sidecar",
    "normalize_text",
    "parse_bibtex_subset",
    "parse_jsonl",
    "serialize_jsonl",
    "split_author_field",
]
