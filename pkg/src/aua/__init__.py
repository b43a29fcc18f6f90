"""Detect co-authors who share name, institution and career start, and score author sets."""

from .bibdata import (
    AuthorMention,
    CareerStart,
    Corpus,
    Gender,
    Institution,
    PaperRecord,
    decode_latex_escapes,
    normalize_text,
    parse_bibtex_subset,
    parse_jsonl,
    serialize_jsonl,
)
from .extreal import ExtendedReal
from .metrics import MetricReport, acdc, compute_report, count_letters, differs, geil, nsa, ssim
from .unify import (
    AuaCluster,
    MergedProfile,
    SharingLevel,
    career_sharing,
    detect_clusters,
    merge_profiles,
    page_savings,
)

__version__ = "0.1.0"

__all__ = [
    "AuaCluster",
    "AuthorMention",
    "CareerStart",
    "Corpus",
    "ExtendedReal",
    "Gender",
    "Institution",
    "MergedProfile",
    "MetricReport",
    "PaperRecord",
    "SharingLevel",
    "acdc",
    "career_sharing",
    "compute_report",
    "count_letters",
    "decode_latex_escapes",
    "detect_clusters",
    "differs",
    "geil",
    "merge_profiles",
    "normalize_text",
    "nsa",
    "page_savings",
    "parse_bibtex_subset",
    "parse_jsonl",
    "serialize_jsonl",
    "ssim",
]
