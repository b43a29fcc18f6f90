"""Benchmark table: computed metric cells mixed with stored constants."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from .bibdata.jsonl import parse_jsonl
from .errors import InvalidInput, ValidationError
from .extreal import ExtendedReal
from .metrics import METRIC_NAMES, compute_report

# column -> True if larger is better
DIRECTIONS = {"nsa": True, "geil": False, "ssim": True, "acdc": True}
HEADERS = {"nsa": "NSA ↑", "geil": "GEIL ↓", "ssim": "SSIM ↑", "acdc": "ACDC ↑"}


@dataclass
class BenchmarkRow:
    label: str
    cells: Dict[str, ExtendedReal]
    computed: Dict[str, bool]
    provenance: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name in METRIC_NAMES:
            if name not in self.cells:
                raise ValidationError(f"row {self.label!r} has no {name} cell", field=name)
            if not self.computed.get(name, False) and not self.provenance.get(name):
                raise ValidationError(f"constant cell {self.label}/{name} needs a provenance note", field=name)


def best_cells(rows: Sequence[BenchmarkRow]) -> Dict[str, set]:
    """Row indices holding the best value per column; ties are all best."""
    best: Dict[str, set] = {}
    for name in METRIC_NAMES:
        defined = [(i, r.cells[name]) for i, r in enumerate(rows) if not r.cells[name].is_undefined]
        if not defined:
            best[name] = set()
            continue
        pick = max if DIRECTIONS[name] else min
        target = pick(v for _, v in defined)
        best[name] = {i for i, v in defined if v == target}
    return best


def render_benchmark(rows: Sequence[BenchmarkRow], decimals: int = 2) -> str:
    """Markdown table with the best cell of each column in bold."""
    if not rows:
        raise InvalidInput("benchmark needs at least one row")
    best = best_cells(rows)
    lines = [
        "| | " + " | ".join(HEADERS[n] for n in METRIC_NAMES) + " |",
        "|:--|" + "|".join("--:" for _ in METRIC_NAMES) + "|",
    ]
    for i, row in enumerate(rows):
        cells = []
        for name in METRIC_NAMES:
            text = row.cells[name].format(decimals)
            cells.append(f"**{text}**" if i in best[name] else text)
        lines.append(f"| {row.label} | " + " | ".join(cells) + " |")
    notes = [
        f"- {row.label} {name.upper()}: {row.provenance[name]}"
        for row in rows
        for name in METRIC_NAMES
        if not row.computed[name]
    ]
    out = "\n".join(lines) + "\n"
    if notes:
        out += "\nFixture constants (not computed):\n" + "\n".join(notes) + "\n"
    return out


def _read_fixture(base: Optional[Path], name: str) -> bytes:
    if base is None:
        return resources.files("aua.data").joinpath(name).read_bytes()
    return (base / name).read_bytes()


def load_rows(fixtures: Optional[Path] = None) -> List[BenchmarkRow]:
    """Build rows from a fixtures file (default: the bundled benchmark set).

    Rows that name a ``corpus`` get every cell computed from that record;
    ``constants`` then override individual cells and mark them not computed.
    """
    base = None if fixtures is None else Path(fixtures).parent
    raw = fixtures.read_bytes() if fixtures is not None else _read_fixture(None, "benchmark.json")
    doc = json.loads(raw)
    rows = []
    for item in doc["rows"]:
        cells: Dict[str, ExtendedReal] = {}
        computed: Dict[str, bool] = {}
        provenance: Dict[str, str] = {}
        if "corpus" in item:
            corpus = parse_jsonl(_read_fixture(base, item["corpus"]))
            record = corpus.record_map[item["record"]]
            report = compute_report(record, corpus)
            for name in METRIC_NAMES:
                value = report.value(name)
                cells[name] = ExtendedReal.finite(value) if name == "nsa" else value
                computed[name] = True
        for name, const in item.get("constants", {}).items():
            if name not in DIRECTIONS:
                raise ValidationError(f"unknown metric {name!r} in fixtures", field=name)
            cells[name] = ExtendedReal.from_json(const["value"])
            computed[name] = False
            provenance[name] = const.get("provenance", "")
        rows.append(BenchmarkRow(item["label"], cells, computed, provenance))
    return rows
