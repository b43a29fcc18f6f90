"""``aua`` command line: parse, metrics, detect, table.

Documents go to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 parse error, 2 validation error, 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .benchmark import load_rows, render_benchmark
from .bibdata import Corpus, Gender, load_sidecar, parse_bibtex_subset, parse_jsonl
from .bibdata.model import DEFAULT_GENDERS
from .errors import AuaError, InvalidConfig, ParseError, ValidationError
from .metrics import METRIC_NAMES, MetricReport, compute_report
from .unify import detect_clusters, merge_profiles, page_savings

log = logging.getLogger("aua")

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_INTERNAL = 0, 1, 2, 3


@dataclass
class RunConfig:
    input_path: Path
    input_format: str = "jsonl"
    sidecar_path: Optional[Path] = None
    output_format: str = "json"
    chars_per_page: int = 3000
    gender_categories: Tuple[Gender, ...] = DEFAULT_GENDERS
    metrics: Tuple[str, ...] = METRIC_NAMES

    def __post_init__(self) -> None:
        if self.input_format not in ("jsonl", "bibtex"):
            raise InvalidConfig(f"unknown input format {self.input_format!r}")
        if self.output_format not in ("json", "csv", "markdown"):
            raise InvalidConfig(f"unknown output format {self.output_format!r}")
        if self.chars_per_page <= 0:
            raise InvalidConfig("chars_per_page must be positive")
        bad = [m for m in self.metrics if m not in METRIC_NAMES]
        if bad or not self.metrics:
            raise InvalidConfig(f"unknown metrics {bad}; choose from {', '.join(METRIC_NAMES)}")


def read_config_file(path: Path) -> Dict[str, str]:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    values: Dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidConfig(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


def load_corpus(config: RunConfig) -> Corpus:
    data = config.input_path.read_bytes()
    if config.input_format == "bibtex":
        sidecar = None
        if config.sidecar_path is not None:
            sidecar = load_sidecar(config.sidecar_path.read_bytes())
        else:
            log.info("no sidecar given: gender and career data default to unknown/absent")
        return parse_bibtex_subset(data, sidecar)
    return parse_jsonl(data)


def _plural(n: int, word: str) -> str:
    if n == 1:
        return f"{n} {word}"
    return f"{n} {word[:-1] + 'ies' if word.endswith('y') else word + 's'}"


def cmd_parse(config: RunConfig) -> str:
    corpus = load_corpus(config)
    return ", ".join(
        [
            _plural(len(corpus.records), "record"),
            _plural(corpus.n_mentions, "author"),
            _plural(len(corpus.institutions), "institution"),
        ]
    ) + "\n"


def _reports(config: RunConfig) -> List[Tuple[str, MetricReport]]:
    corpus = load_corpus(config)
    out = []
    for rec in sorted(corpus.records, key=lambda r: r.id):
        out.append((rec.id, compute_report(rec, corpus, config.gender_categories)))
    return out


def _cell(report: MetricReport, name: str) -> str:
    # finite floats keep full repr precision; sentinels print as inf/undefined
    return str(report.value(name))


def cmd_metrics(config: RunConfig) -> str:
    reports = _reports(config)
    metrics = config.metrics
    if config.output_format == "json":
        doc = [{"record": rid, **rep.to_json(metrics)} for rid, rep in reports]
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if config.output_format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["record", *metrics])
        for rid, rep in reports:
            writer.writerow([rid, *(_cell(rep, m) for m in metrics)])
        return buf.getvalue()
    lines = [
        "| record | " + " | ".join(m.upper() for m in metrics) + " |",
        "|:--|" + "|".join("--:" for _ in metrics) + "|",
    ]
    for rid, rep in reports:
        cells = [str(rep.nsa) if m == "nsa" else rep.value(m).format(2) for m in metrics]
        lines.append(f"| {rid} | " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def cmd_detect(config: RunConfig, savings: bool = False, profiles: bool = False) -> str:
    corpus = load_corpus(config)
    clusters = []
    for cluster in detect_clusters(corpus):
        item = cluster.to_json()
        if profiles:
            item["merged_profile"] = merge_profiles(cluster, corpus).to_json()
        clusters.append(item)
    doc: object = clusters
    if savings:
        doc = {
            "clusters": clusters,
            "page_savings": {
                rec.id: page_savings(rec, config.chars_per_page)
                for rec in sorted(corpus.records, key=lambda r: r.id)
            },
        }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def cmd_table(fixtures: Optional[Path] = None) -> str:
    return render_benchmark(load_rows(fixtures))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aua", description="Author-Unification toolkit")
    parser.add_argument("-v", "--verbose", action="store_true", help="log info diagnostics")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p: argparse.ArgumentParser) -> None:
        p.add_argument("path", type=Path)
        p.add_argument("--format", dest="format", choices=["jsonl", "bibtex"], default=None)
        p.add_argument("--sidecar", type=Path, default=None, help="JSON author metadata for BibTeX input")
        p.add_argument("--gender-categories", default=None, help="comma list, default female,male,diverse")

    add_input(sub.add_parser("parse", help="validate an input file and print counts"))
    p = sub.add_parser("metrics", help="per-record NSA/GEIL/SSIM/ACDC")
    add_input(p)
    p.add_argument("--metric", default=None, help="comma list of nsa,geil,ssim,acdc")
    p.add_argument("--output", choices=["json", "csv", "markdown"], default=None)
    p = sub.add_parser("detect", help="report Author-Unification clusters")
    add_input(p)
    p.add_argument("--savings", action="store_true", default=None, help="add per-record page savings")
    p.add_argument("--profiles", action="store_true", default=None, help="add merged publication profiles")
    p.add_argument("--chars-per-page", type=int, default=None)
    p = sub.add_parser("table", help="render the benchmark table")
    p.add_argument("--fixtures", type=Path, default=None)
    return parser


def _merged(args: argparse.Namespace, file_cfg: Dict[str, str], key: str, default=None):
    value = getattr(args, key, None)
    if value is not None:
        return value
    return file_cfg.get(key, default)


def _truthy(value) -> bool:
    if isinstance(value, bool):
        return value
    return str(value).strip().lower() in ("1", "true", "yes", "on")


def make_config(args: argparse.Namespace, file_cfg: Dict[str, str]) -> RunConfig:
    path = args.path
    fmt = _merged(args, file_cfg, "format")
    if fmt is None:
        fmt = "bibtex" if path.suffix.lower() in (".bib", ".bibtex") else "jsonl"
    sidecar = _merged(args, file_cfg, "sidecar")
    genders = _merged(args, file_cfg, "gender_categories")
    metric = _merged(args, file_cfg, "metric")
    try:
        categories = tuple(Gender(g.strip()) for g in genders.split(",")) if genders else DEFAULT_GENDERS
        chars = int(_merged(args, file_cfg, "chars_per_page", 3000))
    except ValueError as exc:
        raise InvalidConfig(str(exc)) from None
    return RunConfig(
        input_path=path,
        input_format=fmt,
        sidecar_path=Path(sidecar) if sidecar else None,
        output_format=_merged(args, file_cfg, "output", "json"),
        chars_per_page=chars,
        gender_categories=categories,
        metrics=tuple(m.strip() for m in metric.split(",")) if metric else METRIC_NAMES,
    )


def run(args: argparse.Namespace) -> str:
    cfg_path = os.environ.get("AUA_CONFIG")
    file_cfg = read_config_file(Path(cfg_path)) if cfg_path else {}
    if args.command == "table":
        fixtures = _merged(args, file_cfg, "fixtures")
        return cmd_table(Path(fixtures) if fixtures else None)
    config = make_config(args, file_cfg)
    if args.command == "parse":
        return cmd_parse(config)
    if args.command == "metrics":
        return cmd_metrics(config)
    return cmd_detect(
        config,
        savings=_truthy(_merged(args, file_cfg, "savings", False)),
        profiles=_truthy(_merged(args, file_cfg, "profiles", False)),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="aua: %(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        out = run(args)
    except ParseError as exc:
        print(f"aua: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValidationError, AuaError) as exc:
        print(f"aua: validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"aua: cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Exception as exc:  # noqa: BLE001
        log.exception("internal error")
        print(f"aua: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
