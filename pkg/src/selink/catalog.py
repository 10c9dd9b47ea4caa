"""Catalog records, the analysis pipeline, and batch enumeration.

A catalog is a line-delimited text file: a versioned JSON header line
followed by one JSON record per line.  Records are plain data (strings,
ints, lists) so rewriting a catalog from the same inputs is byte-identical
except for the timestamp field, and a tab-separated export mirrors the
layout of the summary tables this feeds.

run_pipeline chains presentation parsing, classification, homology,
existence rules and the dimension-specific extras, capturing per-stage
errors in the record instead of aborting, so one poisoned input never
spoils a batch.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import asdict, dataclass, fields
from itertools import combinations_with_replacement
from typing import Iterable, Iterator

from ._version import __version__
from .dimension import moduli_dimension, casson_invariant, smale_name, table_lookup
from .errors import DomainError, InternalConsistencyError
from .existence import decide_existence
from .homology import link_homology
from .links import (
    BPExponents,
    WeightedLink,
    as_link,
    classify_type,
    parse_presentation,
)

__all__ = [
    "CatalogRecord",
    "run_pipeline",
    "enumerate_bp",
    "dedup_records",
    "write_catalog",
    "read_catalog",
    "catalogs_equal",
    "export_table",
]

CATALOG_FORMAT = "selink-catalog"
CATALOG_VERSION = 1

# Records skip the naive moduli count above this degree; the bound is part
# of the record contract so catalogs stay machine-independent.
_MODULI_DEGREE_LIMIT = 100_000


@dataclass
class CatalogRecord:
    presentation: str
    weights: tuple[int, ...] | None = None
    degree: int | None = None
    n: int | None = None
    index: int | None = None
    link_type: str | None = None
    betti: int | None = None
    torsion: tuple[int, ...] | None = None
    applicability: str | None = None
    status: str | None = None
    rule: str | None = None
    margin: str | None = None
    smale: str | None = None
    se_status: str | None = None
    se_condition: str | None = None
    casson: int | None = None
    moduli: int | None = None
    error: str | None = None
    version: str = __version__
    timestamp: str | None = None

    def canonical_key(self):
        if self.weights is None or self.degree is None:
            return ("unparsed", self.presentation)
        return (tuple(sorted(self.weights)), self.degree)

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("weights", "torsion"):
            if d[key] is not None:
                d[key] = list(d[key])
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CatalogRecord":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise DomainError(f"unknown catalog record fields: {sorted(unknown)}")
        d = dict(d)
        for key in ("weights", "torsion"):
            if d.get(key) is not None:
                d[key] = tuple(d[key])
        return cls(**d)


def run_pipeline(
    presentation: str | BPExponents | WeightedLink,
    timestamp: str | None = None,
) -> CatalogRecord:
    """Derive everything we know about one presentation, capturing errors.

    Stages are guarded independently: a failure is recorded in the error
    field (joined with earlier failures) and later stages that do not
    depend on it still run.
    """
    if isinstance(presentation, str):
        text = " ".join(presentation.split())
    else:
        text = presentation.presentation()
    record = CatalogRecord(presentation=text, timestamp=timestamp)
    errors: list[str] = []

    def guard(stage: str):
        def run(fn, *args, **kwargs):
            try:
                return fn(*args, **kwargs)
            except (DomainError, InternalConsistencyError) as exc:
                errors.append(f"{stage}: {exc}")
                return None

        return run

    bp: BPExponents | None = None
    link: WeightedLink | None = None
    try:
        obj = parse_presentation(text) if isinstance(presentation, str) else presentation
        if isinstance(obj, BPExponents):
            bp = obj
        link = as_link(obj)
    except (DomainError, InternalConsistencyError) as exc:
        record.error = f"parse: {exc}"
        return record

    record.weights = link.weights
    record.degree = link.degree
    record.n = link.n
    record.index = link.index
    record.link_type = classify_type(link)

    homology = guard("homology")(link_homology, bp if bp is not None else link)
    if homology is not None:
        record.betti = homology.betti
        record.torsion = homology.torsion
        record.applicability = homology.applicability

    verdict = guard("existence")(decide_existence, link, bp)
    if verdict is not None:
        record.status = verdict.status
        record.rule = verdict.rule
        record.margin = None if verdict.margin is None else str(verdict.margin)

    if link.n == 3 and homology is not None:
        manifold = guard("smale")(smale_name, homology)
        if manifold is not None:
            record.smale = manifold.name()
            lookup = table_lookup(manifold)
            record.se_status = lookup.status
            record.se_condition = lookup.condition

    if link.n == 2 and bp is not None and bp.pairwise_coprime():
        record.casson = guard("casson")(casson_invariant, bp.exponents)

    if link.degree <= _MODULI_DEGREE_LIMIT:
        # The naive count can go negative on small links; the value is
        # recorded as computed, so the advisory warning is just noise here.
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            record.moduli = guard("moduli")(moduli_dimension, link)

    if errors:
        record.error = "; ".join(errors)
    return record


def enumerate_bp(
    length: int,
    max_exponent: int,
    *,
    link_type: str | None = None,
    coprime: bool | None = None,
    status: str | None = None,
) -> Iterator[BPExponents]:
    """Nondecreasing exponent tuples in lexicographic order, filtered.

    Guards against absurd enumerations up front: the unfiltered count is
    C(max_exponent - 2 + length, length).
    """
    if length < 3:
        raise DomainError(f"need length >= 3, got {length}")
    if max_exponent < 2:
        raise DomainError(f"need max exponent >= 2, got {max_exponent}")
    total = math.comb(max_exponent - 2 + length, length)
    if total > 2_000_000:
        raise DomainError(
            f"enumeration of {total} exponent tuples exceeds the safety bound"
        )
    for tup in combinations_with_replacement(range(2, max_exponent + 1), length):
        bp = BPExponents(tup)
        if coprime is not None and bp.pairwise_coprime() != coprime:
            continue
        link = None
        if link_type is not None:
            link = as_link(bp)
            if classify_type(link) != link_type:
                continue
        if status is not None:
            link = link if link is not None else as_link(bp)
            if decide_existence(link, bp).status != status:
                continue
        yield bp


def dedup_records(records: Iterable[CatalogRecord]) -> list[CatalogRecord]:
    """Drop records presenting the same link (same weight multiset and degree)."""
    seen = set()
    out = []
    for record in records:
        key = record.canonical_key()
        if key in seen:
            continue
        seen.add(key)
        out.append(record)
    return out


def write_catalog(records: Iterable[CatalogRecord], stream) -> int:
    header = {
        "format": CATALOG_FORMAT,
        "version": CATALOG_VERSION,
        "tool_version": __version__,
    }
    stream.write(json.dumps(header, sort_keys=True) + "\n")
    count = 0
    for record in records:
        stream.write(json.dumps(record.to_dict(), sort_keys=True) + "\n")
        count += 1
    return count


def read_catalog(stream) -> tuple[dict, list[CatalogRecord]]:
    lines = [line for line in stream.read().splitlines() if line.strip()]
    if not lines:
        raise DomainError("empty catalog")
    header = json.loads(lines[0])
    if header.get("format") != CATALOG_FORMAT:
        raise DomainError(f"not a catalog file (header {header!r})")
    if header.get("version") != CATALOG_VERSION:
        raise DomainError(f"unsupported catalog version {header.get('version')!r}")
    return header, [CatalogRecord.from_dict(json.loads(line)) for line in lines[1:]]


def catalogs_equal(text_a: str, text_b: str, *, ignore_timestamp: bool = True) -> bool:
    """Line-by-line comparison, by default ignoring the timestamp fields."""

    def normalize(text: str) -> list[str]:
        out = []
        for line in text.splitlines():
            if not line.strip():
                continue
            if ignore_timestamp:
                d = json.loads(line)
                d.pop("timestamp", None)
                line = json.dumps(d, sort_keys=True)
            out.append(line)
        return out

    return normalize(text_a) == normalize(text_b)


_TABLE_COLUMNS = (
    "presentation",
    "n",
    "link_type",
    "betti",
    "torsion",
    "applicability",
    "status",
    "rule",
    "margin",
    "smale",
    "se_status",
    "casson",
    "moduli",
    "error",
)


def export_table(records: Iterable[CatalogRecord]) -> str:
    """Tab-separated summary with one row per record."""

    def cell(value) -> str:
        if value is None:
            return ""
        if isinstance(value, tuple):
            return ",".join(str(v) for v in value)
        return str(value)

    lines = ["\t".join(_TABLE_COLUMNS)]
    for record in records:
        lines.append("\t".join(cell(getattr(record, col)) for col in _TABLE_COLUMNS))
    return "\n".join(lines) + "\n"
