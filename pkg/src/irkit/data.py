"""Dataset, prediction, and report file formats.

The canonical dataset format is JSON-lines with one ``{"id", "x", "y"}``
object per record.  Adapters accept 2-column TSV (utterance, program) and
instruction-following files with ``IN: <command> OUT: <actions>`` lines.
All staged and prediction files are plain TSV; fields therefore must not
contain tabs or newlines.
"""

from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import IrkitError


@dataclass(frozen=True, slots=True)
class ExampleRecord:
    id: str
    x: str
    y: str
    formalism: str = ""


@dataclass(frozen=True, slots=True)
class QuarantineEntry:
    id: str
    stage: str
    reason: str


_SCAN_LINE_RE = re.compile(r"IN:\s*(?P<x>.*?)\s*OUT:\s*(?P<y>.*)")


def _check_field(value: str, what: str, record_id: str) -> str:
    if "\t" in value or "\n" in value:
        raise IrkitError(
            f"{what} of record {record_id!r} contains a tab or newline")
    return value


def read_records_jsonl(path: str | Path, formalism: str = "") -> list[ExampleRecord]:
    records = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IrkitError(f"{path}:{lineno}: invalid JSON: {exc}")
            try:
                records.append(ExampleRecord(str(obj["id"]), obj["x"],
                                             obj["y"], formalism))
            except KeyError as exc:
                raise IrkitError(f"{path}:{lineno}: missing field {exc}")
    return records


def write_records_jsonl(path: str | Path,
                        records: Iterable[ExampleRecord]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for r in records:
            handle.write(json.dumps({"id": r.id, "x": r.x, "y": r.y},
                                    ensure_ascii=False) + "\n")


def read_records_tsv(path: str | Path, formalism: str = "") -> list[ExampleRecord]:
    """2-column adapter: utterance <tab> program, ids are line numbers."""
    records = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise IrkitError(f"{path}:{lineno + 1}: expected 2 columns, "
                                 f"got {len(parts)}")
            records.append(ExampleRecord(str(lineno), parts[0], parts[1],
                                         formalism))
    return records


def read_scan_records(path: str | Path) -> list[ExampleRecord]:
    """Adapter for ``IN: <command> OUT: <actions>`` lines."""
    records = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle):
            line = line.strip()
            if not line:
                continue
            match = _SCAN_LINE_RE.fullmatch(line)
            if not match:
                raise IrkitError(f"{path}:{lineno + 1}: not an IN:/OUT: line")
            records.append(ExampleRecord(str(lineno), match.group("x"),
                                         match.group("y"), "scan"))
    return records


def read_records(path: str | Path, formalism: str = "") -> list[ExampleRecord]:
    """Pick the adapter from the file extension."""
    suffix = Path(path).suffix.lower()
    if suffix in (".jsonl", ".json"):
        return read_records_jsonl(path, formalism)
    if suffix == ".tsv":
        return read_records_tsv(path, formalism)
    if suffix == ".txt":
        return read_scan_records(path)
    raise IrkitError(f"cannot infer record format from {path!r} "
                     "(expected .jsonl, .tsv, or .txt)")


def read_pairs_tsv(path: str | Path) -> list[tuple[str, str]]:
    """(id, value) rows; the value may be empty for flagged rows."""
    pairs = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) == 1:
                parts = [parts[0], ""]
            if len(parts) != 2:
                raise IrkitError(f"{path}:{lineno + 1}: expected 2 columns, "
                                 f"got {len(parts)}")
            pairs.append((parts[0], parts[1]))
    return pairs


def write_pairs_tsv(path: str | Path,
                    pairs: Iterable[tuple[str, str]]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for record_id, value in pairs:
            _check_field(value, "value", record_id)
            handle.write(f"{record_id}\t{value}\n")


def read_stage_tsv(path: str | Path) -> list[tuple[str, str, str]]:
    rows = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise IrkitError(f"{path}:{lineno + 1}: expected 3 columns, "
                                 f"got {len(parts)}")
            rows.append((parts[0], parts[1], parts[2]))
    return rows


def write_stage_tsv(path: str | Path,
                    rows: Iterable[tuple[str, str, str]]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for record_id, source, target in rows:
            _check_field(source, "source", record_id)
            _check_field(target, "target", record_id)
            handle.write(f"{record_id}\t{source}\t{target}\n")


def write_quarantine(path: str | Path,
                     entries: Sequence[QuarantineEntry]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for entry in entries:
            handle.write(json.dumps(asdict(entry), ensure_ascii=False) + "\n")


def read_quarantine(path: str | Path) -> list[QuarantineEntry]:
    entries = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            entries.append(QuarantineEntry(obj["id"], obj["stage"],
                                           obj["reason"]))
    return entries
