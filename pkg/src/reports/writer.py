# src/reports/writer.py

import json
import sys
import threading
from pathlib import Path
from typing import IO, Any, Dict, List, Optional, Union

import pandas as pd

from src.reports.run_config import OUTPUT_FORMATS
from src.utils.errors import ConfigError

# Column order for csv output; nested fields are JSON-encoded in their cell.
CSV_COLUMNS = [
    "check_id", "anchor", "space", "m", "n", "p", "lhs", "constant",
    "bracket_lower", "bracket_upper", "verdict", "seed", "inputs", "provenance", "notes",
]


def _fmt(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return "-" if value is None else str(value)


class ReportWriter:
    """
    The single sink for report entries. json-lines and human output stream as
    entries arrive; csv is buffered and written on close so the header and
    column set stay fixed.
    """

    def __init__(self, fmt: str = "json-lines", out: Optional[Union[str, Path]] = None, stream: Optional[IO[str]] = None):
        if fmt not in OUTPUT_FORMATS:
            raise ConfigError("output_format", f"expected one of {', '.join(OUTPUT_FORMATS)}")
        self.fmt = fmt
        self._owns_stream = out is not None
        self.stream = open(out, "w", encoding="utf-8", newline="") if out is not None else (stream or sys.stdout)
        self._rows: List[Dict[str, Any]] = []
        self._lock = threading.Lock()
        self.written = 0

    def write(self, entry: Dict[str, Any]) -> None:
        with self._lock:
            if self.fmt == "json-lines":
                self.stream.write(json.dumps(entry, sort_keys=True) + "\n")
            elif self.fmt == "human":
                self.stream.write(self._human(entry) + "\n")
            else:
                self._rows.append(entry)
            self.written += 1

    def write_all(self, entries: List[Dict[str, Any]]) -> None:
        for entry in entries:
            self.write(entry)

    def write_text(self, line: str) -> None:
        """Raw output for query subcommands (counts, family dumps, sweep tables)."""
        with self._lock:
            self.stream.write(line if line.endswith("\n") else line + "\n")

    @staticmethod
    def _human(entry: Dict[str, Any]) -> str:
        head = f"[{entry.get('verdict', '?')}] {entry.get('check_id', '')}"
        where = " ".join(f"{k}={_fmt(entry.get(k))}" for k in ("space", "m", "n", "p") if entry.get(k) not in (None, ""))
        body = ""
        if "lhs" in entry:
            body = (
                f"lhs={_fmt(entry.get('lhs'))} vs {_fmt(entry.get('constant'))} x "
                f"[{_fmt(entry.get('bracket_lower'))}, {_fmt(entry.get('bracket_upper'))}]"
            )
        line = "  ".join(part for part in (head, where, body) if part)
        if entry.get("anchor"):
            line += f"  ({entry['anchor']})"
        for note in entry.get("notes") or []:
            line += f"\n    - {note}"
        return line

    def close(self) -> None:
        with self._lock:
            if self.fmt == "csv" and self._rows:
                frame = pd.DataFrame(
                    [
                        {
                            col: json.dumps(row.get(col), sort_keys=True) if isinstance(row.get(col), (dict, list)) else row.get(col)
                            for col in CSV_COLUMNS
                        }
                        for row in self._rows
                    ],
                    columns=CSV_COLUMNS,
                )
                frame.to_csv(self.stream, index=False, lineterminator="\n")
                self._rows = []
            self.stream.flush()
            if self._owns_stream:
                self.stream.close()

    def __enter__(self) -> "ReportWriter":
        return self

    def __exit__(self, *exc) -> None:
        self.close()
