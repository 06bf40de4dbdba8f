"""Service for writing experiment artifacts: versioned CSV tables and JSON records."""
import json
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

import numpy as np

from src.config import config
from src.models.reports import ReportRecord, json_safe

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "v1"


def format_cell(value) -> str:
    """Integers verbatim, everything else with 17 significant digits."""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


class ReportService:
    """Writes artifacts below one output directory."""

    def __init__(self, output_dir: Optional[str] = None):
        self.output_dir = Path(output_dir or config.output_dir)

    def _path(self, name: str) -> Path:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return self.output_dir / name

    def write_csv(self, experiment: str, name: str, columns: Sequence[str], rows: Iterable[Sequence]) -> str:
        """Write a table whose first line is ``#schema=<experiment>.v1``.

        Returns:
            Path of the written file.
        """
        path = self._path(name)
        lines = [f"#schema={experiment}.{SCHEMA_VERSION}", ",".join(columns)]
        count = 0
        for row in rows:
            if len(row) != len(columns):
                raise ValueError(f"row of length {len(row)} does not match columns {list(columns)}")
            lines.append(",".join(format_cell(v) for v in row))
            count += 1
        path.write_text("\n".join(lines) + "\n")
        logger.debug(f"Wrote {count} rows to {path}")
        return str(path)

    def write_record(self, record: ReportRecord, stem: Optional[str] = None) -> str:
        """Write ``<stem>.json`` next to the CSV artifacts; the record lists its own path."""
        path = self._path(f"{stem or record.experiment}.json")
        if str(path) not in record.artifacts:
            record.artifacts.append(str(path))
        path.write_text(record.to_json() + "\n")
        return str(path)

    def write_summary(self, records: List[ReportRecord]) -> str:
        """Write ``summary.json`` listing every record and the overall outcome."""
        path = self._path("summary.json")
        summary = {
            "passed": all(r.passed for r in records),
            "records": [r.to_dict() for r in records],
        }
        path.write_text(json.dumps(json_safe(summary), indent=2, sort_keys=True) + "\n")
        logger.info(f"Summary written to {path}: {sum(r.passed for r in records)}/{len(records)} passed")
        return str(path)


def read_csv(path: str) -> tuple:
    """Schema tag, column names and rows (as strings) of a written table."""
    with open(path) as fh:
        lines = fh.read().splitlines()
    schema = lines[0][len("#schema="):] if lines and lines[0].startswith("#schema=") else None
    columns = lines[1].split(",")
    rows = [line.split(",") for line in lines[2:] if line]
    return schema, columns, rows
