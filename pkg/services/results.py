import csv
import logging
import os
from pathlib import Path
from typing import Iterable, Optional

from config.constants import CSV_HEADER
from config.settings import Config
from models.sweep import SweepRow

logger = logging.getLogger(__name__)


class CsvResultsWriter:
    """Pengelola file CSV hasil sweep."""

    def __init__(self, output_dir: str = Config.OUTPUT_DIR, record_time: bool = Config.RECORD_WALL_TIME):
        self.output_dir = Path(output_dir)
        self.record_time = record_time

    def resolve_path(self, out: Optional[str], name: str) -> Path:
        """--out bila diberikan, selain itu <OUTPUT_DIR>/<name>.csv."""
        return Path(out) if out else self.output_dir / f"{name}.csv"

    def _setup_header(self, writer):
        writer.writerow(CSV_HEADER)

    def write_rows(self, rows: Iterable[SweepRow], path: Path, record_time: Optional[bool] = None) -> Path:
        """Tulis header + baris dalam urutan yang diberikan (UTF-8, LF)."""
        record_time = self.record_time if record_time is None else record_time
        path = Path(path)
        if path.parent and not path.parent.exists():
            os.makedirs(path.parent, exist_ok=True)
        rows = list(rows)
        with open(path, 'w', encoding='utf-8', newline='') as handle:
            writer = csv.writer(handle, lineterminator='\n')
            self._setup_header(writer)
            for row in rows:
                writer.writerow(row.to_csv_row(record_time=record_time))
        logger.info(f"✅ {len(rows)} baris ditulis ke {path}")
        return path


# Singleton instance
results_writer = CsvResultsWriter()
