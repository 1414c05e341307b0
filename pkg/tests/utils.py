import shutil
import time
from dataclasses import replace
from pathlib import Path
from typing import List, Sequence

from sspt.engine import TrackingRecord


def safe_remove(path: Path, attempts: int = 5) -> None:
    """Removes a temp file or tree, retrying while it is still locked"""
    for attempt in range(attempts + 1):
        try:
            if path.is_dir():
                shutil.rmtree(path)
            else:
                path.unlink(missing_ok=True)
            return
        except PermissionError:
            if attempt == attempts:
                raise
            time.sleep(1)


def without_timing(records: Sequence[TrackingRecord]) -> List[TrackingRecord]:
    """Records with the wall-clock field zeroed, for exact comparisons"""
    return [replace(record, duration_us=0) for record in records]
