"""
Line-delimited JSON helpers shared by every record file (corpus, counts,
decision log, extraction cache, candidates).
"""

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Iterable, Iterator, Tuple, Type

from .errors import RecordFormatError

logger = logging.getLogger(__name__)


def dumps_record(record: Dict[str, Any]) -> str:
    return json.dumps(record, ensure_ascii=False, sort_keys=True)


def write_jsonl_atomic(path: Path, records: Iterable[Dict[str, Any]]) -> None:
    """Write records to a temp file in the target directory, then rename over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=str(path.parent))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            for record in records:
                f.write(dumps_record(record))
                f.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def append_jsonl(path: Path, record: Dict[str, Any]) -> None:
    """Append one record and flush it to disk before returning."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "a", encoding="utf-8", newline="\n") as f:
        f.write(dumps_record(record))
        f.write("\n")
        f.flush()
        os.fsync(f.fileno())


def read_jsonl(
    path: Path,
    error_cls: Type[RecordFormatError] = RecordFormatError,
) -> Iterator[Tuple[int, Dict[str, Any]]]:
    """Yield (line_number, record); a line that is not a JSON object is an error naming it."""
    with open(path, "r", encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as e:
                raise error_cls(str(path), line_number, f"malformed record ({e.msg})") from e
            if not isinstance(record, dict):
                raise error_cls(str(path), line_number, "record is not an object")
            yield line_number, record


def repair_truncated_tail(path: Path) -> bool:
    """
    Cut off a final line that is not a JSON object, as left by a writer that
    died mid-append, so later appends start on a clean line. Earlier lines are
    left for ``read_jsonl`` to judge.

    Returns:
        whether a line was dropped
    """
    path = Path(path)
    data = path.read_bytes()
    content = data.rstrip(b"\r\n")
    start = content.rfind(b"\n") + 1
    tail = content[start:]
    if not tail.strip():
        return False
    try:
        if isinstance(json.loads(tail.decode("utf-8")), dict):
            return False
    except (UnicodeDecodeError, json.JSONDecodeError):
        pass
    with open(path, "r+b") as f:
        f.truncate(start)
    logger.warning("%s: dropped truncated final record on line %d", path, data.count(b"\n", 0, start) + 1)
    return True
