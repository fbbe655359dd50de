"""
JSON file helpers
Reports and oracle cache entries are written through a temp file and renamed into place
"""
import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Optional, Union


def write_json_atomic(path: Union[str, Path], data: Any) -> Path:
    """Write `data` as JSON to `path`; readers never see a partial file."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=target.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            json.dump(data, handle, indent=2, sort_keys=True)
            handle.write("\n")
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return target


def read_json(path: Union[str, Path]) -> Optional[Any]:
    target = Path(path)
    if not target.exists():
        return None
    with target.open("r", encoding="utf-8") as handle:
        return json.load(handle)


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
