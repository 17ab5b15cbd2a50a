"""
Result cache for expensive localization results.

The cache is a single append-friendly text file with one ``key<TAB>value``
line per entry. Keys combine the space expression, n and the vertex
convention version, so bumping the version invalidates old entries.
Unreadable lines are ignored and the value is recomputed.
"""

import sys
import threading
from fractions import Fraction
from pathlib import Path
from typing import Dict, Optional

from ..constants import VERTEX_CONVENTION_VERSION


def _log(message: str) -> None:
    print(f"[ResultCache] {message}", file=sys.stderr, flush=True)


class ResultCache:
    """
    Persistent map from keys to rationals; later lines win.

    Args:
        path: Cache file location, or None for an in-memory cache.
    """

    def __init__(self, path: Optional[Path] = None):
        self.path = Path(path).expanduser() if path is not None else None
        self._entries: Optional[Dict[str, Fraction]] = None
        self._lock = threading.Lock()

    @staticmethod
    def key(space: str, n: int, version: int = VERTEX_CONVENTION_VERSION) -> str:
        return f"{space.replace(' ', '')}|{n}|{version}"

    def _load(self) -> Dict[str, Fraction]:
        if self._entries is not None:
            return self._entries
        entries: Dict[str, Fraction] = {}
        corrupt = 0
        if self.path is not None and self.path.is_file():
            try:
                lines = self.path.read_text(encoding="utf-8").splitlines()
            except (OSError, UnicodeDecodeError) as e:
                _log(f"could not read {self.path}: {e}")
                lines = []
            for line in lines:
                if not line.strip():
                    continue
                parts = line.split("\t")
                if len(parts) != 2:
                    corrupt += 1
                    continue
                try:
                    entries[parts[0]] = Fraction(parts[1])
                except (ValueError, ZeroDivisionError):
                    corrupt += 1
        if corrupt:
            _log(f"ignored {corrupt} corrupt line(s) in {self.path}")
        self._entries = entries
        return entries

    def get(self, key: str) -> Optional[Fraction]:
        with self._lock:
            return self._load().get(key)

    def put(self, key: str, value) -> None:
        value = Fraction(value)
        with self._lock:
            self._load()[key] = value
            if self.path is None:
                return
            try:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                with self.path.open("a", encoding="utf-8") as handle:
                    handle.write(f"{key}\t{value}\n")
            except OSError as e:
                _log(f"could not write {self.path}: {e}")

    def __len__(self) -> int:
        with self._lock:
            return len(self._load())
