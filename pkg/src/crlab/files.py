"""Input grammars, CSV/JSON writers and the run manifest."""

from __future__ import annotations

import csv
import hashlib
import json
import logging
import platform
import time
from pathlib import Path

from .errors import ConfigError
from .geometry import Point, PointSet, parse_curve
from .scalar import ScalarSet

log = logging.getLogger(__name__)


def _lines(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_scalar_file(path, field, *, allow_infinity=True) -> ScalarSet:
    """One scalar per line; ``#`` comments and blank lines ignored; duplicates warned."""
    seen = {}
    for lineno, line in _lines(path):
        v = field.parse(line, allow_infinity=allow_infinity, where=f"{path}:{lineno}")
        if v in seen:
            log.warning("%s:%d: duplicate value %s (first on line %d)", path, lineno, line, seen[v])
            continue
        seen[v] = lineno
    return ScalarSet(seen)


def parse_point_file(path, field) -> PointSet:
    """One ``x y`` pair per line."""
    seen = {}
    for lineno, line in _lines(path):
        where = f"{path}:{lineno}"
        parts = line.split()
        if len(parts) != 2:
            raise ConfigError(f"expected 'x y', got {line!r}", where)
        p = Point(*(field.parse(v, allow_infinity=False, where=where) for v in parts))
        if p in seen:
            log.warning("%s: duplicate point %s", where, line)
            continue
        seen[p] = lineno
    return PointSet(seen)


def parse_curve_file(path, field) -> list:
    """One curve per line: ``L a b c`` or ``H alpha delta beta``."""
    return [parse_curve(line, field, where=f"{path}:{lineno}") for lineno, line in _lines(path)]


def parse_config_file(path) -> dict:
    """Flat ``key = value`` file. Keys use dashes or underscores interchangeably."""
    out = {}
    for lineno, line in _lines(path):
        if "=" not in line:
            raise ConfigError(f"expected key=value, got {line!r}", f"{path}:{lineno}")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ConfigError("empty key", f"{path}:{lineno}")
        out[key.replace("-", "_")] = value
    return out


def sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


class RunWriter:
    """Writes data artifacts into one directory and records them for the manifest."""

    def __init__(self, out_dir):
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self.files = []
        self.started = time.perf_counter()

    def _record(self, name):
        self.files.append(name)
        return self.out_dir / name

    def csv(self, name, header, rows):
        path = self._record(name)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
        return path

    def json(self, name, obj):
        path = self._record(name)
        path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
        return path

    def text(self, name, body):
        path = self._record(name)
        path.write_text(body)
        return path

    def manifest(self, config: dict, extra=None):
        from . import __version__
        from .kernels import BACKEND

        import numpy

        doc = {
            "config": config,
            "seed": config.get("seed"),
            "versions": {
                "crlab": __version__,
                "python": platform.python_version(),
                "numpy": numpy.__version__,
                "kernel_backend": BACKEND,
            },
            "wall_time_s": round(time.perf_counter() - self.started, 6),
            "files": [{"path": f, "sha256": sha256(self.out_dir / f)} for f in self.files],
        }
        if extra:
            doc.update(extra)
        path = self.out_dir / "manifest.json"
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        return path
