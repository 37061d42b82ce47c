"""Deterministic output files: CSV tables and JSON manifests.

Floats are serialized with 17 significant digits so identical runs produce
byte-identical files.  Timing values never go into data files; they get
their own CSV/JSON next to the data.
"""

from __future__ import annotations

import json
import subprocess
from pathlib import Path

import numpy as np


def fmt(value) -> str:
    """Serialize one cell: floats at 17 significant digits, rest via str."""
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if value is None:
        return ""
    return str(value)


def write_csv(path, header, rows):
    """Write rows (sequences or dicts keyed by header) as CSV with LF endings."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            if isinstance(row, dict):
                cells = [fmt(row.get(col)) for col in header]
            else:
                cells = [fmt(v) for v in row]
            fh.write(",".join(cells) + "\n")


def _jsonable(obj):
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.complexfloating):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    return obj


def to_jsonable(obj):
    """Recursively convert numpy scalars/arrays and complex values."""
    return _jsonable(obj)


def dumps_json(payload) -> str:
    """Stable JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(to_jsonable(payload), sort_keys=True, indent=2) + "\n"


def write_json(path, payload):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_json(payload))


def complex_pairs(values) -> list:
    """Complex vector as [[re, im], ...] for JSON."""
    arr = np.asarray(values, dtype=np.complex128)
    return [[float(v.real), float(v.imag)] for v in arr]


def git_describe(cwd=None) -> str:
    """Best-effort source version for manifests; 'unknown' outside a checkout."""
    try:
        out = subprocess.run(["git", "describe", "--always", "--dirty"],
                             cwd=cwd, capture_output=True, text=True, timeout=5)
        if out.returncode == 0:
            return out.stdout.strip()
    except (OSError, subprocess.SubprocessError):
        pass
    return "unknown"
