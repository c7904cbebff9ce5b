"""Point-table cache: CSV tables of affine points plus a metadata sidecar
carrying the field descriptor and a content hash.

Table format: header ``x,y``; each coordinate is the element text form
``c0,c1,...,c{k-1}`` (so fields are quoted).  The cache file pair for a
curve is ``<family>_p<p>_h<h>_d<d>.points.csv`` and ``...meta.json``; a
hash or descriptor mismatch forces recomputation.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
from pathlib import Path

import numpy as np

from .curves import CurveSpec, EnumData, enumerate_encoded, DEFAULT_FIELD_BUDGET


def cache_stem(spec: CurveSpec) -> str:
    d = spec.d if spec.d is not None else 0
    return f"{spec.family}_p{spec.p}_h{spec.h}_d{d}"


def cache_paths(cache_dir: str | Path, spec: CurveSpec) -> tuple[Path, Path]:
    base = Path(cache_dir) / cache_stem(spec)
    return base.with_suffix(".points.csv"), base.with_suffix(".meta.json")


def table_bytes(spec: CurveSpec, data: EnumData) -> bytes:
    ctx = spec.ctx
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "y"])
    for x, y in zip(data.xs, data.ys):
        writer.writerow([ctx.from_encoded(int(x)).text(),
                         ctx.from_encoded(int(y)).text()])
    return buf.getvalue().encode("ascii")


def write_table(cache_dir: str | Path, spec: CurveSpec, data: EnumData) -> Path:
    csv_path, meta_path = cache_paths(cache_dir, spec)
    os.makedirs(csv_path.parent, exist_ok=True)
    blob = table_bytes(spec, data)
    csv_path.write_bytes(blob)
    meta = {
        "context": spec.ctx.descriptor(),
        "curve": spec.descriptor(),
        "count": int(data.xs.shape[0]),
        "sha256": hashlib.sha256(blob).hexdigest(),
        "x_zero": [[spec.ctx.from_encoded(x).text(),
                    spec.ctx.from_encoded(y).text()] for x, y in data.x_zero],
    }
    meta_path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return csv_path


def read_table(cache_dir: str | Path, spec: CurveSpec) -> EnumData | None:
    """Reload a cached table; None when absent, stale, or corrupted."""
    csv_path, meta_path = cache_paths(cache_dir, spec)
    if not csv_path.exists() or not meta_path.exists():
        return None
    try:
        meta = json.loads(meta_path.read_text())
    except (ValueError, OSError):
        return None
    if meta.get("context") != spec.ctx.descriptor() \
            or meta.get("curve") != spec.descriptor():
        return None
    blob = csv_path.read_bytes()
    if hashlib.sha256(blob).hexdigest() != meta.get("sha256"):
        return None
    ctx = spec.ctx
    rows = list(csv.reader(io.StringIO(blob.decode("ascii"))))
    if not rows or rows[0] != ["x", "y"]:
        return None
    xs = np.empty(len(rows) - 1, dtype=np.int64)
    ys = np.empty(len(rows) - 1, dtype=np.int64)
    for i, row in enumerate(rows[1:]):
        xs[i] = ctx.encode(ctx.from_text(row[0]))
        ys[i] = ctx.encode(ctx.from_text(row[1]))
    x_zero = tuple((ctx.encode(ctx.from_text(xt)), ctx.encode(ctx.from_text(yt)))
                   for xt, yt in meta.get("x_zero", []))
    return EnumData(xs, ys, x_zero)


def load_or_enumerate(spec: CurveSpec, cache_dir: str | Path | None = None,
                      budget: int = DEFAULT_FIELD_BUDGET):
    """EnumData for the curve, via the cache when one is configured.

    Returns (data, info) where info records the cache interaction.
    """
    if cache_dir is None:
        return enumerate_encoded(spec, budget), {"cache": "disabled"}
    cached = read_table(cache_dir, spec)
    if cached is not None:
        return cached, {"cache": "hit",
                        "path": str(cache_paths(cache_dir, spec)[0])}
    data = enumerate_encoded(spec, budget)
    path = write_table(cache_dir, spec, data)
    return data, {"cache": "miss", "path": str(path)}
