"""Dataset container, CSV ingestion, and basic statistics.

A dataset is an n x p matrix of finite real feature values plus an
optional integer label per row. Points are plain numpy rows; there is no
separate point class.
"""

import csv
import os
from dataclasses import dataclass

import numpy as np

STANDARDIZE_MODES = ("none", "z-score", "min-max")


class DataError(Exception):
    """Raised for unreadable, malformed, or inconsistent dataset input."""


@dataclass(frozen=True)
class Dataset:
    """Immutable n x p numeric dataset with optional per-row labels.

    Arrays are copied and marked read-only on construction, so instances
    are safe to share across concurrent readers.
    """

    points: np.ndarray
    labels: np.ndarray | None = None
    name: str = "dataset"

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2:
            raise DataError(f"points must be 2-D, got shape {pts.shape}")
        if pts.shape[0] < 1 or pts.shape[1] < 1:
            raise DataError(f"need n >= 1 and p >= 1, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            bad = np.argwhere(~np.isfinite(pts))[0]
            raise DataError(f"non-finite value at row {bad[0] + 1}, column {bad[1] + 1}")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        if self.labels is not None:
            labs = np.array(self.labels, dtype=int)
            if labs.shape != (pts.shape[0],):
                raise DataError(
                    f"labels length {labs.shape} does not match n={pts.shape[0]}"
                )
            labs.setflags(write=False)
            object.__setattr__(self, "labels", labs)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def p(self) -> int:
        return self.points.shape[1]


def _parse_float(cell: str):
    try:
        value = float(cell)
    except ValueError:
        return None
    return value if np.isfinite(value) else None


def load_csv(path, label_column: str | None = None, delimiter: str = ",") -> Dataset:
    """Load a numeric CSV into a Dataset.

    The first row is treated as a header when any of its cells fails to
    parse as a finite number. `label_column` names a header column holding
    integer class ids; it is excluded from the feature matrix. Decimal
    point only; missing values are rejected.

    Raises DataError with a 1-based file line / column location for any
    unreadable file, ragged row, or non-numeric cell.
    """
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh, delimiter=delimiter))
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    numbered = [(i + 1, row) for i, row in enumerate(rows) if row]  # skip blank lines
    if not numbered:
        raise DataError(f"{path}: file contains no data")

    first = numbered[0][1]
    has_header = any(_parse_float(cell) is None for cell in first)
    header = [cell.strip() for cell in first] if has_header else None
    data_rows = numbered[1:] if has_header else numbered
    if not data_rows:
        raise DataError(f"{path}: no data rows after header")

    label_idx = None
    if label_column is not None:
        if header is None or label_column not in header:
            raise DataError(f"{path}: label column {label_column!r} not found in header")
        label_idx = header.index(label_column)

    width = len(first)
    points, labels = [], []
    for line, row in data_rows:
        if len(row) != width:
            raise DataError(f"{path}: row at line {line} has {len(row)} cells, expected {width}")
        feats = []
        for col, cell in enumerate(row, start=1):
            value = _parse_float(cell.strip())
            if value is None:
                raise DataError(
                    f"{path}: non-numeric cell {cell.strip()!r} at line {line}, column {col}"
                )
            if label_idx is not None and col - 1 == label_idx:
                if value != int(value):
                    raise DataError(
                        f"{path}: non-integer label {cell.strip()!r} at line {line}"
                    )
                labels.append(int(value))
            else:
                feats.append(value)
        points.append(feats)

    name = os.path.splitext(os.path.basename(str(path)))[0]
    return Dataset(
        points=np.array(points, dtype=float),
        labels=np.array(labels, dtype=int) if label_idx is not None else None,
        name=name,
    )


def write_csv(d: Dataset, path) -> None:
    """Write a Dataset as CSV (header + rows, label column when present).

    Floats are written with shortest round-trip precision so that
    load_csv(write_csv(d)) reproduces the exact values.
    """
    header = [f"x{j + 1}" for j in range(d.p)]
    if d.labels is not None:
        header.append("label")
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for i in range(d.n):
                row = [repr(float(v)) for v in d.points[i]]
                if d.labels is not None:
                    row.append(str(int(d.labels[i])))
                writer.writerow(row)
    except OSError as exc:
        raise DataError(f"cannot write {path}: {exc}") from exc


def grand_mean(d: Dataset) -> np.ndarray:
    """Arithmetic mean of all data points (length-p vector)."""
    return d.points.mean(axis=0)


def standardize(d: Dataset, mode: str = "none") -> Dataset:
    """Return a rescaled copy of the dataset (labels untouched).

    none     -> the identity (the same object is returned);
    z-score  -> mean 0, sd 1 per feature (population sd, divide by n);
    min-max  -> each feature mapped onto [0, 1].
    """
    if mode not in STANDARDIZE_MODES:
        raise DataError(f"unknown standardize mode {mode!r}")
    if mode == "none":
        return d
    if mode == "z-score":
        mean = d.points.mean(axis=0)
        sd = d.points.std(axis=0)  # population convention
        flat = np.nonzero(sd == 0)[0]
        if flat.size:
            raise DataError(f"zero-variance feature {flat[0] + 1} under z-score")
        scaled = (d.points - mean) / sd
    else:
        lo = d.points.min(axis=0)
        hi = d.points.max(axis=0)
        flat = np.nonzero(hi == lo)[0]
        if flat.size:
            raise DataError(f"constant feature {flat[0] + 1} under min-max")
        scaled = (d.points - lo) / (hi - lo)
    return Dataset(points=scaled, labels=d.labels, name=d.name)
