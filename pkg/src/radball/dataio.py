"""CSV ingestion and emission for labeled numeric datasets."""

from __future__ import annotations

import csv
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import MissingColumn, ParseError, TooFewFeatures
from .projection import DataSet


def atomic_write_text(path: str | Path, text: str) -> Path:
    """Write text to a temp file in the target directory, then rename over."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def _parse_cell(raw: str) -> float | None:
    try:
        value = float(raw)
    except ValueError:
        return None
    # nan/inf parse as floats but are not valid data values.
    return value if math.isfinite(value) else None


def load_csv(
    path: str | Path,
    label_column: str | None = None,
    id_column: str | None = None,
) -> DataSet:
    """Read a headed CSV into a DataSet.

    Columns where every cell parses as a finite number become features;
    all-text columns are ignored; a column mixing numbers and anything else
    raises ParseError naming the first offending cell (1-based file line,
    header is line 1). Without a label column all rows share the class
    "all"; without an id column rows are numbered r1..rn.
    """
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: empty file", line=1) from None
        rows = []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ParseError(
                    f"{path}: line {line_no} has {len(row)} cells, header has {len(header)}",
                    line=line_no,
                )
            rows.append((line_no, row))
    if not rows:
        raise ParseError(f"{path}: no data rows", line=1)

    for name, requested in (("label", label_column), ("id", id_column)):
        if requested is not None and requested not in header:
            raise MissingColumn(f"{name} column {requested!r} not in header {header}")

    candidates = [c for c, name in enumerate(header) if name not in (label_column, id_column)]
    parsed = {c: [_parse_cell(row[c]) for _, row in rows] for c in candidates}
    feature_cols = []
    for c in candidates:
        ok = sum(v is not None for v in parsed[c])
        if ok == len(rows):
            feature_cols.append(c)
        elif ok > 0:
            bad = next(k for k, v in enumerate(parsed[c]) if v is None)
            line_no, row = rows[bad]
            raise ParseError(
                f"{path}: line {line_no}, column {header[c]!r}: cannot parse {row[c]!r}",
                line=line_no,
                column=header[c],
            )
    if len(feature_cols) < 3:
        raise TooFewFeatures(
            f"{path}: found {len(feature_cols)} numeric feature columns, need at least 3"
        )

    values = np.array([[parsed[c][k] for c in feature_cols] for k in range(len(rows))])
    names = tuple(header[c] for c in feature_cols)
    if label_column is not None:
        li = header.index(label_column)
        labels = tuple(row[li] for _, row in rows)
    else:
        labels = tuple("all" for _ in rows)
    if id_column is not None:
        ii = header.index(id_column)
        row_ids = tuple(row[ii] for _, row in rows)
    else:
        row_ids = tuple(f"r{k + 1}" for k in range(len(rows)))
    return DataSet(values, names, labels, row_ids)


def format_float(value: float) -> str:
    """Shortest decimal that round-trips the double exactly."""
    return repr(float(value))


def dataset_to_csv(data: DataSet, label_column: str = "class", id_column: str | None = None) -> str:
    """Serialize a DataSet as CSV text (features, then the label column)."""
    import io

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    header = list(data.feature_names)
    if id_column:
        header = [id_column] + header
    if data.labels is not None:
        header.append(label_column)
    writer.writerow(header)
    for k in range(data.n):
        row = [format_float(v) for v in data.values[k]]
        if id_column:
            row = [data.row_ids[k]] + row
        if data.labels is not None:
            row.append(data.labels[k])
        writer.writerow(row)
    return buffer.getvalue()


def save_csv(
    data: DataSet,
    path: str | Path,
    label_column: str = "class",
    id_column: str | None = None,
) -> Path:
    return atomic_write_text(path, dataset_to_csv(data, label_column, id_column))
