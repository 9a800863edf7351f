"""Input documents and report serialization.

Spaces arrive as JSON, either coordinates plus a metric name

    {"points": [{"id": "a", "coords": [0, 0]}, ...], "metric": "euclidean"}

or an explicit matrix

    {"points": [{"id": "a"}, ...], "matrix": [[0, 1], [1, 0]]}

(the matrix form also accepts plain id strings for ``points``).  Distance
matrices may alternatively come as numeric CSV.  A circuit is a JSON array
of ``[x, y]`` integer pairs whose first and last entries coincide.

Reports are JSON with sorted keys and every real rounded to 12 significant
digits, so identical inputs give byte-identical output.
"""

from __future__ import annotations

import csv
import io as _stdio
import json

from .continuity import MetricSpace
from .exceptions import InputError


def _point_entries(points):
    if not isinstance(points, list) or not points:
        raise InputError("'points' must be a nonempty array")
    ids = []
    coords = []
    has_coords = None
    for entry in points:
        if isinstance(entry, str):
            pid, xy = entry, None
        elif isinstance(entry, dict):
            if "id" not in entry:
                raise InputError(f"point entry without 'id': {entry!r}")
            pid = entry["id"]
            xy = entry.get("coords")
        else:
            raise InputError(f"bad point entry: {entry!r}")
        if not isinstance(pid, str) or not pid:
            raise InputError(f"point id must be a nonempty string, got {pid!r}")
        if xy is not None:
            if (not isinstance(xy, list) or not xy
                    or not all(isinstance(v, (int, float)) and not isinstance(v, bool)
                               for v in xy)):
                raise InputError(f"bad coords for point {pid!r}: {xy!r}")
        if has_coords is None:
            has_coords = xy is not None
        elif has_coords != (xy is not None):
            raise InputError("either every point has coords or none does")
        ids.append(pid)
        coords.append(xy)
    return ids, (coords if has_coords else None)


def space_from_document(doc):
    """Build a :class:`MetricSpace` from a parsed JSON document."""
    if not isinstance(doc, dict):
        raise InputError("space document must be a JSON object")
    if "points" not in doc:
        raise InputError("space document needs a 'points' array")
    ids, coords = _point_entries(doc["points"])
    has_matrix = "matrix" in doc
    has_metric = "metric" in doc
    if has_matrix and has_metric:
        raise InputError("give either 'matrix' or 'metric', not both")
    if has_matrix:
        matrix = doc["matrix"]
        if (not isinstance(matrix, list)
                or not all(isinstance(row, list) for row in matrix)):
            raise InputError("'matrix' must be an array of arrays")
        return MetricSpace.from_matrix(ids, matrix)
    if has_metric:
        if coords is None:
            raise InputError("metric form requires coords on every point")
        if len({len(c) for c in coords}) > 1:
            raise InputError("all coords must have the same dimension")
        return MetricSpace.from_coords(ids, coords, metric=doc["metric"])
    raise InputError("space document needs 'matrix' or 'metric'")


def space_from_csv_text(text):
    """Distance matrix as plain numeric CSV; ids are generated p0, p1, ..."""
    rows = []
    for row in csv.reader(_stdio.StringIO(text)):
        if not row or all(not cell.strip() for cell in row):
            continue
        try:
            rows.append([float(cell) for cell in row])
        except ValueError as exc:
            raise InputError(f"bad CSV cell: {exc}") from None
    if not rows:
        raise InputError("empty CSV matrix")
    width = max(1, len(str(len(rows) - 1)))
    ids = [f"p{i:0{width}d}" for i in range(len(rows))]
    return MetricSpace.from_matrix(ids, rows)


def load_space(path, fmt="json"):
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    if fmt == "csv":
        return space_from_csv_text(text)
    if fmt != "json":
        raise InputError(f"unknown format {fmt!r}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    return space_from_document(doc)


def circuit_from_document(doc):
    """A circuit document is an array of [x, y] integer pairs, closed."""
    if not isinstance(doc, list):
        raise InputError("circuit document must be a JSON array")
    points = []
    for entry in doc:
        if (not isinstance(entry, list) or len(entry) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool)
                           for v in entry)):
            raise InputError(f"bad circuit vertex: {entry!r}")
        points.append((entry[0], entry[1]))
    if len(points) < 2 or points[0] != points[-1]:
        raise InputError("circuit must be closed: first vertex equals last")
    return points


def load_circuit(path):
    with open(path, "r", encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from None
    return circuit_from_document(doc)


def round_floats(value, digits=12):
    """Recursively round every float to ``digits`` significant digits."""
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        return float(f"{value:.{digits}g}")
    if isinstance(value, dict):
        return {k: round_floats(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_floats(v, digits) for v in value]
    return value


def report_to_json(report):
    """Deterministic JSON: sorted keys, rounded reals, trailing newline."""
    return json.dumps(round_floats(report), sort_keys=True, indent=2) + "\n"
