"""Finite metric spaces and their nearest-neighbour continuity structure.

Every point of a finite metric space has a neighbour radius: the radius of
the smallest closed ball around it that contains at least two points, i.e.
the distance to its nearest other point.  Two points are adjacent when each
lies inside the other's ball, which happens exactly when their distance
equals both neighbour radii.  Chains of adjacent points are continuous
paths, and the transitive closure of adjacency partitions the space into
path components.  On a component the neighbour radius is a single value,
the component's step; dividing a component's distances by its step puts it
in normal form (step 1).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    DegenerateComponent,
    DegenerateSpace,
    GeodesicExplosion,
    NotAMetric,
    NotConnected,
)

#: Relative tolerance for the metric axioms on input data.
TRIANGLE_RTOL = 1e-9

#: Relative tolerance for the distance-equality test behind adjacency.
#: Lattice and graph metrics are exact; Euclidean coordinates are not.
ADJACENCY_RTOL = 1e-9


def _readonly(array):
    out = np.ascontiguousarray(array, dtype=np.float64)
    out.setflags(write=False)
    return out


def validate_distance_matrix(ids, matrix, rtol=TRIANGLE_RTOL):
    """Check a distance matrix against the metric axioms.

    Requires a square matrix over ``ids``: symmetric within ``rtol``,
    zero diagonal, strictly positive off the diagonal, and triangle
    inequality within ``rtol`` on every triple.  Returns the symmetrised
    read-only float64 matrix; raises :class:`NotAMetric` otherwise.
    """
    ids = tuple(ids)
    n = len(ids)
    if len(set(ids)) != n:
        raise NotAMetric("point identifiers must be unique")
    D = np.asarray(matrix, dtype=np.float64)
    if D.ndim != 2 or D.shape != (n, n):
        raise NotAMetric(f"distance matrix must be {n}x{n}, got {D.shape}")
    if not np.all(np.isfinite(D)):
        raise NotAMetric("distances must be finite numbers")
    scale = max(1.0, float(np.abs(D).max(initial=0.0)))
    if np.abs(D - D.T).max(initial=0.0) > rtol * scale:
        i, j = np.unravel_index(np.abs(D - D.T).argmax(), D.shape)
        raise NotAMetric(
            f"matrix is not symmetric at ({ids[i]}, {ids[j]})",
            witness=(ids[i], ids[j]),
        )
    if np.abs(np.diag(D)).max(initial=0.0) > rtol * scale:
        raise NotAMetric("diagonal must be zero")
    D = 0.5 * (D + D.T)
    np.fill_diagonal(D, 0.0)
    off = ~np.eye(n, dtype=bool)
    if n > 1 and D[off].min() <= 0.0:
        i, j = np.unravel_index(np.where(off, D, np.inf).argmin(), D.shape)
        raise NotAMetric(
            f"distinct points {ids[i]}, {ids[j]} at non-positive distance",
            witness=(ids[i], ids[j]),
        )
    for k in range(n):
        slack = D[:, k][:, None] + D[k, :][None, :] + rtol * np.maximum(D, 1.0)
        bad = D > slack
        if bad.any():
            i, j = np.unravel_index(bad.argmax(), D.shape)
            raise NotAMetric(
                f"triangle inequality fails on ({ids[i]}, {ids[j]}, {ids[k]})",
                witness=(ids[i], ids[j], ids[k]),
            )
    return _readonly(D)


@dataclass(frozen=True, eq=False)
class MetricSpace:
    """Finite metric space over string point identifiers.

    ``dist`` is a read-only float64 matrix aligned with ``ids``.  When the
    space came from coordinates, ``coords`` and ``metric_name`` record the
    source; spaces built from an explicit matrix leave them ``None``.
    Instances are immutable and safe to share across threads.
    """

    ids: tuple[str, ...]
    dist: np.ndarray
    coords: np.ndarray | None = None
    metric_name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.ids)})

    @classmethod
    def from_matrix(cls, ids, matrix):
        ids = tuple(str(p) for p in ids)
        return cls(ids=ids, dist=validate_distance_matrix(ids, matrix))

    @classmethod
    def from_coords(cls, ids, coords, metric="euclidean"):
        if metric != "euclidean":
            raise NotAMetric(f"unsupported metric {metric!r}; expected 'euclidean'")
        ids = tuple(str(p) for p in ids)
        X = np.asarray(coords, dtype=np.float64)
        if X.ndim != 2 or X.shape[0] != len(ids):
            raise NotAMetric("coordinates must be one row per point")
        if not np.all(np.isfinite(X)):
            raise NotAMetric("coordinates must be finite numbers")
        diff = X[:, None, :] - X[None, :, :]
        D = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
        return cls(
            ids=ids,
            dist=validate_distance_matrix(ids, D),
            coords=_readonly(X),
            metric_name="euclidean",
        )

    @property
    def n(self):
        return len(self.ids)

    @property
    def source(self):
        return "matrix" if self.coords is None else f"coords:{self.metric_name}"

    def index(self, point):
        try:
            return self._index[point]
        except KeyError:
            raise KeyError(f"unknown point id {point!r}") from None

    def distance(self, a, b):
        return float(self.dist[self.index(a), self.index(b)])

    def subspace(self, ids):
        """Restriction to ``ids`` (in the given order).

        A principal submatrix of a metric is a metric, so no revalidation.
        """
        idx = [self.index(p) for p in ids]
        sub = _readonly(self.dist[np.ix_(idx, idx)])
        coords = None if self.coords is None else _readonly(self.coords[idx])
        return MetricSpace(
            ids=tuple(ids), dist=sub, coords=coords, metric_name=self.metric_name
        )


@dataclass(frozen=True, eq=False)
class ContinuousPath:
    """Vertex sequence whose consecutive points are adjacent."""

    vertices: tuple[str, ...]

    @property
    def length(self):
        return len(self.vertices) - 1


@dataclass(frozen=True, eq=False)
class ContinuityGraph:
    """Adjacency structure derived from a metric space.

    Immutable after construction; read-only queries are safe to run
    concurrently.  Component labels are the smallest point id each
    component contains, and ``component_step`` maps a label to the common
    neighbour radius on that component.
    """

    space: MetricSpace
    neighbor_radius: dict[str, float]
    adjacency: dict[str, tuple[str, ...]]
    component_label: dict[str, str]
    component_step: dict[str, float]
    components: dict[str, tuple[str, ...]]

    def neighbors(self, point):
        return self.adjacency[point]

    def same_component(self, a, b):
        return self.component_label[a] == self.component_label[b]

    def component_of(self, point):
        return self.component_label[point]


def build_continuity_graph(space):
    """Derive neighbour radii, adjacency and path components.

    Adjacency is an exact statement about minima: x ~ y iff
    d(x, y) = R_x = R_y where R is the nearest-neighbour distance.  The
    equality is tested with relative tolerance ``ADJACENCY_RTOL`` so that
    coordinate-sourced spaces behave like their exact counterparts.
    """
    n = space.n
    if n < 2:
        raise DegenerateSpace(
            "need at least two points for nearest-neighbour balls"
        )
    D = space.dist
    masked = np.where(np.eye(n, dtype=bool), np.inf, D)
    radius = masked.min(axis=1)
    cap = radius * (1.0 + ADJACENCY_RTOL)
    adj = (D <= cap[:, None]) & (D <= cap[None, :]) & ~np.eye(n, dtype=bool)

    ids = space.ids
    adjacency = {
        ids[i]: tuple(sorted(ids[j] for j in np.flatnonzero(adj[i])))
        for i in range(n)
    }
    neighbor_radius = {ids[i]: float(radius[i]) for i in range(n)}

    component_label = {}
    components = {}
    for start in sorted(ids):
        if start in component_label:
            continue
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        label = min(seen)
        components[label] = tuple(sorted(seen))
        for member in seen:
            component_label[member] = label
    components = dict(sorted(components.items()))
    component_step = {
        label: neighbor_radius[label] for label in components
    }
    return ContinuityGraph(
        space=space,
        neighbor_radius=neighbor_radius,
        adjacency=adjacency,
        component_label=component_label,
        component_step=component_step,
        components=components,
    )


def _bfs_levels(graph, source):
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in graph.adjacency[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def shortest_continuous_path(graph, x, y):
    """A minimal-length continuous path from ``x`` to ``y``.

    Ties are broken by always stepping to the lexicographically smallest
    predecessor, so the result is deterministic.  Raises
    :class:`NotConnected` when the points lie in different components.
    """
    graph.space.index(x), graph.space.index(y)
    if not graph.same_component(x, y):
        raise NotConnected(f"{x!r} and {y!r} lie in different components", witness=(x, y))
    if x == y:
        return ContinuousPath((x,))
    dist = _bfs_levels(graph, x)
    chain = [y]
    current = y
    while current != x:
        current = min(
            v for v in graph.adjacency[current] if dist.get(v) == dist[current] - 1
        )
        chain.append(current)
    chain.reverse()
    return ContinuousPath(tuple(chain))


def all_geodesics(graph, x, y, max_geodesics=10_000):
    """Every minimal-length continuous path from ``x`` to ``y``.

    Paths are read off the BFS predecessor DAG.  The number of paths is
    counted first; exceeding ``max_geodesics`` raises
    :class:`GeodesicExplosion` naming the pair.
    """
    graph.space.index(x), graph.space.index(y)
    if not graph.same_component(x, y):
        raise NotConnected(f"{x!r} and {y!r} lie in different components", witness=(x, y))
    if x == y:
        return [ContinuousPath((x,))]
    dist = _bfs_levels(graph, x)
    preds = {
        v: tuple(sorted(u for u in graph.adjacency[v] if dist.get(u) == d - 1))
        for v, d in dist.items()
        if d > 0
    }
    count = {x: 1}
    for v in sorted(dist, key=dist.get):
        if v == x:
            continue
        count[v] = sum(count[u] for u in preds[v])
    if count[y] > max_geodesics:
        raise GeodesicExplosion(
            f"pair ({x!r}, {y!r}) has {count[y]} minimal paths, cap is {max_geodesics}",
            witness=(x, y, count[y]),
        )
    paths = []
    stack = [(y, (y,))]
    while stack:
        v, tail = stack.pop()
        if v == x:
            paths.append(ContinuousPath(tuple(reversed(tail))))
            continue
        for u in preds[v]:
            stack.append((u, tail + (u,)))
    paths.sort(key=lambda p: p.vertices)
    return paths


def normalize(space):
    """Rescale every component by its step so that all steps become 1.

    Distances between different components are kept as-is; they carry no
    meaning for the per-component pipelines that consume normal forms, and
    they are not re-checked against the triangle inequality.  Raises
    :class:`DegenerateComponent` if some component is a single point.
    """
    graph = build_continuity_graph(space)
    for label, members in graph.components.items():
        if len(members) < 2:
            raise DegenerateComponent(
                f"component {label!r} is a single point and has no step",
                witness=label,
            )
    D = np.array(space.dist, dtype=np.float64)
    for label, members in graph.components.items():
        idx = [space.index(p) for p in members]
        D[np.ix_(idx, idx)] /= graph.component_step[label]
    np.fill_diagonal(D, 0.0)
    return MetricSpace(ids=space.ids, dist=_readonly(D))
