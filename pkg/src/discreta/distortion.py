"""Certified lower bounds on the lp embedding distortion of a metric space.

The pipeline works per continuity component, rescaled to normal form:

* the metric edge set: take every pair x != y at distance d, every minimal
  continuous path between them, and every way of cutting the path into
  floor(d) consecutive intervals; the interval endpoints are the edges;
* the graph deviation d(X): the largest edge distance, exactly 1 when the
  metric already is the shortest-path metric of its adjacency graph;
* the displacement D(X): the best over permutations of the smallest point
  movement, a bottleneck assignment value;
* the p-spectral gap of the edge set;

composed into  (D / 2d) * (|X| * gap / |E|) ** (1/p)  per component, and
the supremum over components bounds the distortion of the whole space from
below.  The composition follows from chaining the permutation-difference
inequality, the gap's defining property and the function-increment
sandwich; it is sharp for cycles and two-point spaces at p = 2.  Since the
gap multiplies the bound, only an exact gap value (the p = 2 eigensolve)
yields a certified bound; a descent estimate can overshoot the infimum and
the report marks those bounds as uncertified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, pairwise

import numpy as np

from .continuity import (
    MetricSpace,
    build_continuity_graph,
    normalize,
    shortest_continuous_path,
    all_geodesics,
)
from .exceptions import (
    DegenerateComponent,
    NotEmbedding,
    NotNormalForm,
)
from .spectral import SpectralGapResult, spectral_gap

#: Relative tolerance for "the step is 1" and "the deviation is 1".
NORMAL_FORM_RTOL = 1e-9

EDGE_SET_MODES = ("all-geodesics", "canonical")


def floor_with_snap(value, rtol=1e-9):
    """Integer floor that forgives float drift just below an integer."""
    nearest = round(value)
    if abs(value - nearest) <= rtol * max(1.0, abs(value)):
        return int(nearest)
    return int(math.floor(value))


@dataclass(frozen=True, eq=False)
class CoveringFamily:
    """One way of cutting a path of ``path_length`` edges into
    ``parts_count`` consecutive intervals; ``cuts`` are the interval
    boundaries including 0 and the path length."""

    path_length: int
    parts_count: int
    cuts: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class MetricEdgeSet:
    """Deduplicated unordered point pairs harvested from path coverings."""

    component: str
    edges: tuple[tuple[str, str], ...]
    distances: tuple[float, ...]
    witnesses: dict | None = None

    @property
    def size(self):
        return len(self.edges)

    def distance_of(self, edge):
        return self.distances[self.edges.index(tuple(sorted(edge)))]


def metric_edge_set(graph, component, mode="all-geodesics",
                    max_geodesics=10_000, collect_witnesses=False):
    """The metric edge set of one component of a normal-form space.

    ``mode`` "all-geodesics" quantifies over every minimal path of every
    pair (the default, which makes the result independent of tie
    breaking); "canonical" uses the single deterministic minimal path per
    pair instead, for comparison experiments.
    """
    if mode not in EDGE_SET_MODES:
        raise ValueError(f"mode must be one of {EDGE_SET_MODES}, got {mode!r}")
    members = graph.components[component]
    step = graph.component_step[component]
    if abs(step - 1.0) > NORMAL_FORM_RTOL:
        raise NotNormalForm(
            f"component {component!r} has step {step}, expected 1",
            witness=component,
        )
    space = graph.space
    edges = {}
    witnesses = {} if collect_witnesses else None
    for x in members:
        for y in members:
            if y <= x:
                continue
            if mode == "canonical":
                paths = [shortest_continuous_path(graph, x, y)]
            else:
                paths = all_geodesics(graph, x, y, max_geodesics=max_geodesics)
            d = space.distance(x, y)
            n = paths[0].length
            s = min(floor_with_snap(d), n)
            for path in paths:
                verts = path.vertices
                for interior_cuts in combinations(range(1, n), s - 1):
                    cuts = (0, *interior_cuts, n)
                    for t0, t1 in pairwise(cuts):
                        a, b = verts[t0], verts[t1]
                        key = (a, b) if a < b else (b, a)
                        if key not in edges:
                            edges[key] = space.distance(*key)
                            if collect_witnesses:
                                witnesses[key] = (
                                    x,
                                    y,
                                    verts,
                                    CoveringFamily(
                                        path_length=n,
                                        parts_count=s,
                                        cuts=cuts,
                                    ),
                                )
    ordered = tuple(sorted(edges))
    return MetricEdgeSet(
        component=component,
        edges=ordered,
        distances=tuple(edges[e] for e in ordered),
        witnesses=witnesses,
    )


def graph_deviation(edge_set):
    """Largest distance across the metric edge set; >= 1 in normal form."""
    if not edge_set.edges:
        raise DegenerateComponent(
            f"component {edge_set.component!r} has an empty edge set",
            witness=edge_set.component,
        )
    return max(edge_set.distances)


def is_graph_like(graph, component, max_geodesics=10_000):
    """Whether the component's metric is its shortest-path metric.

    Both characterisations are computed and cross-checked: deviation 1 on
    the edge set, and distance equal to minimal path length on every pair.
    """
    deviation = graph_deviation(
        metric_edge_set(graph, component, max_geodesics=max_geodesics)
    )
    by_deviation = abs(deviation - 1.0) <= NORMAL_FORM_RTOL
    space = graph.space
    members = graph.components[component]
    by_paths = True
    for x in members:
        for y in members:
            if y <= x:
                continue
            length = shortest_continuous_path(graph, x, y).length
            if abs(space.distance(x, y) - length) > NORMAL_FORM_RTOL * length:
                by_paths = False
                break
        if not by_paths:
            break
    if by_deviation != by_paths:
        raise ArithmeticError(
            "deviation and path-length characterisations disagree on "
            f"component {component!r}"
        )
    return by_deviation


def _hopcroft_karp(adjacency, n_left, n_right):
    """Maximum matching size in a bipartite graph given as index lists."""
    INF = float("inf")
    match_left = [-1] * n_left
    match_right = [-1] * n_right
    dist = [0.0] * n_left

    def bfs():
        from collections import deque

        queue = deque()
        for u in range(n_left):
            if match_left[u] == -1:
                dist[u] = 0.0
                queue.append(u)
            else:
                dist[u] = INF
        found = INF
        while queue:
            u = queue.popleft()
            if dist[u] >= found:
                continue
            for v in adjacency[u]:
                w = match_right[v]
                if w == -1:
                    found = dist[u] + 1
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found != INF

    def dfs(u):
        for v in adjacency[u]:
            w = match_right[v]
            if w == -1 or (dist[w] == dist[u] + 1 and dfs(w)):
                match_left[u] = v
                match_right[v] = u
                return True
        dist[u] = INF
        return False

    matching = 0
    while bfs():
        for u in range(n_left):
            if match_left[u] == -1 and dfs(u):
                matching += 1
    return matching


def displacement(space, members=None):
    """Bottleneck assignment value of a component.

    The largest delta such that pairing every point with a point at
    distance >= delta admits a perfect matching; equivalently the best
    over all permutations of the smallest single-point movement.  Exact:
    delta ranges over the finitely many pairwise distances and each
    candidate is tested with a maximum matching.
    """
    if members is None:
        members = space.ids
    members = sorted(members)
    n = len(members)
    if n < 2:
        raise DegenerateComponent("displacement needs at least two points")
    idx = [space.index(m) for m in members]
    D = space.dist[np.ix_(idx, idx)]
    values = sorted(set(float(v) for v in D[~np.eye(n, dtype=bool)]))

    def feasible(delta):
        adjacency = [
            [j for j in range(n) if D[i, j] >= delta and i != j]
            for i in range(n)
        ]
        return _hopcroft_karp(adjacency, n, n) == n

    lo, hi = 0, len(values) - 1
    best = values[0]  # a cyclic shift moves every point, so the min works
    if not feasible(values[0]):
        raise ArithmeticError("no perfect matching at the smallest distance")
    while lo <= hi:
        mid = (lo + hi) // 2
        if feasible(values[mid]):
            best = values[mid]
            lo = mid + 1
        else:
            hi = mid - 1
    return best


@dataclass(frozen=True, eq=False)
class Embedding:
    """Point map into real vectors, judged with the lp vector norm."""

    mapping: dict
    p: float


def embedding_distortion(embedding, space):
    """Product of the two Lipschitz constants of an injective point map."""
    if space.n < 2:
        raise DegenerateComponent("distortion needs at least two points")
    vectors = {x: np.asarray(embedding.mapping[x], dtype=np.float64)
               for x in space.ids}
    lip = 0.0
    lip_inv = 0.0
    for i, x in enumerate(space.ids):
        for y in space.ids[i + 1:]:
            dv = float(np.linalg.norm(vectors[x] - vectors[y], ord=embedding.p))
            if dv == 0.0:
                raise NotEmbedding(
                    f"points {x!r} and {y!r} map to the same vector",
                    witness=(x, y),
                )
            d = space.distance(x, y)
            lip = max(lip, dv / d)
            lip_inv = max(lip_inv, d / dv)
    return lip * lip_inv


@dataclass(frozen=True, eq=False)
class ComponentBound:
    component: str
    size_x: int
    size_e: int
    d_x: float
    big_d: float
    gap: SpectralGapResult
    bound: float
    skipped: bool = False


@dataclass(frozen=True, eq=False)
class DistortionBoundReport:
    p: float
    sup_bound: float
    components: tuple[ComponentBound, ...]

    def to_dict(self):
        entries = []
        for c in self.components:
            if c.skipped:
                entries.append(
                    {"component": c.component, "size_x": c.size_x, "skipped": True}
                )
                continue
            entries.append(
                {
                    "component": c.component,
                    "size_x": c.size_x,
                    "size_e": c.size_e,
                    "d_x": c.d_x,
                    "big_d": c.big_d,
                    "lambda": {
                        "p": c.gap.p,
                        "value": c.gap.value,
                        "method": c.gap.method,
                        # the gap multiplies the bound, so only an exact
                        # gap certifies it; a descent value may overshoot
                        "certified": c.gap.method == "exact_eigen",
                    },
                    "bound": c.bound,
                }
            )
        return {"p": self.p, "sup_bound": self.sup_bound, "components": entries}


def distortion_bound(space, p=2.0, restarts=20, edge_set_mode="all-geodesics",
                     max_geodesics=10_000, seed=0):
    """Assemble the certified distortion lower bound of a space.

    Each component is rescaled to normal form (the distortion of a space
    does not change under rescaling a component's metric), its invariants
    are computed, and the per-component bounds are combined by supremum.
    Singleton components carry no information and are reported as skipped;
    a space with only singleton components has no bound at all.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    graph = build_continuity_graph(space)
    entries = []
    sup_bound = None
    for label, members in graph.components.items():
        if len(members) < 2:
            entries.append(
                ComponentBound(
                    component=label,
                    size_x=1,
                    size_e=0,
                    d_x=float("nan"),
                    big_d=float("nan"),
                    gap=None,
                    bound=float("nan"),
                    skipped=True,
                )
            )
            continue
        sub = normalize(space.subspace(members))
        sub_graph = build_continuity_graph(sub)
        edge_set = metric_edge_set(
            sub_graph, label, mode=edge_set_mode, max_geodesics=max_geodesics
        )
        d_x = graph_deviation(edge_set)
        big_d = displacement(sub)
        gap = spectral_gap(
            edge_set, sub.ids, p=p, restarts=restarts, seed=seed
        )
        bound = (big_d / (2.0 * d_x)) * (
            len(members) * gap.value / edge_set.size
        ) ** (1.0 / p)
        entries.append(
            ComponentBound(
                component=label,
                size_x=len(members),
                size_e=edge_set.size,
                d_x=d_x,
                big_d=big_d,
                gap=gap,
                bound=bound,
            )
        )
        sup_bound = bound if sup_bound is None else max(sup_bound, bound)
    if sup_bound is None:
        raise DegenerateComponent(
            "every component is a single point; no bound is available"
        )
    return DistortionBoundReport(
        p=float(p), sup_bound=sup_bound, components=tuple(entries)
    )
