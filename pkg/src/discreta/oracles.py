"""Brute-force reference implementations for small instances.

These trade speed for auditability: reachability by transitive closure,
minimal paths by exhaustive depth-first search, displacement by trying
every permutation, and the spectral gap by sampling.  Budgets are hard
errors, never silent truncation; a truncated oracle is worse than none.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, pairwise, permutations, product

import numpy as np
from scipy.optimize import minimize_scalar

from .continuity import ADJACENCY_RTOL
from .exceptions import OracleBudgetError


@dataclass(frozen=True)
class OracleBudget:
    max_points: int = 12
    max_permutations: int = 40_320
    max_geodesics: int = 10_000


DEFAULT_BUDGET = OracleBudget()


def _check_points(space_or_n, budget):
    n = space_or_n if isinstance(space_or_n, int) else space_or_n.n
    if n > budget.max_points:
        raise OracleBudgetError(
            f"{n} points exceed the oracle budget of {budget.max_points}"
        )
    return n


def _mutual_ball_adjacency(space):
    """Adjacency recomputed from the ball definition, independent of the
    production graph builder."""
    n = space.n
    D = space.dist
    adjacency = {p: [] for p in space.ids}
    radius = {}
    for i, x in enumerate(space.ids):
        radius[x] = min(D[i, j] for j in range(n) if j != i)
    for i, x in enumerate(space.ids):
        for j, y in enumerate(space.ids):
            if i == j:
                continue
            d = D[i, j]
            if (d <= radius[x] * (1 + ADJACENCY_RTOL)
                    and d <= radius[y] * (1 + ADJACENCY_RTOL)):
                adjacency[x].append(y)
    for x in adjacency:
        adjacency[x].sort()
    return adjacency


def brute_components(space, budget=DEFAULT_BUDGET):
    """Path components by boolean transitive closure (Floyd-Warshall)."""
    n = _check_points(space, budget)
    ids = list(space.ids)
    adjacency = _mutual_ball_adjacency(space)
    reach = [[a == b or b in adjacency[a] for b in ids] for a in ids]
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                row_k = reach[k]
                row_i = reach[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    classes = {}
    for i, a in enumerate(ids):
        members = tuple(sorted(b for j, b in enumerate(ids) if reach[i][j]))
        classes[min(members)] = members
    return dict(sorted(classes.items()))


def _all_simple_paths(adjacency, x, y, max_length):
    """Depth-first enumeration of simple paths up to a length cap."""
    paths = []
    stack = [(x, (x,))]
    while stack:
        node, trail = stack.pop()
        if node == y:
            paths.append(trail)
            continue
        if len(trail) - 1 >= max_length:
            continue
        for nxt in adjacency[node]:
            if nxt not in trail:
                stack.append((nxt, trail + (nxt,)))
    return paths


def brute_shortest_length(space, x, y, budget=DEFAULT_BUDGET):
    """Minimal path length by iterative-deepening exhaustive search.

    Returns None when no path joins the points.
    """
    n = _check_points(space, budget)
    if x == y:
        return 0
    adjacency = _mutual_ball_adjacency(space)
    for depth in range(1, n):
        if any(
            p[-1] == y
            for p in _all_simple_paths(adjacency, x, y, depth)
        ):
            return depth
    return None


def brute_geodesics(space, x, y, budget=DEFAULT_BUDGET):
    """Every minimal path between two points, by exhaustive enumeration."""
    length = brute_shortest_length(space, x, y, budget)
    if length is None:
        return []
    if length == 0:
        return [(x,)]
    adjacency = _mutual_ball_adjacency(space)
    paths = sorted(
        p for p in _all_simple_paths(adjacency, x, y, length)
        if len(p) - 1 == length
    )
    if len(paths) > budget.max_geodesics:
        raise OracleBudgetError(
            f"pair ({x!r}, {y!r}) has {len(paths)} minimal paths, "
            f"budget is {budget.max_geodesics}"
        )
    return paths


def _floor_snap(value, rtol=1e-9):
    nearest = round(value)
    if abs(value - nearest) <= rtol * max(1.0, abs(value)):
        return int(nearest)
    return int(math.floor(value))


def brute_edge_set(graph, component, budget=DEFAULT_BUDGET):
    """Literal edge-set enumeration: all pairs, all minimal paths, all
    ways of cutting each path into floor(d) consecutive intervals."""
    space = graph.space
    members = graph.components[component]
    _check_points(len(members), budget)
    sub = space.subspace(members)
    edges = set()
    for x in members:
        for y in members:
            if y <= x:
                continue
            d = space.distance(x, y)
            s = _floor_snap(d)
            for path in brute_geodesics(sub, x, y, budget):
                n = len(path) - 1
                parts = min(s, n)
                for interior in combinations(range(1, n), parts - 1):
                    cuts = (0, *interior, n)
                    for t0, t1 in pairwise(cuts):
                        a, b = path[t0], path[t1]
                        edges.add((a, b) if a < b else (b, a))
    return edges


def brute_displacement(space, members=None, budget=DEFAULT_BUDGET):
    """Exhaustive max over permutations of the min point movement."""
    if members is None:
        members = space.ids
    members = sorted(members)
    n = len(members)
    if math.factorial(n) > budget.max_permutations:
        raise OracleBudgetError(
            f"{n}! permutations exceed the budget of {budget.max_permutations}"
        )
    idx = [space.index(m) for m in members]
    D = space.dist[np.ix_(idx, idx)]
    best = 0.0
    for perm in permutations(range(n)):
        worst = min(D[i, perm[i]] for i in range(n))
        best = max(best, worst)
    return float(best)


def _min_shift_sum(values, p):
    if values.max() == values.min():
        return 0.0
    result = minimize_scalar(
        lambda a: float(np.sum(np.abs(values - a) ** p)),
        bounds=(float(values.min()), float(values.max())),
        method="bounded",
        options={"xatol": 1e-13},
    )
    return float(result.fun)


def brute_rayleigh(edges, points, p, samples=200, seed=0,
                   budget=DEFAULT_BUDGET):
    """Smallest Rayleigh quotient over random functions plus, on small
    point sets, every nonconstant sign function.  Upper-bounds the gap."""
    points = sorted(points)
    n = len(points)
    index = {x: i for i, x in enumerate(points)}
    pairs = [(index[a], index[b]) for a, b in getattr(edges, "edges", edges)]
    rng = np.random.default_rng(seed)

    def quotient(f):
        num = sum(abs(f[i] - f[j]) ** p for i, j in pairs)
        den = _min_shift_sum(f, p)
        return num / den if den > 0 else np.inf

    best = np.inf
    for _ in range(samples):
        f = rng.standard_normal(n)
        if f.max() > f.min():
            best = min(best, quotient(f))
    if n <= budget.max_points:
        for signs in product((-1.0, 1.0), repeat=n):
            f = np.array(signs)
            if f.max() > f.min():
                best = min(best, quotient(f))
    return float(best)
