"""Circuits on the integer grid and their Jordan decomposition.

A circuit is a closed sequence of lattice points whose consecutive entries
are axis neighbours.  Validation grades a circuit as injective, simple
(diagonal contacts happen only across a single turn, indices read
cyclically), strict (exactly two diagonal circuit neighbours at every
vertex) and square-free.  For a simple square-free circuit the grid minus
the circuit has exactly one bounded and one unbounded 4-connected region;
axis ray casting from either region plus corner completion recovers the
whole circuit as that region's boundary.

The infinite grid is handled through a bounding box expanded by a margin:
any region touching the margin frame is part of the single unbounded
component, since any two frame cells can be joined outside the box.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .exceptions import (
    ContainsSquare,
    NotACircuit,
    NotSimple,
    SimplicityBroken,
    TheoremViolation,
)

GridPoint = tuple  # (x, y) with integer entries

_AXIS_STEPS = ((1, 0), (-1, 0), (0, -1), (0, 1))


def db1(point):
    """The four axis neighbours of a grid point."""
    x, y = point
    return frozenset({(x + 1, y), (x - 1, y), (x, y - 1), (x, y + 1)})


def db2(point):
    """The four diagonal neighbours of a grid point."""
    x, y = point
    return frozenset({(x - 1, y - 1), (x - 1, y + 1), (x + 1, y + 1), (x + 1, y - 1)})


def _as_point(value):
    if (
        isinstance(value, (tuple, list))
        and len(value) == 2
        and all(isinstance(c, int) and not isinstance(c, bool) for c in value)
    ):
        return (value[0], value[1])
    raise NotACircuit(f"not an integer grid point: {value!r}", witness=value)


@dataclass(frozen=True, eq=False)
class GridCircuit:
    """Closed 4-adjacent vertex sequence; the last vertex repeats the first."""

    vertices: tuple[GridPoint, ...]

    @classmethod
    def from_points(cls, points):
        verts = tuple(_as_point(p) for p in points)
        if len(verts) < 5:
            raise NotACircuit(
                f"a circuit needs at least 4 steps, got {len(verts) - 1}"
            )
        if verts[0] != verts[-1]:
            raise NotACircuit(
                "first and last vertex differ", witness=(verts[0], verts[-1])
            )
        for i in range(len(verts) - 1):
            (x0, y0), (x1, y1) = verts[i], verts[i + 1]
            if abs(x0 - x1) + abs(y0 - y1) != 1:
                raise NotACircuit(
                    f"vertices {i} and {i + 1} are not axis neighbours",
                    witness=(i, i + 1),
                )
        return cls(vertices=verts)

    @property
    def loop(self):
        """The vertices without the closing repeat."""
        return self.vertices[:-1]

    @property
    def point_set(self):
        return frozenset(self.loop)


def _ensure_circuit(circuit):
    if isinstance(circuit, GridCircuit):
        return circuit
    return GridCircuit.from_points(circuit)


@dataclass(frozen=True, eq=False)
class CircuitValidation:
    is_closed_path: bool
    is_injective: bool
    is_simple: bool
    is_strict: bool
    contains_square: bool
    witnesses: dict

    def as_dict(self):
        return {
            "is_closed_path": self.is_closed_path,
            "is_injective": self.is_injective,
            "is_simple": self.is_simple,
            "is_strict": self.is_strict,
            "contains_square": self.contains_square,
            "witnesses": {
                "duplicate_pairs": [list(w) for w in self.witnesses["duplicate_pairs"]],
                "diagonal_pairs": [list(w) for w in self.witnesses["diagonal_pairs"]],
                "nonstrict_vertices": list(self.witnesses["nonstrict_vertices"]),
                "squares": self.witnesses["squares"],
            },
        }


def validate_circuit(circuit):
    """Grade a circuit: injective, simple, strict, square-free.

    Simplicity requires every diagonal pair of circuit vertices to sit at
    cyclic index distance exactly 2 with the vertex between them axis
    adjacent to both.  The index distance is cyclic because re-rooting a
    circuit must not change the verdict.  Strictness asks for exactly two
    diagonal circuit neighbours at every vertex.  Witness index pairs and
    square corners for every failed condition are collected.
    """
    circuit = _ensure_circuit(circuit)
    loop = circuit.loop
    n = len(loop)
    gamma = set(loop)

    positions = {}
    duplicate_pairs = []
    for i, p in enumerate(loop):
        if p in positions:
            duplicate_pairs.append((positions[p], i))
        else:
            positions[p] = i
    is_injective = not duplicate_pairs

    diagonal_pairs = []
    for j in range(n):
        for q in db2(loop[j]):
            i = positions.get(q)
            if i is None or i >= j:
                continue
            gap = min(j - i, n - (j - i))
            ok = False
            if gap == 2:
                mids = []
                if (i + 2) % n == j:
                    mids.append(loop[(i + 1) % n])
                if (j + 2) % n == i:
                    mids.append(loop[(j + 1) % n])
                ok = any(
                    m in db1(loop[i]) and m in db1(loop[j]) for m in mids
                )
            if not ok:
                diagonal_pairs.append((i, j))
    diagonal_pairs.sort()
    is_simple = is_injective and not diagonal_pairs

    nonstrict = sorted(
        i for i in range(n) if len(db2(loop[i]) & gamma) != 2
    )
    is_strict = is_injective and not nonstrict

    squares = []
    for (x, y) in gamma:
        corners = ((x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1))
        if all(c in gamma for c in corners):
            squares.append(tuple(sorted(corners)))
    squares.sort()

    return CircuitValidation(
        is_closed_path=True,
        is_injective=is_injective,
        is_simple=is_simple,
        is_strict=is_strict,
        contains_square=bool(squares),
        witnesses={
            "duplicate_pairs": duplicate_pairs,
            "diagonal_pairs": diagonal_pairs,
            "nonstrict_vertices": nonstrict,
            "squares": [list(map(list, s)) for s in squares],
        },
    )


def _window_bounds(gamma, margin):
    xs = [p[0] for p in gamma]
    ys = [p[1] for p in gamma]
    return (
        min(xs) - margin,
        max(xs) + margin,
        min(ys) - margin,
        max(ys) + margin,
    )


def _flood_components(gamma, bounds):
    """4-connected components of the window minus the circuit.

    Returns (components, touches) where touches[k] says whether component
    k reaches the window frame and is therefore part of the unbounded
    complement.
    """
    xmin, xmax, ymin, ymax = bounds
    seen = set()
    components = []
    touches = []
    for y in range(ymin, ymax + 1):
        for x in range(xmin, xmax + 1):
            start = (x, y)
            if start in gamma or start in seen:
                continue
            comp = set()
            touch = False
            queue = deque([start])
            seen.add(start)
            while queue:
                cx, cy = queue.popleft()
                comp.add((cx, cy))
                if cx in (xmin, xmax) or cy in (ymin, ymax):
                    touch = True
                for dx, dy in _AXIS_STEPS:
                    nxt = (cx + dx, cy + dy)
                    if (
                        xmin <= nxt[0] <= xmax
                        and ymin <= nxt[1] <= ymax
                        and nxt not in gamma
                        and nxt not in seen
                    ):
                        seen.add(nxt)
                        queue.append(nxt)
            components.append(frozenset(comp))
            touches.append(touch)
    return components, touches


@dataclass(frozen=True, eq=False)
class RegionSplit:
    """Raw flood-fill split of the window, no simplicity assumptions."""

    component_count: int
    finite_regions: tuple[frozenset, ...]
    exterior_window: frozenset
    bounds: tuple[int, int, int, int]


def flood_regions(circuit, margin=1):
    """Split the expanded bounding box minus the circuit into regions.

    Diagnostic entry point: works for any circuit, simple or not, and
    reports how many components the complement has (counting the single
    unbounded one once).
    """
    if margin < 1:
        raise ValueError("margin must be at least 1")
    circuit = _ensure_circuit(circuit)
    gamma = circuit.point_set
    bounds = _window_bounds(gamma, margin)
    components, touches = _flood_components(gamma, bounds)
    exterior = [c for c, t in zip(components, touches) if t]
    finite = [c for c, t in zip(components, touches) if not t]
    # The margin frame is itself connected, so exactly one component
    # touches it.
    if len(exterior) != 1:
        raise TheoremViolation(
            f"expected one unbounded region, found {len(exterior)}"
        )
    finite.sort(key=lambda c: sorted(c))
    return RegionSplit(
        component_count=1 + len(finite),
        finite_regions=tuple(finite),
        exterior_window=exterior[0],
        bounds=bounds,
    )


@dataclass(frozen=True, eq=False)
class JordanDecomposition:
    """Interior, exterior window and boundary closures of a simple circuit."""

    circuit: GridCircuit
    margin: int
    bounds: tuple[int, int, int, int]
    interior: frozenset
    exterior_window: frozenset
    component_count: int
    ray_hits: dict
    angle_points: dict
    interior_closure: frozenset
    exterior_closure: frozenset

    @property
    def gamma(self):
        return self.circuit.point_set


def _ray_hits(region, gamma, bounds):
    """First circuit point hit by each axis ray from each region point.

    Rays that leave the window without meeting the circuit are misses.
    """
    xmin, xmax, ymin, ymax = bounds
    hits = set()
    for (px, py) in region:
        for dx, dy in _AXIS_STEPS:
            x, y = px + dx, py + dy
            while xmin <= x <= xmax and ymin <= y <= ymax:
                if (x, y) in gamma:
                    hits.add((x, y))
                    break
                x += dx
                y += dy
    return hits


def _complete_angles(hits, gamma):
    """Corner completion of a ray-hit set.

    Whenever two collected points are opposite corners of a unit square,
    the unique common axis neighbour lying on the circuit joins the set.
    Zero or two such neighbours contradict simplicity.
    """
    angles = set()
    for a in sorted(hits):
        for b in db2(a):
            if b not in hits or b <= a:
                continue
            common = db1(a) & db1(b) & gamma
            if len(common) != 1:
                raise SimplicityBroken(
                    f"corners {a} and {b} have {len(common)} common circuit "
                    "neighbours instead of one",
                    witness=(a, b),
                )
            angles.add(next(iter(common)))
    return angles


def _closure(region, gamma, bounds):
    hits = _ray_hits(region, gamma, bounds)
    angles = _complete_angles(hits, gamma)
    return hits, angles, frozenset(hits | angles)


def jordan_decompose(circuit, margin=1):
    """Decompose the grid along a simple square-free circuit.

    Flood fill over the expanded bounding box minus the circuit: the one
    region touching the frame is the window slice of the unbounded
    component; exactly one bounded nonempty region must remain, the
    interior.  Boundary closures are computed for both sides by ray
    casting plus corner completion.

    Raises :class:`NotSimple` / :class:`ContainsSquare` with witnesses if
    the hypotheses fail, and :class:`TheoremViolation` if the component
    count is not two (unreachable for validated inputs).
    """
    circuit = _ensure_circuit(circuit)
    verdict = validate_circuit(circuit)
    if not verdict.is_simple:
        raise NotSimple(
            "circuit is not simple",
            witness=verdict.witnesses["duplicate_pairs"]
            + verdict.witnesses["diagonal_pairs"],
        )
    if verdict.contains_square:
        raise ContainsSquare(
            "circuit contains a unit square",
            witness=verdict.witnesses["squares"],
        )
    split = flood_regions(circuit, margin=margin)
    if len(split.finite_regions) != 1 or not split.finite_regions[0]:
        raise TheoremViolation(
            f"expected exactly one bounded region, found "
            f"{len(split.finite_regions)}"
        )
    interior = split.finite_regions[0]
    gamma = circuit.point_set
    int_hits, int_angles, int_closure = _closure(interior, gamma, split.bounds)
    ext_hits, ext_angles, ext_closure = _closure(
        split.exterior_window, gamma, split.bounds
    )
    return JordanDecomposition(
        circuit=circuit,
        margin=margin,
        bounds=split.bounds,
        interior=interior,
        exterior_window=split.exterior_window,
        component_count=split.component_count,
        ray_hits={"interior": frozenset(int_hits), "exterior": frozenset(ext_hits)},
        angle_points={
            "interior": frozenset(int_angles),
            "exterior": frozenset(ext_angles),
        },
        interior_closure=int_closure,
        exterior_closure=ext_closure,
    )


def boundary_closure(decomposition, side):
    """Ray-hit set plus angle points for ``side`` ("interior"/"exterior")."""
    if side == "interior":
        return decomposition.interior_closure
    if side == "exterior":
        return decomposition.exterior_closure
    raise ValueError(f"side must be 'interior' or 'exterior', got {side!r}")


def render_svg(decomposition, cell=20):
    """Render the decomposition as pixels: one unit square per lattice point.

    Circuit cells are black, interior cells light grey, exterior cells are
    left unfilled.  The viewport covers the circuit's bounding box and the
    element order is fixed, so output is byte-deterministic.
    """
    gamma = decomposition.gamma
    xs = [p[0] for p in gamma]
    ys = [p[1] for p in gamma]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    width = (xmax - xmin + 1) * cell
    height = (ymax - ymin + 1) * cell
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    for x, y in sorted(gamma | set(decomposition.interior)):
        if not (xmin <= x <= xmax and ymin <= y <= ymax):
            continue
        fill = "black" if (x, y) in gamma else "lightgray"
        px = (x - xmin) * cell
        py = (ymax - y) * cell
        lines.append(
            f'<rect x="{px}" y="{py}" width="{cell}" height="{cell}" '
            f'fill="{fill}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
