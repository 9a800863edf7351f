import numpy as np
import pytest

from discreta import (
    GridCircuit,
    boundary_closure,
    db1,
    db2,
    flood_regions,
    jordan_decompose,
    render_svg,
    validate_circuit,
)
from discreta.exceptions import ContainsSquare, NotACircuit, NotSimple

from geomgen import apply_isometry, random_polyomino_boundary, sample_simple_circuit

OCTAGON = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1), (1, 0)]
EIGHT = [
    (0, 0), (0, -1), (1, -1), (2, -1), (2, 0), (2, 1),
    (1, 1), (1, 2), (0, 2), (-1, 2), (-1, 1), (-1, 0), (0, 0),
]
UNIT_SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1), (0, 0)]
RECT_3x3 = [(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1), (0, 0)]


def test_db1_db2_at_origin_and_translated():
    assert db1((0, 0)) == {(1, 0), (-1, 0), (0, -1), (0, 1)}
    assert db1((2, 1)) == {(3, 1), (1, 1), (2, 0), (2, 2)}
    assert db2((0, 0)) == {(-1, -1), (-1, 1), (1, 1), (1, -1)}
    assert db2((1, 0)) == {(0, -1), (0, 1), (2, 1), (2, -1)}


def test_db1_db2_shape_properties():
    rng = np.random.default_rng(0)
    for _ in range(50):
        p = tuple(int(v) for v in rng.integers(-50, 50, 2))
        assert len(db1(p)) == 4
        assert len(db2(p)) == 4
        assert not db1(p) & db2(p)


def test_circuit_construction_rejects_malformed_input():
    with pytest.raises(NotACircuit):
        GridCircuit.from_points([(0, 0), (1, 0), (0, 0)])  # too short
    with pytest.raises(NotACircuit):
        GridCircuit.from_points([(0, 0), (1, 0), (1, 1), (0, 1), (1, 1)])  # open
    with pytest.raises(NotACircuit):
        GridCircuit.from_points([(0, 0), (2, 0), (2, 1), (0, 1), (0, 0)])  # jump
    with pytest.raises(NotACircuit):
        GridCircuit.from_points([(0, 0), (1.0, 0), (1, 1), (0, 1), (0, 0)])


def test_octagon_is_simple_not_strict():
    verdict = validate_circuit(OCTAGON)
    assert verdict.is_injective
    assert verdict.is_simple
    assert not verdict.is_strict
    assert not verdict.contains_square
    # the corner vertices have no diagonal circuit neighbours at all
    loop = GridCircuit.from_points(OCTAGON).loop
    assert {loop[i] for i in verdict.witnesses["nonstrict_vertices"]} == {
        (1, 1), (-1, 1), (-1, -1), (1, -1),
    }


def test_eight_shape_is_injective_but_not_simple():
    verdict = validate_circuit(EIGHT)
    assert verdict.is_injective
    assert not verdict.is_simple
    assert (0, 6) in verdict.witnesses["diagonal_pairs"]


def test_unit_square_is_simple_and_contains_square():
    verdict = validate_circuit(UNIT_SQUARE)
    assert verdict.is_simple
    assert verdict.contains_square
    assert verdict.witnesses["squares"] == [[[0, 0], [0, 1], [1, 0], [1, 1]]]


def test_validation_is_rotation_invariant():
    rng = np.random.default_rng(1)
    for circuit in (OCTAGON, EIGHT, UNIT_SQUARE, RECT_3x3):
        loop = circuit[:-1]
        base = validate_circuit(circuit)
        for _ in range(4):
            k = int(rng.integers(0, len(loop)))
            rooted = loop[k:] + loop[:k]
            verdict = validate_circuit(rooted + [rooted[0]])
            assert verdict.is_simple == base.is_simple
            assert verdict.is_strict == base.is_strict
            assert verdict.contains_square == base.contains_square


def test_decomposition_is_rotation_invariant():
    loop = OCTAGON[:-1]
    base = jordan_decompose(OCTAGON)
    for k in (1, 3, 6):
        rooted = loop[k:] + loop[:k]
        moved = jordan_decompose(rooted + [rooted[0]])
        assert moved.interior == base.interior
        assert moved.component_count == base.component_count
        assert moved.interior_closure == base.interior_closure
        assert moved.exterior_closure == base.exterior_closure


def test_octagon_decomposition():
    decomposition = jordan_decompose(OCTAGON)
    assert decomposition.interior == {(0, 0)}
    assert decomposition.component_count == 2
    gamma = set(OCTAGON[:-1])
    assert decomposition.ray_hits["interior"] == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert decomposition.angle_points["interior"] == {
        (1, 1), (-1, 1), (-1, -1), (1, -1),
    }
    assert boundary_closure(decomposition, "interior") == gamma
    assert boundary_closure(decomposition, "exterior") == gamma


def test_rectangle_decomposition():
    decomposition = jordan_decompose(RECT_3x3)
    assert decomposition.interior == {(1, 1)}
    assert boundary_closure(decomposition, "interior") == set(RECT_3x3[:-1])
    assert boundary_closure(decomposition, "exterior") == set(RECT_3x3[:-1])


def test_decompose_refuses_bad_circuits():
    with pytest.raises(NotSimple):
        jordan_decompose(EIGHT)
    with pytest.raises(ContainsSquare):
        jordan_decompose(UNIT_SQUARE)


def test_eight_shape_diagnostic_has_three_regions():
    split = flood_regions(EIGHT)
    assert split.component_count == 3
    assert sorted(sorted(r) for r in split.finite_regions) == [
        [(0, 1)], [(1, 0)],
    ]


def test_decomposition_partitions_the_window():
    decomposition = jordan_decompose(OCTAGON, margin=1)
    xmin, xmax, ymin, ymax = decomposition.bounds
    window = {
        (x, y) for x in range(xmin, xmax + 1) for y in range(ymin, ymax + 1)
    }
    gamma = decomposition.gamma
    pieces = [decomposition.interior, decomposition.exterior_window, gamma]
    assert set().union(*pieces) == window
    assert sum(len(p) for p in pieces) == len(window)


def test_random_circuits_jordan_properties():
    rng = np.random.default_rng(2)
    for _ in range(25):
        circuit = sample_simple_circuit(rng)
        gamma = set(circuit[:-1])
        decomposition = jordan_decompose(circuit)
        assert decomposition.component_count == 2
        assert decomposition.interior
        assert boundary_closure(decomposition, "interior") == gamma
        assert boundary_closure(decomposition, "exterior") == gamma
        # interior is 4-connected: flood from one seed reaches all
        seed = next(iter(decomposition.interior))
        seen = {seed}
        stack = [seed]
        while stack:
            x, y = stack.pop()
            for nxt in ((x + 1, y), (x - 1, y), (x, y - 1), (x, y + 1)):
                if nxt in decomposition.interior and nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        assert seen == decomposition.interior


def test_margin_enlargement_changes_nothing():
    rng = np.random.default_rng(3)
    for _ in range(8):
        circuit = sample_simple_circuit(rng, max_extent=15)
        d1 = jordan_decompose(circuit, margin=1)
        d3 = jordan_decompose(circuit, margin=3)
        assert d1.interior == d3.interior
        assert d1.component_count == d3.component_count
        assert d1.interior_closure == d3.interior_closure
        assert d1.exterior_closure == d3.exterior_closure


def test_lattice_isometry_equivariance():
    rng = np.random.default_rng(4)
    for _ in range(8):
        circuit = sample_simple_circuit(rng, max_extent=15)
        rot = int(rng.integers(0, 4))
        reflect = bool(rng.integers(0, 2))
        shift = (int(rng.integers(-4, 5)), int(rng.integers(-4, 5)))
        moved = apply_isometry(circuit, rotations=rot, reflect=reflect, shift=shift)

        def move(points):
            return set(apply_isometry(sorted(points), rot, reflect, shift))

        base = jordan_decompose(circuit)
        imaged = jordan_decompose(moved)
        assert imaged.interior == move(base.interior)
        assert imaged.interior_closure == move(base.interior_closure)
        assert imaged.exterior_closure == move(base.exterior_closure)
        assert validate_circuit(moved).is_simple


def test_strict_implies_simple_on_random_boundaries():
    rng = np.random.default_rng(5)
    strict_seen = 0
    simple_seen = 0
    for _ in range(120):
        walk = random_polyomino_boundary(rng, n_cells=int(rng.integers(3, 12)))
        verdict = validate_circuit(walk)
        if verdict.is_strict:
            strict_seen += 1
            assert verdict.is_simple
        if verdict.is_simple:
            simple_seen += 1
    # elbows and notches make many blob boundaries non-simple; the sampler
    # must exercise both verdicts for the implication to mean anything
    assert 0 < simple_seen < 120
    assert strict_seen >= 0


def test_flood_regions_rejects_zero_margin():
    with pytest.raises(ValueError):
        flood_regions(OCTAGON, margin=0)


def test_svg_rendering_deterministic_cells():
    decomposition = jordan_decompose(OCTAGON)
    svg = render_svg(decomposition)
    assert svg == render_svg(decomposition)
    # 3x3 viewport: 8 circuit cells + 1 interior cell + background
    assert svg.count("<rect") == 10
    assert svg.count('fill="lightgray"') == 1
    assert svg.count('fill="black"') == 8

    rect = jordan_decompose(RECT_3x3)
    assert render_svg(rect).count('fill="lightgray"') == 1
