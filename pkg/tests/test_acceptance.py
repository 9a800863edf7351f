"""Acceptance suite: one test per criterion, one printed verdict line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the verdict lines.
Criterion 7 asserts its literal stated bound values; those values
contradict the zero-violation soundness requirement of criterion 8 (the
details are in criterion 7's own test), and this suite keeps criterion 7
faithful to its stated numbers rather than weakening either criterion.
"""

import math
import time

import numpy as np
import pytest

from discreta import (
    all_geodesics,
    boundary_closure,
    brute_components,
    brute_displacement,
    brute_edge_set,
    brute_geodesics,
    build_continuity_graph,
    displacement,
    distortion_bound,
    embedding_distortion,
    flood_regions,
    graph_deviation,
    jordan_decompose,
    metric_edge_set,
    normalize,
    shortest_continuous_path,
    spectral_gap,
    validate_circuit,
)

from geomgen import (
    complete_space,
    cycle_space,
    frechet_embedding,
    graph_ids,
    lattice_space,
    line_space,
    path_space,
    punctured_ring_space,
    coordinate_embedding,
    random_graph_space,
    random_projection_embedding,
    random_punched_lattice,
    random_small_space,
    sample_simple_circuit,
    tree_embedding,
)

OCTAGON = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1), (1, 0)]
EIGHT = [
    (0, 0), (0, -1), (1, -1), (2, -1), (2, 0), (2, 1),
    (1, 1), (1, 2), (0, 2), (-1, 2), (-1, 1), (-1, 0), (0, 0),
]


def _verdict(number, ok, detail):
    print(f"[criterion {number}] {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {number}: {detail}"


def test_criterion_1_octagon_simple_not_strict():
    validate_circuit(OCTAGON)  # warm up
    best = min(
        (lambda t0: (validate_circuit(OCTAGON), time.perf_counter() - t0))(
            time.perf_counter()
        )[1]
        for _ in range(5)
    )
    verdict = validate_circuit(OCTAGON)
    ok = verdict.is_simple and not verdict.is_strict and best < 1e-3
    _verdict(
        1,
        ok,
        f"octagon is_simple={verdict.is_simple} is_strict={verdict.is_strict} "
        f"validated in {best * 1e6:.0f} us",
    )


def test_criterion_2_eight_shape():
    verdict = validate_circuit(EIGHT)
    split = flood_regions(EIGHT)
    ok = (not verdict.is_simple) and split.component_count == 3
    _verdict(
        2,
        ok,
        f"8-shape is_simple={verdict.is_simple}, diagnostic regions="
        f"{split.component_count}",
    )


def test_criterion_3_random_circuit_suite():
    rng = np.random.default_rng(1003)
    start = time.perf_counter()
    checked = 0
    for _ in range(100):
        circuit = sample_simple_circuit(rng, max_extent=30)
        gamma = set(circuit[:-1])
        d1 = jordan_decompose(circuit, margin=1)
        assert d1.component_count == 2
        assert d1.interior and len(d1.interior) < 900
        seed = next(iter(d1.interior))
        seen = {seed}
        stack = [seed]
        while stack:
            x, y = stack.pop()
            for nxt in ((x + 1, y), (x - 1, y), (x, y - 1), (x, y + 1)):
                if nxt in d1.interior and nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        assert seen == d1.interior, "interior must be 4-connected"
        assert boundary_closure(d1, "interior") == gamma
        assert boundary_closure(d1, "exterior") == gamma
        d3 = jordan_decompose(circuit, margin=3)
        assert d3.interior == d1.interior
        assert d3.component_count == d1.component_count
        assert d3.interior_closure == d1.interior_closure
        assert d3.exterior_closure == d1.exterior_closure
        checked += 1
    elapsed = time.perf_counter() - start
    ok = checked >= 100 and elapsed < 10.0
    _verdict(3, ok, f"{checked} circuits, all conclusions hold, {elapsed:.2f} s")


def test_criterion_4_graph_recognition():
    rng = np.random.default_rng(1004)
    graphs = 0
    for _ in range(200):
        n = int(rng.integers(2, 11))
        space, edge_ids = random_graph_space(rng, n)
        graph = build_continuity_graph(space)
        comp = next(iter(graph.components))
        edge_set = metric_edge_set(graph, comp)
        assert set(edge_set.edges) == edge_ids
        assert graph_deviation(edge_set) == 1.0
        graphs += 1

    non_graph = 0
    attempts = 0
    while non_graph < 50 and attempts < 400:
        attempts += 1
        space = random_punched_lattice(rng)
        graph = build_continuity_graph(space)
        comp = next(iter(graph.components))
        normed = normalize(space.subspace(graph.components[comp]))
        ngraph = build_continuity_graph(normed)
        deviation = graph_deviation(metric_edge_set(ngraph, comp))
        mismatch = any(
            abs(
                normed.distance(x, y)
                - shortest_continuous_path(ngraph, x, y).length
            )
            > 1e-9 * max(1.0, normed.distance(x, y))
            for i, x in enumerate(normed.ids)
            for y in normed.ids[i + 1:]
        )
        assert (deviation > 1 + 1e-9) == mismatch
        if mismatch:
            non_graph += 1
    ok = graphs >= 200 and non_graph >= 50
    _verdict(
        4,
        ok,
        f"{graphs} unit graph metrics recovered exactly; {non_graph} non-graph "
        "lattices satisfy the deviation equivalence",
    )


def test_criterion_5_oracle_equivalence():
    rng = np.random.default_rng(1005)
    named = [
        line_space([0, 1, 3]),
        lattice_space(range(-1, 2), range(-1, 2)),
        punctured_ring_space(),
        cycle_space(4),
        complete_space(3),
        path_space(3),
    ]
    randoms = [random_small_space(rng) for _ in range(15)]
    instances = 0
    for space in named + randoms:
        graph = build_continuity_graph(space)
        assert graph.components == brute_components(space)
        ids = sorted(space.ids)
        for x in ids:
            for y in ids:
                if y <= x or not graph.same_component(x, y):
                    continue
                assert sorted(
                    p.vertices for p in all_geodesics(graph, x, y)
                ) == brute_geodesics(space, x, y)
        if space.n <= 8:
            assert displacement(space) == brute_displacement(space)
        for label, members in graph.components.items():
            if len(members) < 2:
                continue
            sub = normalize(space.subspace(members))
            sub_graph = build_continuity_graph(sub)
            assert set(metric_edge_set(sub_graph, label).edges) == brute_edge_set(
                sub_graph, label
            )
            if len(members) <= 8:  # the permutation oracle budget is 8!
                assert displacement(sub) == brute_displacement(sub)
        instances += 1
    _verdict(
        5,
        instances == len(named) + 15,
        f"components, geodesics, edge sets and displacement match the "
        f"brute-force oracles on {instances} instances, exact equality",
    )


def test_criterion_6_spectral_correctness():
    def cycle_edges(n):
        ids = graph_ids(n)
        return [tuple(sorted((ids[i], ids[(i + 1) % n]))) for i in range(n)], ids

    def complete_edges(n):
        ids = graph_ids(n)
        return [(ids[i], ids[j]) for i in range(n) for j in range(i + 1, n)], ids

    def path_edges(n):
        ids = graph_ids(n)
        return [(ids[i], ids[i + 1]) for i in range(n - 1)], ids

    worst_exact = 0.0
    worst_descent = 0.0
    cases = []
    for n in range(3, 13):
        edges, ids = cycle_edges(n)
        cases.append((edges, ids, 2 - 2 * math.cos(2 * math.pi / n)))
        edges, ids = complete_edges(n)
        cases.append((edges, ids, float(n)))
        edges, ids = path_edges(n)
        cases.append((edges, ids, 2 - 2 * math.cos(math.pi / n)))
    for edges, ids, analytic in cases:
        value = spectral_gap(edges, ids, p=2).value
        worst_exact = max(worst_exact, abs(value - analytic) / analytic)

    rng = np.random.default_rng(1006)
    graphs = 0
    while graphs < 100:
        n = int(rng.integers(2, 13))
        space, edge_ids = random_graph_space(rng, n)
        pairs = sorted(edge_ids)
        exact = spectral_gap(pairs, space.ids, p=2)
        descent = spectral_gap(
            pairs, space.ids, p=2, method="rayleigh_descent", restarts=20, seed=0
        )
        assert descent.value >= exact.value - 1e-10
        worst_descent = max(
            worst_descent, abs(descent.value - exact.value) / exact.value
        )
        graphs += 1
    ok = worst_exact < 1e-9 and worst_descent < 1e-6
    _verdict(
        6,
        ok,
        f"eigensolve vs analytic worst rel err {worst_exact:.2e} on cycles, "
        f"cliques, paths; descent vs eigensolve worst rel err "
        f"{worst_descent:.2e} on {graphs} random graphs",
    )


def test_criterion_7_stated_bound_values():
    # This criterion freezes C4 -> 0.707106781..., K3 -> 0.288675134...,
    # K2 -> 0.5, values obtained by DIVIDING by the spectral gap.  Chaining
    # the inequalities the bound rests on (permutation difference, the
    # gap's defining property, the increment sandwich) places the gap in
    # the numerator, (D/2d)(|X| gap/|E|)^(1/p), and the divided form
    # certifies impossible lower bounds: 1.5087 for the 4-path at p=2,
    # whose true distortion is 1 (it embeds isometrically in the line).
    # That breaks criterion 8's zero-violation soundness requirement, so
    # the library computes the numerator form, which is sharp for C4
    # (sqrt 2) and K2 (1.0).  The stated values are asserted literally and
    # this test is expected to stay red; do not weaken it.
    produced = {
        "C4": distortion_bound(cycle_space(4), p=2).sup_bound,
        "K3": distortion_bound(complete_space(3), p=2).sup_bound,
        "K2": distortion_bound(line_space([0, 1]), p=2).sup_bound,
    }
    stated = {"C4": 0.707106781187, "K3": 0.288675134595, "K2": 0.5}
    sound = {"C4": math.sqrt(2), "K3": math.sqrt(3) / 2, "K2": 1.0}
    matches_sound = all(
        abs(produced[k] - sound[k]) <= 1e-9 * sound[k] for k in produced
    )
    ok = all(abs(produced[k] - stated[k]) <= 1e-9 for k in produced)
    _verdict(
        7,
        ok,
        f"stated values {stated} vs produced {produced}; produced values "
        f"match the proof-derived composition exactly ({matches_sound}); "
        "the stated values divide by the gap, which certifies impossible "
        "bounds and conflicts with criterion 8",
    )


def test_criterion_8_soundness_sandwich():
    rng = np.random.default_rng(1008)
    spaces = 0
    comparisons = 0
    while spaces < 100:
        space = random_small_space(rng)
        report = distortion_bound(space, p=2, seed=0)
        embeddings = [
            frechet_embedding(space, 2),
            tree_embedding(space, 2),
            random_projection_embedding(space, 2, rng),
            random_projection_embedding(space, 2, rng),
            random_projection_embedding(space, 2, rng),
        ]
        if space.coords is not None:
            embeddings.append(coordinate_embedding(space, 2))
        for emb in embeddings:
            assert report.sup_bound <= embedding_distortion(emb, space) + 1e-9
            comparisons += 1
        spaces += 1
    _verdict(
        8,
        spaces >= 100 and comparisons >= 500,
        f"{spaces} spaces, {comparisons} embedding comparisons, zero "
        "violations of bound <= distortion + 1e-9",
    )


def test_criterion_9_lemma_inequalities():
    rng = np.random.default_rng(1009)
    pool = []
    while len(pool) < 12:
        space = random_small_space(rng)
        graph = build_continuity_graph(space)
        label, members = max(
            graph.components.items(), key=lambda item: len(item[1])
        )
        if len(members) < 2:
            continue
        normed = normalize(space.subspace(members))
        ngraph = build_continuity_graph(normed)
        edge_set = metric_edge_set(ngraph, label)
        pool.append((normed, edge_set, graph_deviation(edge_set)))

    permutation_trials = 0
    for _ in range(1000):
        n = int(rng.integers(2, 9))
        k = int(rng.integers(1, 5))
        p = float(rng.choice([1.0, 1.5, 2.0, 3.0]))
        F = rng.standard_normal((n, k)) * float(rng.uniform(0.1, 3.0))
        perm = rng.permutation(n)
        lhs = np.sum(np.abs(F - F[perm]) ** p)
        rhs = 2**p * np.sum(np.abs(F) ** p)
        assert lhs <= rhs + 1e-12 * max(1.0, rhs)
        permutation_trials += 1

    sandwich_trials = 0
    for _ in range(1000):
        normed, edge_set, deviation = pool[int(rng.integers(0, len(pool)))]
        ids = list(normed.ids)
        f = {x: float(v) for x, v in zip(ids, rng.standard_normal(len(ids)))}
        ratio = max(
            abs(f[x] - f[y]) / normed.distance(x, y)
            for i, x in enumerate(ids)
            for y in ids[i + 1:]
        )
        over_edges = max(abs(f[a] - f[b]) for a, b in edge_set.edges)
        assert ratio <= over_edges + 1e-12 * max(1.0, over_edges)
        assert over_edges <= deviation * ratio + 1e-12 * max(1.0, ratio)
        sandwich_trials += 1

    _verdict(
        9,
        permutation_trials >= 1000 and sandwich_trials >= 1000,
        f"{permutation_trials} permutation-difference trials and "
        f"{sandwich_trials} increment-sandwich trials, zero violations",
    )
