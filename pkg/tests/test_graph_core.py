from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import flag_oracle, random_connected_graph, random_scheme
from negami.corpus import bouquet, c_n, k4, q3
from negami.errors import BudgetExceeded, GraphError
from negami.graph_core import (
    SurfaceId,
    automorphisms,
    build_graph,
    enumerate_rotation_systems,
    euler_characteristic,
    face_structure,
    faces,
    flip_vertex,
    is_orientable,
    is_planar,
    make_scheme,
    mirror_scheme,
    normalize_orientable,
    planar_embed,
    rotation_system_count,
    sphere_rotation_systems,
    surface_id,
    validate_assumptions,
)


def triangle(signs=(1, 1, 1)):
    g = c_n(3)
    # edge i runs i -> i+1; darts 2i at i, 2i+1 at i+1
    return make_scheme(g, {0: [0, 5], 1: [1, 2], 2: [3, 4]}, list(signs))


class TestBuild:
    def test_duplicate_vertex(self):
        with pytest.raises(GraphError, match="duplicate vertex"):
            build_graph(["a", "a"], [])

    def test_dangling_endpoint(self):
        with pytest.raises(GraphError, match="dangling"):
            build_graph(["a"], [("a", "b")])

    def test_duplicate_edge_id(self):
        with pytest.raises(GraphError, match="duplicate edge"):
            build_graph(["a", "b"], [("a", "b"), ("a", "b")], edge_ids=["e", "e"])

    def test_dart_ids_round_trip(self):
        g = k4()
        for d in g.darts:
            assert g.dart_from_id(*g.dart_id(d)) == d

    def test_bouquet_violates_assumptions(self):
        report = validate_assumptions(bouquet(2))
        assert not report.passed
        assert report.loops == ("l0", "l1")

    def test_parallel_edges_reported(self):
        g = build_graph("ab", [("a", "b"), ("b", "a")])
        assert not validate_assumptions(g).passed
        assert validate_assumptions(k4()).passed

    def test_disconnected_reported(self):
        g = build_graph("abcd", [("a", "b"), ("c", "d")])
        assert not validate_assumptions(g).connected


class TestSchemes:
    def test_rotation_must_permute_darts(self):
        with pytest.raises(GraphError):
            make_scheme(c_n(3), {0: [0, 1], 1: [1, 2], 2: [3, 4]})

    def test_bad_sign(self):
        with pytest.raises(GraphError):
            make_scheme(c_n(3), {0: [0, 5], 1: [1, 2], 2: [3, 4]}, [1, 0, 1])

    def test_triangle_sphere(self):
        s = triangle()
        assert faces(s) == [(0, 2, 4), (1, 5, 3)]
        assert euler_characteristic(s) == 2
        assert surface_id(s).name == "sphere"

    def test_triangle_one_negative_edge(self):
        s = triangle((1, 1, -1))
        assert [len(f) for f in faces(s)] == [6]
        assert euler_characteristic(s) == 1
        assert not is_orientable(s)
        assert surface_id(s).describe() == "crosscap 1 (projective plane)"

    def test_k4_planar_faces_are_triangles(self):
        s = planar_embed(k4())
        assert [len(f) for f in faces(s)] == [3, 3, 3, 3]

    def test_flip_moves_negative_sign(self):
        s = triangle((1, 1, -1))
        # edge 2 runs 2 -> 0; flipping vertex 2 also toggles edge 1
        t = flip_vertex(s, 2)
        assert t.signature == (1, -1, 1)
        assert euler_characteristic(t) == 1

    def test_flip_keeps_loop_sign(self):
        g = build_graph(["v"], [("v", "v")])
        s = make_scheme(g, {"v": [0, 1]}, [-1])
        assert flip_vertex(s, "v").signature == (-1,)

    def test_single_vertex(self):
        g = build_graph(["v"], [])
        s = make_scheme(g, {})
        assert euler_characteristic(s) == 2

    def test_disconnected_rejected(self):
        g = build_graph("abcd", [("a", "b"), ("c", "d")])
        with pytest.raises(GraphError):
            euler_characteristic(make_scheme(g, {}))

    @pytest.mark.parametrize("chi,orientable,name", [
        (2, True, "sphere"), (0, True, "torus"), (-2, True, "genus-2"),
        (1, False, "projective plane"), (0, False, "Klein bottle"), (-1, False, "crosscap-3"),
    ])
    def test_surface_names(self, chi, orientable, name):
        assert SurfaceId(chi, orientable).name == name

    def test_surface_parity(self):
        with pytest.raises(ValueError):
            SurfaceId(1, True)


class TestFaceOracle:
    @settings(max_examples=200, deadline=None)
    @given(st.integers(1, 5), st.integers(0, 6), st.randoms(use_true_random=False))
    def test_against_flag_oracle(self, n, extra, rnd):
        g = random_connected_graph(rnd, n, n - 1 + extra, loops=True)
        s = random_scheme(rnd, g)
        v, f, orientable = flag_oracle(s)
        assert euler_characteristic(s) == v - len(g.edges) + f
        assert is_orientable(s) == orientable

    @settings(max_examples=100, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_mirror_pairs_orbits(self, rnd):
        g = random_connected_graph(rnd, 4, 7, loops=True)
        s = random_scheme(rnd, g)
        fs = face_structure(s)
        for j, orbit in enumerate(fs.orbits):
            partner = fs.mirror[j]
            assert fs.mirror[partner] == j and partner != j
            assert len(fs.orbits[partner]) == len(orbit)

    @settings(max_examples=100, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_flip_invariance(self, rnd):
        g = random_connected_graph(rnd, 5, 8)
        s = random_scheme(rnd, g)
        v = rnd.choice(g.vertices)
        t = flip_vertex(s, v)
        assert euler_characteristic(t) == euler_characteristic(s)
        assert is_orientable(t) == is_orientable(s)
        assert flip_vertex(t, v) == s

    def test_normalize_orientable(self, rng):
        s = planar_embed(q3())
        t = flip_vertex(flip_vertex(s, "000"), "011")
        assert not t.all_positive
        n = normalize_orientable(t)
        assert n.all_positive and euler_characteristic(n) == 2

    def test_mirror_scheme_same_surface(self, rng):
        for _ in range(20):
            s = random_scheme(rng, random_connected_graph(rng, 4, 6))
            assert surface_id(mirror_scheme(s)) == surface_id(s)


class TestEnumeration:
    def test_k4_counts(self):
        g = k4()
        # (deg - 1)! per vertex
        assert rotation_system_count(g) == math.prod(math.factorial(g.degree(v) - 1)
                                                     for v in g.vertices) == 16
        schemes = list(enumerate_rotation_systems(g))
        assert len({s.rotation for s in schemes}) == 16
        assert sum(euler_characteristic(s) == 2 for s in schemes) == 2
        assert len(list(sphere_rotation_systems(g))) == 2

    def test_budget(self):
        with pytest.raises(BudgetExceeded) as exc:
            enumerate_rotation_systems(q3(), budget=10)
        assert exc.value.estimate == 256

    def test_budget_from_environment(self, monkeypatch):
        monkeypatch.setenv("NEGAMI_BUDGET", "5")
        with pytest.raises(BudgetExceeded):
            enumerate_rotation_systems(k4())

    @pytest.mark.parametrize("make,order", [(k4, 24), (q3, 48), (lambda: c_n(5), 10)])
    def test_automorphism_counts(self, make, order):
        assert len(list(automorphisms(make()))) == order

    def test_bouquet_automorphisms(self):
        # swap loops, reverse each loop independently
        assert len(list(automorphisms(bouquet(2)))) == 8


class TestPlanarity:
    def test_k33_not_planar(self):
        g = build_graph(range(6), [(i, j) for i in range(3) for j in range(3, 6)])
        assert planar_embed(g) is None

    def test_multigraph_with_loops(self):
        g = build_graph("ab", [("a", "a"), ("a", "b"), ("a", "b"), ("b", "b")])
        s = planar_embed(g)
        assert euler_characteristic(s) == 2

    def test_agrees_with_enumeration(self):
        rnd = random.Random(7)
        for _ in range(25):
            n = rnd.randint(2, 6)
            g = random_connected_graph(rnd, n, rnd.randint(n - 1, 9), multi=False)
            brute = next(iter(sphere_rotation_systems(g)), None) is not None
            assert is_planar(g) == brute
