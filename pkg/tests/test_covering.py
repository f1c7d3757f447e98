from __future__ import annotations

import itertools
import random

import pytest

from negami.corpus import (
    antipodal_cover,
    bouquet,
    c_n,
    k4,
    path_over_c3,
    q3,
    scrambled_k4_cover,
    slit_double_cover_k4,
    weak_cover_c3,
)
from negami.covering import (
    BRANCHED,
    INVALID,
    UNBRANCHED,
    WEAK,
    acts_regularly,
    build_cover,
    classify,
    compose,
    deck_group,
    enumerate_double_covers,
    enumerate_permutation_covers,
    identity_cover,
    is_regular,
    monodromy_group,
    voltage_cover,
    z2_voltage_cover,
)
from negami.errors import CoverError
from negami.graph_core import build_graph, isomorphisms


def test_identity_cover():
    c = identity_cover(k4())
    assert c.degree == 1
    assert classify(c).kind == UNBRANCHED


def test_edge_scrambling_map_rejected():
    g = k4()
    phi = list(g.darts)
    phi[0], phi[1] = 0, 3  # both darts of ab to darts of different edges
    with pytest.raises(CoverError, match="reversal") as exc:
        build_cover(g, g, phi)
    assert exc.value.witness in (0, 1)


def test_vertex_inconsistency_rejected():
    g = c_n(3)
    with pytest.raises(CoverError, match="different target vertices"):
        build_cover(g, g, [0, 1, 4, 5, 2, 3])


def test_not_surjective():
    g = c_n(3)
    path = build_graph("xy", [("x", "y")])
    with pytest.raises(CoverError, match="not covered"):
        build_cover(path, g, [0, 1])


def test_antipodal_is_q3():
    c = antipodal_cover()
    assert len(c.source.vertices) == 8 and len(c.source.edges) == 12
    assert next(isomorphisms(c.source, q3()), None) is not None
    cls = classify(c)
    assert cls.kind == UNBRANCHED and cls.degree == 2 and cls.singular_set == ()
    dg = deck_group(c)
    assert dg.order == 2 and dg.regular


def test_slit_cover_branched():
    cls = classify(slit_double_cover_k4())
    assert cls.kind == BRANCHED and cls.degree == 2
    assert cls.singular_set == ("D",) and cls.local_degree["D"] == 2
    assert cls.branch_set == ("d",)


def test_scrambled_cover_branched():
    c = scrambled_k4_cover()
    cls = classify(c)
    assert cls.kind == BRANCHED and cls.degree == 3
    assert sum(cls.local_degree[u] for u in c.vertex_fiber("d")) == 3


def test_weak_and_invalid():
    assert classify(weak_cover_c3()).kind == WEAK
    cls = classify(path_over_c3())
    assert cls.kind == INVALID
    assert {w[0] for w in cls.witnesses} == {"x1", "x4"}


def test_double_cover_counts():
    assert len(list(enumerate_double_covers(k4()))) == 7
    assert len(list(enumerate_double_covers(c_n(3)))) == 1
    tree = build_graph("abc", [("a", "b"), ("b", "c")])
    assert list(enumerate_double_covers(tree)) == []


def test_hexagon_over_triangle():
    (c,) = enumerate_double_covers(c_n(3))
    assert len(c.source.vertices) == 6 and c.connected


def test_zero_voltage_disconnected():
    c = z2_voltage_cover(k4(), [0] * 6)
    assert not c.connected and len(c.source.components()) == 2


def test_voltage_inverse_check():
    g = c_n(3)
    with pytest.raises(CoverError, match="mutually inverse"):
        voltage_cover(g, {0: (1, 2, 0), 1: (1, 2, 0)})


@pytest.mark.parametrize("make", [k4, q3, lambda: c_n(4), lambda: bouquet(2)])
def test_voltage_covers_unbranched(make):
    for c in enumerate_double_covers(make()):
        cls = classify(c)
        assert cls.kind == UNBRANCHED
        assert all(len(c.vertex_fiber(v)) == 2 for v in c.target.vertices)
        assert all(len(c.edge_fiber(i)) == 2 for i in range(len(c.target.edges)))
        assert is_regular(c)[0]


def test_compose_degrees():
    anti = antipodal_cover()
    rnd = random.Random(3)
    covers = list(enumerate_double_covers(anti.source))
    for c in rnd.sample(covers, 10):
        comp = compose(anti, c)
        assert comp.degree == 4
        assert classify(comp).kind == UNBRANCHED
    assert compose(identity_cover(k4()), anti) == anti


def test_compose_mismatch():
    with pytest.raises(CoverError, match="graph mismatch"):
        compose(antipodal_cover(), identity_cover(k4()))


def test_deck_group_closed():
    for c in [antipodal_cover(), *enumerate_double_covers(c_n(4))]:
        elems = set(deck_group(c).elements)
        for a, b in itertools.product(elems, repeat=2):
            assert tuple(a[x] for x in b) in elems


def test_bouquet_irregular_triple():
    c = voltage_cover(bouquet(2), {0: (1, 0, 2), 2: (1, 2, 0)})
    assert c.connected
    dg = deck_group(c)
    assert dg.order == 1 and not dg.regular
    assert dg.witness is not None


def test_regular_iff_monodromy_regular():
    g = bouquet(2)
    for assignment, c in enumerate_permutation_covers(g, 3):
        group = monodromy_group(list(assignment.values()))
        assert is_regular(c)[0] == acts_regularly(group, 3)
