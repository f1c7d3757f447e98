"""Cover maps between graphs.

A cover is a dart map ``phi`` from the source graph onto the target graph
that commutes with reversal and sends all darts at a source vertex to darts
at a single target vertex.  Classification follows the neighbor-wise
definitions: unbranched (locally bijective), branched (locally onto and
uniformly d-to-1) and weak (locally onto only).
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator, Mapping, Sequence

from .errors import CoverError
from .graph_core import Graph, automorphisms, build_graph

UNBRANCHED = "unbranched"
BRANCHED = "branched"
WEAK = "weak"
INVALID = "invalid"


@dataclass(frozen=True)
class CoverMap:
    source: Graph
    target: Graph
    dart_map: tuple

    @cached_property
    def vertex_map(self) -> dict:
        out = {}
        for d, x in enumerate(self.dart_map):
            out[self.source.ends[d]] = self.target.ends[x]
        return out

    @cached_property
    def _vertex_fibers(self) -> dict:
        fibers = {v: [] for v in self.target.vertices}
        for u in self.source.vertices:
            fibers[self.vertex_map[u]].append(u)
        return {v: tuple(f) for v, f in fibers.items()}

    @cached_property
    def _dart_fibers(self) -> list:
        fibers = [[] for _ in self.target.darts]
        for d, x in enumerate(self.dart_map):
            fibers[x].append(d)
        return [tuple(f) for f in fibers]

    def vertex_fiber(self, v) -> tuple:
        return self._vertex_fibers[v]

    def dart_fiber(self, x: int) -> tuple:
        return self._dart_fibers[x]

    def edge_fiber(self, i: int) -> tuple:
        """Source edge indices over target edge ``i``."""
        return tuple(d >> 1 for d in self._dart_fibers[2 * i])

    @property
    def degree(self) -> int | None:
        """Common edge-fiber size, or None if fibers differ in size."""
        sizes = {len(f) for f in self._dart_fibers}
        return sizes.pop() if len(sizes) == 1 else None

    @property
    def connected(self) -> bool:
        return self.source.is_connected()


def build_cover(source: Graph, target: Graph, dart_map: Sequence[int] | Mapping[int, int],
                vertex_map: Mapping | None = None) -> CoverMap:
    """Validate a dart map and wrap it as a :class:`CoverMap`."""
    if isinstance(dart_map, Mapping):
        missing = [d for d in source.darts if d not in dart_map]
        if missing:
            raise CoverError(f"dart {source.dart_id(missing[0])} has no image", missing[0])
        phi = tuple(dart_map[d] for d in source.darts)
    else:
        phi = tuple(dart_map)
        if len(phi) != source.num_darts:
            raise CoverError("dart map length differs from the number of source darts")
    nt = target.num_darts
    for d, x in enumerate(phi):
        if not (isinstance(x, int) and 0 <= x < nt):
            raise CoverError(f"dart {source.dart_id(d)} maps outside the target", d)
    for d, x in enumerate(phi):
        if phi[d ^ 1] != x ^ 1:
            raise CoverError(
                f"dart map does not commute with reversal at dart {source.dart_id(d)}", d)
    images = {}
    for d, x in enumerate(phi):
        u, v = source.ends[d], target.ends[x]
        if images.setdefault(u, v) != v:
            raise CoverError(
                f"darts at vertex {u!r} map to different target vertices "
                f"({images[u]!r} and {v!r}); witness dart {source.dart_id(d)}", d)
    if vertex_map is not None:
        for u in source.vertices:
            if u in images and vertex_map.get(u) != images[u]:
                raise CoverError(f"vertex map disagrees with dart map at {u!r}", u)
    hit = set(phi)
    for x in target.darts:
        if x not in hit:
            raise CoverError(f"target dart {target.dart_id(x)} is not covered", x)
    for u in source.vertices:
        if u not in images:
            raise CoverError(f"isolated source vertex {u!r}", u)
    return CoverMap(source, target, phi)


def identity_cover(g: Graph) -> CoverMap:
    return build_cover(g, g, tuple(g.darts))


@dataclass(frozen=True)
class CoverClass:
    kind: str
    degree: int | None
    local_degree: dict = field(default_factory=dict)
    singular_set: tuple = ()
    branch_set: tuple = ()
    witnesses: tuple = ()


def classify(c: CoverMap) -> CoverClass:
    src, tgt = c.source, c.target
    local = {}
    witnesses = []
    weak = invalid = False
    for u in src.vertices:
        v = c.vertex_map[u]
        counts = Counter(c.dart_map[d] for d in src.darts_at(u))
        missing = [x for x in tgt.darts_at(v) if not counts[x]]
        if missing:
            invalid = True
            witnesses.append((u, "not onto the neighbors of its image", tgt.dart_id(missing[0])))
            continue
        values = {counts[x] for x in tgt.darts_at(v)}
        if len(values) == 1:
            local[u] = values.pop()
        else:
            weak = True
            witnesses.append((u, "onto but not uniformly d-to-1", dict(sorted(
                (tgt.dart_id(x), k) for x, k in counts.items()))))
    degree = c.degree
    if degree is None:
        # weak covers need not have uniform edge fibers
        invalid = invalid or not weak
        sizes = {tgt.edges[i]: len(c.edge_fiber(i)) for i in range(len(tgt.edges))}
        witnesses.append((None, "edge fibers differ in size", sizes))
    elif not invalid and not weak:
        for v in tgt.vertices:
            total = sum(local[u] for u in c.vertex_fiber(v))
            if tgt.degree(v) and total != degree:
                invalid = True
                witnesses.append((v, "local degrees over the fiber do not sum to the degree", total))
    if invalid:
        kind = INVALID
    elif weak:
        kind = WEAK
    elif any(k > 1 for k in local.values()):
        kind = BRANCHED
    else:
        kind = UNBRANCHED
    singular = tuple(u for u in src.vertices if local.get(u, 1) > 1)
    branch = tuple(dict.fromkeys(c.vertex_map[u] for u in singular))
    return CoverClass(kind, degree, local, singular, branch, tuple(witnesses))


def compose(outer: CoverMap, inner: CoverMap) -> CoverMap:
    """``outer o inner``; requires ``inner.target == outer.source``."""
    if inner.target != outer.source:
        raise CoverError("graph mismatch: inner target is not the outer source")
    return CoverMap(inner.source, outer.target,
                    tuple(outer.dart_map[x] for x in inner.dart_map))


# ---------------------------------------------------------------------------
# Deck transformations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DeckGroup:
    elements: tuple
    regular: bool
    witness: tuple | None = None

    @property
    def order(self) -> int:
        return len(self.elements)


def _compose_perm(a: Sequence[int], b: Sequence[int]) -> tuple:
    """``a o b`` for dart permutations."""
    return tuple(a[x] for x in b)


def deck_group(c: CoverMap, budget: int | None = None) -> DeckGroup:
    elements = tuple(automorphisms(c.source, labels=c.dart_map, budget=budget))
    src = c.source
    witness = None
    for v in c.target.vertices:
        fiber = c.vertex_fiber(v)
        if not fiber:
            continue
        probe = src.darts_at(fiber[0])[0]
        reach = {src.ends[g[probe]] for g in elements}
        for u in fiber:
            if u not in reach:
                witness = ("vertex", v, fiber[0], u)
                break
        if witness:
            break
    if witness is None:
        for i in range(len(c.target.edges)):
            over = c.dart_fiber(2 * i)
            reach = {g[over[0]] for g in elements}
            for d in over:
                if d not in reach:
                    witness = ("edge", c.target.edges[i], src.edges[over[0] >> 1], src.edges[d >> 1])
                    break
            if witness:
                break
    return DeckGroup(elements, witness is None, witness)


def is_regular(c: CoverMap, budget: int | None = None) -> tuple[bool, tuple | None]:
    """Regularity verdict; the witness names a fiber pair no deck map connects."""
    dg = deck_group(c, budget)
    return dg.regular, dg.witness


# ---------------------------------------------------------------------------
# Voltage constructions
# ---------------------------------------------------------------------------

def _check_perm(p, n=None) -> tuple:
    p = tuple(p)
    if sorted(p) != list(range(len(p))) or (n is not None and len(p) != n):
        raise CoverError(f"{p!r} is not a permutation of the fiber")
    return p


def invert_perm(p: Sequence[int]) -> tuple:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def voltage_cover(g: Graph, voltages: Mapping[int, Sequence[int]], n: int | None = None) -> CoverMap:
    """Derived cover for permutation voltages on darts.

    ``voltages[d]`` is the permutation (``p[k]`` = image of sheet ``k``) met
    when traversing dart ``d``; the reverse dart must carry the inverse, and
    may be omitted.  Unlisted edges carry the identity.  Sheet ``k`` of
    vertex ``v`` is the vertex ``(v, k)``; edge ``(e, k)`` starts on sheet
    ``k`` of the first endpoint of ``e``.
    """
    if n is None:
        if not voltages:
            raise CoverError("cannot infer the fiber size from an empty voltage assignment")
        n = len(next(iter(voltages.values())))
    per_edge = []
    for i in range(len(g.edges)):
        fwd = voltages.get(2 * i)
        back = voltages.get(2 * i + 1)
        if fwd is not None:
            fwd = _check_perm(fwd, n)
        if back is not None:
            back = _check_perm(back, n)
        if fwd is not None and back is not None and invert_perm(fwd) != back:
            raise CoverError(f"voltages on the darts of edge {g.edges[i]!r} are not mutually inverse",
                             2 * i)
        if fwd is None:
            fwd = invert_perm(back) if back is not None else tuple(range(n))
        per_edge.append(fwd)
    extra = [d for d in voltages if not (isinstance(d, int) and 0 <= d < g.num_darts)]
    if extra:
        raise CoverError(f"voltage given for unknown dart {extra[0]!r}", extra[0])
    vertices = [(v, k) for v in g.vertices for k in range(n)]
    pairs, ids, phi = [], [], []
    for i, perm in enumerate(per_edge):
        u, w = g.edge_ends(i)
        for k in range(n):
            pairs.append(((u, k), (w, perm[k])))
            ids.append((g.edges[i], k))
            phi.extend((2 * i, 2 * i + 1))
    source = build_graph(vertices, pairs, edge_ids=ids)
    return build_cover(source, g, phi)


def z2_voltage_cover(g: Graph, bits: Sequence[int] | Mapping[int, int]) -> CoverMap:
    """Double cover from a 0/1 voltage per edge index."""
    if isinstance(bits, Mapping):
        bits = [bits.get(i, 0) for i in range(len(g.edges))]
    swap, ident = (1, 0), (0, 1)
    return voltage_cover(g, {2 * i: (swap if b else ident) for i, b in enumerate(bits)}, n=2)


def regular_representation(elements: Sequence, mul: Callable) -> dict:
    """Right-regular action: ``rep[x][i]`` is the index of ``elements[i] * x``."""
    index = {g: i for i, g in enumerate(elements)}
    return {x: tuple(index[mul(g, x)] for g in elements) for x in elements}


def monodromy_group(perms: Sequence[Sequence[int]]) -> set:
    perms = [tuple(p) for p in perms]
    if not perms:
        return set()
    n = len(perms[0])
    ident = tuple(range(n))
    group = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for p in perms:
                b = tuple(p[x] for x in a)
                if b not in group:
                    group.add(b)
                    nxt.append(b)
        frontier = nxt
    return group


def acts_transitively(group: set, n: int) -> bool:
    return n == 0 or {p[0] for p in group} == set(range(n))


def acts_regularly(group: set, n: int) -> bool:
    return acts_transitively(group, n) and len(group) == n


def cotree_edges(g: Graph) -> list[int]:
    tree = g.spanning_tree()
    return [i for i in range(len(g.edges)) if i not in tree]


def enumerate_permutation_covers(g: Graph, n: int, connected_only: bool = True) -> Iterator[tuple]:
    """``(assignment, cover)`` for every permutation voltage normalized to
    the identity on a fixed spanning tree.

    ``assignment`` maps cotree edge indices to permutations; iteration is
    lexicographic in the cotree edge order.
    """
    cotree = cotree_edges(g)
    perms = list(itertools.permutations(range(n)))
    for combo in itertools.product(perms, repeat=len(cotree)):
        assignment = dict(zip(cotree, combo))
        cover = voltage_cover(g, {2 * i: p for i, p in assignment.items()}, n=n)
        if connected_only and not cover.connected:
            continue
        yield assignment, cover


def enumerate_double_covers(g: Graph) -> Iterator[CoverMap]:
    """Connected double covers, one per nonzero Z2 voltage on the cotree."""
    for _, cover in enumerate_permutation_covers(g, 2, connected_only=True):
        yield cover
