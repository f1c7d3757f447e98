"""Dart-based multigraphs, embedding schemes, face tracing and surfaces.

Darts are integers.  Edge number ``i`` owns darts ``2*i`` (at its first
endpoint) and ``2*i + 1`` (at its second endpoint), so the reversal
involution is ``d ^ 1`` and the edge of a dart is ``d >> 1``.  Vertex and
edge *ids* are arbitrary hashables chosen by the caller; all iteration
orders follow declaration order, which keeps every enumeration
reproducible.

An embedding scheme is a rotation (cyclic order of the darts at each
vertex) together with a sign per edge.  Faces are traced on signed darts
``(d, s)`` with the step

    Phi(d, s) = (sigma^{s'}(theta(d)), s'),   s' = s * signature(edge(d))

and every face appears as two Phi-orbits exchanged by the mirror involution
``(d, s) -> (theta(d), -s * signature(edge(d)))``.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import BudgetExceeded, GraphError, PreconditionError, default_budget


def reversal(d: int) -> int:
    return d ^ 1


def edge_index(d: int) -> int:
    return d >> 1


@dataclass(frozen=True)
class Graph:
    """Finite multigraph with loops, stored dart-wise.

    ``ends[d]`` is the vertex id at which dart ``d`` sits.
    """

    vertices: tuple
    edges: tuple
    ends: tuple

    @cached_property
    def vertex_position(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def edge_position(self) -> dict:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def _darts_at(self) -> dict:
        table = {v: [] for v in self.vertices}
        for d, v in enumerate(self.ends):
            table[v].append(d)
        return {v: tuple(ds) for v, ds in table.items()}

    @property
    def num_darts(self) -> int:
        return len(self.ends)

    @property
    def darts(self) -> range:
        return range(len(self.ends))

    def endpoint(self, d: int) -> Hashable:
        return self.ends[d]

    def edge_id(self, d: int) -> Hashable:
        return self.edges[d >> 1]

    def dart_id(self, d: int) -> tuple:
        """Public name of a dart: ``(edge id, end index)``."""
        return (self.edges[d >> 1], d & 1)

    def dart_from_id(self, edge_id: Hashable, end: int) -> int:
        try:
            return 2 * self.edge_position[edge_id] + end
        except KeyError:
            raise GraphError(f"unknown edge id {edge_id!r}") from None

    def edge_ends(self, i: int) -> tuple:
        return self.ends[2 * i], self.ends[2 * i + 1]

    def darts_at(self, v: Hashable) -> tuple:
        try:
            return self._darts_at[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def degree(self, v: Hashable) -> int:
        return len(self.darts_at(v))

    def is_loop(self, i: int) -> bool:
        return self.ends[2 * i] == self.ends[2 * i + 1]

    def neighbors(self, v: Hashable) -> list:
        return [self.ends[d ^ 1] for d in self.darts_at(v)]

    def components(self) -> list[list]:
        seen = set()
        comps = []
        for root in self.vertices:
            if root in seen:
                continue
            seen.add(root)
            comp = [root]
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for d in self._darts_at[u]:
                    w = self.ends[d ^ 1]
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def cycle_rank(self) -> int:
        return len(self.edges) - len(self.vertices) + len(self.components())

    def spanning_tree(self) -> set[int]:
        """Edge indices of a BFS spanning forest (deterministic)."""
        tree = set()
        seen = set()
        for root in self.vertices:
            if root in seen:
                continue
            seen.add(root)
            queue = deque([root])
            while queue:
                u = queue.popleft()
                for d in self._darts_at[u]:
                    w = self.ends[d ^ 1]
                    if w not in seen:
                        seen.add(w)
                        tree.add(d >> 1)
                        queue.append(w)
        return tree

    def relabel(self, vertex_map: Mapping, edge_map: Mapping | None = None) -> Graph:
        """Rename vertices (and optionally edges); dart numbering is kept."""
        edges = self.edges if edge_map is None else tuple(edge_map[e] for e in self.edges)
        return build_graph(
            [vertex_map[v] for v in self.vertices],
            [(vertex_map[a], vertex_map[b]) for a, b in
             (self.edge_ends(i) for i in range(len(self.edges)))],
            edge_ids=edges,
        )


def build_graph(vertex_ids: Iterable, edge_endpoint_pairs: Iterable,
                edge_ids: Sequence | None = None) -> Graph:
    """Build a :class:`Graph`; edge ids default to ``0, 1, ...``."""
    vertices = tuple(vertex_ids)
    if len(set(vertices)) != len(vertices):
        dup = next(v for v in vertices if vertices.count(v) > 1)
        raise GraphError(f"duplicate vertex id {dup!r}")
    pairs = [tuple(p) for p in edge_endpoint_pairs]
    if edge_ids is None:
        edges = tuple(range(len(pairs)))
    else:
        edges = tuple(edge_ids)
        if len(edges) != len(pairs):
            raise GraphError("edge_ids and edge_endpoint_pairs differ in length")
        if len(set(edges)) != len(edges):
            dup = next(e for e in edges if edges.count(e) > 1)
            raise GraphError(f"duplicate edge id {dup!r}")
    known = set(vertices)
    ends = []
    for eid, pair in zip(edges, pairs):
        if len(pair) != 2:
            raise GraphError(f"edge {eid!r} must have exactly two endpoints")
        for v in pair:
            if v not in known:
                raise GraphError(f"edge {eid!r} has dangling endpoint {v!r}")
        ends.extend(pair)
    return Graph(vertices, edges, tuple(ends))


@dataclass(frozen=True)
class AssumptionReport:
    connected: bool
    loops: tuple
    parallel_edges: tuple

    @property
    def passed(self) -> bool:
        return self.connected and not self.loops and not self.parallel_edges

    def reasons(self) -> list[str]:
        out = []
        if not self.connected:
            out.append("disconnected")
        if self.loops:
            out.append("loops present")
        if self.parallel_edges:
            out.append("parallel edges present")
        return out


def validate_assumptions(g: Graph) -> AssumptionReport:
    """Connected, loop-free and without parallel edges."""
    loops = tuple(g.edges[i] for i in range(len(g.edges)) if g.is_loop(i))
    first_by_pair = {}
    parallel = []
    for i in range(len(g.edges)):
        if g.is_loop(i):
            continue
        key = frozenset(g.edge_ends(i))
        if key in first_by_pair:
            parallel.append((g.edges[first_by_pair[key]], g.edges[i]))
        else:
            first_by_pair[key] = i
    return AssumptionReport(g.is_connected(), loops, tuple(parallel))


# ---------------------------------------------------------------------------
# Embedding schemes
# ---------------------------------------------------------------------------

def _canonical_cycle(seq: Sequence[int]) -> tuple:
    if not seq:
        return ()
    k = seq.index(min(seq))
    return tuple(seq[k:]) + tuple(seq[:k])


@dataclass(frozen=True)
class EmbeddingScheme:
    """Rotation system plus edge signature.

    ``rotation[i]`` is the cyclic dart order at ``graph.vertices[i]``,
    stored starting from its smallest dart.  ``signature[i]`` is the sign of
    edge number ``i``.
    """

    graph: Graph
    rotation: tuple
    signature: tuple

    @classmethod
    def _trusted(cls, graph, rotation, signature):
        obj = object.__new__(cls)
        object.__setattr__(obj, "graph", graph)
        object.__setattr__(obj, "rotation", rotation)
        object.__setattr__(obj, "signature", signature)
        return obj

    @cached_property
    def sigma(self) -> list[int]:
        nxt = [0] * self.graph.num_darts
        for cyc in self.rotation:
            for k, d in enumerate(cyc):
                nxt[d] = cyc[(k + 1) % len(cyc)]
        return nxt

    @cached_property
    def sigma_inv(self) -> list[int]:
        prv = [0] * self.graph.num_darts
        for d, e in enumerate(self.sigma):
            prv[e] = d
        return prv

    def rotation_at(self, v) -> tuple:
        return self.rotation[self.graph.vertex_position[v]]

    @property
    def all_positive(self) -> bool:
        return all(x == 1 for x in self.signature)


def make_scheme(graph: Graph, rotation: Mapping | Sequence,
                signature: Mapping | Sequence | None = None) -> EmbeddingScheme:
    """Validate and build a scheme.

    ``rotation`` maps vertex ids to dart sequences (or is a sequence in
    vertex order); ``signature`` maps edge ids to +-1 (or is a sequence in
    edge order) and defaults to all positive.
    """
    if isinstance(rotation, Mapping):
        unknown = set(rotation) - set(graph.vertices)
        if unknown:
            raise GraphError(f"rotation given for unknown vertices {sorted(map(repr, unknown))}")
        rows = [rotation.get(v, ()) for v in graph.vertices]
    else:
        rows = list(rotation)
        if len(rows) != len(graph.vertices):
            raise GraphError("rotation must list one cycle per vertex")
    cycles = []
    for v, row in zip(graph.vertices, rows):
        row = list(row)
        if sorted(row) != sorted(graph.darts_at(v)) or len(set(row)) != len(row):
            raise GraphError(f"rotation at {v!r} must permute exactly the darts at {v!r}")
        cycles.append(_canonical_cycle(row))
    m = len(graph.edges)
    if signature is None:
        sig = (1,) * m
    elif isinstance(signature, Mapping):
        unknown = set(signature) - set(graph.edges)
        if unknown:
            raise GraphError(f"signature given for unknown edges {sorted(map(repr, unknown))}")
        sig = tuple(signature.get(e, 1) for e in graph.edges)
    else:
        sig = tuple(signature)
        if len(sig) != m:
            raise GraphError("signature must list one sign per edge")
    if any(x not in (1, -1) for x in sig):
        raise GraphError("edge signs must be +1 or -1")
    return EmbeddingScheme._trusted(graph, tuple(cycles), tuple(sig))


def _trace_orbits(sigma, sigma_inv, signature):
    """Phi-orbits on signed darts; key of (d, s) is ``2*d + (s < 0)``."""
    nd = len(sigma)
    orbit_of = [-1] * (2 * nd)
    orbits = []
    # positive signed darts first, so all-positive schemes report sigma*theta orbits
    for key0 in itertools.chain(range(0, 2 * nd, 2), range(1, 2 * nd, 2)):
        if orbit_of[key0] >= 0:
            continue
        idx = len(orbits)
        orbit = []
        d, s = key0 >> 1, (-1 if key0 & 1 else 1)
        while orbit_of[2 * d + (s < 0)] < 0:
            orbit_of[2 * d + (s < 0)] = idx
            orbit.append((d, s))
            r = d ^ 1
            s = s * signature[d >> 1]
            d = sigma[r] if s > 0 else sigma_inv[r]
        orbits.append(orbit)
    return orbits, orbit_of


def mirror_signed_dart(d: int, s: int, signature) -> tuple:
    return d ^ 1, -s * signature[d >> 1]


@dataclass(frozen=True)
class FaceStructure:
    """Phi-orbits of a scheme with their mirror pairing.

    ``faces[j]`` is the index of the orbit reported for face ``j``;
    ``face_of_orbit[i]`` is the face containing orbit ``i``.
    """

    orbits: list
    orbit_of: list
    mirror: list
    faces: list
    face_of_orbit: list

    def walk(self, j: int) -> tuple:
        return tuple(d for d, _ in self.orbits[self.faces[j]])

    def orbit_index(self, d: int, s: int) -> int:
        return self.orbit_of[2 * d + (s < 0)]


def face_structure(s: EmbeddingScheme) -> FaceStructure:
    orbits, orbit_of = _trace_orbits(s.sigma, s.sigma_inv, s.signature)
    mirror = []
    for i, orbit in enumerate(orbits):
        d, t = mirror_signed_dart(*orbit[0], s.signature)
        j = orbit_of[2 * d + (t < 0)]
        if j == i:
            raise AssertionError(f"Phi-orbit {i} is its own mirror")
        mirror.append(j)
    faces = []
    face_of_orbit = [-1] * len(orbits)
    for i in range(len(orbits)):
        if face_of_orbit[i] < 0:
            face_of_orbit[i] = face_of_orbit[mirror[i]] = len(faces)
            faces.append(i)
    return FaceStructure(orbits, orbit_of, mirror, faces, face_of_orbit)


def faces(s: EmbeddingScheme) -> list[tuple]:
    """Face boundary walks (as dart sequences), one per face.

    An edgeless one-vertex graph has a single face with an empty walk.
    """
    if not s.graph.edges:
        return [()] if s.graph.vertices else []
    fs = face_structure(s)
    return [fs.walk(j) for j in range(len(fs.faces))]


def _orientable_face_count(sigma) -> int:
    """Number of orbits of ``d -> sigma[d ^ 1]`` (faces of an all-positive scheme)."""
    n = len(sigma)
    seen = bytearray(n)
    count = 0
    for d0 in range(n):
        if seen[d0]:
            continue
        count += 1
        d = d0
        while not seen[d]:
            seen[d] = 1
            d = sigma[d ^ 1]
    return count


def _require_connected(g: Graph) -> None:
    if not g.vertices:
        raise GraphError("empty graph")
    if not g.is_connected():
        raise PreconditionError("graph is disconnected")


def euler_characteristic(s: EmbeddingScheme) -> int:
    g = s.graph
    _require_connected(g)
    return len(g.vertices) - len(g.edges) + len(faces(s))


def vertex_orientation(s: EmbeddingScheme) -> dict | None:
    """A local orientation ``eta`` with signature(e) = eta(u)*eta(v), or None.

    Loops must be positive.  Decided by spanning-forest propagation.
    """
    g = s.graph
    eta = {}
    for root in g.vertices:
        if root in eta:
            continue
        eta[root] = 1
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for d in g.darts_at(u):
                w = g.ends[d ^ 1]
                want = eta[u] * s.signature[d >> 1]
                if w not in eta:
                    eta[w] = want
                    queue.append(w)
                elif eta[w] != want:
                    return None
    return eta


def is_orientable(s: EmbeddingScheme) -> bool:
    return vertex_orientation(s) is not None


@dataclass(frozen=True)
class SurfaceId:
    euler_characteristic: int
    orientable: bool

    def __post_init__(self):
        chi = self.euler_characteristic
        if chi > 2 or (self.orientable and chi % 2):
            raise ValueError(f"no closed surface with chi={chi}, orientable={self.orientable}")
        if not self.orientable and chi > 1:
            raise ValueError(f"no closed non-orientable surface with chi={chi}")

    @property
    def genus(self) -> int:
        """Orientable genus, or crosscap number for non-orientable surfaces."""
        return (2 - self.euler_characteristic) // (2 if self.orientable else 1)

    @property
    def name(self) -> str:
        g = self.genus
        if self.orientable:
            return {0: "sphere", 1: "torus"}.get(g, f"genus-{g}")
        return {1: "projective plane", 2: "Klein bottle"}.get(g, f"crosscap-{g}")

    def describe(self) -> str:
        if self.orientable:
            return f"genus {self.genus} ({self.name})"
        return f"crosscap {self.genus} ({self.name})"


def surface_id(s: EmbeddingScheme) -> SurfaceId:
    return SurfaceId(euler_characteristic(s), is_orientable(s))


def is_sphere_scheme(s: EmbeddingScheme) -> bool:
    return is_orientable(s) and euler_characteristic(s) == 2


def flip_vertex(s: EmbeddingScheme, v) -> EmbeddingScheme:
    """Reverse the rotation at ``v`` and toggle its non-loop edges."""
    g = s.graph
    try:
        k = g.vertex_position[v]
    except KeyError:
        raise GraphError(f"unknown vertex {v!r}") from None
    rotation = list(s.rotation)
    rotation[k] = _canonical_cycle(list(reversed(rotation[k])))
    sig = list(s.signature)
    for d in g.darts_at(v):
        if not g.is_loop(d >> 1):
            sig[d >> 1] = -sig[d >> 1]
    return EmbeddingScheme._trusted(g, tuple(rotation), tuple(sig))


def flip_vertices(s: EmbeddingScheme, vs: Iterable) -> EmbeddingScheme:
    for v in vs:
        s = flip_vertex(s, v)
    return s


def normalize_orientable(s: EmbeddingScheme) -> EmbeddingScheme:
    """Equivalent all-positive scheme; requires an orientable scheme."""
    eta = vertex_orientation(s)
    if eta is None:
        raise PreconditionError("scheme is not orientable")
    return flip_vertices(s, [v for v in s.graph.vertices if eta[v] < 0])


def mirror_scheme(s: EmbeddingScheme) -> EmbeddingScheme:
    """Reverse every rotation (the mirror embedding)."""
    return EmbeddingScheme._trusted(
        s.graph,
        tuple(_canonical_cycle(list(reversed(c))) for c in s.rotation),
        s.signature,
    )


# ---------------------------------------------------------------------------
# Enumeration and planarity
# ---------------------------------------------------------------------------

def rotation_choices(g: Graph, v) -> list[tuple]:
    """All cyclic orders at ``v`` in lexicographic order (smallest dart first)."""
    ds = sorted(g.darts_at(v))
    if not ds:
        return [()]
    first, rest = ds[0], ds[1:]
    return [(first,) + p for p in itertools.permutations(rest)]


def rotation_system_count(g: Graph) -> int:
    total = 1
    for v in g.vertices:
        total *= math.factorial(max(g.degree(v) - 1, 0))
    return total


def check_budget(count: int, budget: int | None, what: str) -> None:
    limit = default_budget() if budget is None else budget
    if count > limit:
        raise BudgetExceeded(f"{what}: {count} candidates exceed budget {limit}",
                             estimate=count, budget=limit)


def iter_rotation_tuples(choices: Sequence[Sequence[tuple]]) -> Iterator[tuple]:
    return itertools.product(*choices)


def enumerate_rotation_systems(g: Graph, budget: int | None = None) -> Iterator[EmbeddingScheme]:
    """Every rotation system of ``g`` (all-positive), each exactly once."""
    check_budget(rotation_system_count(g), budget, "rotation systems")
    choices = [rotation_choices(g, v) for v in g.vertices]
    sig = (1,) * len(g.edges)

    def gen():
        for rot in itertools.product(*choices):
            yield EmbeddingScheme._trusted(g, rot, sig)

    return gen()


def sigma_from_rotation(num_darts: int, rot: Sequence[tuple]) -> list[int]:
    nxt = [0] * num_darts
    for cyc in rot:
        k = len(cyc)
        for i, d in enumerate(cyc):
            nxt[d] = cyc[(i + 1) % k]
    return nxt


def sphere_rotation_systems(g: Graph, budget: int | None = None,
                            choices: Sequence[Sequence[tuple]] | None = None) -> Iterator[EmbeddingScheme]:
    """Rotation systems with chi = 2, in enumeration order.

    ``choices`` may restrict the per-vertex candidates (a filter that keeps
    lexicographic order); the budget applies to the restricted product.
    """
    _require_connected(g)
    if choices is None:
        choices = [rotation_choices(g, v) for v in g.vertices]
    total = math.prod(len(c) for c in choices)
    check_budget(total, budget, "rotation systems")
    target = 2 - len(g.vertices) + len(g.edges)
    nd = g.num_darts
    sig = (1,) * len(g.edges)

    def gen():
        if not g.edges:
            yield EmbeddingScheme._trusted(g, tuple(() for _ in g.vertices), sig)
            return
        for rot in itertools.product(*choices):
            if _orientable_face_count(sigma_from_rotation(nd, rot)) == target:
                yield EmbeddingScheme._trusted(g, rot, sig)

    return gen()


def planar_embed(g: Graph) -> EmbeddingScheme | None:
    """A sphere scheme for ``g``, or None when ``g`` is not planar.

    Backed by the left-right planarity test in networkx.  Every edge is
    subdivided (loops twice) so multigraphs reduce to simple graphs.
    """
    import networkx as nx

    _require_connected(g)
    if not g.edges:
        return EmbeddingScheme._trusted(g, tuple(() for _ in g.vertices), ())
    h = nx.Graph()
    pos = g.vertex_position
    h.add_nodes_from(("v", pos[v]) for v in g.vertices)
    node_dart = {}
    for i in range(len(g.edges)):
        a, b = pos[g.ends[2 * i]], pos[g.ends[2 * i + 1]]
        if a == b:
            m0, m1 = ("m", i, 0), ("m", i, 1)
            h.add_edge(("v", a), m0)
            h.add_edge(m0, m1)
            h.add_edge(m1, ("v", a))
            node_dart[(a, m0)] = 2 * i
            node_dart[(a, m1)] = 2 * i + 1
        else:
            m = ("m", i)
            h.add_edge(("v", a), m)
            h.add_edge(m, ("v", b))
            node_dart[(a, m)] = 2 * i
            node_dart[(b, m)] = 2 * i + 1
    planar, emb = nx.check_planarity(h)
    if not planar:
        return None
    rotation = []
    for k in range(len(g.vertices)):
        nbrs = list(emb.neighbors_cw_order(("v", k))) if h.degree(("v", k)) else []
        rotation.append(_canonical_cycle([node_dart[(k, m)] for m in nbrs]))
    s = EmbeddingScheme._trusted(g, tuple(rotation), (1,) * len(g.edges))
    if euler_characteristic(s) != 2:
        raise AssertionError("planar embedding conversion did not produce a sphere scheme")
    return s


def is_planar(g: Graph) -> bool:
    return planar_embed(g) is not None


# ---------------------------------------------------------------------------
# Isomorphisms and automorphisms
# ---------------------------------------------------------------------------

def _processing_order(g: Graph) -> list[int]:
    order = []
    seen = set()
    for root in g.vertices:
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for d in g.darts_at(u):
                order.append(d)
                w = g.ends[d ^ 1]
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def isomorphisms(g1: Graph, g2: Graph, labels1: Sequence | None = None,
                 labels2: Sequence | None = None, budget: int | None = None) -> Iterator[tuple]:
    """Dart bijections ``g1 -> g2`` commuting with reversal and inducing a
    vertex bijection; optional dart labels must be preserved.

    Yields tuples ``image[d]`` in lexicographic order.  ``budget`` bounds the
    number of search nodes.
    """
    if (len(g1.vertices), g1.num_darts) != (len(g2.vertices), g2.num_darts):
        return iter(())
    limit = default_budget() if budget is None else budget
    order = _processing_order(g1)
    nd = g1.num_darts
    l1 = labels1 if labels1 is not None else [None] * nd
    l2 = labels2 if labels2 is not None else [None] * nd
    deg2 = {v: len(g2.darts_at(v)) for v in g2.vertices}
    dmap = [-1] * nd
    used = [False] * nd
    vmap: dict = {}
    vused: set = set()
    counter = [0]

    def bind_vertex(u, u2, trail):
        if u in vmap:
            return vmap[u] == u2
        if u2 in vused or deg2[u2] != len(g1.darts_at(u)):
            return False
        vmap[u] = u2
        vused.add(u2)
        trail.append(u)
        return True

    def rec(i):
        counter[0] += 1
        if counter[0] > limit:
            raise BudgetExceeded(f"isomorphism search exceeded budget {limit}",
                                 estimate=None, budget=limit)
        while i < len(order) and dmap[order[i]] >= 0:
            i += 1
        if i == len(order):
            yield tuple(dmap)
            return
        d = order[i]
        u = g1.ends[d]
        if u in vmap:
            cands = g2.darts_at(vmap[u])
        else:
            cands = range(nd)
        for d2 in cands:
            if used[d2] or used[d2 ^ 1] or l1[d] != l2[d2] or l1[d ^ 1] != l2[d2 ^ 1]:
                continue
            trail = []
            ok = (bind_vertex(u, g2.ends[d2], trail)
                  and bind_vertex(g1.ends[d ^ 1], g2.ends[d2 ^ 1], trail))
            if ok:
                dmap[d], dmap[d ^ 1] = d2, d2 ^ 1
                used[d2] = used[d2 ^ 1] = True
                yield from rec(i + 1)
                dmap[d] = dmap[d ^ 1] = -1
                used[d2] = used[d2 ^ 1] = False
            for x in trail:
                vused.discard(vmap.pop(x))

    return rec(0)


def automorphisms(g: Graph, labels: Sequence | None = None,
                  budget: int | None = None) -> list[tuple]:
    """All dart-level automorphisms (optionally label-preserving)."""
    return list(isomorphisms(g, g, labels, labels, budget=budget))


def induced_vertex_map(g1: Graph, g2: Graph, dart_map: Sequence[int]) -> dict:
    vmap = {}
    for d, d2 in enumerate(dart_map):
        vmap[g1.ends[d]] = g2.ends[d2]
    for v in g1.vertices:
        if v not in vmap:
            raise GraphError(f"isolated vertex {v!r} has no dart to carry its image")
    return vmap
