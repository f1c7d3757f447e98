"""Named graphs, reconstructed example covers and the cover sweep harness.

Every cover here is either built from an explicit recipe or found by a
deterministic search; each entry carries a certificate that
:meth:`CorpusEntry.verify` rechecks from scratch.
"""
from __future__ import annotations

import itertools
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .covering import (
    UNBRANCHED,
    CoverMap,
    build_cover,
    classify,
    compose,
    deck_group,
    enumerate_permutation_covers,
    voltage_cover,
    z2_voltage_cover,
)
from .errors import BudgetExceeded, CoverError, default_budget
from .graph_core import (
    EmbeddingScheme,
    Graph,
    build_graph,
    euler_characteristic,
    is_planar,
    make_scheme,
    rotation_system_count,
    validate_assumptions,
)
from .lifting import orientation_double_cover
from .negami_props import (
    P2,
    S2,
    _local_pv_choices,
    _property_v,
    check_pev_any_embedding,
    check_property_e,
    check_property_v,
    iter_property_e_solutions,
    pullback_scheme,
    pullback_survey,
    quotient_embedding,
)
from .graph_core import sphere_rotation_systems

# ---------------------------------------------------------------------------
# Graph generators
# ---------------------------------------------------------------------------


def complete_graph(names) -> Graph:
    names = list(names)
    pairs = list(itertools.combinations(names, 2))
    return build_graph(names, pairs, edge_ids=[f"{u}{w}" for u, w in pairs])


def k4() -> Graph:
    """K4 on ``a, b, c, d``; edge ``"ab"`` runs from ``a`` to ``b``."""
    return complete_graph("abcd")


def q3() -> Graph:
    """The cube on 3-bit strings."""
    verts = ["".join(bits) for bits in itertools.product("01", repeat=3)]
    pairs = [(u, w) for u, w in itertools.combinations(verts, 2)
             if sum(x != y for x, y in zip(u, w)) == 1]
    return build_graph(verts, pairs, edge_ids=[f"{u}-{w}" for u, w in pairs])


def bouquet(k: int = 2) -> Graph:
    """One vertex with ``k`` loops (violates the no-loop assumption)."""
    return build_graph(["v"], [("v", "v")] * k, edge_ids=[f"l{i}" for i in range(k)])


def c_n(n: int) -> Graph:
    if n < 1:
        raise ValueError("cycle length must be positive")
    return build_graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def k1222() -> Graph:
    """Complete multipartite graph with parts of sizes 1, 2, 2, 2."""
    parts = [["a"], ["b1", "b2"], ["c1", "c2"], ["d1", "d2"]]
    verts = [v for p in parts for v in p]
    pairs = [(u, w) for (i, p), (j, q) in itertools.combinations(enumerate(parts), 2)
             for u in p for w in q]
    return build_graph(verts, pairs, edge_ids=[f"{u}{w}" for u, w in pairs])


def cover_from_vertex_map(source: Graph, target: Graph, vertex_map: dict) -> CoverMap:
    """Cover of a simple target determined by where vertices go."""
    lookup = {}
    for x in target.darts:
        key = (target.ends[x], target.ends[x ^ 1])
        if key in lookup:
            raise CoverError("target has parallel edges; vertex images do not fix the darts")
        lookup[key] = x
    phi = []
    for d in source.darts:
        key = (vertex_map[source.ends[d]], vertex_map[source.ends[d ^ 1]])
        if key not in lookup:
            raise CoverError(f"no target edge between {key[0]!r} and {key[1]!r}", d)
        phi.append(lookup[key])
    return build_cover(source, target, phi)


def _labelled_cover(edges, vertex_map, target) -> CoverMap:
    verts = list(dict.fromkeys(v for e in edges for v in e))
    g = build_graph(verts, edges, edge_ids=[f"{u}-{w}" for u, w in edges])
    return cover_from_vertex_map(g, target, vertex_map)


def antipodal_cover() -> CoverMap:
    """Q3 over K4 with every edge carrying the nontrivial Z2 voltage."""
    return z2_voltage_cover(k4(), [1] * 6)


def slit_double_cover_k4() -> CoverMap:
    """Two copies of K4 glued at their ``d`` vertex: a branched double cover
    whose branch vertex has local degree 2."""
    edges = []
    for k in (0, 1):
        a, b, c = f"a{k}", f"b{k}", f"c{k}"
        edges += [(a, b), (a, c), (b, c), (a, "D"), (b, "D"), (c, "D")]
    vmap = {"D": "d"} | {f"{x}{k}": x for x in "abc" for k in (0, 1)}
    return _labelled_cover(edges, vmap, k4())


def slit_sphere_scheme(c: CoverMap, mirror_one_block: bool = False) -> EmbeddingScheme:
    """Planar scheme of the slit cover; optionally with one block reflected
    so that the two preimage blocks wind in opposite senses."""
    g = c.source
    rot = {}

    def dart(u, w):
        for d in g.darts_at(u):
            if g.ends[d ^ 1] == w:
                return d
        raise KeyError((u, w))

    for k in (0, 1):
        a, b, cc = f"a{k}", f"b{k}", f"c{k}"
        rev = mirror_one_block and k == 1
        for v, nbrs in ((a, [b, cc, "D"]), (b, [cc, a, "D"]), (cc, [a, b, "D"])):
            order = [dart(v, w) for w in nbrs]
            rot[v] = order[::-1] if rev else order
    block0 = [dart("D", x) for x in ("a0", "c0", "b0")]
    block1 = [dart("D", x) for x in ("a1", "c1", "b1")]
    if mirror_one_block:
        block1 = block1[::-1]
    rot["D"] = block0 + block1
    return make_scheme(g, rot)


def scrambled_k4_cover() -> CoverMap:
    """A 3-connected branched triple cover of K4 whose only sphere embedding
    (up to reflection) projects the rotation at its branch vertex to
    ``b c a b a c``, which is not a power of a cyclic order."""
    ring = ["r0", "r1", "r2", "r3", "x1", "r4", "y1", "r5", "z1"]
    edges = [("T", f"r{i}") for i in range(6)]
    edges += [(ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring))]
    edges += [("D", "x1"), ("D", "y1"), ("D", "z1")]
    labels = dict(zip(["r0", "r1", "r2", "r3", "r4", "r5"], "bcabac"))
    vmap = {"T": "d", "D": "d", "x1": "c", "y1": "b", "z1": "a"} | labels
    return _labelled_cover(edges, vmap, k4())


def weak_cover_c3() -> CoverMap:
    """Locally onto but not uniformly d-to-1 over the triangle."""
    edges = [("A", "B1"), ("A", "B2"), ("A", "C1"), ("B1", "C1"),
             ("B2", "C2"), ("C2", "A2"), ("A2", "B2")]
    vmap = {"A": "a", "A2": "a", "B1": "b", "B2": "b", "C1": "c", "C2": "c"}
    return _labelled_cover(edges, vmap, build_graph("abc", [("a", "b"), ("b", "c"), ("c", "a")],
                                                    edge_ids=["ab", "bc", "ca"]))


def path_over_c3() -> CoverMap:
    """A path wrapped around the triangle: its ends miss neighbors."""
    edges = [("x1", "x2"), ("x2", "x3"), ("x3", "x4")]
    vmap = {"x1": "a", "x2": "b", "x3": "c", "x4": "a"}
    return _labelled_cover(edges, vmap, build_graph("abc", [("a", "b"), ("b", "c"), ("c", "a")],
                                                    edge_ids=["ab", "bc", "ca"]))


GENERATORS = {
    "k4": k4,
    "q3": q3,
    "bouquet": bouquet,
    "k1222": k1222,
    "c3": lambda: c_n(3),
    "c4": lambda: c_n(4),
}


# ---------------------------------------------------------------------------
# Entries
# ---------------------------------------------------------------------------

@dataclass
class CorpusEntry:
    name: str
    provenance: str
    graph: Graph | None = None
    cover: CoverMap | None = None
    scheme: EmbeddingScheme | None = None
    signs: object = None
    quotient: object = None
    assumption_flags: tuple = ()
    extras: dict = field(default_factory=dict)

    def verify(self) -> bool:
        """Rebuild the graph or cover and recheck any certificate."""
        if self.graph is not None:
            g = self.graph
            build_graph(g.vertices, [g.edge_ends(i) for i in range(len(g.edges))], g.edges)
        if self.cover is not None:
            c = self.cover
            build_cover(c.source, c.target, c.dart_map)
            if self.scheme is not None and self.signs is not None:
                induced = check_property_v(c, self.scheme)
                if not induced.holds or check_property_e(c, self.signs) is not None:
                    return False
                q = quotient_embedding(c, self.scheme, self.signs, induced)
                if self.quotient is not None and q.sign_verdict != self.quotient.sign_verdict:
                    return False
        check = self.extras.get("verify")
        return check(self) if check else True


def graph_entries() -> list[CorpusEntry]:
    out = []
    for name, make in GENERATORS.items():
        g = make()
        report = validate_assumptions(g)
        flags = tuple(report.reasons())
        out.append(CorpusEntry(name, "explicit construction", graph=g,
                               assumption_flags=("assumption-violating",) + flags if flags else ()))
    return out


def first_pev_by_surface(c: CoverMap, budget: int | None = None) -> dict:
    """First (scheme, signs, quotient) per quotient surface over all sphere
    schemes of the source, in enumeration order."""
    found = {}
    for scheme in sphere_rotation_systems(c.source, budget, _local_pv_choices(c)):
        induced = _property_v(c, scheme, strict=False)
        if not induced.holds:
            continue
        for signs in iter_property_e_solutions(c, scheme, induced, budget):
            q = quotient_embedding(c, scheme, signs, induced)
            if q.sign_verdict not in found:
                found[q.sign_verdict] = (scheme, signs, q)
        if len(found) == 2:
            break
    return found


def irregular_bouquet_cover(budget: int | None = None) -> CorpusEntry:
    """First connected triple cover of the bouquet (lexicographic S3
    voltages) with a trivial deck group that admits Property V and E."""
    g = bouquet(2)
    for assignment, cover in enumerate_permutation_covers(g, 3):
        if deck_group(cover, budget).order != 1:
            continue
        hit = check_pev_any_embedding(cover, budget=budget)
        if hit.found:
            q = quotient_embedding(cover, hit.scheme, hit.signs)
            return CorpusEntry(
                "bouquet-irregular-triple",
                "S3 voltage search over the bouquet of two loops: first connected cover "
                "with trivial deck group and a sphere scheme satisfying Property V and E",
                cover=cover, scheme=hit.scheme, signs=hit.signs, quotient=q,
                assumption_flags=("assumption-violating",),
                extras={"voltages": {g.edges[i]: p for i, p in assignment.items()}})
    raise LookupError("no irregular triple cover of the bouquet satisfies Property V and E")


def k4_double_cover_entries(budget: int | None = None) -> list[CorpusEntry]:
    """Sphere- and projective-plane-yielding double covers of K4.

    The projective witness is the antipodal cover; the sphere witness is the
    first planar double cover (voltage order) with a sphere quotient.
    """
    sphere = None
    for assignment, cover in enumerate_permutation_covers(k4(), 2):
        if not is_planar(cover.source):
            continue
        found = first_pev_by_surface(cover, budget)
        if S2 in found:
            scheme, signs, q = found[S2]
            sphere = CorpusEntry(
                "k4-double-sphere",
                "first planar double cover of K4 (Z2 voltages on the cotree) "
                "with a sphere quotient",
                cover=cover, scheme=scheme, signs=signs, quotient=q,
                extras={"voltages": {k4().edges[i]: p for i, p in assignment.items()}})
            break
    anti = antipodal_cover()
    found = first_pev_by_surface(anti, budget)
    scheme, signs, q = found[P2]
    proj = CorpusEntry("k4-double-projective",
                       "antipodal double cover Q3 -> K4 (all-ones Z2 voltage)",
                       cover=anti, scheme=scheme, signs=signs, quotient=q,
                       extras={"surfaces": sorted(found)})
    return [e for e in (sphere, proj) if e is not None]


@dataclass(frozen=True)
class LiftWitness:
    """A planar cover with no Property V and E sphere scheme whose source
    has a projective-plane scheme lifting to a sphere cover that has them."""

    cover: CoverMap
    base_scheme: EmbeddingScheme
    middle_scheme: EmbeddingScheme
    lifted_cover: CoverMap
    lifted_scheme: EmbeddingScheme
    signs: object
    quotient: object
    searched: int


def search_lift_witness(max_degree: int = 3, budget: int | None = None) -> LiftWitness | dict:
    """Search unbranched covers of K4 of degree 2..max_degree.

    A match is a cover whose source is planar, none of whose sphere schemes
    has Property V and E (certified by brute force), and some base
    projective-plane scheme pulls back to a projective-plane scheme of the
    source.  Returns a summary dict when nothing matches.
    """
    base = k4()
    searched = 0
    for n in range(2, max_degree + 1):
        for _, cover in enumerate_permutation_covers(base, n):
            searched += 1
            if not is_planar(cover.source):
                continue
            survey = pullback_survey(cover, budget)
            if survey[S2] or survey[P2] or not survey["P2-lift"]:
                continue
            if check_pev_any_embedding(cover, budget=budget).found:
                raise AssertionError("pullback survey and brute force disagree")
            base_scheme = survey["P2-lift"][0]
            middle = pullback_scheme(cover, base_scheme)
            odc = orientation_double_cover(middle)
            lifted = compose(cover, odc.projection)
            induced = check_property_v(lifted, odc.lifted_scheme)
            signs = next(iter_property_e_solutions(lifted, odc.lifted_scheme, induced, budget))
            q = quotient_embedding(lifted, odc.lifted_scheme, signs, induced)
            return LiftWitness(cover, base_scheme, middle, lifted, odc.lifted_scheme,
                               signs, q, searched)
    return {"found": False, "covers_searched": searched, "max_degree": max_degree}


def lift_witness_entry(budget: int | None = None) -> CorpusEntry | None:
    w = search_lift_witness(3, budget)
    if isinstance(w, dict):
        return None

    def verify(entry):
        lw = entry.extras["witness"]
        if check_pev_any_embedding(lw.cover, budget=budget).found:
            return False
        if euler_characteristic(lw.middle_scheme) != 1:
            return False
        induced = check_property_v(lw.lifted_cover, lw.lifted_scheme)
        return induced.holds and check_property_e(lw.lifted_cover, lw.signs) is None

    n = w.cover.degree
    return CorpusEntry(
        "k4-needs-lift",
        f"first unbranched degree-{n} cover of K4 (permutation voltages, degree 2 upward) "
        "with planar source, no sphere scheme satisfying Property V and E, and a "
        "projective-plane scheme on the source whose orientation double cover does",
        cover=w.cover, extras={"witness": w, "verify": verify})


def branched_entries() -> list[CorpusEntry]:
    """Hand-built branched, weak and invalid examples over K4 and C3."""
    slit = slit_double_cover_k4()
    s = slit_sphere_scheme(slit)
    induced = check_property_v(slit, s)
    signs = next(iter_property_e_solutions(slit, s, induced))
    q = quotient_embedding(slit, s, signs, induced)
    out = [
        CorpusEntry("k4-slit-double", "two K4 blocks sharing the vertex over d",
                    cover=slit, scheme=s, signs=signs, quotient=q),
        CorpusEntry("k4-slit-double-mirrored",
                    "slit cover with one block reflected: preimage orders clash at the branch vertex",
                    cover=slit, scheme=slit_sphere_scheme(slit, True)),
        CorpusEntry("k4-scrambled-triple",
                    "3-connected branched triple cover with a non-power rotation at its branch vertex",
                    cover=scrambled_k4_cover()),
        CorpusEntry("c3-weak", "locally onto, not uniformly d-to-1", cover=weak_cover_c3()),
        CorpusEntry("c3-path", "path wrapped over the triangle", cover=path_over_c3()),
    ]
    return out


def derived_examples(budget: int | None = None) -> list[CorpusEntry]:
    """Reconstructed examples, each with a checkable certificate."""
    entries = [irregular_bouquet_cover(budget)]
    entries += k4_double_cover_entries(budget)
    lift = lift_witness_entry(budget)
    if lift is not None:
        entries.append(lift)
    return entries


# ---------------------------------------------------------------------------
# Sweep harness
# ---------------------------------------------------------------------------

@dataclass
class HarnessReport:
    rows: list
    cursor: int
    complete: bool
    path: str | None = None


def _voltage_record(g: Graph, assignment: dict) -> dict:
    return {str(g.edges[i]): list(p) for i, p in sorted(assignment.items())}


def _sweep_row(g: Graph, index: int, n: int, assignment: dict, cover: CoverMap,
               budget: int) -> dict:
    row = {
        "index": index,
        "degree": n,
        "voltages": _voltage_record(g, assignment),
        "vertices": len(cover.source.vertices),
        "edges": len(cover.source.edges),
        "planar": is_planar(cover.source),
    }
    if not row["planar"]:
        row["embedding_sweep"] = "not planar"
        return row
    surfaces = set()
    if classify(cover).kind == UNBRANCHED:
        base_total = rotation_system_count(g) * 2 ** max(g.cycle_rank(), 0)
        if base_total <= budget:
            survey = pullback_survey(cover, budget)
            surfaces = {k for k in (S2, P2) if survey[k]}
            row["pullback_quotients"] = sorted(surfaces)
    total = math.prod(len(ch) for ch in _local_pv_choices(cover))
    if total > budget:
        row["embedding_sweep"] = "out of budget"
        row["sweep_estimate"] = total
        return row
    hit = check_pev_any_embedding(cover, budget=budget)
    row["embedding_sweep"] = "complete"
    row["sphere_schemes_checked"] = hit.sphere_schemes_checked
    row["pev"] = hit.found
    if hit.found:
        row["first_quotient"] = quotient_embedding(cover, hit.scheme, hit.signs).sign_verdict
    if "pullback_quotients" in row and bool(surfaces) != hit.found:
        raise AssertionError(f"pullback and brute force disagree on cover {index}")
    return row


def iter_assignments(g: Graph, max_degree: int) -> Iterator[tuple]:
    """``(index, degree, assignment, cover)`` over connected covers, indexed
    over all voltage assignments so the cursor is stable."""
    index = 0
    for n in range(2, max_degree + 1):
        for assignment, cover in enumerate_permutation_covers(g, n, connected_only=False):
            if cover.connected:
                yield index, n, assignment, cover
            index += 1


def conjecture_harness(g: Graph, max_degree: int = 2, budget: int | None = None,
                       path: str | os.PathLike | None = None, resume: int = 0,
                       limit: int | None = None) -> HarnessReport:
    """Sweep connected permutation-voltage covers of ``g`` up to ``max_degree``.

    Each row records planarity and, within ``budget``, which quotient
    surfaces Property V and E sphere schemes reach.  Rows are appended to
    ``path`` as JSON lines; ``resume`` skips assignments before that index
    and ``limit`` caps the rows processed in this run.
    """
    budget = default_budget() if budget is None else budget
    rows = []
    cursor = resume
    complete = True
    fh = open(path, "a", encoding="utf-8") if path is not None else None
    try:
        for index, n, assignment, cover in iter_assignments(g, max_degree):
            if index < resume:
                continue
            if limit is not None and len(rows) >= limit:
                complete = False
                break
            try:
                row = _sweep_row(g, index, n, assignment, cover, budget)
            except BudgetExceeded as exc:
                row = {"index": index, "degree": n, "voltages": _voltage_record(g, assignment),
                       "embedding_sweep": "out of budget", "sweep_estimate": exc.estimate}
            rows.append(row)
            cursor = index + 1
            if fh is not None:
                fh.write(json.dumps(row, sort_keys=True) + "\n")
                fh.flush()
    finally:
        if fh is not None:
            fh.close()
    return HarnessReport(rows, cursor, complete, str(path) if path is not None else None)


def load_results(path: str | os.PathLike) -> list[dict]:
    rows = [json.loads(line) for line in Path(path).read_text().splitlines() if line.strip()]
    return sorted({r["index"]: r for r in rows}.values(), key=lambda r: r["index"])
