"""Orientation double covers, factoring through them, and the lift pipeline.

The orientation double cover of a scheme places two sheets over each
vertex, one carrying the rotation and one its inverse; a negative edge
joins opposite sheets.  For a projective-plane scheme this is the sphere
double covering it, and any sphere cover with a projective-plane quotient
factors through it via its signs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .covering import UNBRANCHED, CoverMap, build_cover, classify, compose
from .errors import InternalConsistencyError, PreconditionError
from .graph_core import (
    EmbeddingScheme,
    Graph,
    _require_connected,
    build_graph,
    euler_characteristic,
    isomorphisms,
    make_scheme,
    normalize_orientable,
)
from .negami_props import (
    P2,
    S2,
    QuotientReport,
    SignAssignment,
    _property_v,
    _sphere_normalized,
    check_pev_any_embedding,
    check_property_e,
    check_property_v,
    iter_property_e_solutions,
    quotient_embedding,
    signs_are_valid,
)

SHEETS = (1, -1)


@dataclass(frozen=True)
class OrientationDoubleCover:
    lifted_graph: Graph
    lifted_scheme: EmbeddingScheme
    projection: CoverMap
    base_signature: tuple = ()

    @property
    def connected(self) -> bool:
        return self.lifted_graph.is_connected()

    def lift_dart(self, x: int, sheet: int) -> int:
        """The lift of base dart ``x`` whose start lies on ``sheet``."""
        return _lift_dart(self.projection.target, self.base_signature, x, sheet)


def _lift_dart(g: Graph, signature, x: int, sheet: int) -> int:
    i = x >> 1
    if x & 1:
        # a head dart on sheet eps belongs to the lifted edge starting on eps * lambda
        edge_sheet = sheet * signature[i]
    else:
        edge_sheet = sheet
    return 2 * (2 * i + (edge_sheet < 0)) + (x & 1)


def orientation_double_cover(s: EmbeddingScheme) -> OrientationDoubleCover:
    """Two-sheeted orientable lift of ``s``; connected iff ``s`` is not orientable."""
    g = s.graph
    _require_connected(g)
    if not g.edges:
        raise PreconditionError("graph has no edges to lift")
    vertices = [(v, e) for v in g.vertices for e in SHEETS]
    pairs, ids = [], []
    for i in range(len(g.edges)):
        u, w = g.edge_ends(i)
        for e in SHEETS:
            pairs.append(((u, e), (w, e * s.signature[i])))
            ids.append((g.edges[i], e))
    lifted = build_graph(vertices, pairs, edge_ids=ids)
    rotation = {}
    for v in g.vertices:
        rot = s.rotation_at(v)
        rotation[(v, 1)] = [_lift_dart(g, s.signature, x, 1) for x in rot]
        rotation[(v, -1)] = [_lift_dart(g, s.signature, x, -1) for x in reversed(rot)]
    scheme = make_scheme(lifted, rotation)
    proj = build_cover(lifted, g, [2 * (d >> 2) + (d & 1) for d in lifted.darts])
    odc = OrientationDoubleCover(lifted, scheme, proj, tuple(s.signature))
    if classify(proj).kind != UNBRANCHED or proj.degree != 2:
        raise InternalConsistencyError("orientation double cover is not an unbranched double cover")
    if odc.connected:
        chi = euler_characteristic(scheme)
        if chi != 2 * euler_characteristic(s):
            raise InternalConsistencyError(f"lifted Euler characteristic {chi} is not doubled")
    return odc


def lifted_euler_characteristic(odc: OrientationDoubleCover) -> int:
    """Euler characteristic of the lift, summed over its components."""
    from .graph_core import face_structure

    g = odc.lifted_graph
    return len(g.vertices) - len(g.edges) + len(face_structure(odc.lifted_scheme).faces)


def factor_through_universal(c: CoverMap, s: EmbeddingScheme, q: QuotientReport) -> CoverMap:
    """Cover ``g^`` from the source of ``c`` to the lift of the quotient,
    sending a vertex to the sheet named by its sign; ``projection o g^ = c``.
    """
    if q.sign_verdict != P2:
        raise PreconditionError("quotient is the sphere: nothing to factor")
    if q.signs is None:
        raise PreconditionError("quotient report carries no sign assignment")
    if q.scheme.graph != c.target:
        raise PreconditionError("quotient scheme is not on the target of the cover")
    _sphere_normalized(c, s)
    odc = orientation_double_cover(q.scheme)
    src = c.source
    sign = q.signs.sign
    try:
        dart_map = [_lift_dart(c.target, q.scheme.signature, c.dart_map[d], sign[src.ends[d]])
                    for d in src.darts]
    except KeyError as exc:
        raise PreconditionError(f"sign data missing for vertex {exc.args[0]!r}") from None
    g_hat = build_cover(src, odc.lifted_graph, dart_map)
    if compose(odc.projection, g_hat).dart_map != c.dart_map:
        raise InternalConsistencyError("projection after the factor map differs from the cover")
    return g_hat


def cover_isomorphism(c1: CoverMap, c2: CoverMap, budget: int | None = None) -> tuple | None:
    """Dart bijection between the sources commuting with both cover maps."""
    if c1.target != c2.target:
        return None
    return next(isomorphisms(c1.source, c2.source, c1.dart_map, c2.dart_map, budget), None)


def _flip_witness(s1: EmbeddingScheme, s2: EmbeddingScheme, phi) -> dict | None:
    g1, g2 = s1.graph, s2.graph
    choices = []
    for v in g1.vertices:
        image = [phi[d] for d in s1.rotation_at(v)]
        target = s2.rotation_at(g2.ends[phi[g1.darts_at(v)[0]]]) if image else ()
        opts = []
        for eta, word in ((1, image), (-1, image[::-1])):
            if _same_cycle(word, target):
                opts.append(eta)
        if not opts:
            return None
        choices.append(opts)
    for combo in itertools.product(*choices):
        eta = dict(zip(g1.vertices, combo))
        if all(s2.signature[phi[2 * i] >> 1] == eta[g1.ends[2 * i]] * eta[g1.ends[2 * i + 1]]
               * s1.signature[i] for i in range(len(g1.edges))):
            return eta
    return None


def _same_cycle(a, b) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    try:
        k = list(b).index(a[0])
    except ValueError:
        return False
    return all(b[(k + i) % len(b)] == x for i, x in enumerate(a))


def scheme_isomorphism(s1: EmbeddingScheme, s2: EmbeddingScheme, labels1=None, labels2=None,
                       budget: int | None = None) -> tuple | None:
    """``(dart_map, flips)`` carrying ``s1`` to ``s2`` up to vertex flips."""
    for phi in isomorphisms(s1.graph, s2.graph, labels1, labels2, budget):
        eta = _flip_witness(s1, s2, phi)
        if eta is not None:
            return phi, eta
    return None


# ---------------------------------------------------------------------------
# Higher covers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Case1:
    """The middle graph is planar and ``f`` itself fulfils Property V and E."""

    scheme: EmbeddingScheme
    signs: SignAssignment
    quotient: QuotientReport
    notable: bool = False

    case = 1


@dataclass(frozen=True)
class Case2:
    """The middle graph embeds in the projective plane; its orientation
    double cover, composed with ``f``, fulfils Property V and E."""

    middle_scheme: EmbeddingScheme
    lift: OrientationDoubleCover
    lifted_cover: CoverMap
    signs: SignAssignment
    quotient: QuotientReport

    case = 2

    @property
    def scheme(self) -> EmbeddingScheme:
        return self.lift.lifted_scheme


def necessity_pipeline(f: CoverMap, f_tilde: CoverMap, s: EmbeddingScheme,
                       budget: int | None = None) -> Case1 | Case2:
    """Push Property V and E down from ``f o f_tilde`` to ``f`` or to the lift
    of a projective-plane embedding of the middle graph."""
    if classify(f).kind != UNBRANCHED:
        raise PreconditionError("f must be an unbranched cover")
    for g in (f.source, f.target, f_tilde.source):
        if not g.is_connected():
            raise PreconditionError("all graphs in the pipeline must be connected")
    comp = compose(f, f_tilde)
    induced = check_property_v(comp, s)
    if not induced.holds:
        raise PreconditionError(f"composition: {induced.violation.describe()}")
    signs = next(iter_property_e_solutions(comp, s, induced, budget), None)
    if signs is None:
        raise PreconditionError("composition fails Property E")

    # Property V and E pass from the composition to f_tilde with the same signs.
    s_norm = _sphere_normalized(f_tilde, s)
    induced_t = _property_v(f_tilde, s_norm, strict=False)
    if not induced_t.holds:
        raise InternalConsistencyError(f"inner cover: {induced_t.violation.describe()}")
    if not signs_are_valid(f_tilde, induced_t, signs) or check_property_e(f_tilde, signs):
        raise InternalConsistencyError("composition signs do not satisfy the inner cover")
    q_mid = quotient_embedding(f_tilde, s, signs, induced_t)
    mid = q_mid.scheme

    if q_mid.sign_verdict == S2:
        mid_sphere = normalize_orientable(mid)
        induced_f = check_property_v(f, mid_sphere)
        sol = (next(iter_property_e_solutions(f, mid_sphere, induced_f, budget), None)
               if induced_f.holds else None)
        if sol is not None:
            return Case1(mid_sphere, sol, quotient_embedding(f, mid_sphere, sol, induced_f))
        fallback = check_pev_any_embedding(f, budget=budget)
        if not fallback.found:
            raise InternalConsistencyError("middle graph is planar but f fails Property V and E")
        return Case1(fallback.scheme, fallback.signs,
                     quotient_embedding(f, fallback.scheme, fallback.signs), notable=True)

    odc = orientation_double_cover(mid)
    lifted_cover = compose(f, odc.projection)
    induced_l = check_property_v(lifted_cover, odc.lifted_scheme)
    if not induced_l.holds:
        raise InternalConsistencyError(f"lifted cover: {induced_l.violation.describe()}")
    sol = next(iter_property_e_solutions(lifted_cover, odc.lifted_scheme, induced_l, budget), None)
    if sol is None:
        raise InternalConsistencyError("lifted cover fails Property E")
    q = quotient_embedding(lifted_cover, odc.lifted_scheme, sol, induced_l)
    return Case2(mid, odc, lifted_cover, sol, q)


def verify_case(f: CoverMap, result: Case1 | Case2) -> bool:
    """Re-check a pipeline certificate from scratch."""
    cover = f if result.case == 1 else result.lifted_cover
    scheme = result.scheme
    induced = check_property_v(cover, scheme)
    if not induced.holds or not signs_are_valid(cover, induced, result.signs):
        return False
    if check_property_e(cover, result.signs) is not None:
        return False
    q = quotient_embedding(cover, scheme, result.signs, induced)
    return q.sign_verdict == result.quotient.sign_verdict

