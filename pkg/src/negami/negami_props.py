"""Property V, valid signs, Property E and the quotient embedding.

Given a cover ``c: G~ -> G`` and a sphere scheme on ``G~``, Property V asks
that the rotation at every cover vertex project to a power ``u^d`` of a
cyclic order ``u`` of the darts at its image, with one ``u`` per base vertex
up to reversal.  Signs record aligned (+) versus reversed (-) projections;
Property E asks that all lifts of a base edge agree on the product of their
endpoint signs.  When both hold, the base graph inherits a scheme (rotation
from plus-signed lifts, edge sign = that common product) on the sphere or
the projective plane.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

from .covering import BRANCHED, UNBRANCHED, CoverMap, classify, deck_group
from .errors import InternalConsistencyError, PreconditionError
from .graph_core import (
    EmbeddingScheme,
    _canonical_cycle,
    check_budget,
    enumerate_rotation_systems,
    euler_characteristic,
    face_structure,
    is_orientable,
    make_scheme,
    normalize_orientable,
    rotation_choices,
    sphere_rotation_systems,
    surface_id,
)

ALIGNED = "aligned"
REVERSED = "reversed"
AMBIGUOUS = "ambiguous"

S2 = "S2"
P2 = "P2"


@dataclass(frozen=True)
class PVViolation:
    vertex: object
    base_vertex: object
    word: tuple
    reason: str

    def describe(self) -> str:
        return (f"Property V fails at {self.vertex!r} over {self.base_vertex!r} "
                f"({self.reason}); projected rotation {list(self.word)}")


@dataclass(frozen=True)
class InducedOrder:
    """Induced cyclic orders on the base and per-preimage orientation flags.

    ``orders[v]`` is the reference cyclic order (target darts, smallest
    first) taken from ``reference[v]``, the first preimage of ``v``.
    """

    orders: dict
    reference: dict
    flags: dict
    violation: PVViolation | None = None

    @property
    def holds(self) -> bool:
        return self.violation is None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class SignAssignment:
    sign: dict
    ambiguous_vertices: frozenset = frozenset()


@dataclass(frozen=True)
class EdgeViolation:
    base_edge: object
    first: tuple
    second: tuple

    def describe(self) -> str:
        return (f"Property E fails over edge {self.base_edge!r}: lift {self.first[0]!r} has "
                f"endpoint sign product {self.first[1]:+d}, lift {self.second[0]!r} has "
                f"{self.second[1]:+d}")


def _require_cover(c: CoverMap):
    cls = classify(c)
    if cls.kind not in (UNBRANCHED, BRANCHED):
        raise PreconditionError(f"{cls.kind} covers are not supported")
    return cls


def _sphere_normalized(c: CoverMap, s: EmbeddingScheme) -> EmbeddingScheme:
    if s.graph != c.source:
        raise PreconditionError("scheme is not on the source graph of the cover")
    if not is_orientable(s) or euler_characteristic(s) != 2:
        raise PreconditionError("source scheme is not a sphere embedding")
    return s if s.all_positive else normalize_orientable(s)


def _power_root(word: tuple, k: int) -> tuple | None:
    """``u`` if ``word == u^(len/k)`` with ``u`` of ``k`` distinct entries."""
    if k == 0 or len(word) % k:
        return None
    u = word[:k]
    if len(set(u)) != k:
        return None
    for i, x in enumerate(word):
        if x != u[i % k]:
            return None
    return u


def _is_self_reverse(cyc: tuple) -> bool:
    return _canonical_cycle(list(reversed(cyc))) == cyc


def _projected(c: CoverMap, s: EmbeddingScheme, u) -> tuple:
    return tuple(c.dart_map[d] for d in s.rotation_at(u))


def _property_v(c: CoverMap, s: EmbeddingScheme, strict: bool) -> InducedOrder:
    tgt = c.target
    orders, reference, flags = {}, {}, {}

    def fail(u, v, word, reason):
        named = tuple(tgt.dart_id(x) for x in word)
        return InducedOrder(orders, reference, flags, PVViolation(u, v, named, reason))

    for v in tgt.vertices:
        k = tgt.degree(v)
        ref = None
        for u in c.vertex_fiber(v):
            word = _projected(c, s, u)
            root = _power_root(word, k)
            if root is None:
                return fail(u, v, word, "rotation is not a power of one cyclic order")
            cyc = _canonical_cycle(list(root))
            if ref is None:
                ref = cyc
                symmetric = _is_self_reverse(ref)
                rev = _canonical_cycle(list(reversed(ref)))
                orders[v], reference[v] = ref, u
                flags[u] = AMBIGUOUS if symmetric else ALIGNED
            elif cyc == ref:
                flags[u] = AMBIGUOUS if symmetric else ALIGNED
            elif cyc == rev:
                if strict:
                    return fail(u, v, word, "reversed order (strict reading)")
                flags[u] = REVERSED
            else:
                return fail(u, v, word, "order differs from that of another preimage")
    return InducedOrder(orders, reference, flags)


def check_property_v(c: CoverMap, s: EmbeddingScheme, strict: bool = False) -> InducedOrder:
    """Induced orders, or an :class:`InducedOrder` carrying the violation.

    With ``strict=True`` a preimage inducing the reversed order is itself a
    violation (the literal reading of condition (2)).
    """
    _require_cover(c)
    return _property_v(c, _sphere_normalized(c, s), strict)


def assign_signs(c: CoverMap, s: EmbeddingScheme, induced: InducedOrder | None = None,
                 base_choice: dict | None = None) -> SignAssignment:
    """Valid signs: each fiber's reference preimage gets ``base_choice[v]``
    (default +1); the others follow their aligned/reversed flags.

    Preimages of a base vertex whose order equals its own reversal are
    listed as ambiguous and provisionally given the base sign.
    """
    if induced is None:
        induced = check_property_v(c, s)
    if not induced.holds:
        raise PreconditionError(induced.violation.describe())
    base_choice = base_choice or {}
    sign, ambiguous = {}, set()
    for v in c.target.vertices:
        b = base_choice.get(v, 1)
        for u in c.vertex_fiber(v):
            flag = induced.flags[u]
            sign[u] = -b if flag == REVERSED else b
            if flag == AMBIGUOUS:
                ambiguous.add(u)
    return SignAssignment(sign, frozenset(ambiguous))


def signs_are_valid(c: CoverMap, induced: InducedOrder, signs: SignAssignment) -> bool:
    """Same sign as the fiber reference iff aligned (ambiguous vertices are free)."""
    for v in c.target.vertices:
        ref = induced.reference.get(v)
        for u in c.vertex_fiber(v):
            flag = induced.flags[u]
            if flag == AMBIGUOUS:
                continue
            same = signs.sign[u] == signs.sign[ref]
            if same != (flag == ALIGNED):
                return False
    return True


def _edge_products(c: CoverMap, signs: SignAssignment, i: int) -> list:
    src = c.source
    sign = signs.sign
    return [(d >> 1, sign[src.ends[d]] * sign[src.ends[d ^ 1]]) for d in c.dart_fiber(2 * i)]


def check_property_e(c: CoverMap, signs: SignAssignment) -> EdgeViolation | None:
    """None when every base edge's lifts agree on endpoint-sign products."""
    src, tgt = c.source, c.target
    for i in range(len(tgt.edges)):
        prods = _edge_products(c, signs, i)
        for j, p in prods[1:]:
            if p != prods[0][1]:
                return EdgeViolation(tgt.edges[i], (src.edges[prods[0][0]], prods[0][1]),
                                     (src.edges[j], p))
    return None


def _free_ambiguous(c: CoverMap, induced: InducedOrder) -> list:
    """Ambiguous vertices other than their fiber's reference, in source order."""
    refs = set(induced.reference.values())
    return [u for u in c.source.vertices
            if induced.flags.get(u) == AMBIGUOUS and u not in refs]


def iter_property_e_solutions(c: CoverMap, s: EmbeddingScheme, induced: InducedOrder | None = None,
                              budget: int | None = None) -> Iterator[SignAssignment]:
    """Every resolution of ambiguous signs satisfying Property E.

    The fiber references keep sign +1: flipping a whole fiber never changes
    the Property E verdict, so it is not searched.
    """
    if induced is None:
        induced = check_property_v(c, s)
    base = assign_signs(c, s, induced)
    free = _free_ambiguous(c, induced)
    check_budget(2 ** len(free), budget, "ambiguous sign resolutions")
    for bits in itertools.product((1, -1), repeat=len(free)):
        sign = dict(base.sign)
        sign.update(zip(free, bits))
        candidate = SignAssignment(sign, base.ambiguous_vertices)
        if check_property_e(c, candidate) is None:
            yield candidate


def search_property_e(c: CoverMap, s: EmbeddingScheme, strict: bool = False,
                      budget: int | None = None) -> SignAssignment | None:
    """First satisfying sign assignment, or None if none exists."""
    induced = check_property_v(c, s, strict)
    if not induced.holds:
        raise PreconditionError(induced.violation.describe())
    return next(iter_property_e_solutions(c, s, induced, budget), None)


def surface_from_signs(c: CoverMap, signs: SignAssignment) -> str:
    """``P2`` iff some fiber carries both signs; then every fiber must."""
    mixed = [v for v in c.target.vertices
             if len({signs.sign[u] for u in c.vertex_fiber(v)}) == 2]
    if mixed and len(mixed) != sum(1 for v in c.target.vertices if c.vertex_fiber(v)):
        clean = next(v for v in c.target.vertices if v not in mixed)
        raise InternalConsistencyError(
            f"fiber over {mixed[0]!r} is mixed but the fiber over {clean!r} is not")
    return P2 if mixed else S2


@dataclass(frozen=True)
class QuotientReport:
    """Induced embedding of the base graph with branched-cover bookkeeping.

    ``windings[j]`` is the multiplicity with which source face ``j`` wraps
    quotient face ``face_map[j]``.
    """

    scheme: EmbeddingScheme
    surface: object
    sign_verdict: str
    degree: int
    windings: tuple
    face_map: tuple
    local_degrees: dict
    signs: SignAssignment
    euler_identity: bool

    @property
    def branched_face_count(self) -> int:
        return sum(1 for k in self.windings if k > 1)


def quotient_embedding(c: CoverMap, s: EmbeddingScheme, signs: SignAssignment,
                       induced: InducedOrder | None = None) -> QuotientReport:
    cls = _require_cover(c)
    s = _sphere_normalized(c, s)
    if induced is None:
        induced = _property_v(c, s, strict=False)
    if not induced.holds:
        raise PreconditionError(induced.violation.describe())
    if not signs_are_valid(c, induced, signs):
        raise PreconditionError("sign assignment is not valid for this scheme")
    bad = check_property_e(c, signs)
    if bad is not None:
        raise PreconditionError(bad.describe())
    src, tgt = c.source, c.target
    n = cls.degree

    rotation = {}
    for v in tgt.vertices:
        fiber = c.vertex_fiber(v)
        plus = [u for u in fiber if signs.sign[u] > 0]
        rep = plus[0] if plus else fiber[0]
        root = list(_power_root(_projected(c, s, rep), tgt.degree(v)))
        rotation[v] = root if plus else root[::-1]
    signature = []
    for i in range(len(tgt.edges)):
        signature.append(_edge_products(c, signs, i)[0][1])
    q = make_scheme(tgt, rotation, signature)
    surface = surface_id(q)
    verdict = surface_from_signs(c, signs)

    fs_src = face_structure(s)
    fs_q = face_structure(q)
    eps = signs.sign
    windings, face_map = [], []
    for j in range(len(fs_src.faces)):
        orbit = fs_src.orbits[fs_src.faces[j]]
        image = [(c.dart_map[d], t * eps[src.ends[d]]) for d, t in orbit]
        qi = fs_q.orbit_index(*image[0])
        q_orbit = fs_q.orbits[qi]
        if len(orbit) % len(q_orbit):
            raise InternalConsistencyError(f"source face {j} does not wrap a quotient face")
        start = q_orbit.index(image[0])
        for m, sd in enumerate(image):
            if q_orbit[(start + m) % len(q_orbit)] != sd:
                raise InternalConsistencyError(
                    f"projection of source face {j} leaves quotient face {fs_q.face_of_orbit[qi]}")
        windings.append(len(orbit) // len(q_orbit))
        face_map.append(fs_q.face_of_orbit[qi])

    sums = Counter()
    for k, f in zip(windings, face_map):
        sums[f] += k
    for f in range(len(fs_q.faces)):
        if sums[f] != n:
            raise InternalConsistencyError(
                f"windings over quotient face {f} sum to {sums[f]}, expected {n}")
    vertex_defect = sum(d - 1 for d in cls.local_degree.values())
    face_defect = sum(k - 1 for k in windings)
    identity = 2 == n * surface.euler_characteristic - vertex_defect - face_defect
    if not identity:
        raise InternalConsistencyError(
            f"Euler identity fails: 2 != {n}*{surface.euler_characteristic} - "
            f"{vertex_defect} - {face_defect}")
    if surface.euler_characteristic not in (1, 2) or surface.orientable != (
            surface.euler_characteristic == 2):
        raise InternalConsistencyError(f"quotient surface {surface.name} is neither S2 nor P2")
    if (verdict == S2) != surface.orientable:
        raise InternalConsistencyError(
            f"sign verdict {verdict} disagrees with quotient surface {surface.name}")
    local = {u: d for u, d in cls.local_degree.items() if d > 1}
    return QuotientReport(q, surface, verdict, n, tuple(windings), tuple(face_map),
                          local, signs, identity)


# ---------------------------------------------------------------------------
# Searches over embeddings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PEVCheck:
    holds: bool
    induced: InducedOrder | None = None
    signs: SignAssignment | None = None
    violation: object = None

    def __bool__(self) -> bool:
        return self.holds


def check_pev(c: CoverMap, s: EmbeddingScheme, strict: bool = False,
              budget: int | None = None) -> PEVCheck:
    """Property V, then the first satisfying sign resolution for Property E."""
    induced = check_property_v(c, s, strict)
    if not induced.holds:
        return PEVCheck(False, induced, None, induced.violation)
    signs = next(iter_property_e_solutions(c, s, induced, budget), None)
    if signs is None:
        provisional = assign_signs(c, s, induced)
        return PEVCheck(False, induced, None, check_property_e(c, provisional))
    return PEVCheck(True, induced, signs)


def _local_pv_choices(c: CoverMap) -> list:
    """Per-vertex rotations passing the local power condition, in order."""
    out = []
    for u in c.source.vertices:
        k = c.target.degree(c.vertex_map[u])
        out.append([rot for rot in rotation_choices(c.source, u)
                    if _power_root(tuple(c.dart_map[d] for d in rot), k) is not None])
    return out


@dataclass(frozen=True)
class EmbeddingSearch:
    """Outcome of an exhaustive search over sphere embeddings of a source."""

    found: bool
    scheme: EmbeddingScheme | None
    signs: SignAssignment | None
    rotation_systems: int
    locally_admissible: int
    sphere_schemes_checked: int
    failures: dict

    def __bool__(self) -> bool:
        return self.found


def check_pev_any_embedding(c: CoverMap, strict: bool = False,
                            budget: int | None = None) -> EmbeddingSearch:
    """First sphere scheme (enumeration order) with Property V and E.

    Rotations failing the local power condition at some vertex are skipped
    before face tracing; since that condition is per-vertex this keeps the
    enumeration order of the survivors.
    """
    _require_cover(c)
    src = c.source
    choices = _local_pv_choices(c)
    total = math.prod(len(rotation_choices(src, u)) for u in src.vertices)
    admissible = math.prod(len(ch) for ch in choices)
    failures = Counter()
    if admissible < total:
        failures["local power condition"] = total - admissible
    checked = 0
    for scheme in sphere_rotation_systems(src, budget, choices):
        checked += 1
        induced = _property_v(c, scheme, strict)
        if not induced.holds:
            failures["property V"] += 1
            continue
        signs = next(iter_property_e_solutions(c, scheme, induced, budget), None)
        if signs is None:
            failures["property E"] += 1
            continue
        return EmbeddingSearch(True, scheme, signs, total, admissible, checked, dict(failures))
    return EmbeddingSearch(False, None, None, total, admissible, checked, dict(failures))


def _extends(s: EmbeddingScheme, gamma: tuple) -> int:
    """+1 if ``gamma`` carries rotations to rotations, -1 if to their
    inverses, 0 otherwise."""
    sigma, inv = s.sigma, s.sigma_inv
    if all(sigma[gamma[d]] == gamma[sigma[d]] for d in range(len(gamma))):
        return 1
    if all(inv[gamma[d]] == gamma[sigma[d]] for d in range(len(gamma))):
        return -1
    return 0


@dataclass(frozen=True)
class EquivariantEmbedding:
    scheme: EmbeddingScheme
    orientation: tuple
    signs: SignAssignment


def equivariant_embedding_search(c: CoverMap, budget: int | None = None) -> EquivariantEmbedding | None:
    """First sphere scheme on which every deck transformation acts by a
    rotation-preserving or rotation-reversing dart map.

    The result is checked to satisfy Property V and E.  Only rotations that
    pass the local power condition are enumerated: an equivariant scheme of
    a regular cover always does.
    """
    _require_cover(c)
    dg = deck_group(c, budget)
    if not dg.regular:
        raise PreconditionError(f"cover is not regular (witness {dg.witness})")
    for scheme in sphere_rotation_systems(c.source, budget, _local_pv_choices(c)):
        orient = tuple(_extends(scheme, g) for g in dg.elements)
        if 0 in orient:
            continue
        induced = _property_v(c, scheme, strict=False)
        if not induced.holds:
            raise InternalConsistencyError(
                f"equivariant scheme fails Property V: {induced.violation.describe()}")
        signs = next(iter_property_e_solutions(c, scheme, induced, budget), None)
        if signs is None:
            raise InternalConsistencyError("equivariant scheme fails Property E")
        return EquivariantEmbedding(scheme, orient, signs)
    return None


# ---------------------------------------------------------------------------
# Pullbacks along unbranched covers
# ---------------------------------------------------------------------------

def pullback_scheme(c: CoverMap, base: EmbeddingScheme) -> EmbeddingScheme:
    """Lift a base scheme along an unbranched cover."""
    if classify(c).kind != UNBRANCHED:
        raise PreconditionError("pullback needs an unbranched cover")
    if base.graph != c.target:
        raise PreconditionError("scheme is not on the target graph of the cover")
    src = c.source
    rotation = []
    for u in src.vertices:
        over = {c.dart_map[d]: d for d in src.darts_at(u)}
        first = src.darts_at(u)[0]
        cyc = [first]
        x = base.sigma[c.dart_map[first]]
        while over[x] != first:
            cyc.append(over[x])
            x = base.sigma[x]
        rotation.append(cyc)
    signature = [base.signature[c.dart_map[2 * i] >> 1] for i in range(len(src.edges))]
    return make_scheme(src, rotation, signature)


def base_scheme_classes(g, budget: int | None = None) -> Iterator[EmbeddingScheme]:
    """One scheme per vertex-flip class: every rotation system times every
    signature that is positive on a fixed spanning tree."""
    from .covering import cotree_edges

    cotree = cotree_edges(g)
    check_budget(2 ** len(cotree) * _rotation_total(g), budget, "base schemes")
    for rot in enumerate_rotation_systems(g, budget):
        for bits in itertools.product((1, -1), repeat=len(cotree)):
            sig = [1] * len(g.edges)
            for i, b in zip(cotree, bits):
                sig[i] = b
            yield make_scheme(g, rot.rotation, sig)


def _rotation_total(g) -> int:
    from .graph_core import rotation_system_count
    return rotation_system_count(g)


def pullback_survey(c: CoverMap, budget: int | None = None) -> dict:
    """Quotient surfaces reachable by sphere embeddings with Property V and E.

    For an unbranched cover those embeddings are exactly the sphere
    pullbacks of base schemes (up to vertex flips).  Returns a dict from
    ``S2``/``P2`` to the base schemes realising it, plus ``"P2-lift"``: base
    schemes on P2 whose pullback is itself a projective-plane scheme.
    """
    out = {S2: [], P2: [], "P2-lift": []}
    for base in base_scheme_classes(c.target, budget):
        pb = pullback_scheme(c, base)
        chi = euler_characteristic(pb)
        if chi == 2:
            out[S2 if is_orientable(base) else P2].append(base)
        elif chi == 1 and euler_characteristic(base) == 1:
            out["P2-lift"].append(base)
    return out
