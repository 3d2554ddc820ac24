"""Face rotations, z-monodromy and its seven possible shapes.

The six oriented edges of a face are addressed locally as ``2 * s + d``
(side ``s`` walked forward when ``d == 0``), so ``-e`` is ``e ^ 1``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import permutations

from zzatlas.errors import InvariantViolation, MixedFaceTypes, NoTemplateMatch
from zzatlas.orientation import TYPE_I, ZOrientation, classify
from zzatlas.zigzag import all_zigzags, directed_edge, encode

TYPES = ("M1", "M2", "M3", "M4", "M5", "M6", "M7")
LOCAL = tuple(range(6))


def neg(e):
    return e ^ 1


def d_local(e):
    s, d = e >> 1, e & 1
    return 2 * ((s + 1 + d) % 3) + d


def D_F(smap=None, face=None):
    """The rotation ``xy -> yz`` as a tuple indexed by local oriented edge.

    It does not depend on the face; the arguments exist for symmetry with
    :func:`z_monodromy`.
    """
    return tuple(d_local(e) for e in LOCAL)


def _inverse(perm):
    out = [0] * len(perm)
    for i, j in enumerate(perm):
        out[j] = i
    return tuple(out)


def d_cycles():
    """The two 3-cycles of ``D_F``: forward sides and backward sides."""
    out = []
    for start in (0, 1):
        cyc = [start]
        while len(cyc) < 3:
            cyc.append(d_local(cyc[-1]))
        out.append(tuple(cyc))
    return out


def _from_cycles(*cycles):
    perm = list(LOCAL)
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            perm[a] = b
    return tuple(perm)


def _templates(e1, e2, e3):
    n1, n2, n3 = neg(e1), neg(e2), neg(e3)
    return {
        "M3": _from_cycles((n1, e2, e3), (n3, n2, e1)),
        "M4": _from_cycles((e1, n2), (e2, n1)),
        "M6": _from_cycles((n1, e3, e2), (n2, n3, e1)),
        "M7": _from_cycles((e1, e2), (n1, n2)),
    }


def _witnesses():
    out = []
    for cyc in d_cycles():
        for r in range(3):
            out.append(cyc[r:] + cyc[:r])
    return out


def template_matches(perm):
    """All ``(type, witness)`` pairs whose template equals ``perm``."""
    perm = tuple(perm)
    found = []
    d = D_F()
    if perm == LOCAL:
        found.append(("M1", None))
    if perm == d:
        found.append(("M2", None))
    if perm == _inverse(d):
        found.append(("M5", None))
    for w in _witnesses():
        for name, tmpl in _templates(*w).items():
            if tmpl == perm:
                found.append((name, w))
    return found


def template_overlaps():
    """Permutations of the six local edges matched by two different types.

    Every permutation is tried; an empty result means the seven shapes are
    pairwise disjoint.
    """
    bad = []
    for perm in permutations(LOCAL):
        kinds = {name for name, _ in template_matches(perm)}
        if len(kinds) > 1:
            bad.append((perm, sorted(kinds)))
    return bad


@dataclass(frozen=True)
class MonodromyRecord:
    """``perm[e]`` is the image of local oriented edge ``e`` of ``face``."""

    face: int
    perm: tuple
    mtype: str | None = None
    witness: tuple | None = None

    def to_dict(self, smap):
        def name(e):
            return list(local_name(smap, self.face, e))

        return {
            "face": self.face,
            "type": self.mtype,
            "witness": None if self.witness is None else [name(e) for e in self.witness],
            "perm": {"->".join(name(e)): name(self.perm[e]) for e in LOCAL},
        }


def local_name(smap, face, e):
    t, h = smap.edge_name(*directed_edge(smap, encode(face, e >> 1, e & 1)))
    return t, h


def z_monodromy(smap, face):
    """Compute ``M_F`` for ``face``.

    For each local ``e`` the zigzag walking ``D_F^-1(e)`` and then ``e``
    inside ``face`` is followed from just after that occurrence of ``e``
    until the next directed edge belonging to ``face``.
    """
    zs = all_zigzags(smap)
    omega = {}
    for e in LOCAL:
        de = directed_edge(smap, encode(face, e >> 1, e & 1))
        if de in omega:
            raise InvariantViolation(f"face {face} carries edge {de[0]} on two sides")
        omega[de] = e
    dinv = _inverse(D_F())
    perm = [None] * 6
    for e in LOCAL:
        e0 = dinv[e]
        seed = encode(face, e0 >> 1, e0 & 1)
        p, canonical = zs.pair_of_state(seed)
        z = zs.pairs[p][0 if canonical else 1]
        n = len(z.states)
        pos = zs.state_position[seed]
        # z.edges[pos + 1] is e itself, seen from the neighbouring face
        for i in range(2, n + 2):
            hit = omega.get(z.edges[(pos + i) % n])
            if hit is not None:
                perm[e] = hit
                break
    return tuple(perm)


def classify_monodromy(record_or_perm):
    """Return ``(type, witness)``; raises :class:`NoTemplateMatch` if none fits."""
    perm = getattr(record_or_perm, "perm", record_or_perm)
    found = template_matches(perm)
    if not found:
        raise NoTemplateMatch(f"permutation {perm} matches no monodromy shape")
    return found[0]


def monodromy_record(smap, face):
    perm = z_monodromy(smap, face)
    mtype, witness = classify_monodromy(perm)
    return MonodromyRecord(face, perm, mtype, witness)


def all_monodromies(smap):
    records = smap._cache.get("monodromy")
    if records is None:
        records = [monodromy_record(smap, f) for f in range(smap.n_faces)]
        smap._cache["monodromy"] = records
    return records


def histogram(records):
    return dict(sorted(Counter(r.mtype for r in records).items()))


def _is_forest(nodes, edges):
    parent = {v: v for v in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def monodromy_subgraphs(smap):
    """Subgraphs ``G_i`` of the dual graph spanned by faces of type ``Mi``.

    Dual edges are counted with multiplicity, so two faces sharing two
    edges already form a cycle.
    """
    types = [r.mtype for r in all_monodromies(smap)]
    out = {}
    for t in TYPES:
        nodes = [f for f, x in enumerate(types) if x == t]
        members = set(nodes)
        edges = []
        for a, b in smap.edge_sides:
            fa, fb = a // 3, b // 3
            if fa in members and fb in members:
                edges.append((fa, fb))
        out[t] = {"faces": nodes, "edges": edges, "forest": _is_forest(nodes, edges)}
    return out


def subgraph_dot(name, sub):
    lines = [f"graph {name} {{"]
    for f in sub["faces"]:
        lines.append(f"  f{f};")
    for a, b in sub["edges"]:
        lines.append(f"  f{a} -- f{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _lemma2(smap, tau, face, cls):
    zs = all_zigzags(smap)
    if not isinstance(tau, ZOrientation):
        tau = ZOrientation.from_index(int(tau), zs.k)
    passes = []
    for r in range(6):
        x = 6 * face + r
        p, canonical = zs.pair_of_state(x)
        if tau.bits[p] == (0 if canonical else 1):
            s = r >> 1
            passes.append((p, frozenset((s, (s + 1 + (r & 1)) % 3))))
    if len(passes) != 3:
        raise InvariantViolation(f"face {face} is passed {len(passes)} times, expected 3")
    pairs = Counter(p for p, _ in passes)
    if len(pairs) != 2:
        return None
    twice = next(p for p, c in pairs.items() if c == 2)
    sides = [pair for p, pair in passes if p == twice]
    common = set(sides[0] & sides[1])
    if len(common) != 1:
        return {"twice_edge": None, "pair": twice}
    side = common.pop()
    e = smap.side_edge[3 * face + side]
    z = zs.pairs[twice][tau.bits[twice]]
    count = sum(1 for x, _ in z.edges if x == e)
    etype = cls.edge_type[e]
    return {
        "pair": twice,
        "twice_edge": e,
        "occurrences": count,
        "type": "I" if etype == TYPE_I else "II",
        "predicted": "M6" if etype == TYPE_I else "M7",
    }


def lemma2_analysis(smap, tau, face):
    """Twice-passed edge of ``face`` when exactly two selected zigzags meet it.

    Returns ``None`` when the face is met by one or three zigzags.
    """
    cls = classify(smap, tau)
    if not cls.all_faces_type_I:
        raise MixedFaceTypes("the analysis assumes every face is of type I")
    return _lemma2(smap, tau, face, cls)


def lemma2_unchecked(smap, tau, face):
    """Same as :func:`lemma2_analysis` without the face-type precondition."""
    return _lemma2(smap, tau, face, classify(smap, tau))
