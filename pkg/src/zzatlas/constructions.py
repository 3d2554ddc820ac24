"""Shredding type-II faces, the apex construction T, and its inverse.

``T`` takes a directed graph embedded with every face a directed cycle and
cones each face from a new apex.  The reverse direction rebuilds ``T`` from
the type-II digraph of a homogeneous map and checks that the result is the
same map, with an explicit face-and-corner isomorphism.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from zzatlas.errors import (
    FaceNotDirectedCycle,
    FormatError,
    HomogeneityUndefined,
    LinkError,
    NotClosed2Cell,
    NotEulerian,
    NotHomogeneous,
    NotSimpleDigraph,
    NotTypeIIFace,
    OrientationUnsatisfiable,
    InvariantViolation,
)
from zzatlas.orientation import TYPE_I, TYPE_II, ZOrientation, classify, is_homogeneous, local_bit
from zzatlas.structure import gamma_II
from zzatlas.surface import build_glued, glued_corners
from zzatlas.zigzag import all_zigzags, encode


def _fresh_name(base, taken):
    name, i = base, 0
    while name in taken:
        i += 1
        name = f"{base}_{i}"
    taken.add(name)
    return name


# ---------------------------------------------------------------------------
# orientation constraints over GF(2)


class _ParityUnionFind:
    """Union-find that tracks ``x_a xor x_root`` for equations ``x_a ^ x_b = c``."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.parity = [0] * n

    def find(self, a):
        path = []
        while self.parent[a] != a:
            path.append(a)
            a = self.parent[a]
        acc = 0
        for x in reversed(path):
            acc ^= self.parity[x]
            self.parity[x] = acc
            self.parent[x] = a
        return a

    def relate(self, a, b, c):
        """Impose ``x_a ^ x_b == c``; returns False on contradiction."""
        ra, rb = self.find(a), self.find(b)
        pa, pb = self.parity[a] if a != ra else 0, self.parity[b] if b != rb else 0
        if ra == rb:
            return (pa ^ pb) == c
        # keep the larger index as root so the least-index rule below is easy
        if ra > rb:
            ra, rb, pa, pb = rb, ra, pb, pa
        self.parent[ra] = rb
        self.parity[ra] = pa ^ pb ^ c
        return True

    def value(self, a, root_values):
        r = self.find(a)
        return (self.parity[a] if a != r else 0) ^ root_values[r]


def solve_orientation(k, equations, fixed):
    """Least-index bit vector satisfying the given parity constraints.

    ``equations`` holds ``(p, q, c)`` meaning ``bit[p] ^ bit[q] == c`` and
    ``fixed`` holds ``(p, c)`` meaning ``bit[p] == c``.  Returns ``None`` if
    the system is inconsistent.  Within each free class of linked bits the
    highest-indexed bit is set to 0, which minimises the index.
    """
    zero = k  # extra node pinned to 0; it outranks every pair index
    uf = _ParityUnionFind(k + 1)
    for p, q, c in equations:
        if not uf.relate(p, q, c):
            return None
    for p, c in fixed:
        if not uf.relate(p, zero, c):
            return None
    root_values = {uf.find(x): 0 for x in range(k + 1)}
    return ZOrientation(tuple(uf.value(p, root_values) for p in range(k)))


# ---------------------------------------------------------------------------
# shredding


@dataclass
class ShredResult:
    """A shredded map with its new orientation and the old-to-new indices.

    ``face_map[f]`` lists the faces replacing old face ``f`` (one entry for
    untouched faces) and ``edge_map[e]`` is the new id of old edge ``e``.
    ``directions_kept`` is False when old type-II edges kept their type but
    not their direction.
    """

    smap: object
    tau: ZOrientation
    face_map: dict
    edge_map: dict
    new_vertices: list = field(default_factory=list)
    directions_kept: bool = True


def _shred(smap, tau, faces):
    """Cone every face in ``faces`` from a new interior vertex."""
    faces = sorted(set(faces))
    n_old = smap.n_faces
    names = [smap.vertex_names[v] for v in smap.corner_vertex]
    taken = set(smap.vertex_names)
    extra = {}
    for f in faces:
        extra[f] = (n_old + 2 * len(extra), n_old + 2 * len(extra) + 1)
    n_new = n_old + 2 * len(faces)

    def pieces(f):
        a, b = extra[f]
        return (f, a, b)

    # old side -> new side; a cone face j keeps old side j as its side 0
    side_map = {}
    for f in range(n_old):
        for s in range(3):
            side_map[3 * f + s] = 3 * pieces(f)[s] if f in extra else 3 * f + s
    corner_names = [None] * (3 * n_new)
    new_vertices = []
    for f in range(n_old):
        if f not in extra:
            corner_names[3 * f: 3 * f + 3] = names[3 * f: 3 * f + 3]
    pairings = []
    for a, b in enumerate(smap.partner):
        if a < b:
            fa, sa = divmod(side_map[a], 3)
            fb, sb = divmod(side_map[b], 3)
            pairings.append(((fa, sa), (fb, sb), smap.flip[a]))
    for f in faces:
        apex = _fresh_name(f"F{f}", taken)
        new_vertices.append(apex)
        p = pieces(f)
        for j in range(3):
            g = p[j]
            corner_names[3 * g: 3 * g + 3] = [names[3 * f + j], names[3 * f + (j + 1) % 3], apex]
            pairings.append(((g, 1), (p[(j + 1) % 3], 2), 0))
    new = build_glued(n_new, pairings, corner_names)
    edge_map = {smap.side_edge[x]: new.side_edge[side_map[x]] for x in range(3 * n_old)}
    face_map = {f: list(pieces(f)) if f in extra else [f] for f in range(n_old)}
    return new, side_map, edge_map, face_map, new_vertices


def _shred_orientation(smap, cls, new, side_map, edge_map):
    """Solve for an orientation of ``new`` keeping every old edge's type and
    making every new spoke of type I.

    Old type-II edges are first held to their old direction.  If that system
    has no solution only their type is kept.
    """
    zs = all_zigzags(new)
    equations, fixed, loose = [], [], []
    old_edges = set(edge_map.values())
    for e_old, e_new in edge_map.items():
        (p1, b1, _), (p2, b2, _) = zs.edge_slots[e_new]
        if cls.edge_type[e_old] == TYPE_I:
            equations.append((p1, p2, 1 ^ b1 ^ b2))
        else:
            # translate the direction through a side both maps share
            side = smap.edge_sides[e_old][0]
            loc = local_bit(smap, side, cls.edge_dir[e_old])
            d = local_bit(new, side_map[side], loc)
            fixed += [(p1, d ^ b1), (p2, d ^ b2)]
            loose.append((p1, p2, b1 ^ b2))
    for e in range(new.n_edges):
        if e not in old_edges:
            (p1, b1, _), (p2, b2, _) = zs.edge_slots[e]
            equations.append((p1, p2, 1 ^ b1 ^ b2))
    tau_new = solve_orientation(zs.k, equations, fixed)
    if tau_new is not None:
        return tau_new, True
    tau_new = solve_orientation(zs.k, equations + loose, [])
    if tau_new is None:
        raise OrientationUnsatisfiable("no orientation of the shredded map keeps the old types")
    return tau_new, False


def _shred_result(smap, tau, faces):
    cls = classify(smap, tau)
    new, side_map, edge_map, face_map, new_vertices = _shred(smap, tau, faces)
    tau_new, kept = _shred_orientation(smap, cls, new, side_map, edge_map)
    new_cls = classify(new, tau_new)
    for e_old, e_new in edge_map.items():
        if new_cls.edge_type[e_new] != cls.edge_type[e_old]:
            raise OrientationUnsatisfiable(f"old edge {e_old} changed type")
    for f in faces:
        if any(new_cls.face_type[g] != TYPE_I for g in face_map[f]):
            raise OrientationUnsatisfiable(f"a piece of face {f} is not of type I")
    return ShredResult(new, tau_new, face_map, edge_map, new_vertices, kept)


def shred_face(smap, tau, face):
    """Split type-II ``face`` into three type-I faces around a new vertex."""
    cls = classify(smap, tau)
    if cls.face_type[face] != TYPE_II:
        raise NotTypeIIFace(f"face {face} is of type I")
    return _shred_result(smap, tau, [face])


def shred_to_type_I(smap, tau):
    """Shred every type-II face at once; the identity if there are none."""
    cls = classify(smap, tau)
    faces = cls.faces_of_type(TYPE_II)
    if not faces:
        if not isinstance(tau, ZOrientation):
            tau = ZOrientation.from_index(int(tau), all_zigzags(smap).k)
        return ShredResult(
            smap,
            tau,
            {f: [f] for f in range(smap.n_faces)},
            {e: e for e in range(smap.n_edges)},
        )
    return _shred_result(smap, tau, faces)


# ---------------------------------------------------------------------------
# directed embeddings and T


@dataclass
class DirectedEmbeddingSpec:
    """Arcs ``(tail, head)`` by vertex name and faces as closed walks.

    Each face is a cyclic list of ``(arc index, sense)`` with sense ``1``
    along the arc and ``-1`` against it.
    """

    arcs: list
    faces: list

    @classmethod
    def from_obj(cls, obj):
        from zzatlas.io import parse_dig

        arcs, faces = parse_dig(obj)
        return cls(arcs, faces)

    def to_obj(self):
        return {
            "arcs": [list(a) for a in self.arcs],
            "faces": [[[a, s] for a, s in face] for face in self.faces],
        }

    @classmethod
    def from_digraph(cls, graph):
        """Spec of an :class:`~zzatlas.structure.EmbeddedDigraph`."""
        names = graph.smap.vertex_names
        order = sorted(graph.arcs)
        index = {e: i for i, e in enumerate(order)}
        arcs = [(names[graph.arcs[e][0]], names[graph.arcs[e][1]]) for e in order]
        faces = []
        for walk in graph.walks:
            face = []
            for e, b, _ in walk:
                t, h = graph.smap.edge_endpoints(e)
                if b:
                    t, h = h, t
                face.append((index[e], 1 if (t, h) == graph.arcs[e] else -1))
            faces.append(face)
        return cls(arcs, faces)

    def walk_vertices(self, face):
        out = []
        for a, sense in face:
            t, h = self.arcs[a]
            out.append(t if sense == 1 else h)
        return out

    def check(self):
        """Raise unless this is a closed 2-cell embedding of a simple
        Eulerian digraph with every face a directed cycle."""
        uses = Counter(a for face in self.faces for a, _ in face)
        for a in range(len(self.arcs)):
            if uses[a] != 2:
                raise FormatError(f"arc {a} lies on {uses[a]} face sides instead of 2")
        for i, face in enumerate(self.faces):
            for (a, s), (b, r) in zip(face, face[1:] + face[:1]):
                head = self.arcs[a][1] if s == 1 else self.arcs[a][0]
                tail = self.arcs[b][0] if r == 1 else self.arcs[b][1]
                if head != tail:
                    raise FormatError(f"face {i} does not close up at arc {b}")

        pairs = Counter(frozenset(a) for a in self.arcs)
        for t, h in self.arcs:
            if t == h:
                raise NotSimpleDigraph(f"loop at {t!r}")
            if pairs[frozenset((t, h))] > 1:
                raise NotSimpleDigraph(f"parallel arcs between {t!r} and {h!r}")

        indeg = Counter(h for _, h in self.arcs)
        outdeg = Counter(t for t, _ in self.arcs)
        verts = sorted(set(indeg) | set(outdeg))
        for v in verts:
            if indeg[v] != outdeg[v]:
                raise NotEulerian(f"vertex {v!r} has in-degree {indeg[v]} and out-degree {outdeg[v]}")
        adj = {v: set() for v in verts}
        for t, h in self.arcs:
            adj[t].add(h)
            adj[h].add(t)
        seen, stack = {verts[0]}, [verts[0]]
        while stack:
            for w in adj[stack.pop()] - seen:
                seen.add(w)
                stack.append(w)
        if len(seen) != len(verts):
            raise NotEulerian("the digraph is not connected")

        for i, face in enumerate(self.faces):
            vs = self.walk_vertices(face)
            if len(set(vs)) != len(vs):
                raise NotClosed2Cell(f"face {i} passes a vertex twice")
        for i, face in enumerate(self.faces):
            if len({s for _, s in face}) != 1:
                raise FaceNotDirectedCycle(f"face {i} is not a directed cycle")

    def forward_faces(self):
        """Faces rewritten so every arc is walked along its direction."""
        out = []
        for face in self.faces:
            if face[0][1] == 1:
                out.append([a for a, _ in face])
            else:
                out.append([a for a, _ in reversed(face)])
        return out


def directed_cycle(n):
    """The directed n-cycle ``1 -> 2 -> ... -> n -> 1`` embedded in the sphere."""
    arcs = [(str(i), str(i % n + 1)) for i in range(1, n + 1)]
    walk = [(i, 1) for i in range(n)]
    return DirectedEmbeddingSpec(arcs, [list(walk), list(walk)])


@dataclass
class TResult:
    """Output of :func:`build_T`.

    ``faces[w]`` lists the triangles coning face ``w`` in walk order and
    ``apexes[w]`` names the apex of face ``w``.
    """

    smap: object
    tau: ZOrientation
    faces: list
    apexes: list


def build_T(spec):
    """Cone every face of ``spec`` from a new apex; return the map and its
    homogeneous orientation.

    Triangle ``i`` of face ``w`` is ``(v_i, v_{i+1}, apex_w)`` with the arc
    on side 0.  The orientation picks, for every such triangle, the zigzag
    that walks the arc forward and then turns into the apex.
    """
    spec.check()
    walks = spec.forward_faces()
    taken = {x for a in spec.arcs for x in a}
    apexes = [_fresh_name(f"F{w}", taken) for w in range(len(walks))]
    tri_of = []
    corner_names = []
    arc_sides = {}
    for w, walk in enumerate(walks):
        start = len(corner_names) // 3
        tri_of.append(list(range(start, start + len(walk))))
        for i, a in enumerate(walk):
            t, h = spec.arcs[a]
            corner_names += [t, h, apexes[w]]
            arc_sides.setdefault(a, []).append(start + i)
    pairings = []
    for a, (f, g) in sorted(arc_sides.items()):
        # both walks run along the arc, so corner 0 meets corner 0
        pairings.append(((f, 0), (g, 0), 1))
    for tris in tri_of:
        n = len(tris)
        for i in range(n):
            pairings.append(((tris[i], 1), (tris[(i + 1) % n], 2), 0))
    try:
        smap = build_glued(len(corner_names) // 3, pairings, corner_names)
    except LinkError as exc:
        raise NotClosed2Cell(f"the faces do not close into a surface: {exc}") from exc

    zs = all_zigzags(smap)
    bits = [None] * zs.k
    for tris in tri_of:
        for f in tris:
            p, canonical = zs.pair_of_state(encode(f, 0, 0))
            want = 0 if canonical else 1
            if bits[p] is not None and bits[p] != want:
                raise InvariantViolation(f"zigzag pair {p} is selected in both directions")
            bits[p] = want
    if any(b is None for b in bits):
        raise InvariantViolation("some zigzag pair avoids every arc")
    return TResult(smap, ZOrientation(tuple(bits)), tri_of, apexes)


# ---------------------------------------------------------------------------
# round trip


def _side_image(sigma, s, d):
    """Image of local state ``(s, d)`` under a corner permutation ``sigma``."""
    a, b = sigma[s], sigma[(s + 1) % 3]
    if b == (a + 1) % 3:
        return a, d
    return b, d ^ 1


def extract_and_roundtrip(smap, tau):
    """Check that ``smap`` equals ``T`` of its own type-II digraph.

    The isomorphism is read off directly: each face of ``smap`` has one
    type-II side, which is one step of one boundary walk, and the opposite
    corner is the apex of that walk.  Returns a report with the face map and
    the results of checking gluings and the selected zigzags.
    """
    try:
        homogeneous = is_homogeneous(smap, tau)
    except HomogeneityUndefined as exc:
        raise NotHomogeneous(str(exc)) from exc
    if not homogeneous:
        raise NotHomogeneous("some selected zigzag is not homogeneous")
    zs = all_zigzags(smap)
    if not isinstance(tau, ZOrientation):
        tau = ZOrientation.from_index(int(tau), zs.k)
    cls = classify(smap, tau)
    graph = gamma_II(smap, tau, cls)
    spec = DirectedEmbeddingSpec.from_digraph(graph)
    t = build_T(spec)

    # host face -> (T face, corner permutation host corner -> T corner)
    face_map = {}
    for w, walk in enumerate(graph.walks):
        forward = spec.faces[w][0][1] == 1
        n = len(walk)
        for i, (e, b, side) in enumerate(walk):
            j = i if forward else n - 1 - i
            tf = t.faces[w][j]
            f, s = divmod(side, 3)
            tail_name = spec.arcs[spec.faces[w][i][0]][0]
            # T corners: 0 = arc tail, 1 = arc head, 2 = apex
            if smap.vertex_names[smap.corner_vertex[side]] == tail_name:
                sigma = {s: 0, (s + 1) % 3: 1}
            else:
                sigma = {s: 1, (s + 1) % 3: 0}
            sigma[(s + 2) % 3] = 2
            face_map[f] = (tf, sigma)

    ok_faces = len(face_map) == smap.n_faces == t.smap.n_faces
    ok_names = ok_faces
    ok_gluing = ok_faces
    if ok_faces:
        for f, (tf, sigma) in face_map.items():
            for c in range(3):
                host = smap.vertex_names[smap.corner_vertex[3 * f + c]]
                image = t.smap.vertex_names[t.smap.corner_vertex[3 * tf + sigma[c]]]
                if sigma[c] != 2 and host != image:
                    ok_names = False
        for a, b in enumerate(smap.partner):
            fa, sa = divmod(a, 3)
            fb, sb = divmod(b, 3)
            ta, siga = face_map[fa]
            tb, sigb = face_map[fb]
            xa, _ = _side_image(siga, sa, 0)
            xb, _ = _side_image(sigb, sb, 0)
            xa, xb = 3 * ta + xa, 3 * tb + xb
            if t.smap.partner[xa] != xb:
                ok_gluing = False
                break
            want = {(3 * ta + siga[x % 3], 3 * tb + sigb[y % 3])
                    for x, y in glued_corners(a, b, smap.flip[a])}
            have = set(glued_corners(xa, xb, t.smap.flip[xa]))
            if want != have:
                ok_gluing = False
                break

    ok_orientation = False
    if ok_gluing:
        chosen = {x for z in zs.selected(tau.bits) for x in z.states}
        tzs = all_zigzags(t.smap)
        t_chosen = {x for z in tzs.selected(t.tau.bits) for x in z.states}
        image = set()
        for x in chosen:
            f, r = divmod(x, 6)
            tf, sigma = face_map[f]
            s2, d2 = _side_image(sigma, r >> 1, r & 1)
            image.add(encode(tf, s2, d2))
        ok_orientation = image == t_chosen

    return {
        "isomorphic": ok_faces and ok_names and ok_gluing,
        "orientation_match": ok_orientation,
        "faces": smap.n_faces,
        "walks": len(graph.walks),
        "face_map": {f: face_map[f][0] for f in sorted(face_map)},
    }
