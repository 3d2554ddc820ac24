"""Triangulated closed surfaces stored as glued triangle sides.

Face ``f`` has corners ``0, 1, 2``; side ``s`` runs from corner ``s`` to
corner ``s + 1 (mod 3)``.  Sides are addressed by the flat index
``3 * f + s`` and corners by ``3 * f + c``.

Every side is glued to exactly one other side.  The alignment bit of a
gluing says how the endpoints match:

* ``flip == 0``: corner ``s`` meets corner ``s' + 1`` and corner ``s + 1``
  meets corner ``s'``.  This is the gluing of two coherently oriented
  triangles.
* ``flip == 1``: corner ``s`` meets corner ``s'`` and ``s + 1`` meets
  ``s' + 1``.

Nothing in the representation assumes orientability.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from zzatlas.errors import (
    DisconnectedError,
    EdgeDegreeError,
    GluingError,
    LinkError,
)

SURFACE = "surface"
TRIANGULATION = "triangulation"
STRICT = "strict"
LEVELS = (SURFACE, TRIANGULATION, STRICT)


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def glued_corners(side, partner, flip):
    """Corner pairs identified by gluing ``side`` to ``partner``."""
    f, s = divmod(side, 3)
    g, t = divmod(partner, 3)
    a0, a1 = 3 * f + s, 3 * f + (s + 1) % 3
    b0, b1 = 3 * g + t, 3 * g + (t + 1) % 3
    if flip:
        return (a0, b0), (a1, b1)
    return (a0, b1), (a1, b0)


class SurfaceMap:
    """An immutable triangulated closed surface.

    Use :func:`build_simplicial` or :func:`build_glued` rather than calling
    the constructor directly.
    """

    def __init__(self, partner, flip, corner_names=None):
        partner = tuple(int(p) for p in partner)
        flip = tuple(int(b) for b in flip)
        nsides = len(partner)
        if nsides == 0 or nsides % 3:
            raise GluingError("side count must be a positive multiple of 3")
        if len(flip) != nsides:
            raise GluingError("one alignment bit is required per side")
        for a, b in enumerate(partner):
            if not 0 <= b < nsides:
                raise GluingError(f"side {a} glued to missing side {b}")
            if b == a:
                raise GluingError(f"side {a} is glued to itself")
            if partner[b] != a:
                raise GluingError(f"gluing is not an involution at side {a}")
            if flip[b] != flip[a]:
                raise GluingError(f"alignment bits disagree on sides {a} and {b}")
            if flip[a] not in (0, 1):
                raise GluingError(f"alignment bit of side {a} is not 0/1")
        self.partner = partner
        self.flip = flip
        self.n_faces = nsides // 3
        # derived tables of other modules; never changes what the map is
        self._cache = {}
        self.provenance = None

        self._check_connected()
        self._build_edges()
        self._build_vertices(corner_names)

    # -- construction helpers -------------------------------------------
    def _check_connected(self):
        seen = {0}
        stack = [0]
        while stack:
            f = stack.pop()
            for s in range(3):
                g = self.partner[3 * f + s] // 3
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
        if len(seen) != self.n_faces:
            raise DisconnectedError(
                f"face adjacency graph has {self.n_faces - len(seen)} unreachable faces"
            )

    def _build_edges(self):
        side_edge = [-1] * len(self.partner)
        edge_sides = []
        for a, b in enumerate(self.partner):
            if side_edge[a] < 0:
                side_edge[a] = side_edge[b] = len(edge_sides)
                edge_sides.append((a, b))
        self.side_edge = tuple(side_edge)
        self.edge_sides = tuple(edge_sides)
        self.n_edges = len(edge_sides)

    def _build_vertices(self, corner_names):
        ncorners = len(self.partner)
        uf = _UnionFind(ncorners)
        # corner adjacency: each corner touches its two sides, each gluing
        # links it to exactly one corner of the neighbouring face
        degree = [0] * ncorners
        for a, b in enumerate(self.partner):
            if a < b:
                for x, y in glued_corners(a, b, self.flip[a]):
                    uf.union(x, y)
                    degree[x] += 1
                    degree[y] += 1
        roots = {}
        corner_vertex = [0] * ncorners
        for c in range(ncorners):
            r = uf.find(c)
            if r not in roots:
                roots[r] = len(roots)
            corner_vertex[c] = roots[r]
        if any(d != 2 for d in degree):
            raise LinkError("corner graph is not 2-regular")
        self.corner_vertex = tuple(corner_vertex)
        self.n_vertices = len(roots)
        corners = [[] for _ in range(self.n_vertices)]
        for c, v in enumerate(corner_vertex):
            corners[v].append(c)
        self.vertex_corners = tuple(tuple(cs) for cs in corners)

        if corner_names is None:
            names = [f"v{i}" for i in range(self.n_vertices)]
        else:
            if len(corner_names) != ncorners:
                raise LinkError("one name per corner is required")
            names = [None] * self.n_vertices
            for c, v in enumerate(corner_vertex):
                name = str(corner_names[c])
                if names[v] is None:
                    names[v] = name
                elif names[v] != name:
                    raise LinkError(
                        f"corners named {names[v]!r} and {name!r} are glued together"
                    )
            dup = _duplicates(names)
            if dup:
                raise LinkError(
                    f"vertex {dup!r}: its corners form more than one cycle (pinched link)"
                )
        self.vertex_names = tuple(names)
        self._index = {n: i for i, n in enumerate(names)}

    # -- incidence queries ----------------------------------------------
    def vertex_index(self, name):
        return self._index[str(name)]

    def face_vertices(self, f):
        """Vertex ids of the corners of face ``f``, in corner order."""
        cv = self.corner_vertex
        return cv[3 * f], cv[3 * f + 1], cv[3 * f + 2]

    def face_edges(self, f):
        se = self.side_edge
        return se[3 * f], se[3 * f + 1], se[3 * f + 2]

    def edge_endpoints(self, e):
        """``(tail, head)`` of edge ``e`` in its canonical direction.

        The canonical direction runs along the lower-indexed side of the edge
        from its corner ``s`` to corner ``s + 1``.
        """
        side = self.edge_sides[e][0]
        f, s = divmod(side, 3)
        return self.corner_vertex[side], self.corner_vertex[3 * f + (s + 1) % 3]

    def edge_faces(self, e):
        a, b = self.edge_sides[e]
        return a // 3, b // 3

    def edge_name(self, e, bit=0):
        """Vertex-name pair of edge ``e`` traversed in direction ``bit``."""
        t, h = self.edge_endpoints(e)
        if bit:
            t, h = h, t
        return self.vertex_names[t], self.vertex_names[h]

    def incident_edges(self, v):
        """Edges at vertex ``v`` with multiplicity (a loop appears twice)."""
        out = []
        for c in self.vertex_corners[v]:
            f, k = divmod(c, 3)
            out.append(self.side_edge[3 * f + k])
            out.append(self.side_edge[3 * f + (k + 2) % 3])
        # every edge end is seen from the two corners flanking it
        counts = defaultdict(int)
        for e in out:
            counts[e] += 1
        return [e for e in sorted(counts) for _ in range(counts[e] // 2)]

    def link_length(self, v):
        return len(self.vertex_corners[v])

    def neighbours(self, f):
        return tuple(self.partner[3 * f + s] // 3 for s in range(3))

    # -- global invariants ----------------------------------------------
    def euler_characteristic(self):
        return self.n_vertices - self.n_edges + self.n_faces

    def face_signs(self):
        """A consistent orientation sign per face, or ``None``.

        Signs are propagated by breadth-first search across gluings; a
        ``flip == 0`` gluing keeps the sign, ``flip == 1`` reverses it.
        """
        sign = [0] * self.n_faces
        sign[0] = 1
        queue = [0]
        for f in queue:
            for s in range(3):
                side = 3 * f + s
                g = self.partner[side] // 3
                want = -sign[f] if self.flip[side] else sign[f]
                if sign[g] == 0:
                    sign[g] = want
                    queue.append(g)
                elif sign[g] != want:
                    return None
        return sign

    def is_orientable(self):
        return self.face_signs() is not None

    # -- export ----------------------------------------------------------
    def triangles(self):
        names = self.vertex_names
        return [tuple(names[v] for v in self.face_vertices(f)) for f in range(self.n_faces)]

    def gluing(self):
        """``[[f, s], [f', s'], flip]`` triples, one per edge."""
        out = []
        for a, b in self.edge_sides:
            out.append([[a // 3, a % 3], [b // 3, b % 3], self.flip[a]])
        return out

    def corner_names(self):
        names = self.vertex_names
        return [names[v] for v in self.corner_vertex]

    def summary(self):
        return {
            "V": self.n_vertices,
            "E": self.n_edges,
            "F": self.n_faces,
            "chi": self.euler_characteristic(),
            "orientable": self.is_orientable(),
        }

    def __eq__(self, other):
        if not isinstance(other, SurfaceMap):
            return NotImplemented
        return (
            self.partner == other.partner
            and self.flip == other.flip
            and self.vertex_names == other.vertex_names
            and self.corner_vertex == other.corner_vertex
        )

    def __hash__(self):
        return hash((self.partner, self.flip, self.corner_vertex))

    def __repr__(self):
        return (
            f"SurfaceMap(V={self.n_vertices}, E={self.n_edges}, F={self.n_faces}, "
            f"chi={self.euler_characteristic()})"
        )


def _duplicates(names):
    seen = set()
    for n in names:
        if n in seen:
            return n
        seen.add(n)
    return None


def build_glued(n_faces, pairings, corner_names=None):
    """Build a map from explicit side pairings.

    ``pairings`` is an iterable of ``((f, s), (f2, s2), flip)``; every side
    must appear exactly once.
    """
    nsides = 3 * n_faces
    partner = [-1] * nsides
    flip = [0] * nsides
    for item in pairings:
        (f, s), (g, t), b = item
        a, c = 3 * int(f) + int(s), 3 * int(g) + int(t)
        for x in (a, c):
            if not (0 <= int(f) < n_faces and 0 <= int(g) < n_faces):
                raise GluingError(f"pairing {item!r} names a missing face")
            if not (0 <= int(s) < 3 and 0 <= int(t) < 3):
                raise GluingError(f"pairing {item!r} names a missing side")
            if partner[x] != -1:
                raise GluingError(f"side {divmod(x, 3)} is paired twice")
        if a == c:
            raise GluingError(f"side {divmod(a, 3)} is paired with itself")
        partner[a], partner[c] = c, a
        flip[a] = flip[c] = int(bool(b))
    missing = [divmod(x, 3) for x, p in enumerate(partner) if p < 0]
    if missing:
        raise GluingError(f"unpaired sides: {missing[:5]}")
    return SurfaceMap(partner, flip, corner_names)


def build_keyed(faces):
    """Build a map from triangles whose sides carry explicit edge keys.

    ``faces`` is a list of ``((n0, n1, n2), (k0, k1, k2))``: corner names and
    the key of side ``s`` (from corner ``s`` to ``s + 1``).  The two sides
    sharing a key are glued so that equal corner names meet.  Distinct keys
    may join the same pair of names, which is how multi-edges are expressed.
    """
    occurrences = defaultdict(list)
    corner_names = []
    for f, (names, keys) in enumerate(faces):
        names = tuple(str(x) for x in names)
        if len(names) != 3 or len(keys) != 3:
            raise EdgeDegreeError(f"face {f} is not a triangle")
        corner_names.extend(names)
        for s in range(3):
            occurrences[keys[s]].append((f, s, names[s], names[(s + 1) % 3]))
    pairings = []
    for key, occ in occurrences.items():
        if len(occ) != 2:
            raise EdgeDegreeError(f"edge {key!r} occurs in {len(occ)} face sides, expected 2")
        (f, s, a0, a1), (g, t, b0, b1) = occ
        if (a0, a1) == (b1, b0):
            flip = 0
        elif (a0, a1) == (b0, b1):
            flip = 1
        else:
            raise EdgeDegreeError(f"edge {key!r} joins different vertices on its two sides")
        if a0 == a1:
            raise EdgeDegreeError(f"edge {key!r} is a loop; its alignment is ambiguous")
        pairings.append(((f, s), (g, t), flip))
    return build_glued(len(faces), pairings, corner_names)


def build_simplicial(triangles):
    """Build a map from vertex-id triples.

    Every unordered vertex pair must occur in exactly zero or two triples and
    two triples may share at most one pair.
    """
    triangles = [tuple(str(x) for x in t) for t in triangles]
    if not triangles:
        raise EdgeDegreeError("no triangles")
    faces = []
    shared = defaultdict(int)
    pair_faces = defaultdict(list)
    for f, t in enumerate(triangles):
        if len(t) != 3 or len(set(t)) != 3:
            raise EdgeDegreeError(f"triangle {f} {t!r} does not have three distinct vertices")
        keys = tuple(frozenset((t[s], t[(s + 1) % 3])) for s in range(3))
        for k in keys:
            pair_faces[k].append(f)
        faces.append((t, keys))
    for k, fs in pair_faces.items():
        if len(fs) != 2:
            raise EdgeDegreeError(
                f"vertex pair {sorted(k)} occurs in {len(fs)} triangles, expected 2"
            )
        shared[tuple(sorted(fs))] += 1
    for (f, g), n in shared.items():
        if n > 1:
            raise EdgeDegreeError(f"triangles {f} and {g} share {n} vertex pairs")
    return build_keyed(faces)


@dataclass
class ValidationReport:
    requested: str
    level: str | None
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def to_dict(self):
        return {
            "requested": self.requested,
            "level": self.level,
            "ok": self.ok,
            "violations": list(self.violations),
        }


def _triangulation_violations(smap):
    out = []
    for e in range(smap.n_edges):
        t, h = smap.edge_endpoints(e)
        if t == h:
            out.append({"kind": "loop", "edge": e, "vertex": smap.vertex_names[t]})
        f, g = smap.edge_faces(e)
        if f == g:
            out.append({"kind": "edge-in-one-face", "edge": e, "face": f})
    for f in range(smap.n_faces):
        if len(set(smap.face_vertices(f))) != 3:
            out.append({"kind": "degenerate-face", "face": f})
    return out


def _strict_violations(smap):
    out = []
    pairs = defaultdict(list)
    for e in range(smap.n_edges):
        pairs[frozenset(smap.edge_endpoints(e))].append(e)
    for key, es in sorted(pairs.items(), key=lambda kv: kv[1]):
        if len(es) > 1:
            out.append(
                {
                    "kind": "multi-edge",
                    "edges": es,
                    "vertices": sorted(smap.vertex_names[v] for v in key),
                }
            )
    triples = defaultdict(list)
    for f in range(smap.n_faces):
        triples[frozenset(smap.face_vertices(f))].append(f)
    for fs in triples.values():
        if len(fs) > 1:
            out.append({"kind": "faces-share-vertex-set", "faces": fs})
    for f in range(smap.n_faces):
        es = smap.face_edges(f)
        for g in set(smap.neighbours(f)):
            if g > f:
                common = set(es) & set(smap.face_edges(g))
                if len(common) > 1:
                    out.append({"kind": "faces-share-edges", "faces": [f, g]})
    return out


def validate(smap, level=SURFACE):
    """Check ``smap`` against a validation level.

    Surface-level invariants are enforced at construction, so a built map
    always reaches ``surface``.  The report's ``level`` is the highest level
    actually achieved, independent of the level requested.
    """
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}")
    tri = _triangulation_violations(smap)
    strict = [] if tri else _strict_violations(smap)
    achieved = SURFACE
    if not tri:
        achieved = STRICT if not strict else TRIANGULATION
    violations = []
    if level in (TRIANGULATION, STRICT):
        violations.extend(tri)
    if level == STRICT:
        violations.extend(strict if not tri else _strict_violations(smap))
    return ValidationReport(level, achieved, violations)


def is_strict(smap):
    return validate(smap, STRICT).ok


def _side_under(sigma, s):
    a, b = sigma[s], sigma[(s + 1) % 3]
    return a if b == (a + 1) % 3 else b


def find_isomorphism(a, b):
    """A face-and-corner isomorphism from ``a`` to ``b``, ignoring names.

    Returns ``{face: (image face, corner permutation)}`` or ``None``.  Face 0
    of ``a`` is tried against every face of ``b`` in all six ways; the rest
    of the map is then forced by the gluings.
    """
    if (a.n_faces, a.n_edges, a.n_vertices) != (b.n_faces, b.n_edges, b.n_vertices):
        return None
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
    for g0 in range(b.n_faces):
        for p0 in perms:
            found = _extend_isomorphism(a, b, g0, p0)
            if found is not None:
                return found
    return None


def _extend_isomorphism(a, b, g0, p0):
    image = {0: (g0, p0)}
    used = {g0}
    queue = [0]
    for f in queue:
        g, sigma = image[f]
        for s in range(3):
            x = 3 * f + s
            y = a.partner[x]
            x2 = 3 * g + _side_under(sigma, s)
            y2 = b.partner[x2]
            fy, gy = y // 3, y2 // 3
            corner_to = {}
            glued_b = dict(glued_corners(x2, y2, b.flip[x2]))
            for cx, cy in glued_corners(x, y, a.flip[x]):
                corner_to[cy % 3] = glued_b[3 * g + sigma[cx % 3]] % 3
            rest = ({0, 1, 2} - set(corner_to)).pop()
            corner_to[rest] = ({0, 1, 2} - set(corner_to.values())).pop()
            tau = tuple(corner_to[c] for c in range(3))
            if fy in image:
                if image[fy] != (gy, tau):
                    return None
            else:
                if gy in used:
                    return None
                image[fy] = (gy, tau)
                used.add(gy)
                queue.append(fy)
    return image if len(image) == a.n_faces else None
