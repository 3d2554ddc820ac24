"""The type-II subgraph, its complementary regions, and the equivalence checks."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from zzatlas.errors import MixedFaceTypes
from zzatlas.orientation import TYPE_I, TYPE_II, classify, is_homogeneous
from zzatlas.surface import glued_corners
from zzatlas.zigzag import cross, decode, directed_edge, face_rotate

DISK = "disk"
CYLINDER = "cylinder"
MOEBIUS = "moebius"


@dataclass
class EmbeddedDigraph:
    """Type-II vertices and arcs with the boundary walks of their regions.

    ``arcs`` maps an edge id of the host map to ``(tail, head)`` vertex ids.
    Each walk is a list of ``(edge, bit, side)``: the edge, the direction bit
    it is walked in, and the host side the walk runs along.
    """

    smap: object
    vertices: list
    arcs: dict
    walks: list = field(default_factory=list)

    def walk_vertices(self, walk):
        out = []
        for e, b, _ in walk:
            t, h = self.smap.edge_endpoints(e)
            out.append(h if b else t)
        return out

    def walk_is_forward(self, walk):
        """Set of arc senses along the walk (``True`` = along the arc)."""
        senses = set()
        for e, b, _ in walk:
            t, h = self.smap.edge_endpoints(e)
            if b:
                t, h = h, t
            senses.add((t, h) == self.arcs[e])
        return senses

    def arc_names(self):
        names = self.smap.vertex_names
        return [[names[t], names[h]] for _, (t, h) in sorted(self.arcs.items())]

    def to_dot(self, name="gamma_II"):
        names = self.smap.vertex_names
        lines = [f"digraph {name} {{"]
        for v in self.vertices:
            lines.append(f'  "{names[v]}";')
        for e, (t, h) in sorted(self.arcs.items()):
            lines.append(f'  "{names[t]}" -> "{names[h]}" [label="{e}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def gamma_II(smap, tau, cls=None):
    """Extract the type-II subgraph and trace its region boundaries.

    Boundary walks are traced on face sides with type-II sides acting as
    walls, so regions that are not disks still yield one walk per boundary
    component.
    """
    cls = classify(smap, tau) if cls is None else cls
    arcs = {}
    for e in cls.edges_of_type(TYPE_II):
        t, h = smap.edge_endpoints(e)
        arcs[e] = (h, t) if cls.edge_dir[e] else (t, h)
    wall = [cls.edge_type[smap.side_edge[x]] == TYPE_II for x in range(3 * smap.n_faces)]

    def side_of(state):
        f, s, _ = decode(state)
        return 3 * f + s

    visited = [False] * len(wall)
    walks = []
    for side in range(len(wall)):
        if not wall[side] or visited[side]:
            continue
        start = 2 * side  # state (f, s, 0)
        cur = start
        walk = []
        while True:
            visited[side_of(cur)] = True
            e, b = directed_edge(smap, cur)
            walk.append((e, b, side_of(cur)))
            x = face_rotate(cur)
            while not wall[side_of(x)]:
                x = face_rotate(cross(smap, x) ^ 1)
            cur = x
            if cur == start:
                break
        walks.append(walk)
    return EmbeddedDigraph(smap, cls.vertices_of_type(TYPE_II), arcs, walks)


@dataclass
class Component:
    """A cyclic band of faces glued along type-I edges."""

    faces: list
    crossings: list
    boundary: list
    klass: str
    center: int | None = None

    def to_dict(self, smap):
        return {
            "class": self.klass,
            "center": None if self.center is None else smap.vertex_names[self.center],
            "faces": list(self.faces),
            "boundary_edges": list(self.boundary),
        }


def _type_II_side(smap, cls, f):
    sides = [s for s in range(3) if cls.edge_type[smap.side_edge[3 * f + s]] == TYPE_II]
    return sides[0]


def components(smap, tau, cls=None):
    """Partition the faces into bands and classify each one.

    A band is a disk when its apex corners are glued to one another all the
    way round; otherwise it is a cylinder or a Moebius strip according to
    the parity of orientation-reversing gluings crossed.
    """
    cls = classify(smap, tau) if cls is None else cls
    if not cls.all_faces_type_I:
        raise MixedFaceTypes("components are defined only when every face is of type I")
    seen = [False] * smap.n_faces
    out = []
    for f0 in range(smap.n_faces):
        if seen[f0]:
            continue
        t0 = _type_II_side(smap, cls, f0)
        enter0 = (t0 + 1) % 3
        f, enter = f0, enter0
        faces, crossings, boundary = [], [], []
        apex_kept = True
        parity = 0
        while True:
            seen[f] = True
            faces.append(f)
            t = _type_II_side(smap, cls, f)
            boundary.append(smap.side_edge[3 * f + t])
            exit_ = 3 - t - enter
            apex = 3 * f + (t + 2) % 3
            side = 3 * f + exit_
            other = smap.partner[side]
            crossings.append(smap.side_edge[side])
            parity ^= smap.flip[side]
            g = other // 3
            image = next(y for x, y in glued_corners(side, other, smap.flip[side]) if x == apex)
            tg = _type_II_side(smap, cls, g)
            if image != 3 * g + (tg + 2) % 3:
                apex_kept = False
            f, enter = g, other % 3
            if f == f0 and enter == enter0:
                break
        if apex_kept:
            klass, center = DISK, smap.corner_vertex[3 * f0 + (t0 + 2) % 3]
        else:
            klass, center = (MOEBIUS if parity else CYLINDER), None
        out.append(Component(faces, crossings, sorted(boundary), klass, center))
    return out


def class_counts(comps):
    return dict(sorted(Counter(c.klass for c in comps).items()))


@dataclass
class Theorem1Report:
    cond1: bool
    cond2: bool
    cond3: bool
    details: dict = field(default_factory=dict)

    def as_tuple(self):
        return self.cond1, self.cond2, self.cond3

    def to_dict(self):
        return {"cond1": self.cond1, "cond2": self.cond2, "cond3": self.cond3, **self.details}


def _connected(vertices, arcs):
    if not vertices:
        return False
    adj = {v: set() for v in vertices}
    for t, h in arcs.values():
        adj[t].add(h)
        adj[h].add(t)
    start = next(iter(vertices))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v] - seen:
            seen.add(w)
            stack.append(w)
    return len(seen) == len(vertices)


def directed_embedding_checks(smap, graph):
    """Independent checks that ``graph`` is a closed 2-cell directed embedding."""
    arcs = graph.arcs
    pairs = Counter(frozenset(th) for th in arcs.values())
    simple = all(t != h for t, h in arcs.values()) and all(n == 1 for n in pairs.values())
    indeg = Counter(h for _, h in arcs.values())
    outdeg = Counter(t for t, _ in arcs.values())
    balanced = all(indeg[v] == outdeg[v] for v in graph.vertices)
    euler = len(graph.vertices) - len(arcs) + len(graph.walks)
    two_cell = euler == smap.euler_characteristic()
    simple_walks = all(
        len(set(vs)) == len(vs) for vs in map(graph.walk_vertices, graph.walks)
    )
    directed_faces = all(len(graph.walk_is_forward(w)) == 1 for w in graph.walks)
    return {
        "connected": _connected(set(graph.vertices), arcs),
        "simple": simple,
        "balanced": balanced,
        "two_cell": two_cell,
        "simple_walks": simple_walks,
        "directed_faces": directed_faces,
    }


def theorem1_report(smap, tau, cls=None):
    """Evaluate the three equivalent conditions by separate code paths.

    cond1: every selected zigzag is homogeneous.
    cond2: the type-II digraph is a connected, simple, balanced, closed 2-cell
    embedding whose faces are directed cycles.
    cond3: every band component is a disk.
    """
    cls = classify(smap, tau) if cls is None else cls
    if not cls.all_faces_type_I:
        raise MixedFaceTypes("the conditions are defined only when every face is of type I")
    cond1 = is_homogeneous(smap, tau, cls)
    checks = directed_embedding_checks(smap, gamma_II(smap, tau, cls))
    cond2 = all(checks.values())
    comps = components(smap, tau, cls)
    cond3 = all(c.klass == DISK for c in comps)
    return Theorem1Report(
        cond1, cond2, cond3, {"cond2_checks": checks, "components": class_counts(comps)}
    )


def type_I_vertices_in(smap, cls, comp):
    verts = set()
    for f in comp.faces:
        verts.update(smap.face_vertices(f))
    return sorted(v for v in verts if cls.vertex_type[v] == TYPE_I)
