"""z-orientations and the type I / type II classification they induce."""
from __future__ import annotations

import os
from dataclasses import dataclass

from zzatlas.errors import CapExceeded, HomogeneityUndefined, InvariantViolation
from zzatlas.zigzag import all_zigzags

DEFAULT_CAP = 2**20
TYPE_I = 1
TYPE_II = 2


def default_cap():
    value = os.environ.get("ZZ_ATLAS_CAP")
    return int(value) if value else DEFAULT_CAP


@dataclass(frozen=True)
class ZOrientation:
    """One orientation bit per reversal pair; bit 1 selects ``Z^-1``."""

    bits: tuple

    @classmethod
    def from_index(cls, index, k):
        if not 0 <= index < 2**k:
            raise ValueError(f"orientation index {index} out of range for k={k}")
        return cls(tuple((index >> p) & 1 for p in range(k)))

    @property
    def k(self):
        return len(self.bits)

    @property
    def index(self):
        return sum(b << p for p, b in enumerate(self.bits))

    def reverse(self):
        return ZOrientation(tuple(1 - b for b in self.bits))

    def flip(self, p):
        bits = list(self.bits)
        bits[p] ^= 1
        return ZOrientation(tuple(bits))


@dataclass(frozen=True)
class Classification:
    """Edge, face and vertex types under a fixed z-orientation.

    ``edge_dir[e]`` is the direction bit of a type-II edge relative to its
    canonical direction (``None`` for type I).
    """

    edge_type: tuple
    edge_dir: tuple
    face_type: tuple
    vertex_type: tuple

    def edges_of_type(self, t):
        return [e for e, x in enumerate(self.edge_type) if x == t]

    def faces_of_type(self, t):
        return [f for f, x in enumerate(self.face_type) if x == t]

    def vertices_of_type(self, t):
        return [v for v, x in enumerate(self.vertex_type) if x == t]

    @property
    def all_faces_type_I(self):
        return all(t == TYPE_I for t in self.face_type)

    def face_census(self):
        n2 = sum(1 for t in self.face_type if t == TYPE_II)
        return {"I": len(self.face_type) - n2, "II": n2}


def _as_orientation(tau, k):
    if isinstance(tau, ZOrientation):
        if tau.k != k:
            raise ValueError(f"orientation has {tau.k} bits, map has {k} zigzag pairs")
        return tau
    return ZOrientation.from_index(int(tau), k)


def local_bit(smap, side, bit):
    """Translate an edge direction bit into the local direction of ``side``."""
    e = smap.side_edge[side]
    if smap.edge_sides[e][0] == side:
        return bit
    return bit ^ 1 ^ smap.flip[side]


def edge_traversals(smap, tau):
    """Per edge, the two direction bits of the selected zigzags' passes."""
    zs = all_zigzags(smap)
    tau = _as_orientation(tau, zs.k)
    bits = tau.bits
    out = []
    for slots in zs.edge_slots:
        (p1, b1, _), (p2, b2, _) = slots
        out.append((b1 ^ bits[p1], b2 ^ bits[p2]))
    return out


def classify(smap, tau):
    """Classify edges, faces and vertices of ``smap`` under ``tau``.

    ``tau`` is a :class:`ZOrientation` or an orientation index.  Raises
    :class:`InvariantViolation` if a face fits neither allowed pattern.
    """
    trav = edge_traversals(smap, tau)
    edge_type = []
    edge_dir = []
    for t1, t2 in trav:
        if t1 != t2:
            edge_type.append(TYPE_I)
            edge_dir.append(None)
        else:
            edge_type.append(TYPE_II)
            edge_dir.append(t1)

    face_type = []
    for f in range(smap.n_faces):
        n1 = 0
        locals_ = set()
        for s in range(3):
            side = 3 * f + s
            e = smap.side_edge[side]
            if edge_type[e] == TYPE_I:
                n1 += 1
            else:
                locals_.add(local_bit(smap, side, edge_dir[e]))
        if n1 == 2:
            face_type.append(TYPE_I)
        elif n1 == 0 and len(locals_) == 1:
            face_type.append(TYPE_II)
        else:
            raise InvariantViolation(
                f"face {f} has {n1} type-I edges and is not a directed cycle"
            )

    vertex_type = []
    for v in range(smap.n_vertices):
        incident = smap.incident_edges(v)
        vertex_type.append(TYPE_I if all(edge_type[e] == TYPE_I for e in incident) else TYPE_II)
    return Classification(tuple(edge_type), tuple(edge_dir), tuple(face_type), tuple(vertex_type))


def balance(smap, cls):
    """``{vertex: (in, out)}`` counts of type-II edges at type-II vertices."""
    counts = {v: [0, 0] for v in cls.vertices_of_type(TYPE_II)}
    for e in cls.edges_of_type(TYPE_II):
        t, h = smap.edge_endpoints(e)
        if cls.edge_dir[e]:
            t, h = h, t
        counts[t][1] += 1
        counts[h][0] += 1
    return {v: tuple(c) for v, c in counts.items()}


def enumerate_z_orientations(smap, cap=None):
    """Yield all ``2^k`` orientations in increasing index order."""
    k = all_zigzags(smap).k
    cap = default_cap() if cap is None else cap
    if 2**k > cap:
        raise CapExceeded(f"2^{k} orientations exceed the cap of {cap}")
    for index in range(2**k):
        yield ZOrientation.from_index(index, k)


def _zigzag_is_homogeneous(types):
    n = len(types)
    if n % 3:
        return False
    for r in range(3):
        if all((types[i] == TYPE_II) == (i % 3 == r) for i in range(n)):
            return True
    return False


def homogeneous_zigzags(smap, tau, cls=None):
    """Per selected zigzag, whether it follows the cyclic (II, I, I) pattern."""
    zs = all_zigzags(smap)
    tau = _as_orientation(tau, zs.k)
    cls = classify(smap, tau) if cls is None else cls
    if not cls.all_faces_type_I:
        raise HomogeneityUndefined("homogeneity needs every face to be of type I")
    out = []
    for z in zs.selected(tau.bits):
        out.append(_zigzag_is_homogeneous([cls.edge_type[e] for e, _ in z.edges]))
    return out


def is_homogeneous(smap, tau, cls=None):
    """True iff every selected zigzag is homogeneous."""
    return all(homogeneous_zigzags(smap, tau, cls))


def find_all_type_I_orientation(smap, cap=None):
    """The least-index orientation with every face of type I, or ``None``."""
    for tau in enumerate_z_orientations(smap, cap):
        if classify(smap, tau).all_faces_type_I:
            return tau
    return None


def find_orientation(smap, predicate, cap=None):
    for tau in enumerate_z_orientations(smap, cap):
        if predicate(tau, classify(smap, tau)):
            return tau
    return None


def orientation_with_type_II(smap, edges, cap=None):
    """The least orientation whose type-II edge set is exactly ``edges``."""
    want = set(edges)
    return find_orientation(
        smap, lambda tau, cls: set(cls.edges_of_type(TYPE_II)) == want, cap
    )


def orientation_from_zigzags(smap, seeds):
    """Orientation selecting the zigzags through the given directed seeds.

    Each seed is a pair of directed edges ``((x, y), (y, z))`` on a common
    face; pairs not mentioned keep their canonical orientation.
    """
    from zzatlas.zigzag import trace_zigzag

    zs = all_zigzags(smap)
    bits = [0] * zs.k
    for first, second in seeds:
        z = trace_zigzag(smap, first, second)
        p, canonical = zs.pair_of_state(z.states[0])
        bits[p] = 0 if canonical else 1
    return ZOrientation(tuple(bits))


def types_invariant_under_reversal(smap, tau):
    """Reversing every zigzag keeps all types and flips type-II directions."""
    a = classify(smap, tau)
    zs = all_zigzags(smap)
    b = classify(smap, _as_orientation(tau, zs.k).reverse())
    if a.edge_type != b.edge_type or a.face_type != b.face_type:
        return False
    if a.vertex_type != b.vertex_type:
        return False
    for x, y in zip(a.edge_dir, b.edge_dir):
        if (x is None) != (y is None) or (x is not None and x == y):
            return False
    return True
