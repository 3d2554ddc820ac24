"""Zigzags as orbits of the zigzag step on face states.

A state is a directed edge together with the face holding it and the next
edge of the zigzag.  States are encoded as ``6 * f + 2 * s + d``: side ``s``
of face ``f`` traversed from corner ``s`` to ``s + 1`` when ``d == 0`` and
the other way when ``d == 1``.  A map with ``E`` edges has ``4E`` states.
"""
from __future__ import annotations

from dataclasses import dataclass

from zzatlas.errors import EdgesNotCofacial, InvariantViolation


def encode(f, s, d):
    return 6 * f + 2 * s + d


def decode(state):
    f, r = divmod(state, 6)
    return f, r >> 1, r & 1


def head_corner(state):
    _, s, d = decode(state)
    return (s + 1 - d) % 3


def tail_corner(state):
    _, s, d = decode(state)
    return (s + d) % 3


def face_rotate(state):
    """Next directed side inside the same face (``xy -> yz``)."""
    f, s, d = decode(state)
    return encode(f, (s + 1 + d) % 3, d)


def cross(smap, state):
    """The same directed edge seen from the face on the other side."""
    f, s, d = decode(state)
    side = 3 * f + s
    g, t = divmod(smap.partner[side], 3)
    return encode(g, t, d ^ 1 ^ smap.flip[side])


def step(smap, state):
    """Advance a zigzag by one edge.

    For the state ``(v -> w, F)`` with ``F = {v, w, u}`` this returns
    ``(w -> u, F')`` where ``F'`` is the other face on ``wu``.
    """
    return cross(smap, face_rotate(state))


def reverse(smap, state):
    """The matching state of the reversed zigzag: ``(w -> v, F'')``."""
    f, s, d = decode(state)
    side = 3 * f + s
    g, t = divmod(smap.partner[side], 3)
    return encode(g, t, d ^ smap.flip[side])


def inverse_step(smap, state):
    return reverse(smap, step(smap, reverse(smap, state)))


def directed_edge(smap, state):
    """``(edge id, bit)``; bit 0 means the edge's canonical direction."""
    f, s, d = decode(state)
    side = 3 * f + s
    e = smap.side_edge[side]
    if smap.edge_sides[e][0] == side:
        return e, d
    return e, d ^ 1 ^ smap.flip[side]


def tail_head(smap, state):
    f = state // 6
    cv = smap.corner_vertex
    return cv[3 * f + tail_corner(state)], cv[3 * f + head_corner(state)]


def n_states(smap):
    return 6 * smap.n_faces


def _step_table(smap):
    table = smap._cache.get("step")
    if table is None:
        table = tuple(step(smap, x) for x in range(n_states(smap)))
        smap._cache["step"] = table
    return table


@dataclass(frozen=True)
class Zigzag:
    """One directed zigzag: its states and the directed edges they carry."""

    states: tuple
    edges: tuple

    def __len__(self):
        return len(self.states)

    def edge_names(self, smap):
        return [smap.edge_name(e, b) for e, b in self.edges]


def _orbit(table, start):
    out = [start]
    x = table[start]
    while x != start:
        out.append(x)
        x = table[x]
    return out


def _make(smap, states):
    return Zigzag(tuple(states), tuple(directed_edge(smap, x) for x in states))


def _state_key(smap, state):
    e, b = directed_edge(smap, state)
    return e, b, state // 6


def _find_seed(smap, first, second, face):
    def matches(spec, state):
        e, b = directed_edge(smap, state)
        if isinstance(spec, int):
            return e == spec
        want = tuple(str(x) for x in spec)
        return smap.edge_name(e, b) == want

    candidates = []
    for x in range(n_states(smap)):
        if face is not None and x // 6 != face:
            continue
        if matches(first, x) and matches(second, face_rotate(x)):
            candidates.append(x)
    if not candidates:
        raise EdgesNotCofacial(f"no face holds {first!r} followed by {second!r}")
    return candidates[0]


def trace_zigzag(smap, first, second, face=None):
    """The unique zigzag passing ``first`` and then ``second``.

    Edges are given either as edge ids or as directed vertex-name pairs
    ``(x, y)``; with name pairs the traversal directions are fixed too.  The
    returned zigzag starts at the seed.
    """
    seed = _find_seed(smap, first, second, face)
    return _make(smap, _orbit(_step_table(smap), seed))


def trace_from_state(smap, state):
    return _make(smap, _orbit(_step_table(smap), state))


class ZigzagSet:
    """All zigzags of a map, grouped into reversal pairs.

    Pair ``p`` is stored as ``(Z, Z^-1)`` where ``Z`` is the orientation
    holding the lexicographically least ``(edge, bit, face)`` state, which
    also starts the sequence.  Pairs are ordered by that state.
    """

    def __init__(self, smap):
        self.smap = smap
        table = _step_table(smap)
        ns = len(table)
        orbit_of = [-1] * ns
        orbits = []
        for x in range(ns):
            if orbit_of[x] < 0:
                orb = _orbit(table, x)
                for y in orb:
                    orbit_of[y] = len(orbits)
                orbits.append(orb)

        keys = [_state_key(smap, x) for x in range(ns)]
        done = set()
        raw = []
        for i, orb in enumerate(orbits):
            if i in done:
                continue
            j = orbit_of[reverse(smap, orb[0])]
            if j == i:
                raise InvariantViolation(f"zigzag through state {orb[0]} is self-reversed")
            done.update((i, j))
            both = orb + orbits[j]
            least = min(both, key=keys.__getitem__)
            if orbit_of[least] == i:
                canon, other = orb, orbits[j]
            else:
                canon, other = orbits[j], orb
            k = canon.index(least)
            canon = canon[k:] + canon[:k]
            # reversed sequence aligned so position p pairs with canon[-p]
            first = reverse(smap, canon[0])
            k = other.index(first)
            other = other[k:] + other[:k]
            raw.append((keys[least], canon, other))
        raw.sort(key=lambda r: r[0])

        self.pairs = []
        self.state_pair = [0] * ns
        self.state_canonical = [True] * ns
        self.state_position = [0] * ns
        for p, (_, canon, other) in enumerate(raw):
            self.pairs.append((_make(smap, canon), _make(smap, other)))
            for pos, x in enumerate(canon):
                self.state_pair[x] = p
                self.state_position[x] = pos
            for pos, x in enumerate(other):
                self.state_pair[x] = p
                self.state_canonical[x] = False
                self.state_position[x] = pos
        self.k = len(self.pairs)

        # each edge is carried by two state pairs {x, reverse(x)}; record the
        # canonical-orientation traversal of each
        slots = [[] for _ in range(smap.n_edges)]
        for x in range(ns):
            if self.state_canonical[x]:
                e, b = directed_edge(smap, x)
                slots[e].append((self.state_pair[x], b, x))
        self.edge_slots = tuple(tuple(s) for s in slots)

    def __len__(self):
        return self.k

    @property
    def lengths(self):
        return [len(z) for z, _ in self.pairs]

    def zigzag(self, p, reversed_=False):
        return self.pairs[p][1 if reversed_ else 0]

    def selected(self, bits):
        """Directed zigzags chosen by orientation ``bits`` (one per pair)."""
        return [self.pairs[p][b] for p, b in enumerate(bits)]

    def pair_of_state(self, state):
        return self.state_pair[state], self.state_canonical[state]


def all_zigzags(smap):
    zs = smap._cache.get("zigzags")
    if zs is None:
        zs = ZigzagSet(smap)
        smap._cache["zigzags"] = zs
    return zs


def is_z_knotted(smap):
    return all_zigzags(smap).k == 1
