"""Ready-made maps for every example family, tagged with provenance."""
from __future__ import annotations

import json
import random
from importlib import resources

from zzatlas.errors import ParameterOutOfRange
from zzatlas.surface import build_keyed, build_simplicial, is_strict


def _label(smap, family, **params):
    smap.provenance = {"family": family, "params": params, "strict": is_strict(smap)}
    return smap


def bipyramid(n):
    """The n-gonal bipyramid: apexes ``a``, ``b`` over the base cycle ``1..n``."""
    if n < 3:
        raise ParameterOutOfRange(f"bipyramid needs n >= 3, got {n}")
    tris = []
    for i in range(1, n + 1):
        j = i % n + 1
        tris.append(("a", str(i), str(j)))
        tris.append(("b", str(j), str(i)))
    return _label(build_simplicial(tris), "bipyramid", n=n)


def torus_shift(n, k):
    """Torus from a strip of ``n`` squares with the top glued to the bottom shifted by ``k``.

    Bottom vertex ``i`` is named ``str(i)``; the top copy of position ``i``
    is bottom vertex ``i + k``.  Square ``i`` holds the bottom edge ``i``, the
    vertical edge ``i`` and the diagonal from top ``i`` to bottom ``i + 1``.
    Sides are keyed explicitly because the vertex pairs can coincide.
    """
    if n < 5 or not 2 <= k <= n - 3:
        raise ParameterOutOfRange(f"torus_shift needs n >= 5 and 2 <= k <= n-3, got ({n}, {k})")
    b = lambda i: str(i % n)  # noqa: E731
    t = lambda i: str((i + k) % n)  # noqa: E731
    faces = []
    for i in range(n):
        h, v, v1, d = ("h", i), ("v", i), ("v", (i + 1) % n), ("d", i)
        faces.append(((b(i), b(i + 1), t(i)), (h, d, v)))
        faces.append(((t(i), b(i + 1), t(i + 1)), (d, v1, ("h", (i + k) % n))))
    return _label(build_keyed(faces), "torus_shift", n=n, k=k)


def toric_grid(n, m):
    """Cone over every square of the ``n x m`` torus grid (odd ``n, m >= 3``)."""
    if n < 3 or m < 3 or n % 2 == 0 or m % 2 == 0:
        raise ParameterOutOfRange(f"toric_grid needs odd n, m >= 3, got ({n}, {m})")

    def g(i, j):
        return f"g{i % n}_{j % m}"

    tris = []
    for i in range(n):
        for j in range(m):
            c = f"c{i}_{j}"
            tris += [
                (g(i, j), g(i + 1, j), c),
                (g(i + 1, j), g(i + 1, j + 1), c),
                (g(i + 1, j + 1), g(i, j + 1), c),
                (g(i, j + 1), g(i, j), c),
            ]
    return _label(build_simplicial(tris), "toric_grid", n=n, m=m)


def projective_moebius_wheel(n):
    """Projective plane: a one-row Moebius band of ``n`` squares capped by a wheel.

    Rim vertices ``R0 .. R{2n-1}`` run once round the band boundary, the
    wheel centre is ``C``.  Square ``i`` spans ``R_i, R_{i+1}`` on the bottom
    and ``R_{n+i}, R_{n+i+1}`` on the top.  Strict validity starts at n = 3.
    """
    if n < 2:
        raise ParameterOutOfRange(f"projective_moebius_wheel needs n >= 2, got {n}")
    r = lambda i: f"R{i % (2 * n)}"  # noqa: E731
    rim = lambda i: ("r", i % (2 * n))  # noqa: E731
    faces = []
    for i in range(n):
        vert, vert1, diag = ("v", i), ("v", (i + 1) % n), ("d", i)
        faces.append(((r(i), r(i + 1), r(n + i)), (rim(i), diag, vert)))
        faces.append(((r(n + i), r(i + 1), r(n + i + 1)), (diag, vert1, rim(n + i))))
    for i in range(2 * n):
        faces.append((("C", r(i), r(i + 1)), (("s", i), rim(i), ("s", (i + 1) % (2 * n)))))
    return _label(build_keyed(faces), "projective_moebius_wheel", n=n)


def ring_edges(smap):
    """Bottom edges ``{i, i+1}`` of a :func:`torus_shift` map, in strip order."""
    return sorted({smap.side_edge[3 * f] for f in range(0, smap.n_faces, 2)})


def rim_edges(smap):
    """Edges between two ``R`` vertices of a Moebius wheel that bound a wheel face."""
    out = []
    for f in range(smap.n_faces):
        names = [smap.vertex_names[v] for v in smap.face_vertices(f)]
        if "C" in names:
            c = names.index("C")
            out.append(smap.side_edge[3 * f + (c + 1) % 3])
    return sorted(out)


def load_fixture(name):
    text = resources.files("zzatlas.data").joinpath(name).read_text()
    return json.loads(text)


def sphere_example11():
    """Sphere glued from two disks along a directed hexagon (checked-in fixture)."""
    return _label(build_simplicial(load_fixture("sphere_example11.tri.json")["triangles"]),
                  "sphere_example11")


def random_triangulation(seed, size):
    """Sphere grown from the tetrahedron by inserting vertices into random faces.

    ``size`` is the final vertex count.
    """
    if size < 4:
        raise ParameterOutOfRange(f"random_triangulation needs size >= 4, got {size}")
    rng = random.Random(seed)
    tris = [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)]
    for v in range(4, size):
        x, y, z = tris.pop(rng.randrange(len(tris)))
        tris += [(x, y, v), (y, z, v), (z, x, v)]
    return _label(build_simplicial(tris), "random", seed=seed, size=size)


FAMILIES = {
    "bipyramid": (bipyramid, ("n",)),
    "torus-shift": (torus_shift, ("n", "k")),
    "toric-grid": (toric_grid, ("n", "m")),
    "moebius-wheel": (projective_moebius_wheel, ("n",)),
    "sphere-example11": (sphere_example11, ()),
    "random": (random_triangulation, ("seed", "size")),
}
