"""Shared test corpus: every generator family plus random and derived maps."""
from __future__ import annotations

import json
import random
from functools import lru_cache
from pathlib import Path

from zzatlas.constructions import build_T, directed_cycle, shred_to_type_I
from zzatlas.generators import (
    bipyramid,
    projective_moebius_wheel,
    random_triangulation,
    sphere_example11,
    toric_grid,
    torus_shift,
)
from zzatlas.io import map_from_glued
from zzatlas.orientation import ZOrientation, orientation_from_zigzags
from zzatlas.zigzag import all_zigzags

DATA = Path(__file__).parent / "data"
CAP = 2**12


def torus5():
    return map_from_glued(json.loads((DATA / "torus5.map.json").read_text()))


def bp6_reference_orientation(smap):
    """Reference orientation for n = 2k, k odd: zigzags seeded at a1,12 and a2,23."""
    return orientation_from_zigzags(smap, [(("a", "1"), ("1", "2")), (("a", "2"), ("2", "3"))])


def bp8_reference_orientation(smap, last_reversed=False):
    """Reference orientation for n = 2k, k even: one zigzag from each pair."""
    seeds = [
        (("a", "1"), ("1", "2")),
        (("b", "1"), ("1", "2")),
        (("a", "2"), ("2", "3")),
        (("b", "1"), ("1", "8")) if last_reversed else (("b", "2"), ("2", "3")),
    ]
    return orientation_from_zigzags(smap, seeds)


@lru_cache(maxsize=None)
def suite():
    """``(label, map)`` for the generator suite."""
    out = [(f"bipyramid({n})", bipyramid(n)) for n in range(3, 11)]
    for n, k in [(5, 2), (6, 2), (6, 3), (7, 2), (7, 3), (7, 4), (8, 3), (9, 4)]:
        out.append((f"torus_shift({n},{k})", torus_shift(n, k)))
    for n, m in [(3, 3), (3, 5), (5, 3)]:
        out.append((f"toric_grid({n},{m})", toric_grid(n, m)))
    for n in range(2, 7):
        out.append((f"moebius_wheel({n})", projective_moebius_wheel(n)))
    out.append(("sphere_example11", sphere_example11()))
    out.append(("torus5", torus5()))
    for n in range(3, 9):
        out.append((f"T(cycle {n})", build_T(directed_cycle(n)).smap))
    for seed in range(6):
        out.append((f"random({seed},{8 + 2 * seed})", random_triangulation(seed, 8 + 2 * seed)))
    return tuple(out)


@lru_cache(maxsize=None)
def shredded_spheres(count=200):
    """``(label, map, orientation)`` for random spheres shredded to type I."""
    out = []
    for seed in range(count):
        rng = random.Random(seed)
        m = random_triangulation(seed, rng.randint(5, 12))
        k = all_zigzags(m).k
        tau = ZOrientation.from_index(rng.randrange(2**k), k)
        r = shred_to_type_I(m, tau)
        out.append((f"shredded({seed})", r.smap, r.tau))
    return tuple(out)


def random_maps(count=200):
    return [random_triangulation(seed, 6 + seed % 25) for seed in range(count)]


def orientations(smap, cap=CAP):
    """All orientations if ``2^k <= cap``, else an empty list."""
    k = all_zigzags(smap).k
    if 2**k > cap:
        return []
    return [ZOrientation.from_index(i, k) for i in range(2**k)]
