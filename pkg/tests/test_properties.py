"""Randomised invariants over grown sphere triangulations."""
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from zzatlas.constructions import extract_and_roundtrip, shred_to_type_I
from zzatlas.generators import random_triangulation
from zzatlas.monodromy import D_F, LOCAL, all_monodromies, monodromy_subgraphs, neg
from zzatlas.orientation import (
    TYPE_I,
    TYPE_II,
    ZOrientation,
    balance,
    classify,
    is_homogeneous,
    types_invariant_under_reversal,
)
from zzatlas.structure import MOEBIUS, components, theorem1_report
from zzatlas.surface import STRICT, validate
from zzatlas.zigzag import all_zigzags, inverse_step, n_states, step

maps = st.builds(random_triangulation, st.integers(0, 10**6), st.integers(4, 16))
SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def map_and_orientation(draw):
    m = draw(maps)
    k = all_zigzags(m).k
    return m, ZOrientation.from_index(draw(st.integers(0, 2**k - 1)), k)


@SETTINGS
@given(maps)
def test_random_maps_are_strict_spheres(m):
    assert m.euler_characteristic() == 2
    assert validate(m, STRICT).ok


@SETTINGS
@given(maps)
def test_step_is_a_bijection(m):
    for x in range(n_states(m)):
        assert inverse_step(m, step(m, x)) == x


@SETTINGS
@given(maps)
def test_state_partition(m):
    zs = all_zigzags(m)
    seen = sorted(x for pair in zs.pairs for z in pair for x in z.states)
    assert seen == list(range(4 * m.n_edges))
    assert sum(zs.lengths) == 2 * m.n_edges


@SETTINGS
@given(map_and_orientation())
def test_trichotomy_and_balance(mt):
    m, tau = mt
    cls = classify(m, tau)
    for v, (i, o) in balance(m, cls).items():
        assert i == o
    assert types_invariant_under_reversal(m, tau)
    if cls.all_faces_type_I:
        assert len(cls.edges_of_type(TYPE_I)) == 2 * len(cls.edges_of_type(TYPE_II))


@SETTINGS
@given(map_and_orientation())
def test_shred_then_theorem1(mt):
    m, tau = mt
    before = classify(m, tau)
    r = shred_to_type_I(m, tau)
    after = classify(r.smap, r.tau)
    assert after.all_faces_type_I
    for e_old, e_new in r.edge_map.items():
        assert after.edge_type[e_new] == before.edge_type[e_old]
    rep = theorem1_report(r.smap, r.tau, after)
    assert len(set(rep.as_tuple())) == 1
    assert all(c.klass != MOEBIUS for c in components(r.smap, r.tau, after))
    if rep.cond1:
        res = extract_and_roundtrip(r.smap, r.tau)
        assert res["isomorphic"] and res["orientation_match"]
    assert is_homogeneous(r.smap, r.tau, after) == rep.cond1


@SETTINGS
@given(maps)
def test_monodromy_total_and_forests(m):
    assert all(rec.mtype is not None for rec in all_monodromies(m))
    subs = monodromy_subgraphs(m)
    assert subs["M1"]["forest"] and subs["M2"]["forest"]


def test_D_F_negation_property():
    d = D_F()
    assert all(d[neg(d[e])] == neg(e) for e in LOCAL)
