import pytest

from _corpus import bp6_reference_orientation, bp8_reference_orientation
from zzatlas.errors import MixedFaceTypes, NoTemplateMatch
from zzatlas.generators import bipyramid, toric_grid
from zzatlas.monodromy import (
    D_F,
    LOCAL,
    all_monodromies,
    classify_monodromy,
    d_cycles,
    histogram,
    lemma2_analysis,
    local_name,
    monodromy_subgraphs,
    neg,
    subgraph_dot,
    template_overlaps,
    z_monodromy,
)
from zzatlas.orientation import classify


def compose(p, q):
    return tuple(p[q[e]] for e in LOCAL)


def test_D_F_on_named_face():
    m = bipyramid(5)
    d = D_F(m, 0)
    names = {e: local_name(m, 0, e) for e in LOCAL}
    for e in LOCAL:
        x, y = names[e]
        y2, z = names[d[e]]
        assert y2 == y
        assert z not in (x, y)


def test_D_F_cubed_is_identity():
    d = D_F()
    assert compose(d, compose(d, d)) == LOCAL
    assert d != LOCAL


def test_D_F_negation_rule():
    d = D_F()
    for e in LOCAL:
        assert d[neg(d[e])] == neg(e)


def test_d_cycles_split_by_direction():
    fwd, back = d_cycles()
    assert all(e % 2 == 0 for e in fwd)
    assert all(e % 2 == 1 for e in back)


def test_templates_pairwise_disjoint():
    assert template_overlaps() == []


def test_identity_is_M1():
    assert classify_monodromy(LOCAL)[0] == "M1"
    assert classify_monodromy(D_F())[0] == "M2"


def test_no_template():
    # a single transposition of two unrelated edges fits no shape
    perm = list(LOCAL)
    perm[0], perm[3] = perm[3], perm[0]
    with pytest.raises(NoTemplateMatch):
        classify_monodromy(tuple(perm))


@pytest.mark.parametrize(
    "n, mtype", [(3, "M3"), (7, "M3"), (5, "M4"), (9, "M4"), (6, "M7"), (10, "M7"), (4, "M5"), (8, "M5")]
)
def test_bipyramid_table(n, mtype):
    m = bipyramid(n)
    assert histogram(all_monodromies(m)) == {mtype: m.n_faces}


def test_bp3_M3_shape():
    m = bipyramid(3)
    rec = all_monodromies(m)[0]
    e1, e2, e3 = rec.witness
    p = rec.perm
    assert (p[neg(e1)], p[e2], p[e3]) == (e2, e3, neg(e1))
    assert (p[neg(e3)], p[neg(e2)], p[e1]) == (neg(e2), e1, neg(e3))


def test_bp6_M7_fixes_third_edge():
    m = bipyramid(6)
    for rec in all_monodromies(m):
        e1, e2, e3 = rec.witness
        assert rec.perm[e3] == e3 and rec.perm[neg(e3)] == neg(e3)


@pytest.mark.parametrize("n, mm", [(3, 3), (3, 5), (5, 3)])
def test_toric_all_M6(n, mm):
    m = toric_grid(n, mm)
    assert histogram(all_monodromies(m)) == {"M6": m.n_faces}


def test_monodromy_is_a_permutation():
    m = toric_grid(3, 3)
    for f in range(m.n_faces):
        assert sorted(z_monodromy(m, f)) == list(LOCAL)


def test_subgraphs():
    m = toric_grid(3, 3)
    subs = monodromy_subgraphs(m)
    assert len(subs["M6"]["faces"]) == 36
    assert len(subs["M6"]["edges"]) == m.n_edges
    assert not subs["M6"]["forest"]
    for t in ("M1", "M2", "M3", "M4", "M5", "M7"):
        assert subs[t]["faces"] == [] and subs[t]["forest"]
    subs = monodromy_subgraphs(bipyramid(6))
    assert len(subs["M7"]["faces"]) == 12
    dot = subgraph_dot("G7", subs["M7"])
    assert dot.startswith("graph G7 {") and dot.count("--") == 18


def test_record_dict():
    m = bipyramid(5)
    d = all_monodromies(m)[0].to_dict(m)
    assert d["type"] == "M4" and len(d["witness"]) == 3 and len(d["perm"]) == 6


def test_lemma2_toric():
    m = toric_grid(3, 3)
    for tau in (0, 17, 63):
        for f in range(m.n_faces):
            res = lemma2_analysis(m, tau, f)
            assert res["type"] == "I" and res["predicted"] == "M6"
            assert res["occurrences"] == 2


def test_lemma2_bp6():
    m = bipyramid(6)
    tau = bp6_reference_orientation(m)
    found = [lemma2_analysis(m, tau, f) for f in range(m.n_faces)]
    hits = [r for r in found if r is not None]
    assert hits
    assert all(r["type"] == "II" and r["predicted"] == "M7" for r in hits)


def test_lemma2_bp3_absent():
    m = bipyramid(3)
    assert all(lemma2_analysis(m, 0, f) is None for f in range(m.n_faces))


def test_lemma2_needs_type_I():
    m = bipyramid(8)
    with pytest.raises(MixedFaceTypes):
        lemma2_analysis(m, bp8_reference_orientation(m, last_reversed=True), 0)


def test_M6_faces_type_I_everywhere():
    m = toric_grid(3, 3)
    for tau in range(2 ** 6):
        assert classify(m, tau).all_faces_type_I
