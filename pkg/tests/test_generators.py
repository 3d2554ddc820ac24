import pytest

from zzatlas.errors import ParameterOutOfRange
from zzatlas.generators import (
    FAMILIES,
    bipyramid,
    load_fixture,
    projective_moebius_wheel,
    random_triangulation,
    rim_edges,
    ring_edges,
    sphere_example11,
    toric_grid,
    torus_shift,
)
from zzatlas.orientation import classify, enumerate_z_orientations
from zzatlas.surface import STRICT, SURFACE, build_simplicial, find_isomorphism, validate
from zzatlas.zigzag import all_zigzags


def test_bipyramid_counts():
    m = bipyramid(3)
    assert (m.n_vertices, m.n_edges, m.n_faces) == (5, 9, 6)
    assert validate(m, STRICT).ok
    assert m.provenance == {"family": "bipyramid", "params": {"n": 3}, "strict": True}


@pytest.mark.parametrize("n", range(3, 13))
def test_bipyramid_pair_counts(n):
    k = all_zigzags(bipyramid(n)).k
    if n % 2:
        assert k == 1
    elif (n // 2) % 2:
        assert k == 2
    else:
        assert k == 4


def test_torus_shift_shape():
    m = torus_shift(7, 3)
    assert (m.n_vertices, m.n_edges, m.n_faces) == (7, 21, 14)
    assert m.euler_characteristic() == 0
    assert m.provenance["strict"]
    assert all_zigzags(m).k == 3
    assert len(ring_edges(m)) == 7


def test_torus_shift_smallest_instance():
    m = torus_shift(5, 2)
    assert all_zigzags(m).lengths == [10, 10, 10]
    assert not m.provenance["strict"]
    assert validate(m, SURFACE).ok


def test_torus_shift_range():
    for n, k in [(4, 1), (5, 1), (5, 3), (8, 6)]:
        with pytest.raises(ParameterOutOfRange):
            torus_shift(n, k)


def test_toric_grid_counts():
    m = toric_grid(3, 3)
    assert (m.n_vertices, m.n_edges, m.n_faces) == (18, 54, 36)
    assert m.euler_characteristic() == 0 and validate(m, STRICT).ok
    for tau in enumerate_z_orientations(m):
        assert classify(m, tau).all_faces_type_I


def test_toric_grid_range():
    for n, mm in [(2, 3), (3, 4), (1, 3)]:
        with pytest.raises(ParameterOutOfRange):
            toric_grid(n, mm)


def test_moebius_wheel():
    for n in range(2, 7):
        m = projective_moebius_wheel(n)
        assert m.euler_characteristic() == 1 and not m.is_orientable()
        assert m.provenance["strict"] == (n >= 3)
        assert len(rim_edges(m)) == 2 * n
    with pytest.raises(ParameterOutOfRange):
        projective_moebius_wheel(1)


def test_sphere_fixture():
    m = sphere_example11()
    assert m.euler_characteristic() == 2
    assert validate(m, STRICT).ok
    data = load_fixture("sphere_example11.tri.json")
    assert len(data["notes"]) == len(data["triangles"]) == m.n_faces


def test_random_triangulation():
    tetra = build_simplicial([("0", "1", "2"), ("0", "3", "1"), ("1", "3", "2"), ("0", "2", "3")])
    assert find_isomorphism(random_triangulation(1, 4), tetra) is not None
    m = random_triangulation(1, 20)
    assert validate(m, STRICT).ok and m.n_vertices == 20
    assert random_triangulation(7, 15).triangles() == random_triangulation(7, 15).triangles()
    with pytest.raises(ParameterOutOfRange):
        random_triangulation(0, 3)


@pytest.mark.parametrize("seed", range(20))
def test_random_sphere_chi(seed):
    assert random_triangulation(seed, 4 + seed).euler_characteristic() == 2


def test_families_table():
    assert set(FAMILIES) == {
        "bipyramid", "torus-shift", "toric-grid", "moebius-wheel", "sphere-example11", "random"
    }
