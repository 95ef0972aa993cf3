import random

import pytest

from stellar import Complex, ComplexError, cone, simplex, standard_simplex, standard_sphere
from stellar.complexes import LabelAllocator, all_faces, simplex_boundary


def random_complex(rng, dim=2, verts=8, gens=6):
    labels = list(range(1, verts + 1))
    out = set()
    while len(out) < gens:
        out.add(tuple(sorted(rng.sample(labels, dim + 1))))
    return Complex(out)


def test_simplex_normalizes_and_rejects_bad_input():
    assert simplex((2, 1)) == (1, 2)
    with pytest.raises(ComplexError):
        simplex((1, 1, 2))
    with pytest.raises(ComplexError):
        simplex((0, 1))


def test_addition_is_symmetric_difference():
    a = Complex([(1, 2), (2, 3)])
    b = Complex([(2, 3), (3, 4)])
    assert a + b == Complex([(1, 2), (3, 4)])
    assert a + a == Complex()


def test_boundary_of_triangle():
    assert Complex([(1, 2, 3)]).boundary() == Complex([(1, 2), (1, 3), (2, 3)])


def test_boundary_squares_to_zero_random():
    rng = random.Random(20)
    for _ in range(50):
        k = random_complex(rng, dim=rng.choice([2, 3]), verts=9, gens=rng.randint(2, 7))
        assert not k.boundary().boundary()


def test_boundary_rejects_vertices():
    with pytest.raises(ComplexError):
        Complex([(1,), (2,)]).boundary()


def test_standard_sphere_is_closed():
    for n in range(1, 4):
        s = standard_sphere(n)
        assert s.is_closed()
        assert s.euler_characteristic() == (2 if n % 2 == 0 else 0)


def test_join_disjointness_enforced():
    with pytest.raises(ComplexError):
        Complex([(1, 2)]).join(Complex([(2, 3)]))


def test_join_and_cone():
    arc = Complex([(1, 2), (2, 3)])
    coned = cone(9).join(arc)
    assert coned == Complex([(1, 2, 9), (2, 3, 9)])


def test_link_and_residual_decomposition():
    rng = random.Random(7)
    for _ in range(40):
        k = random_complex(rng, dim=2, verts=8, gens=5)
        for v in sorted(k.vertices()):
            a = (v,)
            rebuilt = cone(v).join(k.link(a)) + k.residual(a)
            assert rebuilt == k


def test_link_of_edge_in_join_of_circles():
    s3 = standard_sphere(1, start=1).join(standard_sphere(1, start=10))
    lk = s3.link((1, 10))
    assert lk == Complex([(2, 11), (2, 12), (3, 11), (3, 12)])


def test_f_vector_and_chi():
    s2 = standard_sphere(2)
    assert s2.f_vector() == [4, 6, 4]
    assert s2.euler_characteristic() == 2
    ball = standard_simplex(3)
    assert ball.f_vector() == [4, 6, 4, 1]
    assert ball.euler_characteristic() == 1


def test_connectedness():
    assert standard_sphere(2).is_connected()
    two_bits = Complex([(1, 2), (4, 5)])
    assert not two_bits.is_connected()
    # a sphere pair: S^0
    assert not Complex([(1,), (2,)]).is_connected()


def test_closure_and_faces():
    k = Complex([(1, 2, 3)])
    assert k.closure() == frozenset(all_faces((1, 2, 3)))
    assert k.faces_of_dim(1) == frozenset({(1, 2), (1, 3), (2, 3)})


def test_simplex_boundary_of_vertex_is_join_identity():
    assert simplex_boundary((5,)) == {()}


def test_label_allocator_skips_used_labels():
    k = Complex([(1, 2, 7)])
    alloc = LabelAllocator(k)
    assert alloc.fresh() == 8
    alloc.note(20)
    assert alloc.fresh() == 21
