import random

from stellar import Complex, standard_sphere
from stellar.homology import (
    AbelianGroup,
    complex_h1,
    homology_from_boundaries,
    integer_rank,
    simplicial_boundary_matrices,
    smith_normal_form,
    z2_betti_from_boundaries,
    z2_rank,
)


def test_snf_known_matrices():
    assert smith_normal_form([[2, 0], [0, 3]]) == [1, 6]
    assert smith_normal_form([[0, 0], [0, 0]]) == []
    assert smith_normal_form([[1, 0], [0, 1]]) == [1, 1]
    # torsion Z/4 example
    assert smith_normal_form([[2, 2], [2, -2]]) == [2, 4]


def test_snf_divisor_chain_random():
    rng = random.Random(5)
    for _ in range(30):
        rows = [
            [rng.randint(-4, 4) for _ in range(rng.randint(1, 4))]
            for _ in range(rng.randint(1, 4))
        ]
        width = max(len(r) for r in rows)
        rows = [r + [0] * (width - len(r)) for r in rows]
        diag = smith_normal_form(rows)
        for a, b in zip(diag, diag[1:]):
            assert b % a == 0
        assert integer_rank(rows) == len(diag)
        assert z2_rank(rows) == sum(1 for d in diag if d % 2)


def test_group_describe():
    assert AbelianGroup(0).describe() == "0"
    assert AbelianGroup(2, (3,)).describe() == "Z + Z + Z/3"
    assert AbelianGroup(1, (2, 4)).z2_betti() == 3


def test_h1_of_circle_and_spheres():
    circle = Complex([(1, 2), (2, 3), (1, 3)])
    assert complex_h1(circle) == AbelianGroup(1)
    assert complex_h1(standard_sphere(2)) == AbelianGroup(0)
    disk = Complex([(1, 2, 3)])
    assert complex_h1(disk) == AbelianGroup(0)


def test_h1_of_wedge_like_graph():
    # two circles sharing the vertex 1
    k = Complex([(1, 2), (2, 3), (1, 3), (1, 4), (4, 5), (1, 5)])
    assert complex_h1(k) == AbelianGroup(2)


def test_mod2_concordance_random():
    rng = random.Random(11)
    for _ in range(30):
        gens = set()
        while len(gens) < 5:
            gens.add(tuple(sorted(rng.sample(range(1, 8), 3))))
        k = Complex(gens)
        n1, d1, d2 = simplicial_boundary_matrices(k)
        group = homology_from_boundaries(n1, d1, d2)
        assert group.z2_betti() == z2_betti_from_boundaries(n1, d1, d2)
