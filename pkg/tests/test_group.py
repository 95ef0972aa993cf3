import pytest

from stellar import (
    Complex,
    RegularEquivalence,
    StellarStructure,
    StructureError,
    build_structure,
    collapsible_edges,
    degree,
    face_classes,
    flatness_equivalence_check,
    fold_structure,
    gamma_graph,
    has_circuit,
    internally_flat_complexes,
    is_flat,
    lens_structure,
    standard_sphere,
)
from stellar.group import order_of, p0, p_alpha


def square_structure():
    """Antipodal pairing on a four-edge circle."""
    sphere = Complex([(1, 2), (2, 3), (3, 4), (1, 4)])
    eq = RegularEquivalence.build(
        [[1, 3], [2, 4]], [((1, 2), (3, 4)), ((2, 3), (1, 4))]
    )
    return StellarStructure(apex=9, sphere=sphere, equivalence=eq)


def test_square_circle_has_two_flat_vertex_classes():
    s = square_structure()
    assert s.validate() == [] and s.is_closed
    classes = face_classes(s)
    assert sorted(sorted(a) for a in classes) == [[(1,), (3,)], [(2,), (4,)]]
    assert all(order_of(s, a) == 2 for a in classes)
    assert degree(s) == (2,)
    assert is_flat(s)
    assert flatness_equivalence_check(s)


def test_octahedron_antipodal_structure_is_flat():
    s = lens_structure(2, 1)
    classes = face_classes(s)
    assert len(classes) == 6
    assert all(order_of(s, a) == 2 for a in classes)
    assert degree(s) == (2,)
    assert collapsible_edges(s) == []
    assert len(internally_flat_complexes(s)) == 1


def test_p0_and_p_alpha_are_involutions():
    for s in (square_structure(), fold_structure(4), lens_structure(5, 1)):
        pairing = p0(s)
        n = len(pairing)
        assert sorted(pairing) == list(range(n))
        assert all(pairing[pairing[i]] == i for i in range(n))
        assert all(pairing[i] != i for i in range(n))
        for alpha in face_classes(s):
            swap = p_alpha(s, alpha)
            assert all(swap[swap[i]] == i for i in range(n))


def test_fold_structure_is_flat():
    s = fold_structure(4)
    assert degree(s) == (2,)
    assert is_flat(s)
    assert flatness_equivalence_check(s)
    assert gamma_graph(s).edges == ()


def test_lens_degrees_frozen():
    expected = {
        2: (2,),
        3: (6, 2),
        4: (4, 2),
        5: (10, 2),
        6: (6, 2),
        7: (14, 2),
        8: (8, 2),
        9: (18, 2),
    }
    for q, deg in expected.items():
        twist = 1
        s = lens_structure(q, twist)
        assert degree(s) == deg, q
        assert flatness_equivalence_check(s), q
        assert is_flat(s) == (q == 2), q


def test_lens_gamma_is_a_single_cycle_edge():
    for q in (3, 4, 5):
        g = gamma_graph(lens_structure(q, 1))
        assert len(g.edges) >= 1
        assert has_circuit(g) == (len(g.edges) > len(g.vertices) - 1)


def test_built_sphere_structures_have_forest_gamma():
    for m in (standard_sphere(3),):
        s = build_structure(m).structure
        g = gamma_graph(s)
        assert not has_circuit(g)
        assert degree(s)[-1] == 2


def test_collapsible_edges_on_fold():
    # folding a bipyramid onto itself leaves the equator edges collapsible
    assert len(collapsible_edges(fold_structure(4))) == 4


def test_internally_flat_on_fold():
    s = fold_structure(4)
    pairs = internally_flat_complexes(s)
    assert len(pairs) == 1
    covered = set()
    for a, b in pairs:
        covered |= set(a) | set(b)
    assert covered <= set(s.sphere.generators)


def test_edge_analysis_requires_two_dimensional_sphere():
    s = square_structure()
    assert degree(s) == (2,)  # degree itself is fine in any dimension
    with pytest.raises(StructureError):
        collapsible_edges(s)


def test_gamma_dot_output():
    g = gamma_graph(lens_structure(3, 1))
    dot = g.to_dot()
    assert dot.startswith("graph gamma {")
    assert 'label="6"' in dot


def test_has_circuit_detects_parallel_edges():
    from stellar.group import GammaGraph

    assert has_circuit(GammaGraph((0, 1), ((0, 1, 4), (0, 1, 6))))
    assert not has_circuit(GammaGraph((0, 1, 2), ((0, 1, 4), (1, 2, 6))))
