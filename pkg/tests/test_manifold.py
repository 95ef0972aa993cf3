from stellar import (
    Complex,
    check_manifold,
    standard_simplex,
    standard_sphere,
    subdivide,
)
from stellar.manifold import residual_manifold_check


def test_sphere_is_closed_manifold():
    for d in (1, 2, 3):
        rep = check_manifold(standard_sphere(d))
        assert rep.is_manifold is True
        assert rep.closed is True
        assert rep.dimension == d
        assert not rep.bad_vertices


def test_ball_is_manifold_with_boundary():
    rep = check_manifold(standard_simplex(3))
    assert rep.is_manifold is True
    assert rep.closed is False


def test_pinched_sphere_is_not_manifold():
    # two triangles sharing only the vertex 1
    pinch = Complex([(1, 2, 3), (1, 4, 5)])
    rep = check_manifold(pinch)
    assert rep.is_manifold is False
    assert 1 in rep.bad_vertices


def test_wedge_of_circles_is_not_manifold():
    wedge = Complex([(1, 2), (2, 3), (1, 3), (1, 4), (4, 5), (1, 5)])
    rep = check_manifold(wedge)
    assert rep.is_manifold is False
    assert rep.bad_vertices == [1]


def test_non_uniform_is_not_manifold():
    rep = check_manifold(Complex([(1, 2, 3), (4, 5)]))
    assert rep.is_manifold is False


def test_describe_mentions_dimension():
    rep = check_manifold(standard_sphere(2))
    text = rep.describe()
    assert "2" in text and "closed" in text


def test_subdivision_preserves_manifold_verdict():
    k = subdivide(standard_sphere(3), (1, 2), 9)
    rep = check_manifold(k)
    assert rep.is_manifold is True and rep.closed is True


def test_residual_manifold_check():
    s3 = standard_sphere(3)
    rep = residual_manifold_check(s3, (1,))
    # Q(1, S^3) is the single facet not containing 1: a 3-ball
    assert rep.is_manifold is True
    assert rep.closed is False
