"""Ball-model geometry: distances, Busemann bracket, isometries, polar coordinates."""

import numpy as np
import pytest

from ballfourier.geometry import (
    BoundaryPoint,
    GeometryError,
    Isometry,
    MobiusTranslation,
    Point,
    apply,
    busemann,
    busemann_field,
    dist,
    pairwise_dist,
    point_to_polar,
    polar_to_point,
    random_isometry,
    random_rotation,
    volume_weight,
)

LN3 = np.log(3.0)


def test_dist_identity():
    o = Point([0.0, 0.0])
    assert dist(o, o) == 0.0


def test_dist_radial_matches_artanh_formula():
    # r = 2 artanh(0.5) = ln 3, cross-checked against the arccosh form
    x = Point([0.5, 0.0])
    assert dist(Point([0.0, 0.0]), x) == pytest.approx(LN3, abs=1e-14)
    assert dist(Point([0.0, 0.0]), x) == pytest.approx(2.0 * np.arctanh(0.5), abs=1e-14)


def test_dist_dimension_mismatch():
    with pytest.raises(GeometryError):
        dist(Point([0.1, 0.0]), Point([0.1, 0.0, 0.0]))


def test_point_validation():
    with pytest.raises(GeometryError):
        Point([1.0, 0.0])
    with pytest.raises(GeometryError):
        Point([0.9999999999999, 0.0])


def test_boundary_point_renormalized():
    b = BoundaryPoint([3.0, 4.0])
    assert np.linalg.norm(b.coords) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("dim", [2, 3])
def test_isometry_invariance_of_dist_randomized(dim):
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(1000):
        g = random_isometry(rng, dim)
        x = Point(rng.uniform(-0.5, 0.5, dim))
        y = Point(rng.uniform(-0.5, 0.5, dim))
        worst = max(worst, abs(dist(apply(g, x), apply(g, y)) - dist(x, y)))
    assert worst <= 1e-10


def test_apply_identity_and_translation_of_origin():
    x = Point([0.3, -0.2, 0.1])
    assert np.allclose(apply(Isometry.identity(3), x).coords, x.coords)
    a = np.array([0.4, 0.1, -0.2])
    g = Isometry.translation(a)
    assert np.allclose(apply(g, Point(np.zeros(3))).coords, a, atol=1e-15)


def test_translation_inverse_roundtrip():
    rng = np.random.default_rng(3)
    for dim in (2, 3):
        g = random_isometry(rng, dim)
        x = Point(rng.uniform(-0.6, 0.6, dim) * 0.8)
        y = apply(g.inverse(), apply(g, x))
        assert np.allclose(y.coords, x.coords, atol=1e-12)


def test_busemann_at_origin_vanishes():
    for b in (BoundaryPoint([1.0, 0.0]), BoundaryPoint([0.0, 1.0, 0.0])):
        assert busemann(Point(np.zeros(b.dim)), b) == pytest.approx(0.0, abs=1e-15)


def test_busemann_on_ray_toward_b_equals_dist():
    # point half-way toward b: log(0.75/0.25) = ln 3 = dist(0, x)
    b = BoundaryPoint([1.0, 0.0])
    x = Point([0.5, 0.0])
    assert busemann(x, b) == pytest.approx(LN3, abs=1e-14)
    assert busemann(x, b) == pytest.approx(dist(Point([0.0, 0.0]), x), abs=1e-14)


@pytest.mark.parametrize("dim", [2, 3])
def test_busemann_lipschitz_bound(dim):
    rng = np.random.default_rng(11)
    o = Point(np.zeros(dim))
    for _ in range(500):
        direction = rng.standard_normal(dim)
        direction /= np.linalg.norm(direction)
        x = Point(rng.uniform(0.0, 0.95) * direction)
        bdir = rng.standard_normal(dim)
        b = BoundaryPoint(bdir)
        assert abs(busemann(x, b)) <= dist(o, x) + 1e-12


@pytest.mark.parametrize("dim", [2, 3])
def test_busemann_cocycle_randomized(dim):
    rng = np.random.default_rng(23)
    worst = 0.0
    for _ in range(1000):
        g = random_isometry(rng, dim)
        x = Point(rng.uniform(-0.5, 0.5, dim))
        b = BoundaryPoint(rng.standard_normal(dim))
        lhs = busemann(apply(g, x), b) - busemann(apply(g, Point(np.zeros(dim))), b)
        rhs = busemann(x, apply(g.inverse(), b))
        worst = max(worst, abs(lhs - rhs))
    assert worst <= 1e-10


@pytest.mark.parametrize("dim", [2, 3])
def test_rotation_moves_busemann_argument(dim):
    # for k fixing the origin: busemann(k x, b) = busemann(x, k^-1 b)
    rng = np.random.default_rng(5)
    for _ in range(50):
        k = Isometry((random_rotation(rng, dim),), dim)
        x = Point(rng.uniform(-0.6, 0.6, dim))
        b = BoundaryPoint(rng.standard_normal(dim))
        assert busemann(apply(k, x), b) == pytest.approx(
            busemann(x, apply(k.inverse(), b)), abs=1e-12
        )


def test_boundary_action_stays_on_sphere():
    rng = np.random.default_rng(2)
    for dim in (2, 3):
        for _ in range(200):
            g = random_isometry(rng, dim)
            b = apply(g, BoundaryPoint(rng.standard_normal(dim)))
            assert abs(np.linalg.norm(b.coords) - 1.0) <= 1e-10


def test_polar_roundtrip():
    rng = np.random.default_rng(9)
    for dim in (2, 3):
        for _ in range(100):
            r = rng.uniform(0.0, 8.0)
            w = rng.standard_normal(dim)
            w /= np.linalg.norm(w)
            x = polar_to_point(r, w)
            assert dist(Point(np.zeros(dim)), x) == pytest.approx(r, abs=1e-11)
            r2, w2 = point_to_polar(x)
            assert r2 == pytest.approx(r, abs=1e-12)
            if r > 0:
                assert np.allclose(w2, w, atol=1e-12)


def test_polar_examples():
    assert np.allclose(polar_to_point(0.0, [0.0, 1.0]).coords, [0.0, 0.0])
    x = polar_to_point(LN3, [1.0, 0.0])
    assert np.allclose(x.coords, [0.5, 0.0], atol=1e-15)


def test_volume_weight():
    assert volume_weight(0.0, 3) == 0.0
    assert volume_weight(1.0, 3) == pytest.approx(np.sinh(1.0) ** 2, abs=1e-12)
    assert volume_weight(1.0, 3) == pytest.approx(1.381098, abs=5e-7)
    r = np.linspace(0.1, 5.0, 50)
    for d in (2, 3):
        w = volume_weight(r, d)
        assert np.all(np.diff(w) > 0)


def test_bulk_helpers_match_scalar_forms():
    rng = np.random.default_rng(31)
    xs = rng.uniform(-0.5, 0.5, (6, 3))
    ys = rng.uniform(-0.5, 0.5, (4, 3))
    bs = rng.standard_normal((4, 3))
    bs /= np.linalg.norm(bs, axis=1, keepdims=True)
    D = pairwise_dist(xs, ys)
    B = busemann_field(xs, bs)
    for i in range(6):
        for j in range(4):
            assert D[i, j] == pytest.approx(dist(Point(xs[i]), Point(ys[j])), abs=1e-12)
            assert B[i, j] == pytest.approx(busemann(Point(xs[i]), BoundaryPoint(bs[j])), abs=1e-12)


def test_mobius_translation_requires_interior_target():
    with pytest.raises(GeometryError):
        MobiusTranslation(np.array([1.0, 0.0]))
