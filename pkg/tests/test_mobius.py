import cmath
import math

import numpy as np
import pytest

from horonecklace.core import (
    BoundaryPoint,
    Geodesic,
    GeometryError,
    Horoball,
    HoroballAtInfinity,
    INFINITY,
    are_tangent,
    distance,
    horoball_distance,
)
from horonecklace.mobius import (
    MobiusMap,
    apply_boundary,
    apply_horoball,
    compose,
    elliptic_about_geodesic,
    half_turn,
    inverse,
    translation,
    vertical_rotation,
)
from oracles import reconstructed_image

J = MobiusMap(0, -1, 1, 0)


def random_map(rng) -> MobiusMap:
    while True:
        a, b, c, d = rng.normal(size=4) + 1j * rng.normal(size=4)
        if abs(a * d - b * c) > 0.1:
            return MobiusMap(a, b, c, d)


def test_normalized_determinant():
    g = MobiusMap(2, 3j, 1, 5)
    assert abs(g.det - 1) <= 1e-12
    with pytest.raises(GeometryError):
        MobiusMap(1, 2, 2, 4)


class TestBoundary:
    def test_examples(self):
        assert apply_boundary(MobiusMap.identity(), (3, 4)) == BoundaryPoint(3, 4)
        p = apply_boundary(J, (2, 0))
        assert (p.x, p.y) == pytest.approx((-0.5, 0))
        assert apply_boundary(J, (0, 0)) is INFINITY
        assert apply_boundary(J, INFINITY) == BoundaryPoint(0, 0)
        assert apply_boundary(translation((1, 1)), INFINITY) is INFINITY

    def test_direct_formula(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            g = random_map(rng)
            z = complex(*rng.normal(size=2))
            ref = (g.a * z + g.b) / (g.c * z + g.d)
            assert apply_boundary(g, z).z == pytest.approx(ref, abs=1e-12)


class TestHoroball:
    def test_examples(self):
        b = apply_horoball(J, Horoball((2, 0), 1))
        assert b.z == pytest.approx(-0.5) and b.height == pytest.approx(0.25)
        inf = apply_horoball(J, Horoball((0, 0), 0.3))
        assert isinstance(inf, HoroballAtInfinity) and inf.cut_height == pytest.approx(1 / 0.3)
        back = apply_horoball(J, HoroballAtInfinity(1 / 0.3))
        assert back.z == pytest.approx(0) and back.height == pytest.approx(0.3)
        t = apply_horoball(translation((2, -1)), Horoball((1, 1), .7))
        assert t.z == pytest.approx(3 + 0j) and t.height == .7
        scaled = apply_horoball(MobiusMap(2, 0, 0, .5), HoroballAtInfinity(1.0))
        assert scaled.cut_height == pytest.approx(4.0)

    def test_examples_against_oracle(self):
        c, h, low = reconstructed_image(0, -1, 1, 0, 2 + 0j, 1.0)
        assert (c, h, low) == pytest.approx((-0.5, 0.25, 0), abs=1e-12)

    def test_against_sphere_oracle(self):
        rng = np.random.default_rng(2)
        n = 0
        while n < 200:
            g = random_map(rng)
            p = complex(*rng.normal(size=2))
            h = rng.uniform(.05, 1.5)
            if abs(g.c * p + g.d) < 0.1:
                continue
            n += 1
            img = apply_horoball(g, Horoball(p, h))
            c, hh, low = reconstructed_image(g.a, g.b, g.c, g.d, p, h)
            assert abs(img.z - c) <= 1e-9 * max(1, abs(c))
            assert abs(img.height - hh) <= 1e-9 * max(1, hh)
            assert abs(low) <= 1e-9 * max(1, hh)


class TestConstructors:
    def test_vertical_rotation(self):
        p = apply_boundary(vertical_rotation((0, 0), math.pi / 2), (1, 0))
        assert p.z == pytest.approx(1j, abs=1e-15)

    def test_half_turn_sends_center_to_infinity(self):
        g = half_turn(Geodesic((-1, 0), (1, 0)))
        for t in (0.3, 1.0, 2.5):
            img = apply_horoball(g, Horoball((0, 0), t))
            assert isinstance(img, HoroballAtInfinity)
            assert img.cut_height == pytest.approx(1 / t, rel=1e-12)

    def test_zero_angle_is_identity(self):
        g = elliptic_about_geodesic(Geodesic((0.3, 1), (2, -1)), 0.0)
        assert g.is_close(MobiusMap.identity())

    def test_fixes_endpoints_and_horoballs_there(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            u, w = (complex(*rng.normal(size=2)) for _ in range(2))
            g = elliptic_about_geodesic(Geodesic(u, w), rng.uniform(-3, 3))
            assert apply_boundary(g, u).z == pytest.approx(u, abs=1e-12)
            assert apply_boundary(g, w).z == pytest.approx(w, abs=1e-12)
            b = apply_horoball(g, Horoball(u, .4))
            assert b.z == pytest.approx(u, abs=1e-12) and b.height == pytest.approx(.4, abs=1e-12)

    def test_infinite_endpoint(self):
        g = elliptic_about_geodesic(Geodesic(INFINITY, (1, 0)), math.pi / 2)
        assert apply_boundary(g, INFINITY) is INFINITY
        assert apply_boundary(g, (1, 0)).z == pytest.approx(1 + 0j)
        assert apply_horoball(g, HoroballAtInfinity(2.0)).cut_height == pytest.approx(2.0)
        # the turn is counterclockwise about endpoint_a = infinity, so clockwise about 1
        assert apply_boundary(g, (2, 0)).z == pytest.approx(1 - 1j)

    def test_positive_angle_is_counterclockwise_about_endpoint_a(self):
        g = vertical_rotation((0, 0), 0.1)
        assert apply_boundary(g, (1, 0)).y > 0

    def test_coincident_endpoints(self):
        with pytest.raises(GeometryError):
            elliptic_about_geodesic(Geodesic((1, 1), (1, 1)), 1.0)


class TestGroup:
    def test_inverse(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            g = random_map(rng)
            assert compose(g, inverse(g)).is_close(MobiusMap.identity(), 1e-12)

    def test_translations_compose(self):
        assert compose(translation((1, 0)), translation((2, 0))).is_close(translation((3, 0)))

    def test_action_is_homomorphism(self):
        rng = np.random.default_rng(6)
        for _ in range(100):
            g1, g2 = random_map(rng), random_map(rng)
            p = complex(*rng.normal(size=2))
            lhs = apply_boundary(g1 @ g2, p)
            rhs = apply_boundary(g1, apply_boundary(g2, p))
            if lhs is INFINITY or rhs is INFINITY:
                continue
            assert abs(lhs.z - rhs.z) <= 1e-9 * max(1, abs(lhs.z))


class TestInvariance:
    def test_distance_preserved(self):
        rng = np.random.default_rng(8)
        for _ in range(300):
            g = random_map(rng)
            a = Horoball(complex(*rng.normal(size=2)), rng.uniform(.1, 1))
            b = Horoball(a.z + rng.uniform(.5, 2) * cmath.exp(1j * rng.uniform(0, 6.3)), rng.uniform(.1, 1))
            if min(abs(g.c * a.z + g.d), abs(g.c * b.z + g.d)) < .1:
                continue
            assert distance(g(a), g(b)) == pytest.approx(horoball_distance(a, b), abs=1e-9)

    def test_distance_with_image_at_infinity(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            a = Horoball(complex(*rng.normal(size=2)), rng.uniform(.1, 1))
            b = Horoball(a.z + rng.uniform(.5, 2) * cmath.exp(1j * rng.uniform(0, 6.3)), rng.uniform(.1, 1))
            shift = complex(*rng.normal(size=2))
            g = compose(translation(shift), MobiusMap(0, -1, 1, -a.z))
            ga = g(a)
            assert isinstance(ga, HoroballAtInfinity)
            assert distance(ga, g(b)) == pytest.approx(horoball_distance(a, b), abs=1e-9)

    def test_tangency_preserved(self):
        rng = np.random.default_rng(10)
        for _ in range(200):
            g = random_map(rng)
            h1, h2 = rng.uniform(.1, 1, 2)
            a = Horoball(complex(*rng.normal(size=2)), h1)
            b = Horoball(a.z + math.sqrt(h1 * h2) * cmath.exp(1j * rng.uniform(0, 6.3)), h2)
            if min(abs(g.c * a.z + g.d), abs(g.c * b.z + g.d)) < .1:
                continue
            assert are_tangent(g(a), g(b), 1e-9)
