import math

import numpy as np
import pytest

from horonecklace.core import GeometryError, Horoball
from horonecklace.family import generate_family
from horonecklace.mobius import apply_horoball, translation, vertical_rotation
from horonecklace.necklace import (
    EyeOverlapError,
    EyePair,
    InvalidNecklaceError,
    Necklace,
    NecklaceError,
    crossing_beads,
    encircles,
    validate_necklace,
    winding_number,
)

S3 = math.sqrt(3)
HEX = [(.5, S3 / 2), (-.5, S3 / 2), (-1, 0), (-.5, -S3 / 2), (.5, -S3 / 2), (1.5, -S3 / 2), (2, 0), (1.5, S3 / 2)]


def hexagonal():
    return Necklace(tuple(Horoball(p, 1.0) for p in HEX)), EyePair.standard(1.0)


class TestEyePair:
    def test_requires_full_sized(self):
        with pytest.raises(GeometryError):
            EyePair(Horoball((0, 0), .9), Horoball((1, 0), 1))

    def test_requires_disjoint(self):
        with pytest.raises(GeometryError):
            EyePair.standard(0.9)

    def test_frame(self):
        e = EyePair(Horoball((1, 1), 1), Horoball((1, 3), 1))
        assert e.c == 2
        assert e.to_frame(1 + 3j) == pytest.approx(2)
        assert e.from_frame(e.to_frame(4 - 2j)) == pytest.approx(4 - 2j)


class TestValidate:
    def test_hexagonal_ok(self):
        n, e = hexagonal()
        r = validate_necklace(n, 1e-9, e)
        assert r.ok, r.failures
        assert r.winding in ((1, 1), (-1, -1))
        assert r.max_tie_residual <= 1e-12

    def test_swapped_beads_break_chain(self):
        n, _ = hexagonal()
        b = list(n.beads)
        b[1], b[2] = b[2], b[1]
        r = validate_necklace(Necklace(tuple(b)))
        assert not r.ok and any("tie" in f for f in r.failures)

    def test_oversized_bead(self):
        n, _ = hexagonal()
        b = list(n.beads)
        b[0] = Horoball(b[0].center, 1.1)
        r = validate_necklace(Necklace(tuple(b)))
        assert not r.ok and r.max_height_excess == pytest.approx(.1)

    def test_too_few_beads(self):
        with pytest.raises(InvalidNecklaceError):
            validate_necklace(Necklace((Horoball((0, 0), 1), Horoball((1, 0), 1))))

    def test_overlap_detected(self):
        beads = (Horoball((0, 0), 1), Horoball((1, 0), 1), Horoball((.5, .2), 1))
        r = validate_necklace(Necklace(beads))
        assert not r.ok and r.min_disjointness_slack < 0


class TestWinding:
    def test_square(self):
        sq = [(1, 1), (-1, 1), (-1, -1), (1, -1)]
        assert winding_number(sq, (0, 0)) == 1
        assert winding_number(sq[::-1], (0, 0)) == -1

    def test_outside(self):
        assert winding_number([(1, 1), (2, 1), (1, 2)], (0, 0)) == 0

    def test_on_edge(self):
        with pytest.raises(GeometryError):
            winding_number([(1, 1), (-1, 1), (-1, -1), (1, -1)], (1, 0))

    def test_hexagonal_polygon(self):
        assert winding_number(HEX, (0, 0)) == winding_number(HEX, (1, 0)) == 1

    def test_perturbation_stable(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            pts = [complex(*p) + complex(*rng.uniform(-1e-9, 1e-9, 2)) for p in HEX]
            assert winding_number(pts, 0j) == 1


class TestEncircles:
    def test_hexagonal(self):
        assert encircles(*hexagonal())

    def test_single_eye(self):
        ring = Necklace(tuple(Horoball(complex(math.cos(t), math.sin(t)), 1.0)
                              for t in np.arange(6) * math.pi / 3))
        assert not encircles(ring, EyePair(Horoball((0, 0), 1), Horoball((10, 0), 1)))

    def test_far_away(self):
        n, _ = hexagonal()
        shifted = n.transformed(lambda b: Horoball(b.z + 4, 1))
        assert not encircles(shifted, EyePair(Horoball((0, 0), 1), Horoball((1, 0), 1)))

    def test_invalid_necklace_error(self):
        n, e = hexagonal()
        b = list(n.beads)
        b[1], b[2] = b[2], b[1]
        with pytest.raises(InvalidNecklaceError):
            encircles(Necklace(tuple(b)), e)

    def test_eye_overlap_error(self):
        n, _ = hexagonal()
        with pytest.raises(EyeOverlapError):
            encircles(n, EyePair(Horoball((0, .3), 1), Horoball((1, .3), 1)))

    def test_isometry_equivariance(self):
        n, e = generate_family(1.3)
        base = validate_necklace(n, 1e-9, e)
        for g in (translation((3, -2)), vertical_rotation((0.4, 1.1), 2.0)):
            n2 = n.transformed(lambda b: apply_horoball(g, b))
            e2 = EyePair(apply_horoball(g, e.c1), apply_horoball(g, e.c2))
            r = validate_necklace(n2, 1e-9, e2)
            assert r.ok and abs(r.winding[0]) == 1
            assert np.allclose(r.tie_residuals, base.tie_residuals, atol=1e-9)
            assert encircles(n2, e2)


class TestCrossing:
    def test_hexagonal(self):
        n, e = hexagonal()
        cb = crossing_beads(n, e)
        got = [n[i].z for i in cb.as_tuple()]
        want = [complex(-.5, S3 / 2), complex(-.5, -S3 / 2), complex(1.5, S3 / 2), complex(1.5, -S3 / 2)]
        assert np.allclose(got, want)

    def test_interior_family_member(self):
        n, e = generate_family(1.4)
        cb = crossing_beads(n, e)
        # P0 and Q6 straddle the strip top, P3 and Q3 the bottom
        assert cb.as_tuple() == (0, 3, 7, 4)

    def test_flip_swaps_upper_and_lower(self):
        n, e = hexagonal()
        flipped = n.transformed(lambda b: Horoball((b.center.x, -b.center.y), 1))
        a, b = crossing_beads(n, e), crossing_beads(flipped, e)
        assert (a.upper1, a.lower1, a.upper2, a.lower2) == (b.lower1, b.upper1, b.lower2, b.upper2)

    def test_missing_plane(self):
        ring = Necklace(tuple(Horoball(complex(math.cos(t), math.sin(t)), 1.0)
                              for t in np.arange(6) * math.pi / 3))
        with pytest.raises(NecklaceError):
            crossing_beads(ring, EyePair(Horoball((0, 0), 1), Horoball((10, 0), 1)))

    def test_distinct_on_family(self):
        for th in np.linspace(math.pi / 3, 2 * math.pi / 3, 17):
            n, e = generate_family(th)
            assert len(set(crossing_beads(n, e).as_tuple())) == 4
