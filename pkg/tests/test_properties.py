import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from horonecklace.core import Horoball, horoball_distance, tangency_residual, visual_angle
from horonecklace.document import ConfigDocument, dumps, loads
from horonecklace.family import certificate_angle_sum, classify_solution, generate_family
from horonecklace.mobius import MobiusMap, apply_horoball, inverse
from horonecklace.necklace import EyePair, winding_number
from horonecklace.sampling import random_config
from horonecklace.two_eyes import PI_3, alpha_beta, check_hypotheses

coord = st.floats(-3, 3, allow_nan=False)
height = st.floats(0.05, 2.0)
unit = st.floats(0.0, 2 * math.pi)
theta = st.floats(math.pi / 3, 2 * math.pi / 3)
cnum = st.builds(complex, st.floats(-2, 2), st.floats(-2, 2))


@st.composite
def horoballs(draw):
    return Horoball((draw(coord), draw(coord)), draw(height))


@given(horoballs(), horoballs())
def test_distance_symmetric_and_matches_residual(a, b):
    assume(abs(a.z - b.z) > 1e-3)
    d = horoball_distance(a, b)
    assert d == horoball_distance(b, a)
    assert math.isclose(math.exp(d) - 1, tangency_residual(a, b), rel_tol=1e-9, abs_tol=1e-9)


@given(st.floats(0.01, 1.0), unit)
def test_visual_angle_bound(h, phi):
    b = Horoball(math.sqrt(h) * cmath.exp(1j * phi), h)
    assert visual_angle(0j, b) <= PI_3 + 1e-12


@given(cnum, cnum, cnum, horoballs())
@settings(max_examples=200)
def test_mobius_inverse_roundtrip(a, b, c, ball):
    d = complex(1.3, -0.4)
    assume(abs(a * d - b * c) > 0.1)
    g = MobiusMap(a, b, c, d)
    assume(abs(g.c * ball.z + g.d) > 0.1)
    back = apply_horoball(inverse(g), apply_horoball(g, ball))
    assert abs(back.z - ball.z) <= 1e-8 * max(1, abs(ball.z))
    assert math.isclose(back.height, ball.height, rel_tol=1e-8)


@given(theta, unit, cnum)
def test_family_certificate_invariant_under_motion(t, turn, shift):
    n, eyes = generate_family(t)
    u = cmath.exp(1j * turn)

    def f(b):
        return Horoball(u * b.z + shift, b.height)

    moved = n.transformed(f), EyePair(f(eyes.c1), f(eyes.c2))
    rep = certificate_angle_sum(*moved)
    assert abs(rep.total - 2 * math.pi) <= 1e-8
    assert abs(classify_solution(*moved).theta - t) <= 1e-9


@given(theta)
def test_document_roundtrip(t):
    doc = ConfigDocument.from_config(*generate_family(t), theta=t)
    assert loads(dumps(doc)) == doc


@given(st.integers(3, 12), st.floats(0.5, 3), cnum)
def test_winding_of_regular_polygon(k, r, p):
    pts = [r * cmath.exp(2j * math.pi * i / k) for i in range(k)]
    inner = r * math.cos(math.pi / k)
    assume(abs(abs(p) - inner) > 1e-3 and abs(abs(p) - r) > 1e-3)
    w = winding_number(pts, p)
    if abs(p) < inner:
        assert w == 1
    elif abs(p) > r:
        assert w == 0
    assert winding_number(pts[::-1], p) == -w


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=300)
def test_two_eyes_inequality(seed):
    cfg = random_config(np.random.default_rng(seed))
    assert check_hypotheses(cfg).ok
    assert alpha_beta(cfg).angle_sum <= PI_3 + 1e-9
    assert alpha_beta(cfg.mirrored()).angle_sum == pytest.approx(alpha_beta(cfg).angle_sum, abs=1e-12)
