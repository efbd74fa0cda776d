"""Orientation-preserving isometries as determinant-one 2x2 complex matrices."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .core import (
    INFINITY,
    BoundaryPoint,
    Endpoint,
    Geodesic,
    GeometryError,
    Horoball,
    HoroballAtInfinity,
)

# |cp + d| below this (relative to the matrix scale) is treated as a pole.
_POLE_EPS = 1e-15


@dataclass(frozen=True)
class MobiusMap:
    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        a, b, c, d = (complex(v) for v in (self.a, self.b, self.c, self.d))
        det = a * d - b * c
        if det == 0 or not cmath.isfinite(det):
            raise GeometryError("Mobius map must have nonzero finite determinant")
        s = cmath.sqrt(det)
        object.__setattr__(self, "a", a / s)
        object.__setattr__(self, "b", b / s)
        object.__setattr__(self, "c", c / s)
        object.__setattr__(self, "d", d / s)

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def matrix(self) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
        return ((self.a, self.b), (self.c, self.d))

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        return compose(self, other)

    def __call__(self, x):
        if isinstance(x, (Horoball, HoroballAtInfinity)):
            return apply_horoball(self, x)
        return apply_boundary(self, x)

    def is_close(self, other: "MobiusMap", tol: float = 1e-12) -> bool:
        """Entrywise comparison up to the sign ambiguity of PSL(2, C)."""
        mine = (self.a, self.b, self.c, self.d)
        theirs = (other.a, other.b, other.c, other.d)
        return any(all(abs(p - s * q) <= tol for p, q in zip(mine, theirs)) for s in (1, -1))


def _scale(g: MobiusMap) -> float:
    return max(abs(g.c), abs(g.d), 1.0)


def apply_boundary(g: MobiusMap, p) -> Endpoint:
    if p is INFINITY:
        if g.c == 0:
            return INFINITY
        return BoundaryPoint.coerce(g.a / g.c)
    z = BoundaryPoint.coerce(p).z
    den = g.c * z + g.d
    if abs(den) <= _POLE_EPS * _scale(g) * max(1.0, abs(z)):
        return INFINITY
    return BoundaryPoint.coerce((g.a * z + g.b) / den)


def apply_horoball(g: MobiusMap, ball):
    """Image of a horoball (finite or at infinity) under ``g``.

    With det g = 1 a finite horoball at p of height h goes to height h / |cp + d|^2.
    """
    if isinstance(ball, HoroballAtInfinity):
        t = ball.cut_height
        if g.c == 0:
            return HoroballAtInfinity(t * abs(g.a) / abs(g.d))
        return Horoball(g.a / g.c, 1.0 / (t * abs(g.c) ** 2))
    z = ball.z
    den = g.c * z + g.d
    if abs(den) <= _POLE_EPS * _scale(g) * max(1.0, abs(z)):
        return HoroballAtInfinity(1.0 / (ball.height * abs(g.c) ** 2))
    return Horoball((g.a * z + g.b) / den, ball.height / abs(den) ** 2)


def compose(g1: MobiusMap, g2: MobiusMap) -> MobiusMap:
    """The map ``g1 o g2`` (apply g2 first)."""
    return MobiusMap(
        g1.a * g2.a + g1.b * g2.c,
        g1.a * g2.b + g1.b * g2.d,
        g1.c * g2.a + g1.d * g2.c,
        g1.c * g2.b + g1.d * g2.d,
    )


def inverse(g: MobiusMap) -> MobiusMap:
    return MobiusMap(g.d, -g.b, -g.c, g.a)


def translation(v) -> MobiusMap:
    return MobiusMap(1, BoundaryPoint.coerce(v).z, 0, 1)


def _to_zero_infinity(gamma: Geodesic) -> MobiusMap:
    """A map sending ``endpoint_a`` to 0 and ``endpoint_b`` to infinity."""
    u, w = gamma.endpoint_a, gamma.endpoint_b
    if w is INFINITY:
        return MobiusMap(1, -u.z, 0, 1)
    if u is INFINITY:
        return MobiusMap(0, 1, 1, -w.z)
    return MobiusMap(1, -u.z, 1, -w.z)


def elliptic_about_geodesic(gamma: Geodesic, theta: float) -> MobiusMap:
    """Rotation by ``theta`` about ``gamma``.

    Positive angles turn counterclockwise around ``endpoint_a`` as seen from above.
    """
    s = _to_zero_infinity(gamma)
    half = cmath.exp(0.5j * theta)
    r = MobiusMap(half, 0, 0, 1 / half)
    return compose(inverse(s), compose(r, s))


def half_turn(gamma: Geodesic) -> MobiusMap:
    return elliptic_about_geodesic(gamma, math.pi)


def vertical_rotation(p, theta: float) -> MobiusMap:
    """Euclidean rotation of the boundary plane about ``p`` (fixes p and infinity)."""
    return elliptic_about_geodesic(Geodesic(BoundaryPoint.coerce(p), INFINITY), theta)
