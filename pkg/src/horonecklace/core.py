"""Horoballs in the upper-half-space model of hyperbolic 3-space.

A finite horoball is a Euclidean ball tangent to the boundary plane; it is
stored by its point of tangency (``center``) and its Euclidean diameter
(``height``).  A horoball centered at infinity is the region above a
horizontal plane at ``cut_height``.  Full-sized means height 1, i.e. tangent
to the horoball ``z >= 1`` at infinity.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass
from typing import Union


class GeometryError(ValueError):
    """Raised when an operation is undefined for its input."""


@dataclass(frozen=True)
class BoundaryPoint:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GeometryError(f"boundary point must be finite, got ({self.x}, {self.y})")

    @classmethod
    def coerce(cls, p) -> "BoundaryPoint":
        if isinstance(p, BoundaryPoint):
            return p
        if isinstance(p, complex):
            return cls(p.real, p.imag)
        x, y = p
        return cls(float(x), float(y))

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)

    def __iter__(self):
        yield self.x
        yield self.y


class _Infinity:
    """The point at infinity of the boundary sphere."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

Endpoint = Union[BoundaryPoint, _Infinity]


def is_infinity(p) -> bool:
    return p is INFINITY


@dataclass(frozen=True)
class Horoball:
    center: BoundaryPoint
    height: float

    def __post_init__(self):
        object.__setattr__(self, "center", BoundaryPoint.coerce(self.center))
        h = float(self.height)
        if not math.isfinite(h) or h <= 0:
            raise GeometryError(f"horoball height must be positive and finite, got {self.height}")
        object.__setattr__(self, "height", h)

    @property
    def z(self) -> complex:
        return self.center.z

    @property
    def radius(self) -> float:
        """Radius of the vertical projection to the boundary plane."""
        return self.height / 2

    def is_full_sized(self, tol: float = 1e-9) -> bool:
        return abs(self.height - 1.0) <= tol

    def is_at_most_full_sized(self, tol: float = 1e-9) -> bool:
        return self.height <= 1.0 + tol

    def moved(self, center=None, height=None) -> "Horoball":
        return Horoball(self.center if center is None else center,
                        self.height if height is None else height)


@dataclass(frozen=True)
class HoroballAtInfinity:
    cut_height: float = 1.0

    def __post_init__(self):
        t = float(self.cut_height)
        if not math.isfinite(t) or t <= 0:
            raise GeometryError(f"cut height must be positive and finite, got {self.cut_height}")
        object.__setattr__(self, "cut_height", t)


H_INFINITY = HoroballAtInfinity(1.0)


def _coerce_endpoint(p) -> Endpoint:
    return p if p is INFINITY else BoundaryPoint.coerce(p)


@dataclass(frozen=True)
class Geodesic:
    endpoint_a: Endpoint
    endpoint_b: Endpoint

    def __post_init__(self):
        a = _coerce_endpoint(self.endpoint_a)
        b = _coerce_endpoint(self.endpoint_b)
        object.__setattr__(self, "endpoint_a", a)
        object.__setattr__(self, "endpoint_b", b)
        if a == b:
            raise GeometryError("geodesic endpoints must be distinct")


@dataclass(frozen=True)
class VerticalPlane:
    """The geodesic plane lying vertically over a boundary line."""

    point: BoundaryPoint
    direction: tuple[float, float]

    def __post_init__(self):
        object.__setattr__(self, "point", BoundaryPoint.coerce(self.point))
        dx, dy = (float(v) for v in self.direction)
        n = math.hypot(dx, dy)
        if n == 0 or not math.isfinite(n):
            raise GeometryError("vertical plane needs a nonzero direction")
        object.__setattr__(self, "direction", (dx / n, dy / n))

    @classmethod
    def through(cls, point, direction) -> "VerticalPlane":
        return cls(BoundaryPoint.coerce(point), direction)

    def signed_distance(self, p) -> float:
        """Signed distance of a boundary point from the line (positive on the left)."""
        p = BoundaryPoint.coerce(p)
        dx, dy = self.direction
        return dx * (p.y - self.point.y) - dy * (p.x - self.point.x)


@dataclass(frozen=True)
class Tolerances:
    tangency_tol: float = 1e-9
    angle_tol: float = 1e-9
    disjointness_tol: float = 1e-12

    def __post_init__(self):
        for name in ("tangency_tol", "angle_tol", "disjointness_tol"):
            v = getattr(self, name)
            if not v > 0:
                raise ValueError(f"{name} must be positive, got {v}")

    @classmethod
    def uniform(cls, tol: float) -> "Tolerances":
        return cls(tol, tol, tol)


TOL_ENV_VAR = "HORONECKLACE_TOL"


def default_tolerances() -> Tolerances:
    """Defaults; ``HORONECKLACE_TOL`` sets every tolerance at once."""
    raw = os.environ.get(TOL_ENV_VAR)
    if not raw:
        return Tolerances()
    return Tolerances.uniform(float(raw))


def as_tolerances(tol) -> Tolerances:
    if tol is None:
        return default_tolerances()
    if isinstance(tol, Tolerances):
        return tol
    return Tolerances.uniform(float(tol))


def _sq_dist(b1: Horoball, b2: Horoball) -> float:
    dx = b1.center.x - b2.center.x
    dy = b1.center.y - b2.center.y
    return dx * dx + dy * dy


def tangency_residual(b1: Horoball, b2: Horoball) -> float:
    """(d_E^2 - h1 h2) / (h1 h2): zero at tangency, negative when interiors overlap."""
    hh = b1.height * b2.height
    return (_sq_dist(b1, b2) - hh) / hh


def horoball_distance(b1: Horoball, b2: Horoball) -> float:
    """Hyperbolic distance log(d_E^2 / (h1 h2)) between two finite horoballs.

    Negative values mean the interiors overlap.
    """
    d2 = _sq_dist(b1, b2)
    if d2 == 0.0:
        raise GeometryError("coincident centers: horoballs are nested, distance undefined")
    return math.log(d2 / (b1.height * b2.height))


def distance_to_infinity(b: Horoball, h_inf: HoroballAtInfinity = H_INFINITY) -> float:
    return math.log(h_inf.cut_height / b.height)


def distance(x, y) -> float:
    """Distance between any two horoballs, finite or at infinity."""
    xi = isinstance(x, HoroballAtInfinity)
    yi = isinstance(y, HoroballAtInfinity)
    if xi and yi:
        raise GeometryError("two horoballs at infinity are nested, distance undefined")
    if xi:
        return distance_to_infinity(y, x)
    if yi:
        return distance_to_infinity(x, y)
    return horoball_distance(x, y)


def are_tangent(b1: Horoball, b2: Horoball, tol=None) -> bool:
    return abs(tangency_residual(b1, b2)) <= as_tolerances(tol).tangency_tol


def interiors_disjoint(b1: Horoball, b2: Horoball, tol=None) -> bool:
    return tangency_residual(b1, b2) >= -as_tolerances(tol).tangency_tol


def _view(viewpoint, b: Horoball) -> tuple[float, float, float]:
    p = BoundaryPoint.coerce(viewpoint)
    dx = b.center.x - p.x
    dy = b.center.y - p.y
    d = math.hypot(dx, dy)
    if d < b.radius:
        raise GeometryError("viewpoint lies inside the projection disk")
    return dx, dy, d


def visual_angle(viewpoint, b: Horoball) -> float:
    """Angle subtended by the projection disk of ``b`` seen from ``viewpoint``."""
    _, _, d = _view(viewpoint, b)
    return 2.0 * math.asin(min(1.0, b.radius / d))


def tangent_line_angle(viewpoint, b: Horoball, side: int) -> float:
    """Direction angle of the tangent line from ``viewpoint`` to the shadow of ``b``.

    ``side=+1`` is the counterclockwise tangent, ``side=-1`` the clockwise one.
    """
    if side not in (1, -1):
        raise ValueError("side must be +1 or -1")
    dx, dy, d = _view(viewpoint, b)
    return math.atan2(dy, dx) + side * math.asin(min(1.0, b.radius / d))


class PlaneContact(enum.Enum):
    DISJOINT = "disjoint"
    TANGENT = "tangent"
    CROSSING = "crossing"


def meets_vertical_plane(b: Horoball, v: VerticalPlane, tol=None) -> PlaneContact:
    """Classify how a horoball meets the vertical plane over a line.

    A horoball meets the plane exactly when its shadow disk meets the line.
    """
    gap = abs(v.signed_distance(b.center)) - b.radius
    if abs(gap) <= as_tolerances(tol).tangency_tol:
        return PlaneContact.TANGENT
    return PlaneContact.CROSSING if gap < 0 else PlaneContact.DISJOINT
