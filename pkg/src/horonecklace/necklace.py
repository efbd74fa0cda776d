"""Necklaces of horoballs and the pair of eyes they encircle."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .core import (
    BoundaryPoint,
    GeometryError,
    Horoball,
    as_tolerances,
    tangency_residual,
)


class NecklaceError(GeometryError):
    pass


class InvalidNecklaceError(NecklaceError):
    """The bead chain itself breaks a necklace invariant."""


class EyeOverlapError(NecklaceError):
    """Some bead overlaps the interior of an eye."""


@dataclass(frozen=True)
class Necklace:
    beads: tuple[Horoball, ...]

    def __post_init__(self):
        object.__setattr__(self, "beads", tuple(self.beads))

    def __len__(self):
        return len(self.beads)

    def __getitem__(self, i: int) -> Horoball:
        return self.beads[i % len(self.beads)]

    def __iter__(self):
        return iter(self.beads)

    @property
    def k(self) -> int:
        return len(self.beads)

    def centers(self) -> list[complex]:
        return [b.z for b in self.beads]

    def transformed(self, fn) -> "Necklace":
        return Necklace(tuple(fn(b) for b in self.beads))


@dataclass(frozen=True)
class EyePair:
    c1: Horoball
    c2: Horoball

    def __post_init__(self):
        for name in ("c1", "c2"):
            if not getattr(self, name).is_full_sized(1e-9):
                raise GeometryError(f"eye {name} must be full-sized")
        if self.c < 1.0 - 1e-9:
            raise GeometryError("eyes must have disjoint interiors (center distance >= 1)")

    @classmethod
    def standard(cls, gap: float = 1.0) -> "EyePair":
        return cls(Horoball((0.0, 0.0), 1.0), Horoball((gap, 0.0), 1.0))

    @property
    def c(self) -> float:
        """Euclidean distance between the eye centers."""
        return abs(self.c2.z - self.c1.z)

    @property
    def axis(self) -> complex:
        """Unit vector along L, from center(C1) to center(C2)."""
        return (self.c2.z - self.c1.z) / self.c

    def to_frame(self, z: complex) -> complex:
        """Coordinates in the frame with C1 at 0 and C2 on the positive x-axis."""
        return (z - self.c1.z) * self.axis.conjugate()

    def from_frame(self, w: complex) -> complex:
        return w * self.axis + self.c1.z

    def swapped(self) -> "EyePair":
        return EyePair(self.c2, self.c1)


@dataclass
class ValidationReport:
    ok: bool
    tie_residuals: list[float]
    min_disjointness_slack: float
    max_height_excess: float
    winding: tuple[int, int] | None = None
    min_eye_slack: float | None = None
    failures: list[str] = field(default_factory=list)

    @property
    def max_tie_residual(self) -> float:
        return max(abs(r) for r in self.tie_residuals)


def _check_k(n: Necklace):
    if n.k < 3:
        raise InvalidNecklaceError(f"a necklace needs at least 3 beads, got {n.k}")


def validate_necklace(n: Necklace, tol=None, eyes: EyePair | None = None) -> ValidationReport:
    """Residuals of every necklace invariant.

    Tie and disjointness residuals are (d^2 - h_i h_j) / (h_i h_j).  When
    ``eyes`` is given the report also carries bead-to-eye slack and the
    winding numbers of the center polygon about both eyes.
    """
    _check_k(n)
    tol = as_tolerances(tol)
    k = n.k
    ties = [tangency_residual(n[i], n[i + 1]) for i in range(k)]
    min_slack = min(
        tangency_residual(n[i], n[j]) for i in range(k) for j in range(i + 1, k)
    )
    excess = max(b.height for b in n) - 1.0

    failures = []
    worst = max(range(k), key=lambda i: abs(ties[i]))
    if abs(ties[worst]) > tol.tangency_tol:
        failures.append(f"tie {worst}-{(worst + 1) % k} not tangent (residual {ties[worst]:.3e})")
    if min_slack < -tol.disjointness_tol:
        failures.append(f"bead interiors overlap (slack {min_slack:.3e})")
    if excess > tol.tangency_tol:
        failures.append(f"bead exceeds full size by {excess:.3e}")

    winding = eye_slack = None
    if eyes is not None:
        eye_slack = min(tangency_residual(b, e) for b in n for e in (eyes.c1, eyes.c2))
        if eye_slack < -tol.tangency_tol:
            failures.append(f"bead overlaps an eye (slack {eye_slack:.3e})")
        try:
            pts = n.centers()
            winding = (winding_number(pts, eyes.c1.z), winding_number(pts, eyes.c2.z))
        except GeometryError:
            failures.append("eye center lies on the bead polygon")

    return ValidationReport(
        ok=not failures,
        tie_residuals=ties,
        min_disjointness_slack=min_slack,
        max_height_excess=excess,
        winding=winding,
        min_eye_slack=eye_slack,
        failures=failures,
    )


def _as_complex(p) -> complex:
    if isinstance(p, complex):
        return p
    return BoundaryPoint.coerce(p).z


def _segment_distance(p: complex, a: complex, b: complex) -> float:
    ab = b - a
    L2 = abs(ab) ** 2
    if L2 == 0:
        return abs(p - a)
    t = ((p - a) * ab.conjugate()).real / L2
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * ab))


def winding_number(points: Sequence, p, eps: float = 1e-12) -> int:
    """Winding number of the closed polyline ``points`` about ``p``."""
    pts = [_as_complex(q) for q in points]
    p = _as_complex(p)
    m = len(pts)
    if m < 2:
        raise GeometryError("polyline needs at least two vertices")
    total = 0.0
    for i in range(m):
        a, b = pts[i], pts[(i + 1) % m]
        if _segment_distance(p, a, b) <= eps:
            raise GeometryError("point lies on the polyline")
        u, v = a - p, b - p
        total += math.atan2((u.conjugate() * v).imag, (u.conjugate() * v).real)
    return round(total / (2 * math.pi))


def encircles(n: Necklace, eyes: EyePair, tol=None) -> bool:
    """Whether the necklace links around both eyes.

    Formalized as: the center polygon winds the same nonzero number of times
    about both eye centers.  Raises if the necklace is invalid or a bead
    overlaps an eye.
    """
    tol = as_tolerances(tol)
    report = validate_necklace(n, tol)
    if not report.ok:
        raise InvalidNecklaceError("; ".join(report.failures))
    for b in n:
        for e in (eyes.c1, eyes.c2):
            if tangency_residual(b, e) < -tol.tangency_tol:
                raise EyeOverlapError("a bead overlaps the interior of an eye")
    pts = n.centers()
    w1 = winding_number(pts, eyes.c1.z)
    w2 = winding_number(pts, eyes.c2.z)
    return w1 == w2 != 0


@dataclass(frozen=True)
class CrossingBeads:
    upper1: int
    lower1: int
    upper2: int
    lower2: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.upper1, self.lower1, self.upper2, self.lower2)


def _meets_line(x: float, line_x: float, h: float, tol: float) -> bool:
    return abs(x - line_x) <= h / 2 + tol


def crossing_beads(n: Necklace, eyes: EyePair, tol: float = 1e-9) -> CrossingBeads:
    """Beads meeting the vertical planes V1, V2 above and below L.

    For V2 the candidates with the largest x-coordinate are taken, for V1
    those with the smallest; ties go to the larger |y|.
    """
    c = eyes.c
    frame = [(eyes.to_frame(b.z), b.height) for b in n]

    def pick(line_x: float, upper: bool, extreme) -> int:
        cands = [
            i for i, (w, h) in enumerate(frame)
            if _meets_line(w.real, line_x, h, tol) and ((w.imag > 0) if upper else (w.imag < 0))
        ]
        if not cands:
            raise NecklaceError("fewer than two beads meet a vertical plane; necklace cannot encircle")
        return extreme(cands, key=lambda i: (frame[i][0].real, -abs(frame[i][0].imag)) if extreme is min
                       else (frame[i][0].real, abs(frame[i][0].imag)))

    result = CrossingBeads(
        upper1=pick(0.0, True, min),
        lower1=pick(0.0, False, min),
        upper2=pick(c, True, max),
        lower2=pick(c, False, max),
    )
    if len(set(result.as_tuple())) != 4:
        raise NecklaceError(f"crossing beads are not distinct: {result.as_tuple()}")
    return result
