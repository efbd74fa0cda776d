"""Two full-sized eyes C1, C2 and a tangent pair of beads B1, B2.

All derived quantities are computed in the standard frame: center(C1) at the
origin, center(C2) at (c, 0) on the positive x-axis, and the beads in the
upper half-plane (a reflection y -> -y is applied when they lie below L).
Reflections leave the unsigned angles alpha and beta unchanged.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property

from .core import GeometryError, Horoball, as_tolerances, tangency_residual
from .necklace import EyePair

PI_3 = math.pi / 3


class HypothesisError(GeometryError):
    """A configuration violates the Two-Eyes hypotheses."""


@dataclass(frozen=True)
class Frame:
    c: float
    z1: complex
    h1: float
    z2: complex
    h2: float
    flipped: bool = False

    @property
    def r1(self) -> float:
        return self.h1 / 2

    @property
    def r2(self) -> float:
        return self.h2 / 2

    @property
    def b(self) -> float:
        return abs(self.z2 - self.z1)


@dataclass(frozen=True)
class TwoEyesConfig:
    eyes: EyePair
    b1: Horoball
    b2: Horoball

    @classmethod
    def standard(cls, c: float, z1: complex, h1: float, z2: complex, h2: float) -> "TwoEyesConfig":
        return cls(EyePair.standard(c), Horoball(z1, h1), Horoball(z2, h2))

    @cached_property
    def frame(self) -> Frame:
        w1 = self.eyes.to_frame(self.b1.z)
        w2 = self.eyes.to_frame(self.b2.z)
        flipped = (w1.imag + w2.imag) < 0
        if flipped:
            w1, w2 = w1.conjugate(), w2.conjugate()
        return Frame(self.eyes.c, w1, self.b1.height, w2, self.b2.height, flipped)

    def normalized(self) -> "TwoEyesConfig":
        f = self.frame
        return TwoEyesConfig.standard(f.c, f.z1, f.h1, f.z2, f.h2)

    def mirrored(self) -> "TwoEyesConfig":
        """Reflect across the perpendicular bisector of the eyes, swapping roles.

        Exchanges alpha and beta.
        """
        f = self.frame
        return TwoEyesConfig.standard(f.c, f.c - f.z2.conjugate(), f.h2, f.c - f.z1.conjugate(), f.h1)

    # derived scalars of the proof, in the standard frame
    @property
    def c(self) -> float:
        return self.frame.c

    @property
    def b(self) -> float:
        return self.frame.b

    def d(self, i: int, j: int) -> float:
        f = self.frame
        zi = f.z1 if i == 1 else f.z2
        return abs(zi - (0.0 if j == 1 else f.c))

    @property
    def x1(self) -> float:
        return self.frame.z1.real

    @property
    def y1(self) -> float:
        return self.frame.z1.imag

    @property
    def x2(self) -> float:
        return self.frame.z2.real

    @property
    def y2(self) -> float:
        return self.frame.z2.imag

    def residual(self, bead: int, eye: int) -> float:
        b = self.b1 if bead == 1 else self.b2
        e = self.eyes.c1 if eye == 1 else self.eyes.c2
        return tangency_residual(b, e)


@dataclass
class HypothesisReport:
    ok: bool
    residuals: dict[str, float]
    failures: list[str] = field(default_factory=list)


def check_hypotheses(cfg: TwoEyesConfig, tol=None) -> HypothesisReport:
    """Residual for every Two-Eyes hypothesis; ``ok`` iff all are within ``tol``."""
    t = as_tolerances(tol).tangency_tol
    f = cfg.frame
    res = {
        "eye_gap": f.c - 1.0,
        "height_excess_1": f.h1 - 1.0,
        "height_excess_2": f.h2 - 1.0,
        "bead_tangency": tangency_residual(cfg.b1, cfg.b2),
        "eye_slack": min(cfg.residual(i, j) for i in (1, 2) for j in (1, 2)),
        "v1_slack": f.r1 - abs(f.z1.real),
        "v2_slack": f.r2 - abs(f.z2.real - f.c),
    }
    failures = []
    if res["eye_gap"] < -t:
        failures.append("eyes overlap")
    for i in (1, 2):
        if res[f"height_excess_{i}"] > t:
            failures.append(f"B{i} is larger than full-sized")
    if abs(res["bead_tangency"]) > t:
        failures.append("B1 and B2 are not tangent")
    if res["eye_slack"] < -t:
        failures.append("a bead overlaps an eye")
    for i in (1, 2):
        if res[f"v{i}_slack"] < -t:
            failures.append(f"B{i} misses V{i}")
    return HypothesisReport(ok=not failures, residuals=res, failures=failures)


@dataclass(frozen=True)
class AngleDiagnostics:
    alpha: float
    beta: float
    psi: float
    psi_prime: float
    phi: float
    phi_prime: float
    p1_direction: float
    p2_direction: float

    @property
    def angle_sum(self) -> float:
        return self.alpha + self.beta


def _signed(u: complex, q: complex) -> float:
    """Signed distance of q from the line through 0 with unit direction u."""
    return (u.conjugate() * q).imag


def _tangent_through_eye(eye: complex, own: tuple[complex, float], other: tuple[complex, float],
                         prefer: int, tol: float) -> float:
    """Direction of the line through ``eye`` tangent to ``own`` with both disks on one side.

    When both tangents qualify, ``prefer`` (+1 counterclockwise, -1 clockwise)
    picks the outer one.
    """
    z, r = own
    zo, ro = other
    v = z - eye
    d = abs(v)
    if d <= r:
        raise HypothesisError("eye center lies in a bead shadow")
    base = cmath.phase(v)
    spread = math.asin(r / d)
    valid = []
    for side in (prefer, -prefer):
        w = base + side * spread
        u = cmath.exp(1j * w)
        sigma = -side
        if sigma * _signed(u, zo - eye) >= ro - tol:
            valid.append(w)
    if not valid:
        raise HypothesisError("no tangent line through the eye has both bead shadows on one side")
    return valid[0]


def _acute_to_vertical(w: float) -> float:
    a = (w - math.pi / 2) % math.pi
    return min(a, math.pi - a)


def _angle_at(vertex: complex, p: complex, q: complex) -> float:
    u, v = p - vertex, q - vertex
    return abs(math.atan2((u.conjugate() * v).imag, (u.conjugate() * v).real))


def rotation_angles(cfg: TwoEyesConfig) -> tuple[float, float, float, float]:
    """(psi, psi', phi, phi') of the quadrilateral B1 B2 C2 C1.

    psi is the angle at center(B1) between B2 and C2, psi' the angle at
    center(C2) between C1 and B1; phi, phi' are the same with the roles of
    the indices exchanged.
    """
    f = cfg.frame
    c = complex(f.c, 0.0)
    return (
        _angle_at(f.z1, f.z2, c),
        _angle_at(c, 0j, f.z1),
        _angle_at(f.z2, f.z1, 0j),
        _angle_at(0j, c, f.z2),
    )


def alpha_beta(cfg: TwoEyesConfig, tol: float = 1e-9) -> AngleDiagnostics:
    """The acute angles alpha (at C1) and beta (at C2) plus the Step-4 angles.

    P1 is the tangent through center(C1) to the shadow of B1 with both bead
    shadows on one side (likewise P2 at C2 for B2); alpha and beta are their
    acute angles with the perpendiculars v1, v2 to L.
    """
    f = cfg.frame
    c = complex(f.c, 0.0)
    p1 = _tangent_through_eye(0j, (f.z1, f.r1), (f.z2, f.r2), +1, tol)
    p2 = _tangent_through_eye(c, (f.z2, f.r2), (f.z1, f.r1), -1, tol)
    psi, psi_p, phi, phi_p = rotation_angles(cfg)
    return AngleDiagnostics(
        alpha=_acute_to_vertical(p1),
        beta=_acute_to_vertical(p2),
        psi=psi,
        psi_prime=psi_p,
        phi=phi,
        phi_prime=phi_p,
        p1_direction=p1,
        p2_direction=p2,
    )


def angle_sum(cfg: TwoEyesConfig, tol: float = 1e-9) -> float:
    return alpha_beta(cfg, tol).angle_sum


def equality_case(cfg: TwoEyesConfig, tol: float = 1e-9) -> bool:
    """Whether the configuration is rigid: C1 tangent C2, both beads full, B_i tangent C_i, J parallel L."""
    f = cfg.frame
    if f.b == 0:
        return False
    return (
        abs(f.c - 1.0) <= tol
        and abs(f.h1 - 1.0) <= tol
        and abs(f.h2 - 1.0) <= tol
        and abs(cfg.residual(1, 1)) <= tol
        and abs(cfg.residual(2, 2)) <= tol
        and abs(f.z2.imag - f.z1.imag) / f.b <= tol
    )
