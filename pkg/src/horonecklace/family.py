"""The rigid 8-bead necklaces around two tangent eyes and the angle-sum certificate.

The family is parameterized by the polar angle theta of the first bead about
C1 (eyes at 0 and 1).  Four beads are tangent to C1 and four to C2, all
full-sized:

    P_k = e^{i(theta + k pi/3)},      k = 0..3
    Q_k = 1 + e^{i(theta + k pi/3)},  k = 3..6

in the cyclic order P0 P1 P2 P3 Q3 Q4 Q5 Q6.  theta = pi/3 and 2 pi/3 are the
hexagonal configurations.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .core import GeometryError, Horoball, as_tolerances, tangency_residual, visual_angle
from .necklace import (
    CrossingBeads,
    EyePair,
    Necklace,
    NecklaceError,
    crossing_beads,
    encircles,
)
from .two_eyes import PI_3, TwoEyesConfig, alpha_beta

THETA_MIN = PI_3
THETA_MAX = 2 * PI_3


@dataclass(frozen=True)
class FamilyParam:
    theta: float

    def __post_init__(self):
        t = float(self.theta)
        if not (THETA_MIN - 1e-12 <= t <= THETA_MAX + 1e-12):
            raise GeometryError(f"theta must lie in [pi/3, 2pi/3], got {t}")
        object.__setattr__(self, "theta", min(max(t, THETA_MIN), THETA_MAX))

    @property
    def alpha(self) -> float:
        return self.theta - PI_3


@dataclass(frozen=True)
class NotInFamily:
    reason: str
    max_deviation: float = math.inf


def family_centers(theta: float) -> list[complex]:
    ps = [cmath.exp(1j * (theta + k * PI_3)) for k in range(4)]
    qs = [1 + cmath.exp(1j * (theta + k * PI_3)) for k in range(3, 7)]
    return ps + qs


def generate_family(p) -> tuple[Necklace, EyePair]:
    """The family member at ``p`` (a FamilyParam or a bare theta)."""
    if not isinstance(p, FamilyParam):
        p = FamilyParam(p)
    beads = tuple(Horoball(z, 1.0) for z in family_centers(p.theta))
    return Necklace(beads), EyePair.standard(1.0)


# certificate

@dataclass
class AngleReport:
    crossing: CrossingBeads
    critical: bool
    alpha: float
    beta: float
    alpha_prime: float
    beta_prime: float
    connector_angles1: list[float]
    connector_angles2: list[float]
    terms: list[float] = field(default_factory=list)

    @property
    def total(self) -> float:
        return math.fsum(self.terms)

    @property
    def delta1(self):
        return self.connector_angles1[0] if self.connector_angles1 else None

    @property
    def phi1(self):
        return self.connector_angles1[1] if len(self.connector_angles1) > 1 else None

    @property
    def delta2(self):
        return self.connector_angles2[0] if self.connector_angles2 else None

    @property
    def phi2(self):
        return self.connector_angles2[1] if len(self.connector_angles2) > 1 else None


def _arc(k: int, start: int, stop: int, step: int) -> list[int]:
    out, i = [], (start + step) % k
    while i != stop:
        out.append(i)
        i = (i + step) % k
    return out


def _connectors(k: int, lower: int, upper: int, avoid: set[int]) -> list[int]:
    """Beads strictly between ``lower`` and ``upper`` on the arc that avoids ``avoid``."""
    for step in (1, -1):
        arc = _arc(k, lower, upper, step)
        if not avoid.intersection(arc):
            return arc
    raise NecklaceError("no connecting arc avoids the other eye's crossing beads")


def _outside_part(eye: complex, b: Horoball, lo: float, frame) -> float:
    """Angular width of the visual cone of ``b`` from ``eye`` on the outer side of the strip.

    The outer side is the half-turn of directions [lo, lo + pi].
    """
    w = frame(b.z) - eye
    d = abs(w)
    if d < b.radius:
        raise GeometryError("eye center lies in a bead shadow")
    s = math.asin(min(1.0, b.radius / d))
    a = (cmath.phase(w) - (lo - math.pi / 2)) % (2 * math.pi) + (lo - math.pi / 2)
    return max(0.0, min(a + s, lo + math.pi) - max(a - s, lo))


def certificate_angle_sum(n: Necklace, eyes: EyePair, tol=None) -> AngleReport:
    """The angle budget around both eyes that forces an 8-bead necklace to be rigid.

    When both crossing pairs are tangent, the terms are alpha + beta, the two
    connector angles at C1, alpha' + beta' and the two connector angles at C2.
    Otherwise (the critical case, e.g. the hexagonal endpoints) each crossing
    bead contributes the part of its visual cone outside the strip V, and the
    connectors contribute their full visual angles.
    """
    if n.k != 8:
        raise NecklaceError(f"the certificate needs exactly 8 beads, got {n.k}")
    t = as_tolerances(tol)
    if not encircles(n, eyes, t):
        raise NecklaceError("necklace does not encircle both eyes")
    cb = crossing_beads(n, eyes, t.tangency_tol)
    k = n.k
    con1 = _connectors(k, cb.lower1, cb.upper1, {cb.upper2, cb.lower2})
    con2 = _connectors(k, cb.upper2, cb.lower2, {cb.upper1, cb.lower1})
    ang1 = [visual_angle(eyes.c1.center, n[i]) for i in con1]
    ang2 = [visual_angle(eyes.c2.center, n[i]) for i in con2]

    upper = TwoEyesConfig(eyes, n[cb.upper1], n[cb.upper2])
    lower = TwoEyesConfig(eyes.swapped(), n[cb.lower2], n[cb.lower1])
    tangent = all(abs(tangency_residual(c.b1, c.b2)) <= t.tangency_tol for c in (upper, lower))
    if tangent and len(con1) == 2 and len(con2) == 2:
        try:
            du, dl = alpha_beta(upper, t.tangency_tol), alpha_beta(lower, t.tangency_tol)
        except GeometryError:
            pass
        else:
            terms = [du.angle_sum, *ang1, dl.angle_sum, *ang2]
            return AngleReport(cb, False, du.alpha, du.beta, dl.alpha, dl.beta, ang1, ang2, terms)

    c = eyes.c
    frame = eyes.to_frame
    e1, e2 = 0j, complex(c, 0)
    a = _outside_part(e1, n[cb.upper1], math.pi / 2, frame)
    bp = _outside_part(e1, n[cb.lower1], math.pi / 2, frame)
    b = _outside_part(e2, n[cb.upper2], -math.pi / 2, frame)
    ap = _outside_part(e2, n[cb.lower2], -math.pi / 2, frame)
    terms = [a, *ang1, bp, ap, *ang2, b]
    return AngleReport(cb, True, a, b, ap, bp, ang1, ang2, terms)


# classification

def _normalized_centers(n: Necklace, eyes: EyePair) -> list[complex]:
    return [eyes.to_frame(b.z) / eyes.c for b in n]


def classify_solution(n: Necklace, eyes: EyePair, tol: float = 1e-9):
    """Return the FamilyParam of ``n`` or NotInFamily with the smallest deviation seen.

    The configuration is moved so the eyes sit at 0 and 1, then every cyclic
    relabeling, both orientations and the reflection y -> -y are tried; theta
    is read off the first bead's polar angle about C1 and all eight beads are
    compared with the family member at that theta.  Unreflected matches are
    preferred; a mirror image of the theta member reads as pi - theta.
    """
    if n.k != 8:
        return NotInFamily(f"expected 8 beads, got {n.k}")
    if abs(eyes.c - 1.0) > tol:
        return NotInFamily("eyes are not tangent", abs(eyes.c - 1.0))
    zs = _normalized_centers(n, eyes)
    hs = [b.height for b in n]
    best = math.inf
    for flip in (False, True):
        w = [z.conjugate() for z in zs] if flip else zs
        for direction in (1, -1):
            for shift in range(8):
                idx = [(shift + direction * j) % 8 for j in range(8)]
                cz = [w[i] for i in idx]
                theta = cmath.phase(cz[0]) % (2 * math.pi)
                if not (THETA_MIN - 1e-3 <= theta <= THETA_MAX + 1e-3):
                    continue
                theta = min(max(theta, THETA_MIN), THETA_MAX)
                ref = family_centers(theta)
                dev = max(max(abs(p - q) for p, q in zip(cz, ref)),
                          max(abs(hs[i] - 1.0) for i in idx))
                if dev <= tol:
                    return FamilyParam(theta)
                best = min(best, dev)
    return NotInFamily("no relabeling matches a family member", best)
