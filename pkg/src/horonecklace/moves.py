"""Improvement moves that push a Two-Eyes configuration toward the rigid case.

Each move takes a configuration, returns it in the standard frame and
reports alpha + beta before and after.  A move whose precondition fails is a
no-op.  Moves that need "B1 tangent to C1" run on the mirrored configuration
when only B2 is tangent to C2 (mirroring swaps alpha and beta, so the sum is
unaffected).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field

from .core import Geodesic, GeometryError, Horoball, tangency_residual
from .mobius import apply_horoball, elliptic_about_geodesic
from .two_eyes import (
    TwoEyesConfig,
    _signed,
    alpha_beta,
    check_hypotheses,
    equality_case,
    rotation_angles,
)

STEP4_MAX_ROUNDS = 12


class Terminal(enum.Enum):
    TANGENCY_REACHED = "tangency_reached"
    FULL_SIZE_REACHED = "full_size_reached"
    EYES_TANGENT = "eyes_tangent"
    PSI_LIMIT = "psi_limit"
    ALIGNED = "aligned"
    ALREADY_SATISFIED = "already_satisfied"
    PRECONDITION_UNMET = "precondition_unmet"
    BLOCKED = "blocked"


class MoveError(GeometryError):
    pass


@dataclass
class MoveOutcome:
    step: str
    config: TwoEyesConfig
    applied: bool
    angle_sum_before: float
    angle_sum_after: float
    terminal_reason: Terminal
    detail: dict = field(default_factory=dict)

    @property
    def gain(self) -> float:
        return self.angle_sum_after - self.angle_sum_before


def _sum(cfg: TwoEyesConfig) -> float:
    return alpha_beta(cfg).angle_sum


def _noop(step, cfg, reason, **detail) -> MoveOutcome:
    s = _sum(cfg)
    return MoveOutcome(step, cfg, False, s, s, reason, detail)


def _done(step, before_cfg, after_cfg, reason, **detail) -> MoveOutcome:
    return MoveOutcome(step, after_cfg, True, _sum(before_cfg), _sum(after_cfg), reason, detail)


def _tangent(cfg, i, j, tol) -> bool:
    return abs(cfg.residual(i, j)) <= tol


def _apart(cfg, i, j, tol) -> bool:
    return cfg.residual(i, j) > tol


def _smallest_positive_root(A: float, B: float, C: float, eps: float = 1e-14) -> float:
    """Smallest t > eps solving A t^2 + B t + C = 0, or inf."""
    if abs(A) < 1e-15:
        if B == 0:
            return math.inf
        t = -C / B
        return t if t > eps else math.inf
    disc = B * B - 4 * A * C
    if disc < 0:
        return math.inf
    q = -0.5 * (B + math.copysign(math.sqrt(disc), B))
    roots = [q / A] + ([C / q] if q != 0 else [])
    pos = [t for t in roots if t > eps]
    return min(pos) if pos else math.inf


def _first_event(events, hi: float, samples: int = 360):
    """First t in (0, hi] where some event function drops to <= 0.

    Each function is positive at t = 0.  Scans ``samples`` points, then bisects
    the first bracket to machine precision.  Returns (t, index) or (None, None).
    """
    def g(t):
        vals = [f(t) for f in events]
        k = min(range(len(vals)), key=vals.__getitem__)
        return vals[k], k

    lo = 0.0
    for n in range(1, samples + 1):
        t = hi * n / samples
        val, _ = g(t)
        if val <= 0:
            hi_t = t
            for _ in range(200):
                mid = 0.5 * (lo + hi_t)
                if mid <= lo or mid >= hi_t:
                    break
                if g(mid)[0] <= 0:
                    hi_t = mid
                else:
                    lo = mid
            return hi_t, g(hi_t)[1]
        lo = t
    return None, None


def _orient(cfg: TwoEyesConfig, tol: float):
    """Return (working config with B1 tangent C1 and B2 clear of C2, mirrored flag) or None."""
    if _tangent(cfg, 1, 1, tol) and _apart(cfg, 2, 2, tol):
        return cfg, False
    if _tangent(cfg, 2, 2, tol) and _apart(cfg, 1, 1, tol):
        return cfg.mirrored(), True
    return None


# Step 1

def step1_drop(cfg: TwoEyesConfig, tol: float = 1e-9) -> MoveOutcome:
    """Translate both beads toward L until the first bead-eye tangency."""
    cfg = cfg.normalized()
    if not (_apart(cfg, 1, 1, tol) and _apart(cfg, 2, 2, tol)):
        return _noop("step1", cfg, Terminal.ALREADY_SATISFIED)
    f = cfg.frame
    best, pair = math.inf, None
    for i, (z, h) in enumerate(((f.z1, f.h1), (f.z2, f.h2)), start=1):
        for j, e in ((1, 0.0), (2, f.c)):
            dx = z.real - e
            room = h - dx * dx
            if room < 0:
                continue
            s = z.imag - math.sqrt(room)
            if 0 <= s < best:
                best, pair = s, (i, j)
    if pair is None:
        return _noop("step1", cfg, Terminal.BLOCKED)
    new = TwoEyesConfig.standard(f.c, f.z1 - 1j * best, f.h1, f.z2 - 1j * best, f.h2)
    return _done("step1", cfg, new, Terminal.TANGENCY_REACHED, shift=best, tangency=pair)


# Step 2

def step2_slide_eye(cfg: TwoEyesConfig, tol: float = 1e-9) -> MoveOutcome:
    """Slide C2 toward C1 until it touches B2, B1 or C1."""
    cfg = cfg.normalized()
    oriented = _orient(cfg, tol)
    if oriented is None:
        reason = (Terminal.ALREADY_SATISFIED
                  if _tangent(cfg, 1, 1, tol) and _tangent(cfg, 2, 2, tol)
                  else Terminal.PRECONDITION_UNMET)
        return _noop("step2", cfg, reason)
    work, mirrored = oriented
    f = work.frame
    if f.c - 1.0 <= tol:
        return _noop("step2", cfg, Terminal.EYES_TANGENT)
    stops = [(f.c - 1.0, 1.0, Terminal.EYES_TANGENT)]
    for z, h, reason in ((f.z2, f.h2, Terminal.TANGENCY_REACHED), (f.z1, f.h1, Terminal.EYES_TANGENT)):
        room = h - z.imag ** 2
        if room >= 0:
            e = z.real + math.sqrt(room)
            if e <= f.c:
                stops.append((f.c - e, e, reason))
    shift, new_c, reason = min(stops, key=lambda s: s[0])
    new = TwoEyesConfig.standard(max(new_c, 1.0), f.z1, f.h1, f.z2, f.h2)
    if mirrored:
        new = new.mirrored()
    return _done("step2", cfg, new, reason, shift=shift)


# Step 3

def _p2_line(work: TwoEyesConfig) -> complex:
    f = work.frame
    v = f.z2 - f.c
    w = cmath.phase(v) - math.asin(min(1.0, f.r2 / abs(v)))
    return cmath.exp(1j * w)


def _ray_hits_p2(work: TwoEyesConfig) -> float:
    """Positive when the ray J from center(B1) through center(B2) misses P2."""
    f = work.frame
    u2 = _p2_line(work)
    sigma = math.copysign(1.0, _signed(u2, f.z2 - f.c))
    return sigma * _signed(u2, f.z2 - f.z1)


def _extend_along_ray(work: TwoEyesConfig, tol: float):
    """Push B2 along J away from B1, re-inflating it to stay tangent to B1."""
    f = work.frame
    b = f.b
    u = (f.z2 - f.z1) / b
    t_full = max(0.0, math.sqrt(f.h1) - b)
    stops = [(t_full, Terminal.FULL_SIZE_REACHED)]
    A = 1.0 - 1.0 / f.h1
    for e, reason in ((f.c, Terminal.TANGENCY_REACHED), (0.0, Terminal.BLOCKED)):
        w = f.z2 - e
        C = abs(w) ** 2 - f.h2
        B = 2.0 * ((w * u.conjugate()).real - b / f.h1)
        if C <= tol * f.h2 and B < 0:
            stops.append((0.0, reason))
        else:
            stops.append((_smallest_positive_root(A, B, C), reason))
    t, reason = min(stops, key=lambda s: s[0])
    z2 = f.z2 + t * u
    h2 = 1.0 if reason is Terminal.FULL_SIZE_REACHED else (b + t) ** 2 / f.h1
    return TwoEyesConfig.standard(f.c, f.z1, f.h1, z2, h2), reason, t


def _cw_touch_angle(work: TwoEyesConfig) -> float:
    """Clockwise rotation about center(B1) that first brings B2 onto C2 (inf if never)."""
    f = work.frame
    v = f.z2 - f.z1
    b = abs(v)
    to_c2 = f.c - f.z1
    D = abs(to_c2)
    cos_a = (b * b + D * D - f.h2) / (2 * b * D)
    if abs(cos_a) > 1:
        return math.inf
    a = math.acos(cos_a)
    ang = cmath.phase(v)
    return min((ang - (cmath.phase(to_c2) + s * a)) % (2 * math.pi) for s in (1, -1))


def _rotate_b2_about_b1(work: TwoEyesConfig, angle: float) -> TwoEyesConfig:
    f = work.frame
    z2 = f.z1 + (f.z2 - f.z1) * cmath.exp(-1j * angle)
    return TwoEyesConfig.standard(f.c, f.z1, f.h1, z2, f.h2)


def step3_extend_rotate(cfg: TwoEyesConfig, tol: float = 1e-9) -> MoveOutcome:
    """Bring B2 onto C2 by pushing it along J (growing it) and rotating it about B1.

    While J meets P2, B2 slides along J away from B1 and re-inflates until it
    is full-sized or touches C2; a full-sized B2 then rotates clockwise about
    the vertical geodesic over center(B1) onto C2.  While J misses P2, B2
    rotates clockwise until it touches C2 or J meets P2.
    """
    cfg = cfg.normalized()
    oriented = _orient(cfg, tol)
    if oriented is None:
        reason = (Terminal.ALREADY_SATISFIED
                  if _tangent(cfg, 1, 1, tol) and _tangent(cfg, 2, 2, tol)
                  else Terminal.PRECONDITION_UNMET)
        return _noop("step3", cfg, reason)
    work, mirrored = oriented
    submoves = []
    reason = Terminal.BLOCKED
    for _ in range(4):
        if not _apart(work, 2, 2, tol):
            reason = Terminal.TANGENCY_REACHED
            break
        if _ray_hits_p2(work) < 0:
            work, reason, t = _extend_along_ray(work, tol)
            submoves.append(("extend", t))
            if reason is Terminal.FULL_SIZE_REACHED and not _apart(work, 2, 2, tol):
                reason = Terminal.TANGENCY_REACHED
            elif reason is Terminal.FULL_SIZE_REACHED:
                turn = _cw_touch_angle(work)
                if not math.isfinite(turn):
                    reason = Terminal.BLOCKED
                    break
                work = _rotate_b2_about_b1(work, turn)
                submoves.append(("rotate", turn))
                reason = Terminal.TANGENCY_REACHED
            break
        touch = _cw_touch_angle(work)
        hi = touch if math.isfinite(touch) else math.pi
        start = work
        t, k = _first_event([lambda a: _ray_hits_p2(_rotate_b2_about_b1(start, a))], hi)
        if t is None:
            if not math.isfinite(touch):
                reason = Terminal.BLOCKED
                break
            work = _rotate_b2_about_b1(start, touch)
            submoves.append(("rotate", touch))
            reason = Terminal.TANGENCY_REACHED
            break
        work = _rotate_b2_about_b1(start, t)
        submoves.append(("rotate", t))
    if mirrored:
        work = work.mirrored()
    if not submoves:
        return _noop("step3", cfg, reason)
    return _done("step3", cfg, work, reason, submoves=submoves)


# Step 4

def rotate_tangent_pair(cfg: TwoEyesConfig, which: int, theta: float, tol: float = 1e-9) -> TwoEyesConfig:
    """Rotate one bead about the geodesic joining the other bead to the opposite eye.

    ``which=2`` moves B2 about the geodesic from center(B1) to center(C2);
    ``which=1`` moves B1 about the geodesic from center(B2) to center(C1).
    The moved bead stays tangent to both horoballs on the axis.
    """
    if which == 2:
        moving, pivot, eye = cfg.b2, cfg.b1, cfg.eyes.c2
    elif which == 1:
        moving, pivot, eye = cfg.b1, cfg.b2, cfg.eyes.c1
    else:
        raise ValueError("which must be 1 or 2")
    if abs(tangency_residual(moving, pivot)) > tol or abs(tangency_residual(moving, eye)) > tol:
        raise MoveError(f"B{which} must be tangent to the other bead and to C{which}")
    g = elliptic_about_geodesic(Geodesic(pivot.center, eye.center), theta)
    moved = apply_horoball(g, moving)
    if not isinstance(moved, Horoball):
        raise MoveError("rotation sent the bead to infinity")
    if which == 2:
        return TwoEyesConfig(cfg.eyes, cfg.b1, moved)
    return TwoEyesConfig(cfg.eyes, moved, cfg.b2)


def _pair_angle(cfg: TwoEyesConfig, which: int) -> float:
    psi, _, phi, _ = rotation_angles(cfg)
    return psi if which == 2 else phi


def inflating_direction(cfg: TwoEyesConfig, which: int) -> int:
    """Sign of the rotation angle that increases psi (which=2) or phi (which=1)."""
    f = cfg.frame
    c2 = complex(f.c, 0.0)
    if which == 2:
        cross = ((c2 - f.z1).conjugate() * (f.z2 - f.z1)).imag
    else:
        cross = ((0j - f.z2).conjugate() * (f.z1 - f.z2)).imag
    s = 1 if cross > 0 else -1
    return -s if f.flipped else s


def _rotate_until(cfg: TwoEyesConfig, which: int, tol: float):
    """Rotate bead ``which`` until it is full-sized or its angle reaches pi/2."""
    bead = cfg.b2 if which == 2 else cfg.b1
    if bead.height >= 1.0 or _pair_angle(cfg, which) >= math.pi / 2:
        return cfg, None, 0.0
    sign = inflating_direction(cfg, which)

    def at(th):
        return rotate_tangent_pair(cfg, which, sign * th, tol=1e-6)

    def full(th):
        new = at(th)
        return 1.0 - (new.b2 if which == 2 else new.b1).height

    def right(th):
        return math.pi / 2 - _pair_angle(at(th), which)

    th, k = _first_event([full, right], math.pi)
    if th is None:
        raise MoveError(f"rotation of B{which} reached neither full size nor a right angle")
    new = at(th)
    if k == 0:
        new = _snap_full(new, which)
        return new, Terminal.FULL_SIZE_REACHED, th
    return new, Terminal.PSI_LIMIT, th


def _snap_full(cfg: TwoEyesConfig, which: int) -> TwoEyesConfig:
    if which == 2:
        return TwoEyesConfig(cfg.eyes, cfg.b1, cfg.b2.moved(height=1.0))
    return TwoEyesConfig(cfg.eyes, cfg.b1.moved(height=1.0), cfg.b2)


def step4_inflate(cfg: TwoEyesConfig, tol: float = 1e-9, max_rounds: int = STEP4_MAX_ROUNDS) -> MoveOutcome:
    """Alternate tangency-preserving rotations of B2 and B1 until both are full-sized."""
    cfg = cfg.normalized()
    if not (_tangent(cfg, 1, 1, tol) and _tangent(cfg, 2, 2, tol)
            and abs(tangency_residual(cfg.b1, cfg.b2)) <= tol):
        return _noop("step4", cfg, Terminal.PRECONDITION_UNMET)

    def is_full(c, i):
        return abs((c.b1 if i == 1 else c.b2).height - 1.0) <= tol

    if is_full(cfg, 1) and is_full(cfg, 2):
        return _noop("step4", cfg, Terminal.ALREADY_SATISFIED)
    psi, _, phi, _ = rotation_angles(cfg)
    which = 2 if psi <= phi else 1
    work = cfg
    rounds = []
    idle = 0
    while not (is_full(work, 1) and is_full(work, 2)):
        if len(rounds) >= max_rounds:
            raise MoveError(f"step 4 did not finish within {max_rounds} rotations")
        if is_full(work, which):
            which = 3 - which
            continue
        work, reason, th = _rotate_until(work, which, tol)
        rounds.append((which, th, reason.value if reason else None))
        idle = idle + 1 if th == 0.0 else 0
        if idle >= 2:
            raise MoveError("step 4 stalled: neither bead can be rotated further")
        which = 3 - which
    return _done("step4", cfg, work.normalized(), Terminal.FULL_SIZE_REACHED, rounds=rounds)


# Step 5

def step5_align(cfg: TwoEyesConfig, tol: float = 1e-9) -> MoveOutcome:
    """Turn B2 about center(C2) until L2 is parallel to L1, then slide C2, B2 onto C1."""
    cfg = cfg.normalized()
    f = cfg.frame
    if not (abs(f.h1 - 1) <= tol and abs(f.h2 - 1) <= tol
            and _tangent(cfg, 1, 1, tol) and _tangent(cfg, 2, 2, tol)):
        return _noop("step5", cfg, Terminal.PRECONDITION_UNMET)
    if equality_case(cfg, tol):
        return _noop("step5", cfg, Terminal.ALREADY_SATISFIED)
    spoke = f.z1 / abs(f.z1)
    turn = cmath.phase(spoke / (f.z2 - f.c))
    z2 = 1.0 + spoke * abs(f.z2 - f.c)
    new = TwoEyesConfig.standard(1.0, f.z1, f.h1, z2, f.h2)
    return _done("step5", cfg, new, Terminal.ALIGNED, turn=turn, shift=f.c - 1.0)


def improve_to_equality(cfg: TwoEyesConfig, tol: float = 1e-9):
    """Run Steps 1-5 in order; returns the final configuration and the move trace."""
    report = check_hypotheses(cfg, tol)
    if not report.ok:
        raise MoveError("hypotheses fail: " + "; ".join(report.failures))
    work = cfg.normalized()
    trace: list[MoveOutcome] = []
    if equality_case(work, tol):
        return work, trace
    for move in (step1_drop, step2_slide_eye, step3_extend_rotate, step4_inflate, step5_align):
        out = move(work, tol)
        trace.append(out)
        work = out.config
    return work, trace
