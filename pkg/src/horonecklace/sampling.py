"""Random Two-Eyes configurations and a multi-start maximizer of alpha + beta."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .core import GeometryError
from .two_eyes import TwoEyesConfig, alpha_beta, check_hypotheses


def _height(rng, h_min, p_full):
    return 1.0 if rng.random() < p_full else rng.uniform(h_min, 1.0)


def _lift(rng, p_touch, scale):
    return 0.0 if rng.random() < p_touch else rng.exponential(scale)


def _bead_on_eye(rng, h, eye_x):
    """A bead tangent to the eye at ``eye_x`` that still meets the plane over it."""
    # |sqrt(h) cos t| <= h/2 keeps the shadow across the vertical line
    lim = math.acos(min(1.0, math.sqrt(h) / 2))
    t = rng.uniform(lim, math.pi - lim)
    return complex(eye_x, 0) + math.sqrt(h) * cmath.exp(1j * t)


def _circle_meet(p: complex, rp: float, q: complex, rq: float):
    """Intersection points of two circles (empty list if none)."""
    d = abs(q - p)
    if d == 0 or d > rp + rq or d < abs(rp - rq):
        return []
    a = (rp * rp - rq * rq + d * d) / (2 * d)
    hgt = math.sqrt(max(rp * rp - a * a, 0.0))
    u = (q - p) / d
    m = p + a * u
    return [m + 1j * hgt * u, m - 1j * hgt * u]


def random_config(rng: np.random.Generator, *, c_max: float = 2.0, h_min: float = 0.05,
                  p_full: float = 0.2, p_touch: float = 0.3, p_gap1: float = 0.25,
                  b1_on_eye: float | None = None, b2_on_eye: float | None = None,
                  lift_scale: float = 0.3, max_tries: int = 10_000) -> TwoEyesConfig:
    """Draw one configuration satisfying every Two-Eyes hypothesis.

    ``b1_on_eye`` / ``b2_on_eye`` give the probability that B_i is placed
    tangent to C_i (None leaves it to ``p_touch``).  Rejection sampling; the
    result always passes ``check_hypotheses`` at 1e-9.
    """
    for _ in range(max_tries):
        c = 1.0 if rng.random() < p_gap1 else rng.uniform(1.0, c_max)
        h1 = _height(rng, h_min, p_full)
        h2 = _height(rng, h_min, p_full)
        on1 = rng.random() < (p_touch if b1_on_eye is None else b1_on_eye)
        on2 = rng.random() < (p_touch if b2_on_eye is None else b2_on_eye)
        if on1:
            z1 = _bead_on_eye(rng, h1, 0.0)
        else:
            x1 = rng.uniform(-h1 / 2, h1 / 2)
            floor = math.sqrt(max(h1 - x1 * x1, h1 - (x1 - c) ** 2, 0.0))
            z1 = complex(x1, floor + _lift(rng, 0.0, lift_scale) + 1e-9)
        b = math.sqrt(h1 * h2)
        if on2:
            pts = _circle_meet(z1, b, complex(c, 0), math.sqrt(h2))
            if not pts:
                continue
            z2 = pts[rng.integers(len(pts))]
        else:
            x2 = c + rng.uniform(-h2 / 2, h2 / 2)
            dx = x2 - z1.real
            if abs(dx) > b:
                continue
            z2 = complex(x2, z1.imag + rng.choice((-1.0, 1.0)) * math.sqrt(b * b - dx * dx))
        if z2.imag <= 0:
            continue
        try:
            cfg = TwoEyesConfig.standard(c, z1, h1, z2, h2)
        except GeometryError:
            continue
        if check_hypotheses(cfg, 1e-9).ok:
            try:
                alpha_beta(cfg)
            except GeometryError:
                continue
            return cfg
    raise RuntimeError("rejection sampler failed to find a valid configuration")


def random_configs(seed: int, n: int, **kw) -> list[TwoEyesConfig]:
    rng = np.random.default_rng(seed)
    return [random_config(rng, **kw) for _ in range(n)]


def lifted(cfg: TwoEyesConfig, amount: float) -> TwoEyesConfig:
    """The same configuration with both beads raised by ``amount``."""
    f = cfg.frame
    return TwoEyesConfig.standard(f.c, f.z1 + 1j * amount, f.h1, f.z2 + 1j * amount, f.h2)


def random_step4_config(rng: np.random.Generator, c_max: float = 2.0, h_min: float = 0.05,
                        max_tries: int = 10_000) -> TwoEyesConfig:
    """A hypothesis-satisfying configuration with B1-C1, B2-C2 and B1-B2 all tangent."""
    for _ in range(max_tries):
        c = 1.0 if rng.random() < 0.3 else rng.uniform(1.0, c_max)
        h1 = rng.uniform(h_min, 1.0)
        h2 = rng.uniform(h_min, 1.0)
        z1 = _bead_on_eye(rng, h1, 0.0)
        pts = _circle_meet(z1, math.sqrt(h1 * h2), complex(c, 0), math.sqrt(h2))
        if not pts:
            continue
        z2 = pts[rng.integers(len(pts))]
        if z2.imag <= 0:
            continue
        cfg = TwoEyesConfig.standard(c, z1, h1, z2, h2)
        if check_hypotheses(cfg, 1e-9).ok:
            try:
                alpha_beta(cfg)
            except GeometryError:
                continue
            return cfg
    raise RuntimeError("could not sample a step-4 configuration")


def random_step5_config(rng: np.random.Generator, c_max: float = 2.0, max_tries: int = 10_000) -> TwoEyesConfig:
    """Both beads full-sized, each tangent to its eye and to the other bead."""
    for _ in range(max_tries):
        c = 1.0 if rng.random() < 0.2 else rng.uniform(1.0, c_max)
        z1 = _bead_on_eye(rng, 1.0, 0.0)
        pts = _circle_meet(z1, 1.0, complex(c, 0), 1.0)
        if not pts:
            continue
        z2 = pts[rng.integers(len(pts))]
        if z2.imag <= 0:
            continue
        cfg = TwoEyesConfig.standard(c, z1, 1.0, z2, 1.0)
        if check_hypotheses(cfg, 1e-9).ok:
            try:
                alpha_beta(cfg)
            except GeometryError:
                continue
            return cfg
    raise RuntimeError("could not sample a step-5 configuration")


# multi-start maximization of alpha + beta over the hypothesis set
#
# variables: c, h1, h2, x1, y1, t  with center(B2) = center(B1) + sqrt(h1 h2) e^{it},
# so B1-B2 tangency holds identically and the rest are smooth inequalities.

_BOUNDS = [(1.0, 2.2), (1e-3, 1.0), (1e-3, 1.0), (-0.5, 0.5), (0.0, 3.0), (-math.pi, math.pi)]


def _unpack(v):
    c, h1, h2, x1, y1, t = v
    z1 = complex(x1, y1)
    z2 = z1 + math.sqrt(h1 * h2) * cmath.exp(1j * t)
    return c, h1, h2, z1, z2


def _objective(v):
    c, h1, h2, z1, z2 = _unpack(v)
    d1, d2 = abs(z1), abs(z2 - c)
    if d1 <= h1 / 2 or d2 <= h2 / 2:
        return 0.0
    p1 = cmath.phase(z1) + math.asin(h1 / 2 / d1)
    p2 = cmath.phase(z2 - c) - math.asin(h2 / 2 / d2)
    return -((p1 - math.pi / 2) + (math.pi / 2 - p2))


def _constraints(v):
    c, h1, h2, z1, z2 = _unpack(v)
    return np.array([
        h1 / 2 - z1.real, h1 / 2 + z1.real,
        h2 / 2 - (z2.real - c), h2 / 2 + (z2.real - c),
        abs(z1) ** 2 / h1 - 1.0,
        abs(z1 - c) ** 2 / h1 - 1.0,
        abs(z2) ** 2 / h2 - 1.0,
        abs(z2 - c) ** 2 / h2 - 1.0,
        z1.imag, z2.imag,
    ])


@dataclass
class MaximizerRun:
    value: float
    config: TwoEyesConfig | None
    feasible: bool


def _start_vector(cfg: TwoEyesConfig):
    f = cfg.frame
    t = cmath.phase(f.z2 - f.z1)
    return np.array([f.c, f.h1, f.h2, f.z1.real, f.z1.imag, t])


def maximize_angle_sum(seed: int, restarts: int = 100, tol: float = 1e-7) -> list[MaximizerRun]:
    """Locally maximize alpha + beta from ``restarts`` random valid configurations.

    Each local run is SLSQP on the parameterization above; the returned value
    is re-evaluated with ``alpha_beta`` on the final configuration, and
    ``feasible`` records whether that configuration passes the hypotheses at
    ``tol``.
    """
    rng = np.random.default_rng(seed)
    runs = []
    for _ in range(restarts):
        start = random_config(rng)
        res = minimize(_objective, _start_vector(start), method="SLSQP", bounds=_BOUNDS,
                       constraints=[{"type": "ineq", "fun": _constraints}],
                       options={"maxiter": 500, "ftol": 1e-15})
        c, h1, h2, z1, z2 = _unpack(res.x)
        try:
            cfg = TwoEyesConfig.standard(c, z1, h1, z2, h2)
            ok = check_hypotheses(cfg, tol).ok
            val = alpha_beta(cfg).angle_sum
        except GeometryError:
            runs.append(MaximizerRun(-math.inf, None, False))
            continue
        runs.append(MaximizerRun(val, cfg, ok))
    return runs
