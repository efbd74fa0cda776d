"""Multi-start feasibility search for k-bead necklaces around two eyes.

A candidate is the vector [x_0, y_0, h_0, ..., x_{k-1}, y_{k-1}, h_{k-1}]
(plus the eye gap c when it is free); the eyes sit at (0, 0) and (c, 0).
Its slack is the smallest constraint margin:

    non-adjacent beads     d^2 / (h_i h_j) - 1
    bead vs. eye           d^2 / h_i - 1
    height cap             1 - h_i
    ties                   -|d^2 / (h_i h_{i+1}) - 1|

and -10 when the center polygon does not wind around both eyes.  A
necklace exists iff the supremum of the slack is 0.

Each restart maximizes s subject to every margin >= s (ties split into
two inequalities) with SLSQP; gradients are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .core import GeometryError, Horoball
from .necklace import EyePair, Necklace, winding_number

WINDING_PENALTY = -10.0
GAP_BOUNDS = (1.0, 2.0)
HEIGHT_BOUNDS = (0.02, 1.0)
COORD_BOUNDS = (-5.0, 7.0)


@dataclass(frozen=True)
class FeasibilitySpec:
    """``eye_gap=None`` lets the distance between the eyes vary in GAP_BOUNDS."""

    k: int
    eye_gap: float | None = 1.0
    height_cap: float = 1.0

    def __post_init__(self):
        if self.k < 3:
            raise ValueError(f"k must be at least 3, got {self.k}")
        if self.eye_gap is not None and self.eye_gap < 1.0:
            raise ValueError("eye_gap must be >= 1")

    @property
    def free_gap(self) -> bool:
        return self.eye_gap is None

    @property
    def size(self) -> int:
        return 3 * self.k + (1 if self.free_gap else 0)

    def pack(self, n: Necklace, eyes: EyePair) -> np.ndarray:
        """Layout of a configuration; the eyes are moved to (0, 0) and (c, 0)."""
        if n.k != self.k:
            raise ValueError(f"expected {self.k} beads, got {n.k}")
        rows = []
        for b in n:
            w = eyes.to_frame(b.z)
            rows.extend((w.real, w.imag, b.height))
        if self.free_gap:
            rows.append(eyes.c)
        elif abs(eyes.c - self.eye_gap) > 1e-12:
            raise ValueError(f"eye gap {eyes.c} differs from eye_gap={self.eye_gap}")
        return np.array(rows, dtype=float)

    def gap(self, x: np.ndarray) -> float:
        return float(x[-1]) if self.free_gap else float(self.eye_gap)

    def unpack(self, x) -> tuple[Necklace, EyePair]:
        x = self._check(x)
        beads = tuple(Horoball((x[3 * i], x[3 * i + 1]), x[3 * i + 2]) for i in range(self.k))
        return Necklace(beads), EyePair.standard(self.gap(x))

    def _check(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.size,):
            raise ValueError(f"expected a vector of length {self.size}, got shape {x.shape}")
        if not np.all(np.isfinite(x)):
            raise ValueError("vector has non-finite entries")
        return x


class _Margins:
    """Vectorized constraint margins and their Jacobian for one spec."""

    def __init__(self, spec: FeasibilitySpec):
        self.spec = spec
        k = spec.k
        ii, jj = np.triu_indices(k, 1)
        adjacent = ((jj - ii) == 1) | ((ii == 0) & (jj == k - 1))
        self.pi, self.pj = ii[~adjacent], jj[~adjacent]
        self.ti = np.arange(k)
        self.tj = (self.ti + 1) % k

    def _split(self, x):
        b = x[: 3 * self.spec.k].reshape(-1, 3)
        return b[:, 0], b[:, 1], b[:, 2], self.spec.gap(x)

    def values(self, x) -> np.ndarray:
        X, Y, H, c = self._split(x)
        pi, pj, ti, tj = self.pi, self.pj, self.ti, self.tj
        pair = ((X[pi] - X[pj]) ** 2 + (Y[pi] - Y[pj]) ** 2) / (H[pi] * H[pj]) - 1
        eye1 = (X ** 2 + Y ** 2) / H - 1
        eye2 = ((X - c) ** 2 + Y ** 2) / H - 1
        cap = self.spec.height_cap - H
        tie = ((X[ti] - X[tj]) ** 2 + (Y[ti] - Y[tj]) ** 2) / (H[ti] * H[tj]) - 1
        return np.concatenate([pair, eye1, eye2, cap, tie, -tie])

    def jacobian(self, x) -> np.ndarray:
        X, Y, H, c = self._split(x)
        k = self.spec.k
        blocks = []

        def pair_rows(a, b):
            hh = H[a] * H[b]
            dx, dy = X[a] - X[b], Y[a] - Y[b]
            d2 = dx * dx + dy * dy
            J = np.zeros((len(a), x.size))
            r = np.arange(len(a))
            J[r, 3 * a] = 2 * dx / hh
            J[r, 3 * b] = -2 * dx / hh
            J[r, 3 * a + 1] = 2 * dy / hh
            J[r, 3 * b + 1] = -2 * dy / hh
            J[r, 3 * a + 2] = -d2 / (H[a] * hh)
            J[r, 3 * b + 2] += -d2 / (H[b] * hh)
            return J

        def eye_rows(e, moving):
            idx = np.arange(k)
            dx = X - e
            J = np.zeros((k, x.size))
            J[idx, 3 * idx] = 2 * dx / H
            J[idx, 3 * idx + 1] = 2 * Y / H
            J[idx, 3 * idx + 2] = -(dx * dx + Y * Y) / H ** 2
            if moving:
                J[:, -1] = -2 * dx / H
            return J

        blocks.append(pair_rows(self.pi, self.pj))
        blocks.append(eye_rows(0.0, False))
        blocks.append(eye_rows(c, self.spec.free_gap))
        cap = np.zeros((k, x.size))
        cap[np.arange(k), 3 * np.arange(k) + 2] = -1.0
        blocks.append(cap)
        tie = pair_rows(self.ti, self.tj)
        blocks.extend([tie, -tie])
        return np.vstack(blocks)


def _winds(spec: FeasibilitySpec, x) -> bool:
    b = x[: 3 * spec.k].reshape(-1, 3)
    pts = [complex(u, v) for u, v in b[:, :2]]
    try:
        w1 = winding_number(pts, 0j)
        w2 = winding_number(pts, complex(spec.gap(x), 0))
    except GeometryError:
        return False
    return w1 == w2 != 0


def feasibility_slack(x, spec: FeasibilitySpec) -> float:
    x = spec._check(x)
    if np.any(x[2: 3 * spec.k: 3] <= 0):
        raise ValueError("bead heights must be positive")
    if not _winds(spec, x):
        return WINDING_PENALTY
    return float(_Margins(spec).values(x).min())


@dataclass
class SearchResult:
    best_slack: float
    best_config: tuple[Necklace, EyePair] | None
    best_vector: np.ndarray | None
    restarts: int
    seed: int
    spec: FeasibilitySpec
    trace: list[float] = field(default_factory=list)
    best_index: int = -1

    @property
    def feasible(self) -> bool:
        return self.best_slack >= -1e-6


def random_start(spec: FeasibilitySpec, rng: np.random.Generator) -> np.ndarray:
    """Beads in angular order on an annulus around the eye midpoint, heights in [0.3, 1]."""
    k = spec.k
    c = rng.uniform(*GAP_BOUNDS) if spec.free_gap else spec.eye_gap
    step = 2 * math.pi / k
    t = rng.uniform(0, 2 * math.pi) + step * (np.arange(k) + rng.uniform(-0.3, 0.3, k))
    r = rng.uniform(0.5, 1.3, k) + c / 2
    x = c / 2 + r * np.cos(t)
    y = r * np.sin(t)
    h = rng.uniform(0.3, 1.0, k)
    v = np.column_stack([x, y, h]).ravel()
    return np.append(v, c) if spec.free_gap else v


def _bounds(spec: FeasibilitySpec):
    b = [COORD_BOUNDS, COORD_BOUNDS, HEIGHT_BOUNDS] * spec.k
    if spec.free_gap:
        b.append(GAP_BOUNDS)
    return b


def local_maximize(spec: FeasibilitySpec, x0: np.ndarray, maxiter: int = 300) -> np.ndarray:
    m = _Margins(spec)
    n = spec.size
    s0 = float(m.values(x0).min())
    z0 = np.append(x0, s0)
    e_s = np.zeros(n + 1)
    e_s[-1] = -1.0

    def cons(z):
        return m.values(z[:-1]) - z[-1]

    def cons_jac(z):
        J = m.jacobian(z[:-1])
        return np.hstack([J, -np.ones((J.shape[0], 1))])

    res = minimize(lambda z: -z[-1], z0, jac=lambda z: e_s, method="SLSQP",
                   bounds=_bounds(spec) + [(-20.0, 1.0)],
                   constraints=[{"type": "ineq", "fun": cons, "jac": cons_jac}],
                   options={"maxiter": maxiter, "ftol": 1e-14})
    x = res.x[:-1]
    lo, hi = np.array(_bounds(spec)).T
    return np.clip(x, lo, hi)


def search_necklace(spec: FeasibilitySpec, seed: int = 0, restarts: int = 50,
                    maxiter: int = 300) -> SearchResult:
    """Best configuration over ``restarts`` local maximizations of the slack.

    Restart i draws its start from the i-th child of SeedSequence(seed), so the
    result does not depend on evaluation order; ties go to the lower index.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    children = np.random.SeedSequence(seed).spawn(restarts)
    trace, vectors = [], []
    for child in children:
        rng = np.random.default_rng(child)
        x = local_maximize(spec, random_start(spec, rng), maxiter)
        vectors.append(x)
        trace.append(feasibility_slack(x, spec))
    best = max(range(restarts), key=lambda i: (trace[i], -i))
    return SearchResult(
        best_slack=trace[best],
        best_config=spec.unpack(vectors[best]),
        best_vector=vectors[best],
        restarts=restarts,
        seed=seed,
        spec=spec,
        trace=trace,
        best_index=best,
    )
