"""Bessel J0/J1, zeros of J1, and orthogonal sets of exponentials for the unit disk.

With ``F(xi) = int f(x) exp(-2 pi i xi.x) dx`` the unit disk has
``F(zeta) = J1(2 pi |zeta|) / |zeta|``, so its zero set is the union of the
circles of radius ``r_n = j_{1,n} / (2 pi)``. Two exponentials are orthogonal
on the disk iff their frequencies are at distance some ``r_n``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from functools import lru_cache

import numpy as np

from .cliques import max_clique
from .config import tol

TWO_PI = 2.0 * math.pi


def _series(nu: int, x: float) -> float:
    # sum_k (-1)^k (x/2)^(2k+nu) / (k! (k+nu)!), summed in 50-digit decimal
    with localcontext() as ctx:
        ctx.prec = 50
        if x == 0:
            return 1.0 if nu == 0 else 0.0
        half = Decimal(x) / 2
        q = half * half
        term = half**nu / math.factorial(nu)
        total = term
        k = 0
        while True:
            k += 1
            term = -term * q / (k * (k + nu))
            total += term
            if abs(term) < Decimal("1e-40") and k > 2:
                break
        return float(total)


def _asymptotic(nu: int, x: float) -> float:
    """Hankel expansion J_nu(x) = sqrt(2/(pi x)) (P cos w - Q sin w), w = x - nu pi/2 - pi/4.

    Terms are summed until they stop decreasing (optimal truncation).
    """
    mu = 4.0 * nu * nu
    P, Q = 1.0, 0.0
    a = 1.0
    k = 0
    prev = math.inf
    while True:
        k += 1
        a = a * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        if abs(a) >= prev or abs(a) < 1e-17:
            break
        prev = abs(a)
        # a_k contributes to P (k even) or Q (k odd) with sign (-1)^(k//2)
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2:
            Q += sign * a
        else:
            P += sign * a
    # cos(w), sin(w) via cos(x), sin(x) keeps the phase accurate for large x
    c, s = math.cos(x), math.sin(x)
    shift = nu * math.pi / 2 + math.pi / 4
    cw = c * math.cos(shift) + s * math.sin(shift)
    sw = s * math.cos(shift) - c * math.sin(shift)
    return math.sqrt(2.0 / (math.pi * x)) * (P * cw - Q * sw)


def _bessel(nu: int, x: float, crossover: float | None) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    cut = tol("bessel_crossover") if crossover is None else crossover
    ax = abs(x)
    value = _series(nu, ax) if ax <= cut else _asymptotic(nu, ax)
    return -value if (nu % 2 and x < 0) else value


def bessel_j1(x: float, crossover: float | None = None) -> float:
    """J1(x): decimal power series for |x| <= crossover, Hankel asymptotics beyond."""
    return _bessel(1, x, crossover)


def bessel_j0(x: float, crossover: float | None = None) -> float:
    return _bessel(0, x, crossover)


def disk_ft(rho: float) -> float:
    """Radial transform of the unit-disk indicator at frequency radius ``rho``."""
    if rho == 0:
        return math.pi
    return bessel_j1(TWO_PI * rho) / rho


def mcmahon_guess(n: int) -> float:
    """McMahon expansion for the n-th positive zero of J1."""
    beta = (n + 0.25) * math.pi
    return beta - 3.0 / (8.0 * beta) + 3.0 / (128.0 * beta**3)


@lru_cache(maxsize=None)
def _j1_zero(n: int) -> float:
    """n-th positive zero of J1 by safeguarded Newton on J1' = J0 - J1/x."""
    x = mcmahon_guess(n)
    lo, hi = x - 0.5, x + 0.5
    flo = bessel_j1(lo)
    if flo * bessel_j1(hi) > 0:
        raise ArithmeticError(f"McMahon bracket failed for zero {n}")
    for _ in range(100):
        f = bessel_j1(x)
        if f == 0.0:
            return x
        if (f > 0) == (flo > 0):
            lo, flo = x, f
        else:
            hi = x
        step = f / (bessel_j0(x) - f / x)
        nxt = x - step
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) <= 4e-16 * x:
            return nxt
        x = nxt
    return x


@dataclass(frozen=True)
class BesselZeroTable:
    zeros: np.ndarray = field(repr=False)
    radii: np.ndarray = field(repr=False)
    fitted_a: float
    fitted_b: float

    @property
    def count(self) -> int:
        return len(self.zeros)

    def radius(self, n: int) -> float:
        """``r_n`` for 1-based ``n``."""
        return float(self.radii[n - 1])

    def residuals(self) -> np.ndarray:
        n = np.arange(1, self.count + 1)
        return self.radii - (self.fitted_a + self.fitted_b * n)

    def gaps(self) -> np.ndarray:
        return np.diff(self.radii)

    def to_json(self) -> dict:
        return {
            "count": self.count,
            "zeros": self.zeros.tolist(),
            "radii": self.radii.tolist(),
            "fittedA": self.fitted_a,
            "fittedB": self.fitted_b,
        }


def zero_table(count: int) -> BesselZeroTable:
    """First ``count`` zeros of J1, radii ``j/(2 pi)`` and the affine fit over the last half."""
    if count < 1:
        raise ValueError("count must be >= 1")
    zeros = np.array([_j1_zero(n) for n in range(1, count + 1)])
    radii = zeros / TWO_PI
    n = np.arange(1, count + 1)
    tail = slice(count // 2, count) if count >= 4 else slice(0, count)
    if len(n[tail]) >= 2:
        b, a = np.polyfit(n[tail], radii[tail], 1)
    else:
        b, a = 0.5, float(radii[0]) - 0.5
    return BesselZeroTable(zeros, radii, float(a), float(b))


class _Radii:
    """Zero radii extended on demand."""

    def __init__(self):
        self._table = zero_table(32)

    def up_to(self, rmax: float) -> np.ndarray:
        while self._table.radii[-1] < rmax + 1.0:
            self._table = zero_table(2 * self._table.count)
        return self._table.radii

    @property
    def table(self) -> BesselZeroTable:
        return self._table


_RADII = _Radii()


def radius_index(d: float, tol_abs: float | None = None) -> int | None:
    """1-based ``n`` with ``|d - r_n| <= tol``, or None."""
    tol_abs = tol("radius_match_abs") if tol_abs is None else tol_abs
    radii = _RADII.up_to(d)
    i = int(np.searchsorted(radii, d))
    for j in (i - 1, i):
        if 0 <= j < len(radii) and abs(radii[j] - d) <= tol_abs:
            return j + 1
    return None


def radii_up_to(rmax: float) -> np.ndarray:
    radii = _RADII.up_to(rmax)
    return radii[radii <= rmax]


def disk_orthogonal(lam, mu, tol_abs: float | None = None) -> bool:
    lam = np.asarray(lam, dtype=float)
    mu = np.asarray(mu, dtype=float)
    d = float(np.hypot(*(lam - mu)))
    if d == 0.0:
        raise ValueError("disk_orthogonal needs two distinct frequencies")
    return radius_index(d, tol_abs) is not None


@dataclass(frozen=True)
class FrequencySet:
    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        pts = tuple((float(x), float(y)) for x, y in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) >= 2 and self.min_distance <= 0:
            raise ValueError("frequency set has repeated points")

    @property
    def array(self) -> np.ndarray:
        return np.array(self.points, dtype=float).reshape(-1, 2)

    def distances(self) -> list[tuple[int, int, float]]:
        a = self.array
        return [
            (i, j, float(np.hypot(*(a[i] - a[j]))))
            for i, j in itertools.combinations(range(len(a)), 2)
        ]

    @property
    def min_distance(self) -> float:
        d = [x for _, _, x in self.distances()]
        return min(d) if d else math.inf

    def __len__(self):
        return len(self.points)

    def to_json(self) -> dict:
        return {"points": [list(p) for p in self.points]}

    @classmethod
    def from_json(cls, obj) -> "FrequencySet":
        return cls(tuple(tuple(p) for p in obj["points"]))


def non_orthogonal_pairs(S: FrequencySet, tol_abs: float | None = None) -> list[tuple[int, int, float]]:
    return [(i, j, d) for i, j, d in S.distances() if radius_index(d, tol_abs) is None]


def _circle_intersections(r0: float, p: tuple[float, float], r1: float) -> list[tuple[float, float]]:
    """Points at distance r0 from the origin and r1 from ``p``."""
    px, py = p
    d = math.hypot(px, py)
    if d == 0 or d > r0 + r1 or d < abs(r0 - r1):
        return []
    along = (r0 * r0 - r1 * r1 + d * d) / (2 * d)
    h2 = r0 * r0 - along * along
    h = math.sqrt(max(h2, 0.0))
    ux, uy = px / d, py / d
    cx, cy = along * ux, along * uy
    if h == 0.0:
        return [(cx, cy)]
    return [(cx - h * uy, cy + h * ux), (cx + h * uy, cy - h * ux)]


def _candidates(R: float, second: tuple[float, float]) -> list[tuple[float, float]]:
    """Every point of ball(0, R) at a zero-radius distance from both 0 and ``second``."""
    near = radii_up_to(R)
    far = radii_up_to(2 * R)
    out = []
    for r0 in near:
        for r1 in far:
            for q in _circle_intersections(float(r0), second, float(r1)):
                if math.hypot(*q) <= R + 1e-12:
                    out.append(q)
    return out


def orth_search(R: float, strategy: str = "exact", max_candidates: int = 4000) -> FrequencySet:
    """Pairwise disk-orthogonal set inside the closed ball(0, R), containing 0.

    Rotations about 0 preserve the ball, so the second point is placed on the
    positive x-axis at some ``r_n <= R``. Every further point is then at a
    zero-radius distance from both, i.e. on an intersection of two circles,
    which makes the candidate list complete.

    ``exact`` maximises over all second-point radii with a clique search;
    ``greedy`` takes the smallest radius and then repeatedly accepts the
    nearest compatible candidate.
    """
    if R <= 0:
        raise ValueError("R must be positive")
    origin = (0.0, 0.0)
    seconds = radii_up_to(R)
    if len(seconds) == 0:
        return FrequencySet((origin,))
    if strategy == "greedy":
        chosen = [origin, (float(seconds[0]), 0.0)]
        cands = sorted(_candidates(R, chosen[1]), key=lambda q: (round(math.hypot(*q), 12), math.atan2(q[1], q[0])))
        for q in cands:
            if all(_orth(q, p) for p in chosen):
                chosen.append(q)
        return FrequencySet(tuple(chosen))
    if strategy != "exact":
        raise ValueError(f"unknown strategy {strategy!r}")
    best = [origin, (float(seconds[0]), 0.0)]
    for r in seconds:
        second = (float(r), 0.0)
        cands = [q for q in _candidates(R, second) if _orth(q, origin) and _orth(q, second)]
        if len(cands) > max_candidates:
            raise RuntimeError(f"{len(cands)} candidates exceed max_candidates={max_candidates}")
        if 2 + len(cands) <= len(best):
            continue
        adj = [0] * len(cands)
        for i, j in itertools.combinations(range(len(cands)), 2):
            if _orth(cands[i], cands[j]):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        clique = max_clique(adj)
        if 2 + len(clique) > len(best):
            best = [origin, second] + [cands[i] for i in clique]
    return FrequencySet(tuple(best))


def _orth(p, q) -> bool:
    d = math.hypot(p[0] - q[0], p[1] - q[1])
    return d > 0 and radius_index(d) is not None


def orthogonal_triangles(lo: int, hi: int) -> list[FrequencySet]:
    """Triples {0, (r_a, 0), p} with |p| = r_b and |p - (r_a, 0)| = r_c for lo <= a <= b <= c <= hi."""
    radii = _RADII.up_to(hi / 2.0 + 1.0)
    out = []
    for a, b, c in itertools.combinations_with_replacement(range(lo, hi + 1), 3):
        ra, rb, rc = radii[a - 1], radii[b - 1], radii[c - 1]
        if rc >= ra + rb:
            continue
        pts = _circle_intersections(float(rb), (float(ra), 0.0), float(rc))
        upper = [p for p in pts if p[1] > 0]
        if upper:
            out.append(FrequencySet(((0.0, 0.0), (float(ra), 0.0), upper[0])))
    return out


@dataclass
class GapReport:
    B: float
    C: float
    eps: float
    realized: list[float]
    intervals: list[tuple[float, float]]
    gaps: list[tuple[float, float]]
    checked: list[dict]
    threshold: float

    @property
    def passed(self) -> bool:
        return all(c["ok"] for c in self.checked)

    def to_json(self) -> dict:
        return {
            "B": self.B,
            "C": self.C,
            "eps": self.eps,
            "realized": self.realized,
            "intervals": [list(iv) for iv in self.intervals],
            "gaps": [list(g) for g in self.gaps],
            "checked": self.checked,
            "threshold": self.threshold,
            "passed": self.passed,
        }


def distance_gap_demo(S: FrequencySet, table: BesselZeroTable | None = None, margin: float | None = None) -> GapReport:
    """Realized-distance intervals of ``S + B_eps`` and the gaps between them.

    With ``eps = min(B, C)/10`` every distance realized inside ``S + B_eps``
    lies within ``2 eps`` of a distance of ``S``. Consecutive realized
    distances beyond ``r_5`` are distinct zero radii, so their intervals are
    separated by at least ``B - 4 eps - margin``.
    """
    if len(S) < 2:
        raise ValueError("need at least two points")
    bad = non_orthogonal_pairs(S)
    if bad:
        i, j, d = bad[0]
        raise ValueError(f"points {i} and {j} are not disk-orthogonal (distance {d!r} is not a zero radius)")
    table = zero_table(100) if table is None else table
    margin = tol("gap_margin") if margin is None else margin
    B = table.fitted_b
    C = S.min_distance
    eps = min(B, C) / 10.0
    dists = sorted(d for _, _, d in S.distances())
    realized: list[float] = []
    for d in dists:
        if not realized or d - realized[-1] > tol("radius_match_abs"):
            realized.append(d)
    diameter = realized[-1]
    intervals: list[tuple[float, float]] = []
    for d in realized:
        lo, hi = max(d - 2 * eps, 0.0), min(d + 2 * eps, diameter)
        if intervals and lo <= intervals[-1][1]:
            intervals[-1] = (intervals[-1][0], max(hi, intervals[-1][1]))
        else:
            intervals.append((lo, hi))
    gaps = []
    cursor = 0.0
    for lo, hi in intervals:
        if lo > cursor:
            gaps.append((cursor, lo))
        cursor = max(cursor, hi)
    threshold = B - 4 * eps - margin
    r5 = float(_RADII.up_to(0)[4])
    far = [d for d in realized if d > r5]
    checked = []
    for d0, d1 in zip(far, far[1:]):
        length = (d1 - 2 * eps) - (d0 + 2 * eps)
        checked.append({"from": d0, "to": d1, "gap": length, "ok": length >= threshold})
    return GapReport(B, C, eps, realized, intervals, gaps, checked, threshold)
