"""Fourier transforms of planar polygon indicators and the triangle estimates.

Normalization: ``F(xi) = int f(x) exp(-2 pi i xi . x) dx``.

The transform of a triangle with vertices ``v0, v1, v2`` is a second divided
difference of ``exp``::

    F(zeta) = 2 area * exp(-2 pi i zeta.v0) * exp[0, -2 pi i zeta.(v1-v0), -2 pi i zeta.(v2-v0)]

For the standard triangle (0,0), (1,0), (0,1) this is ``exp[0, a, b]`` with
``a = -2 pi i xi`` and ``b = -2 pi i eta``. It is evaluated without
cancellation: a Taylor series when all three nodes are within distance 1,
otherwise the recurrence whose denominator is the farthest pair of nodes,
with each first difference written as ``exp(midpoint) * sinc``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from .config import tol

TWO_PI = 2.0 * math.pi
_SERIES_TERMS = 30


def _divdiff1(u, v):
    """exp[-2 pi i u, -2 pi i v] for real arrays u, v."""
    return np.exp(-1j * math.pi * (u + v)) * np.sinc(u - v)


def exp_divdiff2(u1, u2):
    """exp[0, -2 pi i u1, -2 pi i u2] for real (broadcastable) u1, u2."""
    u1, u2 = np.broadcast_arrays(np.asarray(u1, dtype=float), np.asarray(u2, dtype=float))
    out = np.empty(u1.shape, dtype=complex)
    d01, d02, d12 = np.abs(u1), np.abs(u2), np.abs(u1 - u2)
    spread = TWO_PI * np.maximum(np.maximum(d01, d02), d12)

    small = spread <= 1.0
    if np.any(small):
        a = -2j * math.pi * u1[small]
        b = -2j * math.pi * u2[small]
        # exp[0,a,b] = sum_k h_k(a, b) / (k+2)!,  h_k = sum_{i+j=k} a^i b^j
        h = np.ones_like(a)
        apow = np.ones_like(a)
        total = h / 2.0
        fact = 2.0
        for k in range(1, _SERIES_TERMS):
            apow = apow * a
            h = b * h + apow
            fact *= k + 2
            total = total + h / fact
        out[small] = total

    big = ~small
    if np.any(big):
        x = np.stack([np.zeros(np.count_nonzero(big)), u1[big], u2[big]])
        d = np.stack([d12[big], d02[big], d01[big]])  # distance of the pair opposite node i
        mid = np.argmax(d, axis=0)  # node not in the farthest pair
        cols = np.arange(x.shape[1])
        lo_idx = np.where(mid == 0, 1, 0)
        hi_idx = np.where(mid == 2, 1, 2)
        x0, x1, x2 = x[lo_idx, cols], x[mid, cols], x[hi_idx, cols]
        num = _divdiff1(x1, x2) - _divdiff1(x0, x1)
        out[big] = num / (-2j * math.pi * (x2 - x0))
    return out


def triangle_ft(xi, eta):
    """Closed-form transform of the indicator of the triangle (0,0), (1,0), (0,1)."""
    res = exp_divdiff2(xi, eta)
    return complex(res) if res.ndim == 0 else res


def triangle_zero_predicate(m: int, n: int) -> bool:
    return m != 0 and n != 0 and m != n


def _as_fraction(v) -> Fraction:
    if isinstance(v, str):
        return Fraction(v.strip())
    if isinstance(v, float):
        return Fraction(v).limit_denominator(10**12)
    return Fraction(v)


def _segments_cross(p, q, r, s) -> bool:
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return (v > 0) - (v < 0)

    def on_seg(a, b, c):
        return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])

    o1, o2, o3, o4 = orient(p, q, r), orient(p, q, s), orient(r, s, p), orient(r, s, q)
    if o1 != o2 and o3 != o4:
        return True
    return any(
        o == 0 and on_seg(a, b, c)
        for o, a, b, c in ((o1, p, q, r), (o2, p, q, s), (o3, r, s, p), (o4, r, s, q))
    )


@dataclass(frozen=True)
class Polygon:
    """Simple polygon with rational vertices listed counter-clockwise."""

    vertices: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        verts = tuple((_as_fraction(x), _as_fraction(y)) for x, y in self.vertices)
        if len(verts) < 3:
            raise ValueError("a polygon needs at least 3 vertices")
        object.__setattr__(self, "vertices", verts)
        area2 = self._area2()
        if area2 == 0:
            raise ValueError("polygon has zero area")
        if area2 < 0:
            raise ValueError("vertices must be listed counter-clockwise")
        n = len(verts)
        for i in range(n):
            for j in range(i + 1, n):
                if j == i + 1 or (i == 0 and j == n - 1):
                    continue
                if _segments_cross(verts[i], verts[(i + 1) % n], verts[j], verts[(j + 1) % n]):
                    raise ValueError("polygon is self-intersecting")

    def _area2(self) -> Fraction:
        v = self.vertices
        n = len(v)
        return sum((v[i][0] * v[(i + 1) % n][1] - v[(i + 1) % n][0] * v[i][1] for i in range(n)), Fraction(0))

    @property
    def area(self) -> Fraction:
        return self._area2() / 2

    @property
    def points(self) -> np.ndarray:
        return np.array([[float(x), float(y)] for x, y in self.vertices])

    @classmethod
    def standard_triangle(cls) -> "Polygon":
        return cls(((0, 0), (1, 0), (0, 1)))

    @classmethod
    def box(cls, width=1, height=1) -> "Polygon":
        return cls(((0, 0), (width, 0), (width, height), (0, height)))

    @classmethod
    def parallelogram(cls, basis) -> "Polygon":
        """The half-open cell ``basis @ [0,1)^2`` (columns are the edge vectors)."""
        (a, b), (c, d) = basis
        e1, e2 = (a, c), (b, d)
        return cls(((0, 0), e1, (e1[0] + e2[0], e1[1] + e2[1]), e2))

    def to_json(self) -> dict:
        return {"vertices": [[str(x), str(y)] for x, y in self.vertices]}

    @classmethod
    def from_json(cls, obj) -> "Polygon":
        return cls(tuple(tuple(p) for p in obj["vertices"]))

    def contains(self, x, y) -> np.ndarray:
        """Even-odd point-in-polygon test (boundary behaviour unspecified)."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        inside = np.zeros(np.broadcast(x, y).shape, dtype=bool)
        pts = self.points
        n = len(pts)
        for i in range(n):
            x1, y1 = pts[i]
            x2, y2 = pts[(i + 1) % n]
            crosses = (y1 > y) != (y2 > y)
            with np.errstate(divide="ignore", invalid="ignore"):
                xint = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            inside ^= crosses & (x < xint)
        return inside


def polygon_ft(P: Polygon, xi, eta):
    """Transform of ``1_P`` by a signed fan of triangles from vertex 0; valid at zeta = 0."""
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    pts = P.points
    v0 = pts[0]
    total = np.zeros(np.broadcast(xi, eta).shape, dtype=complex)
    for i in range(1, len(pts) - 1):
        e1 = pts[i] - v0
        e2 = pts[i + 1] - v0
        det = e1[0] * e2[1] - e1[1] * e2[0]
        total += det * exp_divdiff2(xi * e1[0] + eta * e1[1], xi * e2[0] + eta * e2[1])
    total *= np.exp(-2j * math.pi * (xi * v0[0] + eta * v0[1]))
    return complex(total) if total.ndim == 0 else total


def polygon_ft_boundary(P: Polygon, xi, eta):
    """Transform of ``1_P`` from the boundary integral (divergence theorem).

        F(zeta) = -1/(2 pi i |zeta|) * oint exp(-2 pi i zeta.t) (zeta/|zeta|).nu(t) dsigma(t)

    Each edge ``p -> p + d`` contributes the exact one-dimensional integral
    ``(zeta . n) exp(-2 pi i zeta.p) exp(-pi i zeta.d) sinc(zeta.d)``
    with ``n = (d_y, -d_x)`` the outward normal scaled by the edge length.
    """
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    r2 = xi * xi + eta * eta
    if np.any(r2 == 0):
        raise ValueError("boundary formula is singular at zeta = 0: use area")
    pts = P.points
    total = np.zeros(np.broadcast(xi, eta).shape, dtype=complex)
    for i in range(len(pts)):
        p = pts[i]
        d = pts[(i + 1) % len(pts)] - p
        flux = xi * d[1] - eta * d[0]
        w = xi * d[0] + eta * d[1]
        total += flux * np.exp(-2j * math.pi * (xi * p[0] + eta * p[1])) * np.exp(-1j * math.pi * w) * np.sinc(w)
    res = -total / (2j * math.pi * r2)
    return complex(res) if res.ndim == 0 else res


def mu_ft(xi):
    """Transform of the measure delta_0 - 1_[0,1]."""
    xi = np.asarray(xi, dtype=float)
    res = 1.0 - np.exp(-1j * math.pi * xi) * np.sinc(xi)
    return complex(res) if res.ndim == 0 else res


def projection_ft(xi):
    """Transform of g(x) = (1 - x) on [0, 1], the projection of the triangle onto the x-axis.

    ``g' = mu`` as measures, so ``g^(xi) = mu^(xi) / (2 pi i xi)`` away from 0;
    near 0 the series ``sum_k a^k/(k+2)!`` with ``a = -2 pi i xi`` is used.
    """
    xi = np.asarray(xi, dtype=float)
    out = np.empty(xi.shape, dtype=complex)
    small = TWO_PI * np.abs(xi) <= 1.0
    a = -2j * math.pi * xi[small]
    term = np.full(a.shape, 0.5, dtype=complex)
    total = term.copy()
    for k in range(1, _SERIES_TERMS):
        term = term * a / (k + 2)
        total = total + term
    out[small] = total
    big = ~small
    out[big] = mu_ft(xi[big]) / (2j * math.pi * xi[big])
    return complex(out) if out.ndim == 0 else out


@dataclass
class StripScan:
    K: float
    eps: float
    step_xi: float
    step_eta: float
    min_modulus: float
    argmin: tuple[float, float]
    points: int
    threshold: float
    grid: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None

    @property
    def passed(self) -> bool:
        return self.min_modulus > self.threshold

    def to_json(self) -> dict:
        return {
            "K": self.K,
            "eps": self.eps,
            "stepXi": self.step_xi,
            "stepEta": self.step_eta,
            "minModulus": self.min_modulus,
            "argmin": list(self.argmin),
            "points": self.points,
            "threshold": self.threshold,
            "passed": self.passed,
        }


def zero_free_strip_scan(K=None, eps=None, step_xi=None, step_eta=None, keep_grid=False) -> StripScan:
    """Minimum of ``|F|`` for the standard triangle over ``K <= |xi| <= 10K, |eta| < eps``.

    Grid points are integer multiples of the steps, so integer lattice points
    inside the region are sampled exactly.
    """
    K = tol("strip_K") if K is None else float(K)
    eps = tol("strip_eps") if eps is None else float(eps)
    step_xi = tol("strip_step") if step_xi is None else float(step_xi)
    step_eta = step_xi if step_eta is None else float(step_eta)
    if K <= 0 or eps <= 0:
        raise ValueError("K and eps must be positive")
    if step_xi > eps / 4 or step_eta > eps / 4:
        raise ValueError("grid steps must not exceed eps/4")
    k = np.arange(math.ceil(K / step_xi - 1e-9), math.floor(10 * K / step_xi + 1e-9) + 1)
    xs = np.concatenate((-k[::-1], k)) * step_xi
    j_max = math.ceil(eps / step_eta)
    js = np.arange(-j_max, j_max + 1)
    ys = js * step_eta
    ys = ys[np.abs(ys) < eps]
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    mod = np.abs(triangle_ft(X, Y))
    idx = np.unravel_index(int(np.argmin(mod)), mod.shape)
    return StripScan(
        K, eps, step_xi, step_eta,
        float(mod[idx]), (float(X[idx]), float(Y[idx])), int(mod.size),
        tol("strip_min_modulus"),
        (X.ravel(), Y.ravel(), mod.ravel()) if keep_grid else None,
    )


def ft_gradient(xi, eta, h=None, ft: Callable = triangle_ft):
    """Central-difference gradient ``(dF/dxi, dF/deta)`` of a complex transform."""
    h = tol("gradient_fd_step") if h is None else h
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    dxi = (ft(xi + h, eta) - ft(xi - h, eta)) / (2 * h)
    deta = (ft(xi, eta + h) - ft(xi, eta - h)) / (2 * h)
    return dxi, deta


def scaled_gradient(xi, eta, h=None) -> np.ndarray:
    """``|grad F(zeta)| * |zeta|`` for the standard triangle."""
    dxi, deta = ft_gradient(xi, eta, h)
    return np.sqrt(np.abs(dxi) ** 2 + np.abs(deta) ** 2) * np.hypot(xi, eta)


def random_annulus(n: int, rmin: float, rmax: float, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Points with radius uniform in [rmin, rmax] and uniform angle."""
    rng = np.random.default_rng(seed)
    r = rng.uniform(rmin, rmax, n)
    th = rng.uniform(0, TWO_PI, n)
    return r * np.cos(th), r * np.sin(th)


def calibrate_gradient_constant(rmin=1.0, rmax=100.0, radii=60, angles=7200) -> float:
    """Empirical sup of ``|grad F| |zeta|`` from a polar sweep of the annulus.

    The sweep is dense in angle because the large values sit within O(1)
    of the three lines where the transform decays only like 1/|zeta|.
    """
    r = np.geomspace(rmin, rmax, radii)
    th = np.linspace(0, TWO_PI, angles, endpoint=False)
    R, T = np.meshgrid(r, th, indexing="ij")
    return float(np.max(scaled_gradient(R * np.cos(T), R * np.sin(T))))


# --- counting density -------------------------------------------------------


@dataclass(frozen=True)
class Lattice:
    """The lattice ``basis @ Z^d`` (columns of ``basis`` generate it)."""

    basis: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        A = np.array(self.basis, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("basis must be a square matrix")
        if abs(np.linalg.det(A)) <= 1e-300 or np.linalg.cond(A) > 1e12:
            raise ValueError("singular basis matrix")
        object.__setattr__(self, "basis", tuple(tuple(float(v) for v in row) for row in A))

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.basis)

    @property
    def covolume(self) -> float:
        return abs(float(np.linalg.det(self.matrix)))

    def dual(self) -> "Lattice":
        return Lattice(np.linalg.inv(self.matrix).T)

    @classmethod
    def integer(cls, d: int = 2) -> "Lattice":
        return cls(np.eye(d))

    def points_in_ball(self, R: float, center=None) -> np.ndarray:
        A = self.matrix
        d = A.shape[0]
        c = np.zeros(d) if center is None else np.asarray(center, dtype=float)
        kc = np.linalg.solve(A, c)
        reach = R * np.linalg.norm(np.linalg.inv(A), 2)
        ranges = [np.arange(math.floor(kc[i] - reach), math.ceil(kc[i] + reach) + 1) for i in range(d)]
        K = np.stack(np.meshgrid(*ranges, indexing="ij"), axis=-1).reshape(-1, d)
        pts = K @ A.T
        keep = np.sum((pts - c) ** 2, axis=1) <= R * R
        return pts[keep]


@dataclass(frozen=True)
class AntiDiagonal:
    """The orthogonal set {(-n, n) : n in Z} of the standard triangle."""

    def points_in_ball(self, R: float) -> np.ndarray:
        m = math.floor(R / math.sqrt(2.0))
        while 2 * (m + 1) ** 2 <= R * R:
            m += 1
        while m >= 0 and 2 * m * m > R * R:
            m -= 1
        n = np.arange(-m, m + 1)
        return np.stack((-n, n), axis=1).astype(float)


def density_counter(points, R: float) -> tuple[int, float]:
    """``N(R)`` points in the closed ball of radius ``R`` about 0, and ``N(R) / (pi R^2)``.

    ``points`` is an ``(n, 2)`` array-like or a family with ``points_in_ball(R)``.
    """
    if R <= 0:
        raise ValueError("R must be positive")
    if hasattr(points, "points_in_ball"):
        n = len(points.points_in_ball(R))
    else:
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        n = int(np.count_nonzero(np.sum(pts**2, axis=1) <= R * R))
    return n, n / (math.pi * R * R)


# --- lattice tiling and the Parseval identity --------------------------------


def tiles_torus(domain: Polygon, lattice: Lattice, resolution=None) -> bool:
    """Check on a ``resolution^2`` grid of the torus R^2/L that every sample
    point is covered by exactly one lattice translate of ``domain``."""
    res = tol("torus_resolution") if resolution is None else int(resolution)
    A = lattice.matrix
    # irrational offset keeps samples off rational edges
    off = 0.5 + (math.sqrt(2.0) - 1.0) * 1e-3
    u = (np.arange(res) + off) / res
    U, V = np.meshgrid(u, u, indexing="ij")
    base = np.stack((U.ravel(), V.ravel()), axis=1) @ A.T
    pts = domain.points
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    # lattice vectors k with domain - A k meeting the fundamental cell
    corners = np.array([[x, y] for x in (lo[0], hi[0]) for y in (lo[1], hi[1])])
    cell = np.array([[0, 0], [1, 0], [0, 1], [1, 1]]) @ A.T
    span = np.concatenate([np.linalg.solve(A, (c - q)) for c in corners for q in cell]).reshape(-1, 2)
    kmin = np.floor(span.min(axis=0)) - 1
    kmax = np.ceil(span.max(axis=0)) + 1
    counts = np.zeros(len(base), dtype=np.int64)
    for k1 in range(int(kmin[0]), int(kmax[0]) + 1):
        for k2 in range(int(kmin[1]), int(kmax[1]) + 1):
            shift = A @ np.array([k1, k2], dtype=float)
            q = base + shift
            counts += domain.contains(q[:, 0], q[:, 1])
    return bool(np.all(counts == 1))


def _sinc_tail_bound(a: float) -> float:
    """Upper bound for sum_{m in Z, |m - s| > a} 1/(pi^2 (m - s)^2), any real s."""
    if a <= 1:
        return math.inf
    return 2.0 / (math.pi**2 * (a - 1.0))


@dataclass
class ParsevalReport:
    t: tuple[float, float]
    truncation: float
    partial_sum: float
    volume: float
    residual: float
    terms: int
    fundamental_domain: bool
    tail_bound: float

    @property
    def passed(self) -> bool:
        return bool(self.fundamental_domain and self.residual <= self.tail_bound)

    def to_json(self) -> dict:
        return {
            "t": list(self.t),
            "truncation": self.truncation,
            "partialSum": self.partial_sum,
            "volume": self.volume,
            "residual": self.residual,
            "terms": self.terms,
            "fundamentalDomain": self.fundamental_domain,
            "tailBound": self.tail_bound,
            "passed": self.passed,
        }


def lattice_parseval_check(domain: Polygon, lattice: Lattice, t=(0.0, 0.0), truncation=None, precheck=True) -> ParsevalReport:
    """Truncated ``sum_{lam in L*, |lam| <= truncation} |F(t - lam)|^2`` against ``vol^2``.

    ``residual`` is the raw ``|partial - vol^2|``. ``tail_bound`` certifies the
    omitted part of the series when ``domain`` is the cell spanned by the
    lattice basis (then ``F`` is a product of sincs in lattice coordinates);
    for other domains it is reported as infinity.
    """
    R = tol("lattice_parseval_truncation") if truncation is None else float(truncation)
    t = np.asarray(t, dtype=float)
    dual = lattice.dual()
    lams = dual.points_in_ball(R)
    z = t[None, :] - lams
    vals = polygon_ft(domain, z[:, 0], z[:, 1])
    partial = float(math.fsum(np.abs(vals) ** 2))
    vol = float(domain.area)
    fundamental = tiles_torus(domain, lattice) if precheck else True

    tail = math.inf
    A = lattice.matrix
    cell = Polygon.parallelogram(A.tolist())
    same_cell = len(domain.vertices) == len(cell.vertices) and np.allclose(
        np.array(sorted(map(tuple, domain.points))), np.array(sorted(map(tuple, cell.points)))
    )
    if same_cell:
        # |t - lam| <= ||A^{-T}|| * |A^T t - k|, so omitted k satisfy
        # |A^T t - k|_inf > (R - |t|) / (sqrt 2 ||A^{-1}||)
        a = (R - float(np.linalg.norm(t))) / (math.sqrt(2.0) * np.linalg.norm(np.linalg.inv(A), 2))
        full_1d = 2.0 + 1.0 / 3.0  # sum_m sinc^2(m - s) <= 2 + 2 sum_j 1/(pi j)^2
        tail = float(vol**2 * 2.0 * full_1d * _sinc_tail_bound(a))
    return ParsevalReport(
        (float(t[0]), float(t[1])), R, partial, vol, abs(partial - vol**2), int(len(lams)), fundamental, tail
    )
