"""Reproduction of the acceptance criteria.

Each ``criterion_N`` runs one check at its pinned tolerance and returns a
:class:`CriterionResult`. ``fuglab repro`` and ``tests/test_acceptance.py``
both call into this module.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import bessel, euclid
from .config import tol
from .groups import FiniteAbelianGroup, GroupSubset, abelian_groups, dft, parseval_exact, subset_stream
from .spectra import annihilator, duality_failures, find_spectra, fuglede_scan, subgroups, transversal
from .tiling import dft_tiling_criterion, find_tiling_complements, verify_tiling


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:>2}. {self.title} ({self.seconds:.2f}s) {self.detail}"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "detail": self.detail,
        }


def _timed(number: int, title: str):
    def wrap(fn):
        def run(**kw) -> CriterionResult:
            t0 = time.perf_counter()
            passed, detail = fn(**kw)
            return CriterionResult(number, title, bool(passed), detail, time.perf_counter() - t0)

        run.number = number
        run.title = title
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


@_timed(1, "finite Fuglede scan, Z_N for N <= 12")
def criterion_1(budget="desk"):
    t0 = time.perf_counter()
    disc, counts = [], {}
    for n in range(2, 13):
        rep = fuglede_scan(FiniteAbelianGroup.cyclic(n), budget=budget)
        counts[n] = rep.counts["subsets"]
        disc += [{"N": n, **d} for d in rep.discrepancies]
    elapsed = time.perf_counter() - t0
    return not disc and elapsed < 60.0, {"discrepancies": len(disc), "subsets": sum(counts.values()), "seconds": round(elapsed, 2)}


@_timed(2, "subgroup duality: transversal tiles have H^perp as spectrum, |G| <= 24")
def criterion_2(**_):
    failures, checked = [], 0
    for n in range(2, 25):
        for G in abelian_groups(n):
            checked += len(subgroups(G))
            failures += [{"group": list(G.factors), **f} for f in duality_failures(G)]
    return not failures, {"subgroups": checked, "failures": len(failures)}


@_timed(3, "triangle zero set on |m|,|n| <= 50")
def criterion_3(**_):
    m = np.arange(-50, 51)
    M, N = np.meshgrid(m, m, indexing="ij")
    mod = np.abs(euclid.triangle_ft(M, N))
    member = (M != 0) & (N != 0) & (M != N)
    numeric = mod < tol("triangle_zero_abs")
    mismatches = int(np.count_nonzero(member != numeric))
    floor = float(mod[~member].min())
    return mismatches == 0 and floor > tol("triangle_nonzero_floor"), {
        "mismatches": mismatches,
        "maxZeroModulus": float(mod[member].max()),
        "minNonzeroModulus": floor,
    }


@_timed(4, "closed form vs boundary integral, 10^4 frequencies")
def criterion_4(seed=20240401, **_):
    xi, eta = euclid.random_annulus(10_000, 0.1, 100.0, seed)
    T = euclid.Polygon.standard_triangle()
    err = float(np.max(np.abs(euclid.triangle_ft(xi, eta) - euclid.polygon_ft_boundary(T, xi, eta))))
    return err < tol("closed_vs_boundary_abs"), {"maxDiscrepancy": err}


@_timed(5, "lower bound |F(xi,0)| >= 1/(4 pi |xi|) and zero-free strip")
def criterion_5(**_):
    c = tol("ft_lower_bound_c")
    ints = np.concatenate((-np.arange(1, 101), np.arange(1, 101))).astype(float)
    ok_int = np.abs(euclid.triangle_ft(ints, 0.0)) * np.abs(ints) >= c
    k = np.arange(500, 5001)
    grid = np.concatenate((-k[::-1], k)) * 0.01
    ok_grid = np.abs(euclid.triangle_ft(grid, 0.0)) * np.abs(grid) >= c
    strip = euclid.zero_free_strip_scan()
    ratio = float(min((np.abs(euclid.triangle_ft(ints, 0.0)) * np.abs(ints)).min(),
                      (np.abs(euclid.triangle_ft(grid, 0.0)) * np.abs(grid)).min()))
    passed = bool(ok_int.all() and ok_grid.all() and strip.passed)
    return passed, {"min |xi| |F(xi,0)|": ratio, "c": c, "stripMinModulus": strip.min_modulus, "stripArgmin": strip.argmin}


@_timed(6, "gradient bound |grad F| |zeta| <= C on 1 <= |zeta| <= 100")
def criterion_6(seed=7, **_):
    C = euclid.calibrate_gradient_constant()
    xi, eta = euclid.random_annulus(1000, 1.0, 100.0, seed)
    test_max = float(np.max(euclid.scaled_gradient(xi, eta)))
    bound = (1.0 + tol("gradient_slack")) * C
    return test_max <= bound, {"calibratedC": C, "testMax": test_max, "bound": bound}


@_timed(7, "truncated Parseval sum for the unit square, radius 200")
def criterion_7(seed=11, **_):
    Q = euclid.Polygon.box()
    L = euclid.Lattice.integer()
    R = tol("lattice_parseval_truncation")
    rng = np.random.default_rng(seed)
    ts = rng.uniform(0.0, 1.0, size=(25, 2))
    reports = [euclid.lattice_parseval_check(Q, L, t, R, precheck=(i == 0)) for i, t in enumerate(ts)]
    residuals = [r.residual for r in reports]
    at_zero = euclid.lattice_parseval_check(Q, L, (0.0, 0.0), R, precheck=False).residual
    limit = tol("lattice_parseval_abs")
    failing = sum(r >= limit for r in residuals)
    return failing == 0 and at_zero == 0.0, {
        "maxResidual": max(residuals),
        "failingT": failing,
        "residualAtZero": at_zero,
        "maxTailBound": max(r.tail_bound for r in reports),
        "withinTailBound": all(r.passed for r in reports[1:]) and reports[0].passed,
    }


@_timed(8, "density of {(-n, n)} in balls of radius 10, 100, 1000")
def criterion_8(**_):
    dens = [euclid.density_counter(euclid.AntiDiagonal(), R)[1] for R in (10, 100, 1000)]
    decreasing = all(a > b for a, b in zip(dens, dens[1:]))
    return decreasing and dens[-1] < 0.05, {"densities": dens}


@_timed(9, "Bessel radii r_n = A + B n + o(1)")
def criterion_9(**_):
    T = bessel.zero_table(100)
    res = float(np.abs(T.residuals()[49:]).max())
    gap_dev = float(np.abs(T.gaps()[49:] - T.fitted_b).max())
    ok = abs(T.fitted_b - 0.5) < tol("fit_b_abs") and res < tol("fit_residual_abs") and gap_dev < tol("fit_residual_abs")
    return ok, {"A": T.fitted_a, "B": T.fitted_b, "maxResidual(n>=50)": res, "maxGapDeviation(n>=50)": gap_dev}


@_timed(10, "equilateral orthogonal triple for the disk, R = 0.7")
def criterion_10(**_):
    S = bessel.orth_search(0.7, "exact")
    r1 = bessel.zero_table(1).radius(1)
    dists = [d for _, _, d in S.distances()]
    equilateral = len(S) == 3 and all(abs(d - r1) <= tol("radius_match_abs") for d in dists)
    # independent of the radius table: the disk transform itself vanishes
    ft = [abs(bessel.bessel_j1(2 * math.pi * d)) for d in dists]
    ok = equilateral and not bessel.non_orthogonal_pairs(S) and max(ft, default=1.0) < tol("radius_match_abs")
    return ok, {"size": len(S), "points": [list(p) for p in S.points], "r1": r1, "max|J1(2 pi d)|": max(ft, default=None)}


def orthogonal_sets_for_gaps() -> list[bessel.FrequencySet]:
    sets = [bessel.orth_search(R, "exact") for R in (0.7, 1.0, 2.0, 3.0)]
    sets += [bessel.orth_search(R, "greedy") for R in (5.0, 10.0, 20.0, 40.0)]
    sets += bessel.orthogonal_triangles(6, 20)
    return sets


@_timed(11, "distance-gap demonstration")
def criterion_11(**_):
    table = bessel.zero_table(100)
    checked, failed, worst = 0, 0, math.inf
    for S in orthogonal_sets_for_gaps():
        rep = bessel.distance_gap_demo(S, table)
        if not rep.checked:
            continue
        checked += 1
        failed += not rep.passed
        worst = min(worst, min(c["gap"] - rep.threshold for c in rep.checked))
    return checked > 0 and failed == 0, {"setsChecked": checked, "failed": failed, "minSlack": worst}


def _direct_dft(A: GroupSubset) -> np.ndarray:
    g = A.group
    lam = np.arange(g.order)
    k = g.pairing(lam[:, None], np.array(A.elements)[None, :])
    return np.exp(-2j * np.pi * k / g.exponent).sum(axis=1)


def naive_spectra(A: GroupSubset) -> list[tuple[int, ...]]:
    """All |A|-subsets of frequencies containing 0 with pairwise differences in the zero set.

    The zero set comes from direct character sums, not from the FFT.
    """
    g = A.group
    vals = _direct_dft(A)
    zero = np.abs(vals) < 1e-9 * A.size
    out = []
    for rest in itertools.combinations(range(1, g.order), A.size - 1):
        S = (0,) + rest
        if all(zero[int(g.sub(a, b))] for a, b in itertools.combinations(S, 2)):
            out.append(S)
    return out


@_timed(12, "property suites: Parseval, clique completeness, tiling DFT criterion")
def criterion_12(seed=12, **_):
    rng = np.random.default_rng(seed)
    groups64 = [G for n in range(2, 65) for G in abelian_groups(n)]
    parseval_fail = 0
    for _ in range(500):
        G = groups64[rng.integers(len(groups64))]
        size = int(rng.integers(1, G.order + 1))
        A = GroupSubset.from_elements(G, rng.choice(G.order, size, replace=False).tolist())
        vals = dft(A).values
        float_ok = abs(float(np.sum(np.abs(vals) ** 2)) - G.order * A.size) <= 1e-9 * G.order * A.size
        parseval_fail += not (float_ok and parseval_exact(A))

    clique_fail = clique_checked = 0
    for n in range(2, 17):
        for G in abelian_groups(n):
            if n <= 12:
                subsets = [A for k in range(1, n + 1) for A in subset_stream(G, k, canonical_only=True)]
            else:
                subsets = [
                    GroupSubset.from_elements(G, [0] + rng.choice(np.arange(1, n), int(k) - 1, replace=False).tolist())
                    for k in rng.integers(1, n + 1, size=40)
                ]
            for A in subsets:
                clique_checked += 1
                clique_fail += find_spectra(A) != naive_spectra(A)

    tiling_fail = tiling_checked = 0
    for n in range(2, 25):
        for G in abelian_groups(n):
            pairs = []
            for H in subgroups(G):
                A = transversal(H)
                Ts = find_tiling_complements(A)
                pairs += [(A, T) for T in Ts[:5]]
                pairs.append((A, annihilator(H) if annihilator(H).size * A.size == n else H))
            divisors = [d for d in range(1, n + 1) if n % d == 0]
            for _ in range(20):
                d = int(rng.choice(divisors))
                A = GroupSubset.from_elements(G, [0] + rng.choice(np.arange(1, n), d - 1, replace=False).tolist())
                T = GroupSubset.from_elements(G, [0] + rng.choice(np.arange(1, n), n // d - 1, replace=False).tolist())
                pairs.append((A, T))
                pairs += [(A, T2) for T2 in find_tiling_complements(A)[:2]]
            for A, T in pairs:
                tiling_checked += 1
                tiling_fail += bool(verify_tiling(A, T)) != dft_tiling_criterion(A, T)

    ok = parseval_fail == clique_fail == tiling_fail == 0
    return ok, {
        "parsevalSubsets": 500,
        "parsevalFailures": parseval_fail,
        "cliqueCases": clique_checked,
        "cliqueFailures": clique_fail,
        "tilingPairs": tiling_checked,
        "tilingFailures": tiling_fail,
    }


CRITERIA = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12,
]


def run(numbers=None, budget="desk") -> list[CriterionResult]:
    chosen = CRITERIA if not numbers else [c for c in CRITERIA if c.number in set(numbers)]
    return [c(budget=budget) for c in chosen]
