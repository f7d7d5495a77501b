"""Spectra of subsets of finite abelian groups.

Characters chi_lam, chi_mu are orthogonal on ``A`` exactly when
``1_A^(lam - mu) = 0``, so an orthogonal set of characters is a clique in
the graph joining frequencies whose difference lies in the zero set, and a
spectrum is such a clique with ``|A|`` vertices.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import cyclotomic
from .cliques import k_cliques
from .config import resolve_budget, tol
from .groups import (
    DftTable,
    FiniteAbelianGroup,
    GroupSubset,
    dft,
    exact_counts,
    subset_stream,
)
from .tiling import is_tile


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OrthogonalityGraph:
    group: FiniteAbelianGroup
    base_set: GroupSubset
    adjacency: tuple[int, ...] = field(repr=False)
    table: DftTable = field(repr=False)

    def has_edge(self, lam: int, mu: int) -> bool:
        return bool(self.adjacency[lam] >> mu & 1)


def orthogonality_graph(A: GroupSubset, backend: str = "float") -> OrthogonalityGraph:
    table = dft(A, backend)
    g = A.group
    zeros = np.array(table.zero_set.elements, dtype=np.int64)
    adjacency = []
    for lam in range(g.order):
        m = 0
        if zeros.size:
            # lam - mu = z  <=>  mu = lam - z
            for mu in g.sub(lam, zeros).tolist():
                m |= 1 << mu
        adjacency.append(m)
    return OrthogonalityGraph(g, A, tuple(adjacency), table)


@dataclass(frozen=True)
class SpectrumCertificate:
    base_set: GroupSubset
    spectrum: tuple[int, ...]
    parseval_residual: float
    exact: bool

    ok = True

    def __bool__(self):
        return True

    def to_json(self) -> dict:
        return {
            "spectrum": list(self.spectrum),
            "parsevalResidual": self.parseval_residual,
            "exact": self.exact,
        }


@dataclass(frozen=True)
class SpectrumRefutation:
    """Why a candidate frequency set is not a spectrum.

    ``reason`` is one of ``"pair"`` (a non-orthogonal pair, in ``pair``),
    ``"cardinality"`` or ``"parseval"`` (failing point in ``t``).
    """

    reason: str
    pair: tuple[int, int] | None = None
    t: int | None = None
    value: float | None = None

    ok = False

    def __bool__(self):
        return False

    def to_json(self) -> dict:
        return {"reason": self.reason, "pair": self.pair, "t": self.t, "value": self.value}


def _as_frequencies(g: FiniteAbelianGroup, freqs: Iterable) -> list[int]:
    out = []
    for lam in freqs:
        if isinstance(lam, (tuple, list)):
            if len(lam) != g.rank or any(not 0 <= int(c) < n for c, n in zip(lam, g.factors)):
                raise ValueError(f"frequency {lam} is not in the dual group of {g}")
            out.append(g.encode(lam))
        else:
            if not 0 <= int(lam) < g.order:
                raise ValueError(f"frequency {lam} is not in the dual group of {g}")
            out.append(int(lam))
    return out


def parseval_sums(A: GroupSubset, spectrum, table: DftTable | None = None) -> np.ndarray:
    """``S(t) = sum_{lam in spectrum} |1_A^(t - lam)|^2`` for every ``t``."""
    g = A.group
    table = dft(A) if table is None else table
    power = np.abs(table.values) ** 2
    lams = np.array(spectrum, dtype=np.int64)
    diffs = g.sub(np.arange(g.order)[:, None], lams[None, :])
    return power[diffs].sum(axis=1)


def _parseval_exact_failure(A: GroupSubset, spectrum) -> int | None:
    g = A.group
    n = g.exponent
    sq = [cyclotomic.abs_squared(exact_counts(A, lam)) for lam in range(g.order)]
    target = A.size**2
    for t in range(g.order):
        total = np.zeros(n, dtype=np.int64)
        for lam in g.sub(t, np.array(spectrum, dtype=np.int64)).tolist():
            total += sq[lam]
        if not cyclotomic.equals_integer(total, n, target):
            return t
    return None


def verify_spectrum(A: GroupSubset, freqs, exact: bool | None = None):
    """Certify that the characters with frequencies ``freqs`` form an orthogonal basis of L^2(A).

    Checks pairwise orthogonality, ``|freqs| = |A|``, and then the identity
    ``sum_lam |1_A^(t - lam)|^2 = |A|^2`` at every ``t``. With ``exact``
    (default when the group order allows it) the identity is decided in
    Z[zeta_N] and the residual of a certificate is exactly 0.
    """
    g = A.group
    lams = _as_frequencies(g, freqs)
    if not lams:
        raise ValueError("frequency set must be nonempty")
    if len(set(lams)) != len(lams):
        raise ValueError("frequency set has repeated entries")
    if exact is None:
        exact = g.order <= tol("exact_max_order")
    table = dft(A, "exact" if exact else "float")
    zs = table.zero_set
    for i, lam in enumerate(lams):
        for mu in lams[i + 1:]:
            d = int(g.sub(lam, mu))
            if d not in zs:
                return SpectrumRefutation("pair", pair=(lam, mu), value=abs(table.values[d]))
    if len(lams) != A.size:
        return SpectrumRefutation("cardinality", value=float(len(lams)))
    sums = parseval_sums(A, lams, table)
    err = np.abs(sums - A.size**2)
    worst = int(np.argmax(err))
    if exact:
        bad = _parseval_exact_failure(A, lams)
        if bad is not None:
            return SpectrumRefutation("parseval", t=bad, value=float(err[bad]))
        residual = 0.0
    else:
        residual = float(err[worst])
        if residual > tol("parseval_float_rel") * g.order * A.size:
            return SpectrumRefutation("parseval", t=worst, value=residual)
    return SpectrumCertificate(A, tuple(sorted(lams)), residual, exact)


def find_spectra(A: GroupSubset, backend: str = "float", limit: int | None = None) -> list[tuple[int, ...]]:
    """All spectra of ``A`` containing frequency 0, as sorted tuples.

    A spectrum containing 0 is 0 together with a ``(|A|-1)``-clique among
    the neighbours of 0. ``limit`` stops after that many spectra.
    """
    graph = orthogonality_graph(A, backend)
    k = A.size
    out = []
    for clique in k_cliques(graph.adjacency, k - 1, candidates=graph.adjacency[0]):
        out.append(tuple(sorted((0,) + clique)))
        if limit is not None and len(out) >= limit:
            break
    return sorted(out)


def is_spectral(A: GroupSubset) -> tuple[bool, tuple[int, ...] | None]:
    found = find_spectra(A, limit=1)
    return (True, found[0]) if found else (False, None)


@dataclass
class ScanReport:
    group: FiniteAbelianGroup
    max_size: int
    records: list[dict]
    discrepancies: list[dict]
    counts: dict
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.discrepancies

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "maxSize": self.max_size,
            "counts": self.counts,
            "discrepancies": self.discrepancies,
            "records": self.records,
            "seconds": round(self.seconds, 3),
        }


def _classify(A: GroupSubset) -> dict:
    tiles, cert = is_tile(A)
    spectral, spectrum = is_spectral(A)
    witnesses = {}
    if tiles:
        witnesses["complement"] = list(cert.complement.elements)
    if spectral:
        witnesses["spectrum"] = list(spectrum)
    return {"subset": list(A.elements), "isTile": tiles, "isSpectral": spectral, "witnesses": witnesses}


def _scan_chunk(args) -> list[dict]:
    factors, sizes, shard = args
    g = FiniteAbelianGroup(factors)
    out = []
    for k in sizes:
        for A in subset_stream(g, k, canonical_only=True, shard=shard):
            out.append(_classify(A))
    return out


def check_budget(G: FiniteAbelianGroup, max_size: int, budget) -> None:
    limit = resolve_budget(budget)
    for k in range(1, max_size + 1):
        n = math.comb(G.order, k)
        if n > limit:
            raise BudgetExceeded(f"size {k}: C({G.order},{k}) = {n} subsets exceeds budget {limit}")


def fuglede_scan(G: FiniteAbelianGroup, max_size: int | None = None, budget="desk", threads: int = 1) -> ScanReport:
    """Classify every translation-canonical subset of size <= ``max_size``
    as tile / spectral and list the subsets where the two verdicts differ."""
    start = time.perf_counter()
    max_size = G.order if max_size is None else min(max_size, G.order)
    check_budget(G, max_size, budget)
    sizes = list(range(1, max_size + 1))
    if threads > 1:
        jobs = [(G.factors, [k], None) for k in sizes]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_scan_chunk, jobs))
        records = [r for chunk in chunks for r in chunk]
    else:
        records = _scan_chunk((G.factors, sizes, None))
    records.sort(key=lambda r: (len(r["subset"]), r["subset"]))
    discrepancies = [r for r in records if r["isTile"] != r["isSpectral"]]
    counts = {
        "subsets": len(records),
        "tiles": sum(r["isTile"] for r in records),
        "spectral": sum(r["isSpectral"] for r in records),
        "discrepancies": len(discrepancies),
    }
    return ScanReport(G, max_size, records, discrepancies, counts, time.perf_counter() - start)


def subgroups(G: FiniteAbelianGroup) -> list[GroupSubset]:
    """Every subgroup of ``G`` (closure search from the trivial subgroup)."""
    def closure(gens: frozenset) -> int:
        elems = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for s in gens:
                y = int(G.add(x, s))
                if y not in elems:
                    elems.add(y)
                    frontier.append(y)
        bits = 0
        for e in elems:
            bits |= 1 << e
        return bits

    found = {1: ()}
    stack = [1]
    while stack:
        H = stack.pop()
        for x in range(G.order):
            if H >> x & 1:
                continue
            gens = frozenset(i for i in range(G.order) if H >> i & 1) | {x}
            K = closure(gens)
            if K not in found:
                found[K] = ()
                stack.append(K)
    return sorted((GroupSubset(G, bits) for bits in found), key=lambda H: (H.size, H.elements))


def annihilator(H: GroupSubset) -> GroupSubset:
    """Frequencies whose character is identically 1 on ``H``."""
    g = H.group
    h = np.array(H.elements, dtype=np.int64)
    keep = [lam for lam in range(g.order) if not np.any(g.pairing(np.full(h.size, lam), h))]
    return GroupSubset.from_elements(g, keep)


def transversal(H: GroupSubset) -> GroupSubset:
    """Least element of every coset of ``H``; tiles ``G`` with complement ``H``."""
    g = H.group
    seen, reps = 0, []
    h = np.array(H.elements, dtype=np.int64)
    for x in range(g.order):
        if seen >> x & 1:
            continue
        reps.append(x)
        for y in g.add(h, x).tolist():
            seen |= 1 << y
    return GroupSubset.from_elements(g, reps)


def duality_failures(G: FiniteAbelianGroup) -> list[dict]:
    """For every subgroup ``H``: the transversal tile must have ``H^perp`` as a spectrum."""
    from .tiling import verify_tiling

    failures = []
    for H in subgroups(G):
        A = transversal(H)
        if not verify_tiling(A, H):
            failures.append({"subgroup": list(H.elements), "stage": "tiling"})
            continue
        cert = verify_spectrum(A, annihilator(H).elements)
        if not cert:
            failures.append({"subgroup": list(H.elements), "stage": "spectrum", "why": cert.to_json()})
    return failures
