import itertools

import numpy as np
import pytest

from fuglab.acceptance import naive_spectra
from fuglab.cliques import k_cliques, max_clique
from fuglab.groups import FiniteAbelianGroup, GroupSubset, abelian_groups, subset_stream
from fuglab.spectra import (
    BudgetExceeded,
    annihilator,
    duality_failures,
    find_spectra,
    fuglede_scan,
    orthogonality_graph,
    subgroups,
    transversal,
    verify_spectrum,
)


def S(g, elems):
    return GroupSubset.from_elements(g, elems)


def random_graph(n, p, seed):
    rng = np.random.default_rng(seed)
    adj = [0] * n
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < p:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return adj


def brute_cliques(adj, k):
    n = len(adj)
    return sorted(
        c for c in itertools.combinations(range(n), k)
        if all(adj[a] >> b & 1 for a, b in itertools.combinations(c, 2))
    )


@pytest.mark.parametrize("seed", range(8))
def test_k_cliques_match_brute_force(seed):
    adj = random_graph(14, 0.5, seed)
    for k in (1, 2, 3, 4, 5):
        assert sorted(tuple(sorted(c)) for c in k_cliques(adj, k)) == brute_cliques(adj, k)


@pytest.mark.parametrize("seed", range(8))
def test_max_clique_matches_brute_force(seed):
    adj = random_graph(16, 0.6, seed)
    best = max(k for k in range(1, 17) if brute_cliques(adj, k))
    clique = max_clique(adj)
    assert len(clique) == best
    assert all(adj[a] >> b & 1 for a, b in itertools.combinations(clique, 2))


def test_small_spectra():
    assert find_spectra(S(FiniteAbelianGroup((6,)), [0, 1, 2])) == [(0, 2, 4)]
    assert find_spectra(S(FiniteAbelianGroup((4,)), [0, 1])) == [(0, 2)]
    assert find_spectra(S(FiniteAbelianGroup((8,)), [0, 1, 2, 4])) == []


def test_orthogonality_graph_edges():
    A = S(FiniteAbelianGroup((4,)), [0, 1])
    graph = orthogonality_graph(A)
    assert graph.has_edge(0, 2) and graph.has_edge(1, 3)
    assert not graph.has_edge(0, 1)


def test_verify_spectrum_outcomes():
    g = FiniteAbelianGroup((6,))
    A = S(g, [0, 1, 2])
    cert = verify_spectrum(A, [0, 2, 4])
    assert cert and cert.parseval_residual == 0.0 and cert.exact
    assert verify_spectrum(A, [0, 2, 4], exact=False).parseval_residual < 1e-9
    bad = verify_spectrum(A, [0, 1, 4])
    assert not bad and bad.reason == "pair"
    short = verify_spectrum(A, [0, 2])
    assert not short and short.reason == "cardinality"


def test_verify_spectrum_coordinate_frequencies():
    g = FiniteAbelianGroup((2, 2))
    A = S(g, [0, 1])
    assert verify_spectrum(A, [(0, 0), (1, 0)])
    with pytest.raises(ValueError):
        verify_spectrum(A, [(0, 0), (2, 0)])
    with pytest.raises(ValueError):
        verify_spectrum(A, [0, 7])


@pytest.mark.parametrize("factors", [(8,), (2, 4), (9,), (10,), (12,), (2, 6), (3, 3)])
def test_find_spectra_complete(factors):
    g = FiniteAbelianGroup(factors)
    for k in range(1, min(g.order, 6) + 1):
        for A in subset_stream(g, k, canonical_only=True):
            assert find_spectra(A) == naive_spectra(A)


def test_exact_backend_spectra():
    g = FiniteAbelianGroup((12,))
    for A in subset_stream(g, 4, canonical_only=True):
        assert find_spectra(A, "exact") == find_spectra(A)


def test_scan_small_cyclic():
    rep = fuglede_scan(FiniteAbelianGroup((8,)))
    assert rep.passed
    assert rep.counts["subsets"] == sum(1 for k in range(1, 9) for _ in subset_stream(FiniteAbelianGroup((8,)), k, True))
    by_subset = {tuple(r["subset"]): r for r in rep.records}
    assert not by_subset[(0, 1, 2, 4)]["isTile"] and not by_subset[(0, 1, 2, 4)]["isSpectral"]


def test_scan_threads_same_result():
    g = FiniteAbelianGroup((10,))
    assert fuglede_scan(g, threads=2).records == fuglede_scan(g).records


def test_scan_budget():
    with pytest.raises(BudgetExceeded):
        fuglede_scan(FiniteAbelianGroup((40,)), budget="small")
    with pytest.raises(BudgetExceeded):
        fuglede_scan(FiniteAbelianGroup((30,)), budget=1000)


def test_subgroups_of_z2xz4():
    g = FiniteAbelianGroup((2, 4))
    hs = subgroups(g)
    assert len(hs) == 8
    for H in hs:
        assert g.order % H.size == 0
        assert annihilator(H).size * H.size == g.order
        assert transversal(H).size * H.size == g.order


@pytest.mark.parametrize("order", [8, 12, 16, 18])
def test_duality(order):
    for g in abelian_groups(order):
        assert duality_failures(g) == []
