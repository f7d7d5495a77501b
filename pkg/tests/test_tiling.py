import itertools
from fractions import Fraction

import pytest

from fuglab.groups import FiniteAbelianGroup, GroupSubset, abelian_groups
from fuglab.tiling import (
    WeightedTileFunction,
    dft_tiling_criterion,
    find_tiling_complements,
    is_tile,
    verify_tiling,
)


def brute_complements(A):
    """Every T containing 0 with |A||T| = |G| whose translates of A partition G."""
    g = A.group
    if g.order % A.size:
        return []
    k = g.order // A.size
    out = []
    for rest in itertools.combinations(range(1, g.order), k - 1):
        T = (0,) + rest
        covered = sorted(int(g.add(a, t)) for a in A.elements for t in T)
        if covered == list(range(g.order)):
            out.append(T)
    return out


def S(g, elems):
    return GroupSubset.from_elements(g, elems)


def test_z6_example():
    g = FiniteAbelianGroup((6,))
    A = S(g, [0, 3])
    found = [T.elements for T in find_tiling_complements(A)]
    assert found == [(0, 1, 2), (0, 1, 5), (0, 2, 4), (0, 4, 5)]
    assert found == brute_complements(A)


def test_verify_certificate_and_refutation():
    g = FiniteAbelianGroup((6,))
    cert = verify_tiling(S(g, [0, 3]), S(g, [0, 1, 2]))
    assert cert and cert.level == 1
    ref = verify_tiling(S(g, [0, 1]), S(g, [0, 1, 2]))
    assert not ref
    assert ref.value != ref.level


def test_non_tile():
    ok, cert = is_tile(S(FiniteAbelianGroup((8,)), [0, 1, 2, 4]))
    assert not ok and cert is None


def test_mismatched_groups():
    with pytest.raises(ValueError):
        verify_tiling(S(FiniteAbelianGroup((6,)), [0]), S(FiniteAbelianGroup((4,)), [0]))


@pytest.mark.parametrize("factors", [(8,), (2, 4), (9,), (3, 3), (10,), (12,), (2, 6)])
def test_complements_match_brute_force(factors):
    g = FiniteAbelianGroup(factors)
    for k in (1, 2, 3, 4):
        for combo in itertools.combinations(range(1, g.order), k - 1):
            A = S(g, (0,) + combo)
            assert [T.elements for T in find_tiling_complements(A)] == brute_complements(A)


def test_weighted_tiling_level_two():
    g = FiniteAbelianGroup((4,))
    f = WeightedTileFunction(g, (Fraction(1), Fraction(1), Fraction(0), Fraction(0)))
    assert verify_tiling(f, S(g, [0, 1, 2, 3]), level=2)
    half = WeightedTileFunction(g, (Fraction(1, 2),) * 4)
    assert verify_tiling(half, S(g, [0, 2]), level=1)
    assert not verify_tiling(half, S(g, [0, 2]), level=2)


def test_multilevel_search():
    g = FiniteAbelianGroup((6,))
    A = S(g, [0, 1, 3])
    for T in find_tiling_complements(A, level=2):
        assert verify_tiling(A, T, level=2)
        assert T.size == 4


@pytest.mark.parametrize("order", [6, 8, 12, 16])
def test_dft_criterion_agrees(order):
    for g in abelian_groups(order):
        for k in range(1, order + 1):
            if order % k:
                continue
            for combo in itertools.islice(itertools.combinations(range(1, order), k - 1), 30):
                A = S(g, (0,) + combo)
                for T in find_tiling_complements(A)[:3]:
                    assert dft_tiling_criterion(A, T)
                B = S(g, range(order // k))
                assert bool(verify_tiling(A, B)) == dft_tiling_criterion(A, B)


def test_certificate_json():
    g = FiniteAbelianGroup((6,))
    doc = verify_tiling(S(g, [0, 3]), S(g, [0, 2, 4])).to_json()
    assert doc == {"tile": [0, 3], "complement": [0, 2, 4], "level": "1"}
