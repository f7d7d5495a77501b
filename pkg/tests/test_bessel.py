import math

import mpmath
import numpy as np
import pytest
from scipy import special

from fuglab import bessel
from fuglab.bessel import FrequencySet


@pytest.mark.parametrize("x", [0.0, 1e-8, 0.5, 1.0, 3.83, 7.0, 11.9, 12.0, 15.5, 19.99, 20.0, 20.01, 35.0, 100.0, 1234.5, -2.5, -40.0])
def test_j1_against_mpmath(x):
    assert abs(bessel.bessel_j1(x) - float(mpmath.besselj(1, x))) < 1e-13


@pytest.mark.parametrize("x", [0.0, 2.4, 9.0, 20.0, 25.0, 80.0, -6.0])
def test_j0_against_mpmath(x):
    assert abs(bessel.bessel_j0(x) - float(mpmath.besselj(0, x))) < 1e-13


def test_j1_dense_against_scipy():
    xs = np.linspace(0, 60, 601)
    ours = np.array([bessel.bessel_j1(x) for x in xs])
    assert np.max(np.abs(ours - special.j1(xs))) < 1e-13


def test_crossover_continuity():
    x = 20.0
    series = bessel.bessel_j1(x, crossover=25.0)
    asym = bessel.bessel_j1(x, crossover=10.0)
    assert abs(series - asym) < 1e-12


def test_asymptotic_too_coarse_at_twelve():
    # below 20 the optimally truncated asymptotic series cannot reach 1e-13
    exact = float(mpmath.besselj(1, 12))
    assert abs(bessel.bessel_j1(12.0, crossover=0.0) - exact) > 1e-13


def test_zeros_against_scipy():
    T = bessel.zero_table(100)
    assert np.max(np.abs(np.array(T.zeros) - special.jn_zeros(1, 100))) < 1e-12
    assert T.radius(1) == pytest.approx(3.8317059702075125 / (2 * math.pi), abs=1e-15)
    for j in T.zeros[:20]:
        assert abs(bessel.bessel_j1(j)) < 1e-13


def test_mcmahon_guess_is_close():
    zeros = special.jn_zeros(1, 50)
    guesses = np.array([bessel.mcmahon_guess(n) for n in range(1, 51)])
    assert np.max(np.abs(guesses - zeros)[4:]) < 1e-4


def test_radius_fit():
    T = bessel.zero_table(100)
    assert abs(T.fitted_b - 0.5) < 1e-3
    assert abs(T.fitted_a - 1 / 8) < 5e-3
    assert np.max(np.abs(T.residuals()[49:])) < 1e-3
    assert np.max(np.abs(T.gaps()[49:] - 0.5)) < 1e-3


def test_disk_ft_vanishes_on_radii():
    T = bessel.zero_table(10)
    assert bessel.disk_ft(0.0) == pytest.approx(math.pi)
    for r in T.radii:
        assert abs(bessel.disk_ft(r)) < 1e-13
    assert abs(bessel.disk_ft(0.4)) > 0.1


def test_radius_index_and_orthogonality():
    r1, r2 = bessel.zero_table(2).radii
    assert bessel.radius_index(r1) == 1
    assert bessel.radius_index(r2) == 2
    assert bessel.radius_index(r1 + 1e-6) is None
    assert bessel.disk_orthogonal((0, 0), (r1, 0))
    assert not bessel.disk_orthogonal((0, 0), (0.5, 0))
    with pytest.raises(ValueError):
        bessel.disk_orthogonal((1, 1), (1, 1))


def test_orth_search_equilateral():
    S = bessel.orth_search(0.7, "exact")
    r1 = bessel.zero_table(1).radius(1)
    assert len(S) == 3
    assert all(abs(d - r1) < 1e-9 for _, _, d in S.distances())
    assert not bessel.non_orthogonal_pairs(S)


def test_orth_search_tiny_radius():
    # no zero radius fits, so only the origin remains
    assert len(bessel.orth_search(0.5)) == 1


@pytest.mark.parametrize("R,strategy", [(1.0, "exact"), (2.0, "exact"), (10.0, "greedy"), (40.0, "greedy")])
def test_orth_search_outputs_are_orthogonal(R, strategy):
    S = bessel.orth_search(R, strategy)
    assert not bessel.non_orthogonal_pairs(S)
    assert np.all(np.hypot(*S.array.T) <= R + 1e-12)
    assert len(S) >= 3


def test_orth_search_bad_strategy():
    with pytest.raises(ValueError):
        bessel.orth_search(1.0, "random")


def test_orthogonal_triangles_are_orthogonal():
    sets = bessel.orthogonal_triangles(6, 12)
    assert sets
    for S in sets:
        assert len(S) == 3 and not bessel.non_orthogonal_pairs(S)


def test_gap_demo():
    reports = [bessel.distance_gap_demo(S) for S in bessel.orthogonal_triangles(6, 20)[::25]]
    # equilateral triples realize a single distance and have no gap to check
    assert sum(bool(rep.checked) for rep in reports) > len(reports) // 2
    for rep in reports:
        assert rep.passed
        assert rep.eps == pytest.approx(min(rep.B, rep.C) / 10)


def test_gap_demo_rejects_non_orthogonal():
    with pytest.raises(ValueError):
        bessel.distance_gap_demo(FrequencySet(((0, 0), (0.5, 0))))


def test_frequency_set_json_and_duplicates():
    S = FrequencySet(((0, 0), (1, 0)))
    assert FrequencySet.from_json(S.to_json()) == S
    with pytest.raises(ValueError):
        FrequencySet(((0, 0), (0, 0)))
