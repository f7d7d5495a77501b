"""Translational tilings of finite abelian groups.

A nonnegative function ``f`` tiles ``G`` at level ``l`` with translation
set ``T`` when ``sum_{t in T} f(x - t) = l`` for every ``x``. For an
indicator ``f = 1_A`` at level 1 this is the usual exact tiling ``A + T = G``.
Weights are exact rationals, so verification involves no tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .groups import FiniteAbelianGroup, GroupSubset, dft


@dataclass(frozen=True)
class WeightedTileFunction:
    group: FiniteAbelianGroup
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        w = tuple(Fraction(x) for x in self.weights)
        if len(w) != self.group.order:
            raise ValueError(f"need {self.group.order} weights, got {len(w)}")
        if any(x < 0 for x in w):
            raise ValueError("weights must be nonnegative")
        if not any(w):
            raise ValueError("at least one weight must be positive")
        object.__setattr__(self, "weights", w)

    @classmethod
    def indicator(cls, A: GroupSubset) -> "WeightedTileFunction":
        return cls(A.group, tuple(Fraction(int(i in A)) for i in range(A.group.order)))

    @property
    def support(self) -> GroupSubset:
        return GroupSubset.from_elements(self.group, (i for i, w in enumerate(self.weights) if w))

    @property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))


@dataclass(frozen=True)
class TilingCertificate:
    tile: GroupSubset
    complement: GroupSubset
    level: Fraction
    function: WeightedTileFunction | None = None

    ok = True

    def __bool__(self):
        return True

    def to_json(self) -> dict:
        out = {
            "tile": list(self.tile.elements),
            "complement": list(self.complement.elements),
            "level": str(self.level),
        }
        if self.function is not None:
            out["weights"] = [str(w) for w in self.function.weights]
        return out


@dataclass(frozen=True)
class TilingRefutation:
    """``witness`` is a point where the translate sum differs from the level."""

    witness: int
    value: Fraction
    level: Fraction

    ok = False

    def __bool__(self):
        return False

    def to_json(self) -> dict:
        return {"witness": self.witness, "value": str(self.value), "level": str(self.level)}


def verify_tiling(f, T: GroupSubset, level=1):
    """Check ``sum_{t in T} f(x - t) == level`` at every ``x`` of the group.

    ``f`` may be a :class:`WeightedTileFunction` or a :class:`GroupSubset`
    (taken as its indicator). Returns a certificate or a refutation.
    """
    if isinstance(f, GroupSubset):
        f = WeightedTileFunction.indicator(f)
    g = f.group
    if T.group != g:
        raise ValueError("tile and translation set live in different groups")
    level = Fraction(level)
    diff = g.sub_table if g.order <= 2048 else None
    for x in range(g.order):
        if diff is not None:
            shifts = diff[x, list(T.elements)] if T.size else []
        else:
            shifts = g.sub(x, np.array(T.elements, dtype=np.int64)) if T.size else []
        value = sum((f.weights[int(s)] for s in shifts), Fraction(0))
        if value != level:
            return TilingRefutation(x, value, level)
    indicator_like = all(w in (0, 1) for w in f.weights)
    return TilingCertificate(f.support, T, level, None if indicator_like else f)


def _translate_masks(A: GroupSubset) -> list[int]:
    g = A.group
    elems = np.array(A.elements, dtype=np.int64)
    masks = []
    for t in range(g.order):
        m = 0
        for e in g.add(elems, t).tolist():
            m |= 1 << e
        masks.append(m)
    return masks


def _complements_level1(A: GroupSubset) -> Iterator[int]:
    """Exact-cover search: always cover the least uncovered element.

    Each tiling with ``0 in T`` is produced exactly once, because the
    translate covering the least hole is forced to be unique.
    """
    g = A.group
    full = (1 << g.order) - 1
    masks = _translate_masks(A)
    elems = np.array(A.elements, dtype=np.int64)
    # hole x can be covered by translates t = x - a, a in A
    coverers = [g.sub(x, elems).tolist() for x in range(g.order)]

    def search(covered, chosen):
        if covered == full:
            yield chosen
            return
        hole = (~covered & (covered + 1)).bit_length() - 1
        for t in coverers[hole]:
            m = masks[t]
            if not m & covered:
                yield from search(covered | m, chosen | (1 << t))

    yield from search(masks[0], 1)


def _complements_multilevel(A: GroupSubset, level: int) -> Iterator[int]:
    g = A.group
    elems = np.array(A.elements, dtype=np.int64)
    translates = [g.add(elems, t).tolist() for t in range(g.order)]
    coverers = [g.sub(x, elems).tolist() for x in range(g.order)]
    counts = [0] * g.order
    seen: set[int] = set()

    def place(t, sign):
        ok = True
        for e in translates[t]:
            counts[e] += sign
            if counts[e] > level:
                ok = False
        return ok

    def search(chosen):
        hole = next((x for x in range(g.order) if counts[x] < level), None)
        if hole is None:
            if chosen not in seen:
                seen.add(chosen)
                yield chosen
            return
        for t in coverers[hole]:
            if chosen >> t & 1:
                continue
            if place(t, +1):
                yield from search(chosen | (1 << t))
            place(t, -1)

    place(0, +1)
    yield from search(1)


def iter_tiling_complements(A: GroupSubset, level: int = 1) -> Iterator[GroupSubset]:
    """Lazily yield tiling complements ``T`` with ``0 in T`` (unsorted)."""
    g = A.group
    if A.size == 0 or level < 1 or (level * g.order) % A.size:
        return
    gen = _complements_level1(A) if level == 1 else _complements_multilevel(A, level)
    for bits in gen:
        yield GroupSubset(g, bits)


def find_tiling_complements(A: GroupSubset, level: int = 1) -> list[GroupSubset]:
    """All tiling complements of ``A`` at ``level`` that contain 0, sorted."""
    found = {T.members: T for T in iter_tiling_complements(A, level)}
    return sorted(found.values(), key=lambda T: T.elements)


def is_tile(A: GroupSubset) -> tuple[bool, TilingCertificate | None]:
    for T in iter_tiling_complements(A, 1):
        return True, TilingCertificate(A, T, Fraction(1))
    return False, None


def dft_tiling_criterion(A: GroupSubset, T: GroupSubset) -> bool:
    """Fourier-side test for ``A + T = G``: ``|A||T| = |G|`` and
    ``1_A^ * 1_T^`` vanishes off the zero frequency."""
    g = A.group
    if A.size * T.size != g.order:
        return False
    za = dft(A).zero_set.members
    zt = dft(T).zero_set.members
    nonzero_freqs = ((1 << g.order) - 1) & ~1
    return (za | zt) & nonzero_freqs == nonzero_freqs
