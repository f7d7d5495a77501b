"""Finite abelian groups Z_{n1} x ... x Z_{nd}, their subsets and the DFT.

Elements are integers in ``range(order)`` under the mixed-radix encoding
with the first factor varying fastest::

    index(a) = a_1 + n_1 * (a_2 + n_2 * (a_3 + ...))

The dual group is identified with the group itself: the frequency tuple
``lam`` acts through the character

    chi_lam(a) = exp(2 pi i * sum_j lam_j a_j / n_j),

and the transform of a subset carries the minus sign,
``1_A^(lam) = sum_{a in A} exp(-2 pi i sum_j lam_j a_j / n_j)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from . import cyclotomic
from .config import tol

CHARACTER_CONVENTION = "chi_lam(a) = exp(+2 pi i sum_j lam_j a_j / n_j); transform uses exp(-2 pi i ...)"


@dataclass(frozen=True)
class FiniteAbelianGroup:
    factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(n) for n in self.factors)
        if not factors:
            raise ValueError("a group needs at least one cyclic factor")
        if any(n < 2 for n in factors):
            raise ValueError(f"every factor must be >= 2, got {factors}")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteAbelianGroup":
        return cls((n,))

    @property
    def rank(self) -> int:
        return len(self.factors)

    @cached_property
    def order(self) -> int:
        return math.prod(self.factors)

    @cached_property
    def exponent(self) -> int:
        """Least common multiple of the factors; characters take values in mu_exponent."""
        return math.lcm(*self.factors)

    @property
    def is_cyclic(self) -> bool:
        return self.rank == 1

    @cached_property
    def _strides(self) -> np.ndarray:
        return np.concatenate(([1], np.cumprod(self.factors[:-1]))).astype(np.int64)

    @cached_property
    def coords(self) -> np.ndarray:
        """``(order, rank)`` array: row i is the coordinate tuple of element i."""
        idx = np.arange(self.order, dtype=np.int64)
        return (idx[:, None] // self._strides[None, :]) % np.array(self.factors, dtype=np.int64)

    def encode(self, coord) -> int:
        coord = tuple(int(c) for c in coord)
        if len(coord) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {coord}")
        return int(sum((c % n) * s for c, n, s in zip(coord, self.factors, self._strides)))

    def decode(self, index: int) -> tuple[int, ...]:
        self._check_index(index)
        return tuple(int(c) for c in self.coords[index])

    def _check_index(self, index):
        if not 0 <= int(index) < self.order:
            raise ValueError(f"element index {index} outside group of order {self.order}")

    def encode_array(self, coords: np.ndarray) -> np.ndarray:
        coords = np.asarray(coords, dtype=np.int64) % np.array(self.factors, dtype=np.int64)
        return coords @ self._strides

    def add(self, i, j):
        """Sum of elements (ints or integer arrays, broadcasting)."""
        return self.encode_array(self.coords[i] + self.coords[j])

    def sub(self, i, j):
        return self.encode_array(self.coords[i] - self.coords[j])

    def neg(self, i):
        return self.encode_array(-self.coords[i])

    def scale(self, u: int, i):
        return self.encode_array(u * self.coords[i])

    @cached_property
    def sub_table(self) -> np.ndarray:
        """``sub_table[i, j] = i - j``."""
        c = self.coords
        return self.encode_array(c[:, None, :] - c[None, :, :])

    def pairing(self, lam, a):
        """Exponent k with chi_lam(a) = zeta_N^k, N = exponent. Broadcasts over arrays."""
        scale = np.array([self.exponent // n for n in self.factors], dtype=np.int64)
        lam_c = self.coords[np.asarray(lam)]
        a_c = self.coords[np.asarray(a)]
        return np.sum(lam_c * a_c * scale, axis=-1) % self.exponent

    def units(self) -> list[int]:
        """Unit multipliers of a cyclic group (its automorphisms)."""
        if not self.is_cyclic:
            raise ValueError("unit multipliers are only defined here for cyclic groups")
        n = self.factors[0]
        return [u for u in range(1, n) if math.gcd(u, n) == 1]

    def to_json(self) -> dict:
        return {"factors": list(self.factors)}

    @classmethod
    def from_json(cls, obj) -> "FiniteAbelianGroup":
        if not isinstance(obj, dict) or "factors" not in obj:
            raise ValueError('group descriptor must look like {"factors": [n1, ...]}')
        return cls(tuple(obj["factors"]))

    def __str__(self):
        return " x ".join(f"Z{n}" for n in self.factors)


def _prime_factorization(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def abelian_groups(order: int) -> list[FiniteAbelianGroup]:
    """All abelian groups of the given order up to isomorphism, in invariant-factor form."""
    if order < 2:
        return []
    per_prime = []
    for p, e in sorted(_prime_factorization(order).items()):
        per_prime.append([(p, part) for part in _partitions(e)])
    groups = []
    for combo in itertools.product(*per_prime):
        depth = max(len(part) for _, part in combo)
        inv = [1] * depth
        for p, part in combo:
            # largest prime powers go to the last invariant factor
            for i, k in enumerate(part):
                inv[depth - 1 - i] *= p**k
        groups.append(FiniteAbelianGroup(tuple(inv)))
    return sorted(groups, key=lambda g: (g.rank, g.factors))


@dataclass(frozen=True)
class GroupSubset:
    """A subset of a finite abelian group stored as a bit set over element indices."""

    group: FiniteAbelianGroup
    members: int = 0

    def __post_init__(self):
        if self.members < 0 or self.members >> self.group.order:
            raise ValueError("members bit set exceeds the group order")

    @classmethod
    def from_elements(cls, group: FiniteAbelianGroup, elements: Iterable) -> "GroupSubset":
        bits = 0
        for e in elements:
            i = group.encode(e) if isinstance(e, (tuple, list)) else int(e)
            group._check_index(i)
            bits |= 1 << i
        return cls(group, bits)

    @cached_property
    def elements(self) -> tuple[int, ...]:
        bits, out, i = self.members, [], 0
        while bits:
            if bits & 1:
                out.append(i)
            bits >>= 1
            i += 1
        return tuple(out)

    @property
    def size(self) -> int:
        return self.members.bit_count()

    def __len__(self):
        return self.size

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, i):
        return bool(self.members >> int(i) & 1)

    def translate(self, t: int) -> "GroupSubset":
        g = self.group
        return GroupSubset.from_elements(g, g.add(np.array(self.elements, dtype=np.int64), int(t)).tolist())

    def indicator(self) -> np.ndarray:
        ind = np.zeros(self.group.order)
        ind[list(self.elements)] = 1.0
        return ind

    def to_json(self) -> dict:
        return {"group": self.group.to_json(), "elements": list(self.elements)}

    @classmethod
    def from_json(cls, obj) -> "GroupSubset":
        return cls.from_elements(FiniteAbelianGroup.from_json(obj["group"]), obj["elements"])

    def __repr__(self):
        return f"GroupSubset({self.group}, {set(self.elements) or '{}'})"


@dataclass(frozen=True)
class DftTable:
    group: FiniteAbelianGroup
    values: np.ndarray = field(repr=False)
    zero_set: GroupSubset
    backend: str = "float"

    def value(self, lam) -> complex:
        i = self.group.encode(lam) if isinstance(lam, (tuple, list)) else int(lam)
        return complex(self.values[i])

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "convention": CHARACTER_CONVENTION,
            "backend": self.backend,
            "values": [[float(v.real), float(v.imag)] for v in self.values],
            "zeroSet": list(self.zero_set.elements),
        }


def _float_dft(A: GroupSubset) -> np.ndarray:
    g = A.group
    # numpy is C-ordered (last axis fastest); our encoding has factor 1 fastest
    shape = tuple(reversed(g.factors))
    grid = A.indicator().reshape(shape)
    return np.fft.fftn(grid).reshape(-1)


def exact_counts(A: GroupSubset, lam: int) -> np.ndarray:
    """Coefficients of 1_A^(lam) in Z[zeta], zeta = exp(2 pi i / N), N = group exponent."""
    g = A.group
    k = g.pairing(np.full(A.size, lam), np.array(A.elements))
    return cyclotomic.exponent_counts(-k, g.exponent)


def _check_exact_allowed(g: FiniteAbelianGroup):
    limit = tol("exact_max_order")
    if g.order > limit:
        raise ValueError(f"exact backend limited to group order <= {limit}, got {g.order}")


def dft(A: GroupSubset, backend: str = "float") -> DftTable:
    """Fourier transform of the indicator of ``A`` at every frequency.

    ``backend="float"`` flags a zero when ``|value| < 1e-9 |A|``;
    ``backend="exact"`` additionally re-tests each flagged zero in Z[zeta_N]
    and keeps only the exact ones.
    """
    if A.size == 0:
        raise ValueError("empty set has no spectral theory here")
    if backend not in ("float", "exact"):
        raise ValueError(f"unknown backend {backend!r}")
    values = _float_dft(A)
    flagged = np.flatnonzero(np.abs(values) < tol("dft_zero_rel") * A.size)
    if backend == "exact":
        _check_exact_allowed(A.group)
        n = A.group.exponent
        flagged = [int(lam) for lam in flagged if cyclotomic.is_zero(exact_counts(A, int(lam)), n)]
        values = values.copy()
        values[flagged] = 0.0
    zeros = GroupSubset.from_elements(A.group, (int(i) for i in flagged))
    return DftTable(A.group, values, zeros, backend)


def parseval_exact(A: GroupSubset) -> bool:
    """Decide sum_lam |1_A^(lam)|^2 == |G| |A| exactly in Z[zeta_N]."""
    g = A.group
    _check_exact_allowed(g)
    total = np.zeros(g.exponent, dtype=np.int64)
    for lam in range(g.order):
        total += cyclotomic.abs_squared(exact_counts(A, lam))
    return cyclotomic.equals_integer(total, g.exponent, g.order * A.size)


def _key(elements) -> tuple[int, ...]:
    return tuple(sorted(int(e) for e in elements))


def canonical_form(A: GroupSubset, automorphisms: bool = False) -> GroupSubset:
    """Lexicographically least translate of ``A`` (optionally also over unit multipliers).

    The least image always contains 0, so only the translates ``A - a`` with
    ``a`` in ``A`` need to be compared.
    """
    if A.size == 0:
        raise ValueError("canonical form of the empty set is undefined")
    return GroupSubset.from_elements(A.group, _canonical_key(A, automorphisms))


def _canonical_key(A: GroupSubset, automorphisms: bool) -> tuple[int, ...]:
    g = A.group
    elems = np.array(A.elements, dtype=np.int64)
    shifted = g.sub(elems[None, :], elems[:, None])  # row r: A - elems[r]
    images = [shifted]
    if automorphisms and g.is_cyclic:
        n = g.factors[0]
        images = [(u * shifted) % n for u in g.units()]
    best = None
    for block in images:
        block = np.sort(block, axis=1)
        for row in block:
            key = tuple(row.tolist())
            if best is None or key < best:
                best = key
    return best


def is_canonical(A: GroupSubset, automorphisms: bool = False) -> bool:
    return _canonical_key(A, automorphisms) == A.elements


def subset_stream(
    G: FiniteAbelianGroup,
    size: int,
    canonical_only: bool = False,
    automorphisms: bool = False,
    shard: tuple[int, int] | None = None,
) -> Iterator[GroupSubset]:
    """Yield every ``size``-subset of ``G`` once, in lexicographic order.

    ``shard=(i, k)`` keeps only subsets whose least element is congruent to
    ``i`` mod ``k``, which partitions the stream deterministically by prefix.
    """
    if not 1 <= size <= G.order:
        raise ValueError(f"size must be in 1..{G.order}, got {size}")
    for combo in itertools.combinations(range(G.order), size):
        if shard is not None and combo[0] % shard[1] != shard[0]:
            continue
        if canonical_only:
            if combo[0] != 0:
                # canonical forms contain 0 and combinations are sorted
                return
            A = GroupSubset.from_elements(G, combo)
            if not is_canonical(A, automorphisms):
                continue
            yield A
        else:
            yield GroupSubset.from_elements(G, combo)
