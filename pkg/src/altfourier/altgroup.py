"""Alternating group machinery.

Enumeration of the even permutations of {1..n}, their action on points and
weights, stabilizer orders, canonical (semidominant) representatives of
orbits, and membership/reduction for the fundamental domains of the plain
and affine alternating groups.

Conventions fixed here and relied on everywhere else:

* a permutation acts on a tuple through its images, ``(w x)_i = x_{w(i)}``;
* a weight tuple is *semidominant* when ``x_1, x_2 >= x_3 >= ... >= x_n``
  (the first two entries are mutually unordered);
* the canonical representative of an orbit is the lexicographically greatest
  semidominant tuple reachable by an even permutation.

All objects are immutable after construction and safe to share across
workers.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations as _all_permutations
from typing import Sequence

import numpy as np

# n!/2 table entries; beyond degree 12 the table stops being a desk-scale object.
MAX_GROUP_DEGREE = 12


def _inversion_parity(images: Sequence[int]) -> int:
    n = len(images)
    inversions = sum(
        1 for i in range(n) for j in range(i + 1, n) if images[i] > images[j]
    )
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class Permutation:
    """Permutation of {1..n} stored as its 1-based image tuple."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"images {self.images!r} are not a bijection of 1..{n}")

    @property
    def n(self) -> int:
        return len(self.images)

    @property
    def parity(self) -> int:
        """+1 for even permutations, -1 for odd ones."""
        return _inversion_parity(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    def apply(self, x: Sequence) -> tuple:
        """Action on a tuple: component i of the result is ``x[w(i)]``."""
        if len(x) != self.n:
            raise ValueError(f"dimension mismatch: permutation of degree {self.n}, point of length {len(x)}")
        return tuple(x[i - 1] for i in self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition such that ``(a * b).apply(x) == a.apply(b.apply(x))``."""
        if self.n != other.n:
            raise ValueError("cannot compose permutations of different degree")
        return Permutation(tuple(other.images[i - 1] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return Permutation(tuple(inv))


@dataclass(frozen=True)
class EvenPermutationTable:
    """The alternating group A_n, fully enumerated in lexicographic order."""

    n: int
    elements: tuple[Permutation, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def image_array(self) -> np.ndarray:
        """0-based image indices, shape (|A_n|, n), for vectorized use."""
        cached = self.__dict__.get("_image_array")
        if cached is None:
            cached = np.array([p.images for p in self.elements], dtype=np.intp) - 1
            self.__dict__["_image_array"] = cached
        return cached


@lru_cache(maxsize=None)
def enumerate_alternating_group(n: int) -> EvenPermutationTable:
    """All even permutations of {1..n}, lexicographic by image tuple.

    Guarded at n <= 12: the table holds n!/2 entries and factorial growth
    makes larger degrees unusable as in-memory tables.
    """
    if not 1 <= n <= MAX_GROUP_DEGREE:
        raise ValueError(
            f"group degree must be in 1..{MAX_GROUP_DEGREE} "
            f"(n!/2 table entries grow factorially); got n={n}"
        )
    elements = tuple(
        Permutation(images)
        for images in _all_permutations(range(1, n + 1))
        if _inversion_parity(images) == 1
    )
    return EvenPermutationTable(n=n, elements=elements)


def alternating_order(n: int) -> int:
    """|A_n| = n!/2 for n >= 2, and 1 for n = 1."""
    return max(1, math.factorial(n) // 2)


def apply_permutation(w: Permutation, x: Sequence) -> tuple:
    """Apply ``w`` to a point or weight tuple: result_i = x_{w(i)}."""
    return w.apply(x)


def stabilizer_order(entries: Sequence) -> int:
    """Number of even permutations fixing the tuple.

    With multiplicities k_1..k_r of the distinct values, the full symmetric
    stabilizer has order prod(k_j!); it meets A_n in everything (all k_j = 1)
    or in exactly half (some k_j >= 2, so an odd transposition fixes the
    tuple).
    """
    counts = Counter(entries)
    if all(k == 1 for k in counts.values()):
        return 1
    sym_order = math.prod(math.factorial(k) for k in counts.values())
    return sym_order // 2


def is_semidominant(entries: Sequence) -> bool:
    """True when x_1, x_2 >= x_3 >= ... >= x_n (vacuous for n <= 2)."""
    x = tuple(entries)
    n = len(x)
    if n <= 2:
        return True
    if x[0] < x[2] or x[1] < x[2]:
        return False
    return all(x[i] >= x[i + 1] for i in range(2, n - 1))


def is_strictly_semidominant(entries: Sequence) -> bool:
    """True when x_1, x_2 > x_3 > ... > x_n and x_1 != x_2."""
    x = tuple(entries)
    n = len(x)
    if n == 1:
        return True
    if x[0] == x[1]:
        return False
    if n == 2:
        return True
    if x[0] <= x[2] or x[1] <= x[2]:
        return False
    return all(x[i] > x[i + 1] for i in range(2, n - 1))


def is_canonical_semidominant(entries: Sequence) -> bool:
    """One chosen representative per A_n-orbit.

    Tuples with a repeated entry have both (a, b, rest) and (b, a, rest)
    semidominant inside one orbit; the canonical one puts the larger value
    first.  Distinct-entry tuples keep both top orders (they lie in the two
    different A_n-orbits of the same multiset).
    """
    x = tuple(entries)
    if not is_semidominant(x):
        return False
    return x[0] >= x[1] or len(set(x)) == len(x)


def semidominant_normalize(entries: Sequence) -> tuple[tuple, Permutation]:
    """Even permutation onto the canonical semidominant representative.

    Returns ``(w(entries), w)`` where the image is the lexicographically
    greatest semidominant tuple an even permutation can reach.  For a tuple
    with all entries distinct that is the descending sort when the sort is
    even, otherwise the sort with the top two entries swapped.  Among the
    even permutations reaching the target, the lexicographically smallest
    image tuple is chosen, so constant tuples map through the identity.
    """
    values = tuple(entries)
    n = len(values)
    order = sorted(range(n), key=lambda j: (-values[j], j))
    target = tuple(values[j] for j in order)
    distinct = len(set(values)) == n
    if distinct and _inversion_parity([j + 1 for j in order]) == -1:
        if n >= 2:
            target = (target[1], target[0]) + target[2:]

    # Greedy lex-smallest assignment of source positions to target slots.
    available: dict = {}
    for pos in range(n, 0, -1):
        available.setdefault(values[pos - 1], []).append(pos)
    images = []
    for value in target:
        images.append(available[value].pop())
    parity = _inversion_parity(images)
    if parity == -1:
        # Repair parity by one transposition of same-valued slots, placed as
        # late as possible so the image tuple stays lexicographically small.
        best_a = max(
            (a for a in range(n - 1) if target[a] in target[a + 1 :]), default=None
        )
        if best_a is None:
            raise AssertionError("odd-parity repair requested for a distinct tuple")
        best_b = next(b for b in range(best_a + 1, n) if target[b] == target[best_a])
        images[best_a], images[best_b] = images[best_b], images[best_a]
    w = Permutation(tuple(images))
    return target, w


def in_fundamental_domain(x: Sequence) -> bool:
    """Open fundamental domain of A_n: x_1, x_2 > x_3 > ... > x_n."""
    p = tuple(x)
    n = len(p)
    if n <= 2:
        return True
    if not (p[0] > p[2] and p[1] > p[2]):
        return False
    return all(p[i] > p[i + 1] for i in range(2, n - 1))


def in_affine_fundamental_domain(x: Sequence) -> bool:
    """Open fundamental domain of the affine group: 1 > x_1, x_2 > ... > x_n > 0."""
    p = tuple(x)
    n = len(p)
    if n == 1:
        return 0 < p[0] < 1
    if not (p[0] < 1 and p[1] < 1 and p[-1] > 0):
        return False
    if n == 2 and p[0] <= 0:
        return False
    return in_fundamental_domain(p)


def affine_reduce(x: Sequence) -> tuple[tuple, Permutation, tuple[int, ...]]:
    """Reduce a point into the closed affine fundamental domain.

    Returns ``(x0, w, r)`` with ``x = w x0 + r`` where r is the integer shift
    and w an even permutation; x0 is the canonical semidominant arrangement
    of the fractional parts, hence lies in the closure of the domain.
    """
    p = tuple(float(v) for v in x)
    shift = tuple(math.floor(v) for v in p)
    frac = tuple(v - s for v, s in zip(p, shift))
    x0, v = semidominant_normalize(frac)
    return x0, v.inverse(), shift


def orbit(entries: Sequence, table: EvenPermutationTable | None = None) -> set:
    """The set of distinct tuples {w x : w in A_n}."""
    values = tuple(entries)
    if table is None:
        table = enumerate_alternating_group(len(values))
    return {w.apply(values) for w in table}
