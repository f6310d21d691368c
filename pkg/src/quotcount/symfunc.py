"""Elementary and complete homogeneous symmetric polynomials of root tuples.

Incidence conditions enter the counting sums through two families of
symmetric polynomials evaluated at tuples of roots of unity: e_i for
Chern-type insertions and h_i for Segre-type insertions.  The two are
exchanged (up to sign of the arguments) when a rank-r problem is traded
for its rank-(n-r) mirror: e_i of a tuple equals h_i of the negated
complementary tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .cyclotomic import Cyc, one, zero

CHERN = "chern"
SEGRE = "segre"


@dataclass(frozen=True)
class Insertion:
    """A tagged incidence class: Chern(i) evaluates as e_i, Segre(i) as h_i."""

    kind: str
    index: int

    def __post_init__(self) -> None:
        if self.kind not in (CHERN, SEGRE):
            raise ValueError(f"unknown insertion kind {self.kind!r}")
        if self.index < 1:
            raise ValueError("insertion index must be a positive integer")


def chern(i: int) -> Insertion:
    return Insertion(CHERN, i)


def segre(i: int) -> Insertion:
    return Insertion(SEGRE, i)


def monomial(*pairs: tuple[Insertion, int]) -> tuple[Insertion, ...]:
    """Expand (insertion, exponent) pairs into a flat insertion tuple."""
    out: list[Insertion] = []
    for ins, exp in pairs:
        if exp < 0:
            raise ValueError("exponents must be nonnegative")
        out.extend([ins] * exp)
    return tuple(out)


def weighted_degree(insertions: Iterable[Insertion]) -> int:
    return sum(ins.index for ins in insertions)


def elementary_prefix(tup: Sequence[Cyc], kmax: int) -> list[Cyc]:
    """[e_0, ..., e_kmax] of the tuple, by expanding prod(1 + t*z_j)."""
    if not tup:
        raise ValueError("cannot infer the root order from an empty tuple")
    n = tup[0].order
    es = [one(n)] + [zero(n)] * kmax
    filled = 0
    for z in tup:
        filled = min(filled + 1, kmax)
        for k in range(filled, 0, -1):
            es[k] = es[k] + es[k - 1] * z
    return es


def homogeneous_prefix(tup: Sequence[Cyc], kmax: int) -> list[Cyc]:
    """[h_0, ..., h_kmax] via h_m = sum_k (-1)^(k-1) e_k h_(m-k)."""
    if not tup:
        raise ValueError("cannot infer the root order from an empty tuple")
    n = tup[0].order
    r = len(tup)
    es = elementary_prefix(tup, min(r, kmax))
    hs = [one(n)]
    for m in range(1, kmax + 1):
        acc = zero(n)
        for k in range(1, min(m, r) + 1):
            term = es[k] * hs[m - k]
            acc = acc + term if k % 2 == 1 else acc - term
        hs.append(acc)
    return hs


def elementary(i: int, tup: Sequence[Cyc]) -> Cyc:
    """e_i of the tuple; 0 when i exceeds the tuple length (rank vanishing)."""
    if i < 0:
        raise ValueError("index must be nonnegative")
    if not tup:
        raise ValueError("cannot infer the root order from an empty tuple")
    if i > len(tup):
        return zero(tup[0].order)
    return elementary_prefix(tup, i)[i]


def complete_homogeneous(i: int, tup: Sequence[Cyc]) -> Cyc:
    """h_i of the tuple, defined for every i >= 0."""
    if i < 0:
        raise ValueError("index must be nonnegative")
    if not tup:
        raise ValueError("cannot infer the root order from an empty tuple")
    return homogeneous_prefix(tup, i)[i]
