"""Genus-0 cross-check: iterated Pieri products with n-rim-hook reduction.

The degree-d count of rational maps to G(r, n) through special Schubert
cycles at fixed domain points equals a structure coefficient of the small
quantum ring: multiply the unit class by one special class per insertion,
reducing any partition that leaves the r x (n-r) box by removing rim
hooks of size n (one power of q and a sign per hook), and read off the
coefficient of the full box at q^d.

Conventions, locked by tests rather than assumed: the Chern-type
insertion of index i is the class of the transposed one-row shape (the
column with i boxes), so it multiplies by a vertical i-strip; the
Segre-type insertion multiplies by a horizontal i-strip.  Rim hooks are
removed head-first from the end of the first row with sign
(-1)^(r - height); if the hook does not fit, the term vanishes.  With
these choices every product of effective classes has nonnegative
coefficients, which the multiplication asserts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import DimensionMismatchError, QuotcountError
from .symfunc import CHERN, Insertion, weighted_degree


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive integers (rows of a shape)."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(p < 1 for p in self.parts):
            raise ValueError("parts must be positive (trailing zeros are implicit)")
        if any(b > a for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError("parts must be weakly decreasing")

    @property
    def size(self) -> int:
        return sum(self.parts)


def _strip_zeros(padded: Iterable[int]) -> tuple[int, ...]:
    return tuple(p for p in padded if p)


def _vertical_strips(padded: tuple[int, ...], i: int) -> list[tuple[int, ...]]:
    # All ways of adding i boxes, no two in the same row.
    r = len(padded)
    out: list[tuple[int, ...]] = []

    def rec(j: int, left: int, prev: int, acc: list[int]) -> None:
        if left > r - j:
            return
        if j == r:
            out.append(tuple(acc))
            return
        if padded[j] <= prev:
            acc.append(padded[j])
            rec(j + 1, left, padded[j], acc)
            acc.pop()
        if left and padded[j] + 1 <= prev:
            acc.append(padded[j] + 1)
            rec(j + 1, left - 1, padded[j] + 1, acc)
            acc.pop()

    rec(0, i, 10**9, [])
    return out


def _horizontal_strips(padded: tuple[int, ...], i: int) -> list[tuple[int, ...]]:
    # All ways of adding i boxes, no two in the same column:
    # row j may grow up to the length of row j-1 in the old shape.
    r = len(padded)
    out: list[tuple[int, ...]] = []

    def rec(j: int, left: int, prev_old: int, acc: list[int]) -> None:
        if j == r:
            if left == 0:
                out.append(tuple(acc))
            return
        hi = min(prev_old, padded[j] + left)
        for new in range(padded[j], hi + 1):
            acc.append(new)
            rec(j + 1, left - (new - padded[j]), padded[j], acc)
            acc.pop()

    rec(0, i, padded[0] + i, [])
    return out


def _rim_hook_reduce(padded: tuple[int, ...], r: int, n: int):
    """Bring a shape back into the box, one n-hook at a time.

    Returns (padded_shape, q_added, sign) or None when a hook fails to
    fit (the class vanishes).  Uses first-column hook lengths: removing
    the hook headed at the end of the first row subtracts n from the top
    one; a collision or a negative value kills the term, and the sign is
    (-1)^(r - height) with height = 1 + number of values jumped over.
    """
    cols = n - r
    cur = list(padded)
    q_added = 0
    sign = 1
    while cur[0] > cols:
        betas = [cur[j] + (r - 1 - j) for j in range(r)]
        head = betas[0] - n
        if head < 0 or head in betas[1:]:
            return None
        height = 1 + sum(1 for b in betas[1:] if b > head)
        sign *= -1 if (r - height) % 2 else 1
        betas = sorted(betas[1:] + [head], reverse=True)
        cur = [betas[j] - (r - 1 - j) for j in range(r)]
        q_added += 1
    return tuple(cur), q_added, sign


@dataclass
class QClass:
    """An integer combination of (box partition, q-power) basis elements."""

    r: int
    n: int
    terms: dict[tuple[tuple[int, ...], int], int] = field(default_factory=dict)

    @classmethod
    def unit(cls, r: int, n: int) -> QClass:
        if not 1 <= r < n:
            raise ValueError("need 1 <= r < n")
        return cls(r, n, {((), 0): 1})

    def coefficient(self, partition: Partition, q_power: int) -> int:
        return self.terms.get((partition.parts, q_power), 0)

    def _multiply(self, i: int, strips) -> QClass:
        result: dict[tuple[tuple[int, ...], int], int] = {}
        for (parts, q), coeff in self.terms.items():
            padded = parts + (0,) * (self.r - len(parts))
            for grown in strips(padded, i):
                reduced = _rim_hook_reduce(grown, self.r, self.n)
                if reduced is None:
                    continue
                shape, dq, sign = reduced
                key = (_strip_zeros(shape), q + dq)
                result[key] = result.get(key, 0) + sign * coeff
        return QClass(self.r, self.n, {k: v for k, v in result.items() if v})


def pieri_multiply(c: QClass, i: int) -> QClass:
    """Multiply by the Chern-type special class of index i (vertical strips)."""
    if not 1 <= i <= c.r:
        raise ValueError(f"special index must satisfy 1 <= i <= {c.r}")
    return c._multiply(i, _vertical_strips)


def pieri_multiply_segre(c: QClass, i: int) -> QClass:
    """Multiply by the Segre-type class of index i (horizontal strips)."""
    if i < 1:
        raise ValueError("index must be a positive integer")
    return c._multiply(i, _horizontal_strips)


def fixed_domain_count_g0(r: int, n: int, d: int, insertions: Iterable[Insertion]) -> int:
    """Degree-d count of rational maps through the given special cycles.

    Multiplies out the insertions in the quantum ring and extracts the
    coefficient of the full box at q^d.  Valid when the insertion degree
    equals d*n + r*(n-r); every intermediate combination of effective
    classes must have nonnegative coefficients.
    """
    insertions = tuple(insertions)
    if d < 0:
        raise ValueError("degree must be nonnegative")
    expected = d * n + r * (n - r)
    degree = weighted_degree(insertions)
    if degree != expected:
        raise DimensionMismatchError(
            f"insertion degree {degree} != genus-0 virtual dimension {expected}"
        )
    if r == n:
        # Point target: a single constant map, no conditions to impose.
        if d == 0:
            return 1
        raise ValueError("the quantum oracle covers the point target only at d = 0")
    # Positivity of the structure constants holds for products of effective
    # classes; a Segre index past the box reduces with signs by design.
    effective = all(
        ins.kind == CHERN or ins.index <= n - r for ins in insertions
    )
    c = QClass.unit(r, n)
    for ins in insertions:
        if ins.kind == CHERN:
            c = pieri_multiply(c, ins.index)
        else:
            c = pieri_multiply_segre(c, ins.index)
        if effective and any(v < 0 for v in c.terms.values()):
            raise QuotcountError(
                "negative structure coefficient: special-class convention broken"
            )
    box = ((n - r),) * r
    return c.terms.get((box, d), 0)
