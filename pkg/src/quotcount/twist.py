"""Counts of maps into hypersurface and complete-intersection sections.

Cutting the Grassmannian target by sections of powers of the Pluecker
line bundle multiplies the plain count by an explicit rational prefactor
and boosts the first Chern insertion:

    count on the degree-l section
        = (n - l)^g * l^(d*l - g + 1) / n^g
          * plain count with d*l - g + 1 extra Chern(1) insertions,

valid when d*l > 2g - 2 (below that the section data does not push
forward to a bundle and the spec is refused).  A multidegree (l_1..l_u)
contributes one such factor per degree.  An alternate evaluation path
expands the same top class through the odd-cohomology square phi instead
of closing the binomial sum; the two agree whenever d >= g, and with the
dimension constraints in force every in-regime problem on a proper
Grassmannian in fact has d >= g, so the truncation is never visible.

Closed forms for projective targets and for the Lagrangian section of
G(2, 4) are provided as pure arithmetic (no engine call), together with
the fixed-point-count comparison and the enumerativity advisor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Optional, Sequence

from .errors import DimensionMismatchError, NonIntegralError, RegimeViolationError
from .symfunc import CHERN, SEGRE, Insertion, chern, weighted_degree
from .vi_engine import (
    Advisory,
    Enumerativity,
    GrassmannSpec,
    PLAIN_TARGET_ADVISORY,
    SEGRE_ADVISORY,
    VirtualCount,
    vi_integral,
    vi_integral_parallel,
)

LARGE_D_NOTE = (
    "conditional on weak convexity of the section and on d being sufficiently "
    "large; neither hypothesis can be checked numerically"
)


@dataclass(frozen=True)
class ProblemSpec:
    """A counting problem: base target, section multidegree, insertions."""

    base: GrassmannSpec
    multidegree: tuple[int, ...]
    insertions: tuple[Insertion, ...]

    def __post_init__(self) -> None:
        if any(l < 1 for l in self.multidegree):
            raise ValueError("multidegree entries must be positive integers")

    @property
    def twisted_dim(self) -> int:
        b = self.base
        return b.virtual_dim - sum(b.d * l - b.g + 1 for l in self.multidegree)

    @property
    def in_regime(self) -> bool:
        b = self.base
        return all(b.d * l > 2 * b.g - 2 for l in self.multidegree)


def _check_regime(spec: ProblemSpec) -> None:
    if not spec.in_regime:
        b = spec.base
        raise RegimeViolationError(
            f"need d*l > 2g-2 for every section degree (d={b.d}, g={b.g}, "
            f"multidegree={spec.multidegree})"
        )


def _check_dimension(spec: ProblemSpec) -> None:
    degree = weighted_degree(spec.insertions)
    if degree != spec.twisted_dim:
        raise DimensionMismatchError(
            f"insertion degree {degree} != twisted virtual dimension {spec.twisted_dim}"
        )


def _boost(spec: ProblemSpec) -> tuple[GrassmannSpec, tuple[Insertion, ...]]:
    b = spec.base
    extra = sum(b.d * l - b.g + 1 for l in spec.multidegree)
    return b, spec.insertions + (chern(1),) * extra


def _engine_value(base: GrassmannSpec, insertions: Sequence[Insertion], workers: int) -> Fraction:
    if workers > 1:
        return vi_integral_parallel(base, insertions, workers).value
    return vi_integral(base, insertions).value


def _certified(value: Fraction, advisory: Advisory) -> VirtualCount:
    if value.denominator != 1:
        raise NonIntegralError(f"twisted count came out non-integral: {value}")
    return VirtualCount(value, True, advisory)


def hypersurface_integral(spec: ProblemSpec, workers: int = 1) -> VirtualCount:
    """Count on a single degree-l section: prefactor times boosted plain count."""
    if len(spec.multidegree) != 1:
        raise ValueError("hypersurface_integral expects exactly one section degree")
    return complete_intersection_integral(spec, workers)


def complete_intersection_integral(spec: ProblemSpec, workers: int = 1) -> VirtualCount:
    """Count on a multidegree section; with one factor this is the hypersurface case."""
    _check_regime(spec)
    _check_dimension(spec)
    b = spec.base
    prefactor = Fraction(1)
    for l in spec.multidegree:
        prefactor *= Fraction(l) ** (b.d * l - b.g + 1)
    prefactor *= Fraction(b.n - sum(spec.multidegree), b.n) ** b.g
    base, boosted = _boost(spec)
    raw = _engine_value(base, boosted, workers)
    return _certified(prefactor * raw, enumerativity_advisor(spec))


def hypersurface_integral_via_phi_expansion(spec: ProblemSpec, workers: int = 1) -> VirtualCount:
    """The same count through the truncated odd-class expansion.

    The scalar in front of the boosted integral is
    l^(d*l-g+1) * sum over s <= min(d, g) of C(g, s) (-l)^s / n^s,
    which closes to ((n-l)/n)^g exactly when d >= g.  The result is
    reported with an honest integrality flag instead of being certified,
    so the d < g truncation (were it ever reachable) could be compared.
    """
    if len(spec.multidegree) != 1:
        raise ValueError("the expansion path expects exactly one section degree")
    _check_regime(spec)
    _check_dimension(spec)
    b = spec.base
    (l,) = spec.multidegree
    scalar = Fraction(l) ** (b.d * l - b.g + 1)
    scalar *= sum(
        comb(b.g, s) * Fraction(-l, b.n) ** s for s in range(min(b.d, b.g) + 1)
    )
    base, boosted = _boost(spec)
    raw = _engine_value(base, boosted, workers)
    value = scalar * raw
    return VirtualCount(value, value.denominator == 1, enumerativity_advisor(spec))


def hypersurface_both_paths(spec: ProblemSpec, workers: int = 1) -> tuple[VirtualCount, VirtualCount, bool]:
    """Closed and expansion paths off a single engine run, plus agreement."""
    if len(spec.multidegree) != 1:
        raise ValueError("path comparison expects exactly one section degree")
    _check_regime(spec)
    _check_dimension(spec)
    b = spec.base
    (l,) = spec.multidegree
    k = b.d * l - b.g + 1
    base, boosted = _boost(spec)
    raw = _engine_value(base, boosted, workers)
    advisory = enumerativity_advisor(spec)
    closed = _certified(Fraction(b.n - l, b.n) ** b.g * Fraction(l) ** k * raw, advisory)
    scalar = Fraction(l) ** k * sum(
        comb(b.g, s) * Fraction(-l, b.n) ** s for s in range(min(b.d, b.g) + 1)
    )
    phi_value = scalar * raw
    phi = VirtualCount(phi_value, phi_value.denominator == 1, advisory)
    return closed, phi, closed.value == phi.value


@dataclass(frozen=True)
class BClassWord:
    """s odd-class pairs (each pair is the j and j+g first-Chern components)
    followed by a trailing Chern monomial."""

    pair_indices: tuple[int, ...]
    monomial: tuple[Insertion, ...]

    def __post_init__(self) -> None:
        if any(j < 1 for j in self.pair_indices):
            raise ValueError("pair indices must be positive")
        if any(ins.kind != CHERN for ins in self.monomial):
            raise ValueError("the trailing monomial must consist of Chern insertions")


B_WORD_ADVISORY = Advisory(
    Enumerativity.VIRTUAL_ONLY,
    "odd-cohomology insertions carry no enumerativity statement",
)


def reduce_b_classes(word: BClassWord, base: GrassmannSpec, workers: int = 1) -> VirtualCount:
    """Trade s odd-class pairs for a_1^s / n^s inside a plain integral.

    Vanishes when a pair index repeats or when s exceeds the map degree.
    """
    s = len(word.pair_indices)
    if any(j > base.g for j in word.pair_indices):
        raise ValueError("pair indices must lie in [1, g]")
    degree = weighted_degree(word.monomial)
    if degree != base.virtual_dim - s:
        raise DimensionMismatchError(
            f"trailing monomial degree {degree} != virtual dimension minus s "
            f"({base.virtual_dim} - {s})"
        )
    if len(set(word.pair_indices)) < s or s > base.d:
        return VirtualCount(Fraction(0), True, B_WORD_ADVISORY)
    boosted = word.monomial + (chern(1),) * s
    raw = _engine_value(base, boosted, workers)
    return _certified(raw / Fraction(base.n) ** s, B_WORD_ADVISORY)


def _projective_advisory(g: int, d: int, r: int, multidegree: Sequence[int]) -> Advisory:
    if any(d * l <= 2 * g - 2 for l in multidegree):
        return Advisory(
            Enumerativity.OUT_OF_REGIME,
            "d*l <= 2g-2 for some section degree; the count is outside the "
            "regime where the section data forms a bundle",
        )
    total = sum(multidegree)
    bound_ok = total < r if len(multidegree) == 1 else total <= r
    if bound_ok:
        return Advisory(Enumerativity.ENUMERATIVE_IF_WEAKLY_CONVEX, LARGE_D_NOTE)
    return Advisory(
        Enumerativity.VIRTUAL_ONLY,
        "hyperplane insertions violate the codimension bound for this multidegree",
    )


def closed_form_projective(g: int, d: int, r: int, multidegree: Sequence[int]) -> VirtualCount:
    """prod l_i^(d*l_i-g+1) * (r+1-sum l_i)^g, the projective-target count.

    Pure arithmetic; nonzero only when sum of degrees is at most r.
    """
    multidegree = tuple(multidegree)
    if any(l < 1 for l in multidegree):
        raise ValueError("multidegree entries must be positive integers")
    value = Fraction(1)
    for l in multidegree:
        value *= Fraction(l) ** (d * l - g + 1)
    value *= Fraction(r + 1 - sum(multidegree)) ** g
    return VirtualCount(value, value.denominator == 1, _projective_advisory(g, d, r, multidegree))


def closed_form_lg24(g: int, d: int, m1: int, m2: int) -> VirtualCount:
    """2^(2d-m2-g+1) * 3^g for the Lagrangian section of G(2, 4).

    Requires m1 + 2*m2 = 3*(d - g + 1) and d > 2g - 2.
    """
    if m1 < 0 or m2 < 0:
        raise ValueError("insertion exponents must be nonnegative")
    if d <= 2 * g - 2:
        raise RegimeViolationError(f"need d > 2g-2 (d={d}, g={g})")
    if m1 + 2 * m2 != 3 * (d - g + 1):
        raise DimensionMismatchError(
            f"m1 + 2*m2 = {m1 + 2 * m2} != 3*(d-g+1) = {3 * (d - g + 1)}"
        )
    value = Fraction(2) ** (2 * d - m2 - g + 1) * 3**g
    return VirtualCount(
        value,
        value.denominator == 1,
        Advisory(Enumerativity.ENUMERATIVE_IF_WEAKLY_CONVEX, LARGE_D_NOTE),
    )


@dataclass(frozen=True)
class TevelevComparison:
    point_count: VirtualCount
    implied_tevelev: Fraction
    tevelev_is_integer: bool
    t: int


def tevelev_compare(g: int, d: int, r: int, l: int, t: Optional[int] = None) -> TevelevComparison:
    """Point-incidence count Q on a degree-l section of projective r-space,
    and the fixed-point map count it implies via the (l!/l^l)^t factor.

    Q = l^(d*l-g+1-t) * (r+1-l)^g with t = e_l/(r-1) conditions; the implied
    count is expected integral when 3 <= l <= r/2 + 1 and g + t >= 2.
    """
    if r < 2:
        raise ValueError("point conditions need r >= 2")
    e_l = d * (r + 1 - l) + (1 - g) * (r - 1)
    quotient, remainder = divmod(e_l, r - 1)
    if remainder != 0 or quotient < 1:
        raise DimensionMismatchError(
            f"t = e_l/(r-1) = {e_l}/{r - 1} is not a positive integer"
        )
    if t is None:
        t = quotient
    elif t != quotient:
        raise DimensionMismatchError(f"t={t} inconsistent with e_l/(r-1)={quotient}")
    q_value = Fraction(l) ** (d * l - g + 1 - t) * Fraction(r + 1 - l) ** g
    q_count = VirtualCount(
        q_value, q_value.denominator == 1, _projective_advisory(g, d, r, (l,))
    )
    implied = Fraction(factorial(l), l**l) ** t * q_value
    return TevelevComparison(q_count, implied, implied.denominator == 1, t)


def enumerativity_advisor(spec: ProblemSpec) -> Advisory:
    """Label the spec by the codimension bounds under which the virtual
    count is an actual count of maps (for large d, on a weakly convex
    section); the advisor states the conditions, it cannot verify them."""
    if not spec.in_regime:
        return Advisory(
            Enumerativity.OUT_OF_REGIME,
            "d*l <= 2g-2 for some section degree; outside the bundle regime",
        )
    if any(ins.kind == SEGRE for ins in spec.insertions):
        return SEGRE_ADVISORY
    if not spec.multidegree:
        return PLAIN_TARGET_ADVISORY
    n = spec.base.n
    total = sum(spec.multidegree)
    if len(spec.multidegree) == 1:
        ok = all(ins.index < n - total for ins in spec.insertions)
        bound = f"i < n - l = {n - total}"
    else:
        ok = all(ins.index <= n - total for ins in spec.insertions)
        bound = f"i <= n - sum(l) = {n - total}"
    if ok:
        return Advisory(Enumerativity.ENUMERATIVE_IF_WEAKLY_CONVEX, LARGE_D_NOTE)
    return Advisory(
        Enumerativity.VIRTUAL_ONLY,
        f"some insertion violates the codimension bound {bound}",
    )
