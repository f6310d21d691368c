"""Exception hierarchy shared by all quotcount modules."""

from __future__ import annotations


class QuotcountError(Exception):
    """Base class for all quotcount-specific errors."""


class OrderMismatchError(QuotcountError):
    """Arithmetic attempted between cyclotomic elements of different orders."""


class NotRationalError(QuotcountError):
    """A value expected to be rational reduced to a non-constant residue.

    Signals an upstream bug or an attempt to extract a non-invariant
    partial sum; never expected on a completed integral.
    """


class NonIntegralError(QuotcountError):
    """A certified-integer count came out with a nontrivial denominator."""


class DimensionMismatchError(QuotcountError):
    """Insertion degree does not match the virtual dimension of the problem."""


class RegimeViolationError(QuotcountError):
    """Degree/genus constraint d*l > 2g-2 violated for some twist factor."""
