"""Exception types shared across the package."""

from __future__ import annotations


class OrdgenError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(OrdgenError):
    """The given characteristic is not a prime number."""


class CapExceeded(OrdgenError):
    """A requested prime power exceeds the configured size cap."""


class NotADivisor(OrdgenError):
    """A subfield degree was requested that does not divide the field degree."""


class BaseMismatch(OrdgenError):
    """Two algebras were combined whose base fields differ."""


class InvalidTwist(OrdgenError):
    """The twist exponent of a truncated local algebra is out of range or not coprime to the index."""


class BudgetExceeded(OrdgenError):
    """An enumeration would exceed the configured work budget.

    The attribute ``required`` holds the number of closure calls the request
    would have needed.
    """

    def __init__(self, required: int, budget: int):
        super().__init__(f"enumeration needs {required} closure calls, budget is {budget}")
        self.required = required
        self.budget = budget


class NotGenerating(OrdgenError):
    """A tuple that was required to generate a quotient algebra does not."""


class NotMonic(OrdgenError):
    """A polynomial that must be monic is not."""


class UnsupportedRank(OrdgenError):
    """An exact matrix-rank count was requested beyond the closed-form range (n > 3)."""


class IndexNotDividingDegree(OrdgenError):
    """A declared local index does not divide the factor's reduced degree."""


class ExceptionalPrimeNeedsOverride(OrdgenError):
    """Splitting data at a prime could not be certified; explicit local data is required.

    The attribute ``p`` holds the prime.
    """

    def __init__(self, p: int, detail: str = ""):
        msg = f"local structure at p={p} is not certified; supply an override entry"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.p = p


class BoundTooSmall(OrdgenError):
    """A truncation bound is below the validity threshold of the tail estimate.

    The attribute ``minimum`` holds the smallest acceptable bound.
    """

    def __init__(self, bound: int, minimum: int):
        super().__init__(f"bound {bound} is below the tail-validity threshold {minimum}")
        self.bound = bound
        self.minimum = minimum


class NoCutoff(OrdgenError):
    """No prime cutoff exists at this generator count (k=1 with a noncommutative factor)."""


class EmptySpec(OrdgenError):
    """An order description contains no simple factors."""


class SpecError(OrdgenError):
    """An order description file or object is malformed."""
