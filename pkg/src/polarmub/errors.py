"""Exception types shared across the package."""


class PolarMubError(Exception):
    """Base class for all library errors."""


class ZeroInverse(PolarMubError):
    """Inversion of zero requested in a prime field."""


class DimensionMismatch(PolarMubError):
    """Operands live in different ambient spaces."""


class ScaleExceeded(PolarMubError):
    """Requested computation is beyond the supported desk scale."""


# -- polar space operations


class PointOnGenerator(PolarMubError):
    """The point already lies on the given generator."""


class NotDisjoint(PolarMubError):
    """Generators were required to be pairwise disjoint but are not."""


class NotIsotropic(PolarMubError):
    """Subspace is not totally isotropic for the alternating form."""


class WrongRank(PolarMubError):
    """Subspace has the wrong rank for this operation."""


class NotRankTwo(PolarMubError):
    """Operation is only defined in the rank-2 space (N = 2)."""


# -- spread constructions


class GeneratorInSpread(PolarMubError):
    """The generator is already a member of the spread."""


class NoPartner(PolarMubError):
    """No second line shares the given transversal set."""


class AmbiguousPartner(PolarMubError):
    """More than one partner line found; precondition violated."""


class BadK(PolarMubError):
    """Block count k outside the admissible range."""


class NoSuitableChi(PolarMubError):
    """No carrier generator with the required intersection pattern."""


class NoBeta(PolarMubError):
    """No replacement generator through the carrier intersection exists."""


class NotASpread(PolarMubError):
    """A full spread was required."""


class NotUnextendibleTriple(PolarMubError):
    """Expected a complete partial spread of three lines in the rank-2 space of order 2."""


# -- Pauli / MUB side


class NotAClass(PolarMubError):
    """Operator set is not a maximal commuting class."""


class NonDiagonalizable(PolarMubError):
    """Class representative does not have order d; phase convention violated."""
