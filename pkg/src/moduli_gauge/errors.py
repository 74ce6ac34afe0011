"""Exception taxonomy shared across the package.

Errors are split into input rejections (bad domain / unmet preconditions),
numerical failures (precision or convergence), and internal consistency
violations detected by the verification suites.
"""

from __future__ import annotations


class ModuliGaugeError(Exception):
    """Base class for all package errors."""


class NonDiscriminant(ModuliGaugeError):
    """Input is not a negative discriminant (n >= 0 or n = 2, 3 mod 4)."""


class DomainError(ModuliGaugeError):
    """Argument outside the stated domain of the operation."""


class HypothesisUnmet(ModuliGaugeError):
    """A stated hypothesis of a bound does not hold for the given input."""


class PrecisionUnreachable(ModuliGaugeError):
    """The requested precision cannot be certified for this input."""


class PrecisionInconclusive(ModuliGaugeError):
    """A sign/comparison query is below the certified error bound."""


class NoConvergence(ModuliGaugeError):
    """Iterative inversion stalled; caller may retry with denser starts."""


class NearCriticalPoint(ModuliGaugeError):
    """Inversion target too close to a critical value of j for Newton."""


class CornerPoint(ModuliGaugeError):
    """The base point coincides with a corner (zeta or zeta^2) where the
    separation constants are undefined."""


class NotUnitConsistent(ModuliGaugeError):
    """The supplied conjugate multiset is not the orbit of an algebraic
    integer unit (the two height formulas would disagree)."""


class MissingEmbeddingData(ModuliGaugeError):
    """An alpha profile lacks per-embedding data needed downstream."""


class SingularCurve(ModuliGaugeError):
    """g2^3 - 27*g3^2 = 0: no period lattice."""


class AlphaIsSingularModulus(ModuliGaugeError):
    """The target value is itself a singular modulus (CM case rejected)."""


class ViolationFound(ModuliGaugeError):
    """A numeric sweep falsified an inequality the implementation must
    satisfy (implementation bug, not a property of the inputs)."""
