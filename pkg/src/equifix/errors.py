"""Exception types shared across the package."""
from __future__ import annotations


class EquifixError(Exception):
    """Base class for all package-specific errors."""


class CapExceeded(EquifixError):
    """An enumeration grew past its explicit cap."""


class InvalidHomomorphism(EquifixError):
    """Generator images do not define a homomorphism."""


class NotAnAction(EquifixError):
    """Vertex maps do not define a simplicial action of the given group."""


class ActionNotGood(EquifixError):
    """A simplex is stabilized setwise but not fixed pointwise."""


class EulerZero(EquifixError):
    """Small-orbit search requires nonzero Euler characteristic."""


class NotAChain(EquifixError):
    """Census chain input is not a nested sequence of subcomplexes."""


class NotElementaryAbelian(EquifixError):
    """Operation requires an elementary abelian p-group."""


class EvenPrime(EquifixError):
    """Congruence filter is only defined for odd primes."""


class OddDimensionalSphere(EquifixError):
    """Sphere reduction requires an even-dimensional sphere model."""


class IncompleteFingerprint(EquifixError):
    """Fingerprint lacks a record needed by the requested analysis."""


class DescentOverrun(EquifixError):
    """Stability descent exceeded its proven step bound (data integrity)."""


class PreconditionViolated(EquifixError):
    """A stated precondition of the operation does not hold."""


class LedgerFailure(EquifixError):
    """A certificate ledger line failed verification (fatal)."""


class ExhaustedSearch(EquifixError):
    """A search guaranteed to succeed found no candidate (data integrity)."""


class OddCohomology(EquifixError):
    """Pipeline input must have no odd-degree cohomology and no relevant torsion."""


class UnsupportedKind(EquifixError):
    """Unknown object or generator kind."""


class ScenarioParseError(EquifixError):
    """Scenario file is not valid JSON or misses required fields."""


class ScenarioValidationError(EquifixError):
    """Scenario content fails validation against the schema."""
