"""Exception types raised by the library."""


class PhyloNetworkError(Exception):
    """Base class for all domain errors."""


class ValidationError(PhyloNetworkError):
    """A raw graph does not satisfy the network invariants."""


class MultipleRootsError(ValidationError):
    pass


class CycleDetectedError(ValidationError):
    pass


class DegreeViolationError(ValidationError):
    pass


class UnreachableNodeError(ValidationError):
    pass


class DuplicateTaxonError(ValidationError):
    pass


class NotCleanableError(PhyloNetworkError):
    """Cleanup terminated on a graph that is not a valid network."""


class NotReticulationEdgeError(PhyloNetworkError):
    pass


class ShapeNotPresentError(PhyloNetworkError):
    pass


class NoCherryOnPairError(PhyloNetworkError):
    pass


class NoPendantAtSetError(PhyloNetworkError):
    pass


class UnknownTaxonError(PhyloNetworkError):
    pass


class TooLargeForOracleError(PhyloNetworkError):
    """Exponential test oracle refused an input above its size guard."""


class LevelZeroInputError(PhyloNetworkError):
    pass


class NoValidEdgeInBlobError(PhyloNetworkError):
    """A maximum-level blob has no valid reticulation edge, so no MLLS exists."""


class NotTreeChildError(PhyloNetworkError):
    pass


class NotTreeChildAndTooLargeError(PhyloNetworkError):
    """Isomorphism fallback refused a non-tree-child input above its size guard."""


class InconsistentInputError(PhyloNetworkError):
    """Input networks cannot all be subnetworks of one network."""


class NoRuleMatchesError(PhyloNetworkError):
    """A shape profile fits no identifiability rule; input is not an MLLS set."""


class ShapeEvidenceMissingError(PhyloNetworkError):
    pass


class PureNodeNotFoundError(PhyloNetworkError):
    pass


class NotAnMllsSetError(PhyloNetworkError):
    """Reconstruction failed; the input is not the MLLS set of any network."""


class NotConsistentTripleError(PhyloNetworkError):
    """Three-subnetwork reconstruction failed on the given triple."""


class UnsatisfiableError(PhyloNetworkError):
    """No network exists for the requested generator parameters."""


class EnewickSyntaxError(PhyloNetworkError):
    """Malformed extended Newick text."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


class DanglingHybridLabelError(PhyloNetworkError):
    """A hybrid label occurs only once, leaving a reticulation with one parent."""
