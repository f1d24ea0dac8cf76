"""Structured exceptions. Every validation error names a concrete witness."""


class MuLatticeError(Exception):
    """Base class for all errors raised by this package."""


class NotAPartialOrder(MuLatticeError):
    """Relation fails reflexivity, antisymmetry, or transitivity."""


class NotALattice(MuLatticeError):
    """Some pair of elements lacks a unique meet or join."""


class IndexOutOfRange(MuLatticeError):
    """Element index outside the structure it was used with."""


class SizeLimitExceeded(MuLatticeError):
    """Requested construction exceeds the resource guard."""


class NotAssociative(MuLatticeError):
    pass


class NotCommutative(MuLatticeError):
    pass


class IdentityViolation(MuLatticeError):
    """Multiplication does not have the top element as identity."""


class NotJoinDistributive(MuLatticeError):
    """Multiplication fails to distribute over (binary or empty) joins."""


class NotDistributive(MuLatticeError):
    pass


class NotModular(MuLatticeError):
    pass


class NotAFrame(MuLatticeError):
    """Operation requires a quantale whose multiplication is meet."""


class NotAPreorder(MuLatticeError):
    pass


class NotATopology(MuLatticeError):
    """Family of opens is not closed under union/intersection or misses a bound."""


class NotAnOpen(MuLatticeError):
    pass


class ExponentOutOfRange(MuLatticeError):
    pass


class PreorderViolation(MuLatticeError):
    """Arguments are not comparable the way the operation requires."""


class MeetNotZero(MuLatticeError):
    pass


class NotPseudoComplement(MuLatticeError):
    pass


class EmptySet(MuLatticeError):
    pass


class SearchBudgetExceeded(MuLatticeError):
    pass


class UnknownCheckName(MuLatticeError):
    pass
