"""Exception hierarchy shared by all modules."""


class SemilatError(Exception):
    """Base class for every error raised by this package."""


class UnknownElement(SemilatError, KeyError):
    def __init__(self, element):
        super().__init__(element)
        self.element = element

    def __str__(self):
        return f"unknown element {self.element!r}"


class CycleError(SemilatError):
    """The reflexive-transitive closure of the input relation is not antisymmetric."""

    def __init__(self, x, y):
        super().__init__(f"order relation has a cycle through {x!r} and {y!r}")
        self.witness = (x, y)


class AxiomError(SemilatError):
    """A semilattice or group axiom fails; ``witness`` names the offending elements."""

    axiom = "axiom"

    def __init__(self, witness, detail=""):
        msg = f"{self.axiom} fails at {tuple(witness)!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.witness = tuple(witness)


class NotIdempotent(AxiomError):
    axiom = "idempotency"


class NotCommutative(AxiomError):
    axiom = "commutativity"


class NotAssociative(AxiomError):
    axiom = "associativity"


class NotMeet(AxiomError):
    axiom = "product-is-meet"


class NoMeet(SemilatError):
    def __init__(self, x, y):
        super().__init__(f"{x!r} and {y!r} have no greatest lower bound")
        self.witness = (x, y)


class IncompleteTable(SemilatError):
    pass


class UnknownFamily(SemilatError, ValueError):
    pass


class CarrierMismatch(SemilatError, ValueError):
    pass


class NotUnital(SemilatError):
    pass


class NoZeroElement(SemilatError):
    pass


class NoDiagonal(SemilatError):
    """The diagonal equations are inconsistent."""


class GroupAxiomError(AxiomError):
    axiom = "group axiom"


class StructureMapError(SemilatError):
    """Structure homomorphisms of a Clifford semigroup are missing or incompatible."""


class UnknownComponent(SemilatError, KeyError):
    def __str__(self):
        return f"unknown group component {self.args[0]!r}"


class ParseError(SemilatError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
