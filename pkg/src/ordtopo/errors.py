"""Exception types shared across the package."""


class OrdTopoError(Exception):
    """Base class for every error raised by ordtopo."""


class InvalidPoset(OrdTopoError, ValueError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics) or "invalid poset")


class InvalidTopology(OrdTopoError, ValueError):
    pass


class NotT0(OrdTopoError, ValueError):
    pass


class OutOfRange(OrdTopoError, IndexError):
    pass


class EmptyFamily(OrdTopoError, ValueError):
    pass


class EmptyMember(OrdTopoError, ValueError):
    pass


class InvalidFamily(OrdTopoError, ValueError):
    pass


class UnknownPredicate(OrdTopoError, KeyError):
    pass


class CarrierTooLarge(OrdTopoError, ValueError):
    pass


class BoundTooLarge(OrdTopoError, ValueError):
    pass


class ForeignElement(OrdTopoError, ValueError):
    pass


class NotClosed(OrdTopoError, ValueError):
    pass


class NotALattice(OrdTopoError, ValueError):
    pass


class FiberNotIrreducible(OrdTopoError, ValueError):
    def __init__(self, base_point):
        self.base_point = base_point
        super().__init__(f"fiber over base point {base_point} is not irreducible")


class ForeignStagePoint(OrdTopoError, ValueError):
    pass


class UnknownTheorem(OrdTopoError, KeyError):
    pass


class MalformedPoint(OrdTopoError, ValueError):
    pass


class InvariantViolation(OrdTopoError, ValueError):
    pass


class UnknownCertificate(OrdTopoError, KeyError):
    pass


class MalformedArgs(OrdTopoError, ValueError):
    pass


class PosetSyntaxError(OrdTopoError, ValueError):
    def __init__(self, message, line):
        self.line = line
        super().__init__(f"line {line}: {message}")


class CycleError(OrdTopoError, ValueError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("cover relation has a cycle: " + " -> ".join(map(str, self.cycle)))


class UnknownCheck(OrdTopoError, KeyError):
    pass
