"""Exception hierarchy shared by every module."""


class HeytingError(Exception):
    """Base class for all errors raised by this package."""


class InputError(HeytingError):
    """Malformed input: bad JSON, bad tables, bad names. The CLI maps these to exit code 2."""


class CycleError(InputError):
    def __init__(self, x, y):
        super().__init__(f"relation is not antisymmetric: {x} <= {y} <= {x}")
        self.pair = (x, y)


class EmptyPoset(InputError):
    pass


class BudgetExceeded(HeytingError):
    """A search or enumeration hit its configured cap.

    ``spent`` is the amount consumed when the cap was hit (nodes, upsets,
    assignments, ... depending on ``unit``).
    """

    def __init__(self, what, limit, spent=None, unit="nodes"):
        msg = f"{what}: budget of {limit} {unit} exceeded"
        if spent is not None:
            msg += f" (after {spent})"
        super().__init__(msg)
        self.what = what
        self.limit = limit
        self.spent = spent
        self.unit = unit


class NotLattice(InputError):
    def __init__(self, a, b, kind):
        super().__init__(f"elements {a}, {b} have no {kind}")
        self.witness = (a, b)


class NotDistributive(InputError):
    def __init__(self, a, b, c):
        super().__init__(f"distributivity fails at a={a}, b={b}, c={c}: a&(b|c) != (a&b)|(a&c)")
        self.witness = (a, b, c)


class AdjunctionFails(InputError):
    def __init__(self, a, b, c):
        super().__init__(f"adjunction fails at a={a}, b={b}, c={c}: a&b <= c is not equivalent to a <= b->c")
        self.witness = (a, b, c)


class NotSI(InputError):
    pass


class NotCascade(InputError):
    pass


class NotDecomposable(HeytingError):
    def __init__(self, level, reason):
        super().__init__(f"level {level}: {reason}")
        self.level = level
        self.reason = reason


class BadSpec(InputError):
    pass


class TooSmall(InputError):
    pass


class UnknownName(InputError):
    pass


class ParseError(InputError):
    def __init__(self, text, pos, expected):
        self.text = text
        self.pos = pos
        self.expected = frozenset(expected)
        shown = ", ".join(sorted(self.expected))
        got = repr(text[pos]) if pos < len(text) else "end of input"
        super().__init__(f"at position {pos}: expected one of {{{shown}}}, got {got}")


class UnboundVariable(InputError):
    def __init__(self, name):
        super().__init__(f"variable {name!r} has no value")
        self.name = name


class NotPMorphism(InputError):
    pass


class NotMonotone(NotPMorphism):
    def __init__(self, x, y):
        super().__init__(f"{x} <= {y} but their images are not ordered")
        self.witness = (x, y)


class NotBack(NotPMorphism):
    def __init__(self, x, target):
        super().__init__(f"target point {target} lies above the image of {x} but is not hit from above {x}")
        self.witness = (x, target)


class InternalInconsistency(HeytingError):
    """A certificate check failed. Always an implementation bug."""


class RouteDisagreement(InternalInconsistency):
    def __init__(self, routes):
        super().__init__(f"classifier routes disagree: {routes}")
        self.routes = dict(routes)
