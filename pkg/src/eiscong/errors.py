"""Exception hierarchy shared by every layer of the package."""


class EisCongError(Exception):
    """Base class for all package errors."""


class InvalidArgument(EisCongError, ValueError):
    pass


class PoleError(EisCongError, ZeroDivisionError):
    """A rational function was evaluated at one of its poles."""

    def __init__(self, x):
        super().__init__(f"pole at t = {x}")
        self.x = x


class BudgetError(EisCongError):
    """An exact Bernoulli number beyond the configured budget was requested."""

    def __init__(self, k, budget):
        super().__init__(
            f"B_{k} exceeds the exact Bernoulli budget {budget}; "
            "use index reduction instead"
        )
        self.k = k
        self.budget = budget


class PrecisionError(EisCongError):
    """The requested p-adic precision cannot be delivered."""


class PrecisionUnattainable(PrecisionError):
    def __init__(self, k, p, modulus, budget):
        super().__init__(
            f"a0(G*_{k}) at p={p}: reduced index modulo {modulus} "
            f"exceeds Bernoulli budget {budget}"
        )
        self.k = k
        self.p = p
        self.modulus = modulus
        self.budget = budget


class BoundViolation(EisCongError):
    def __init__(self, p, P):
        super().__init__(f"prime {p} does not exceed the certified bound P = {P}")
        self.p = p
        self.P = P


class PresetError(EisCongError, ValueError):
    pass


class ParseError(EisCongError, ValueError):
    def __init__(self, message, pos):
        super().__init__(f"{message} at offset {pos}")
        self.pos = pos
