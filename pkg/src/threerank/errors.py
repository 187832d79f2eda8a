"""Exception hierarchy.

Everything raised deliberately by the package derives from ``ThreeRankError``.
Input problems derive from ``InvalidInput`` (CLI exit status 2) and resource
exhaustion from ``BudgetExceeded`` (CLI exit status 3).
"""


class ThreeRankError(Exception):
    pass


class InvalidInput(ThreeRankError, ValueError):
    pass


class InvalidDiscriminant(InvalidInput):
    pass


class NotFundamental(InvalidInput):
    pass


class SquareDiscriminant(InvalidDiscriminant):
    pass


class NotDefinite(InvalidInput):
    pass


class NotIndefinite(InvalidInput):
    pass


class ImprimitiveForm(InvalidInput):
    pass


class DiscriminantMismatch(InvalidInput):
    pass


class ZeroU(InvalidInput):
    pass


class InvalidD(InvalidInput):
    pass


class InvalidParams(InvalidInput):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid family parameters: " + ", ".join(self.violations))

    def __reduce__(self):
        return type(self), (self.violations,)


class BudgetExceeded(ThreeRankError):
    pass


class FactorizationBudgetExceeded(BudgetExceeded):
    def __init__(self, n, budget):
        self.n = n
        self.budget = budget
        super().__init__(f"could not split {n} within {budget} iterations")

    def __reduce__(self):
        return type(self), (self.n, self.budget)


class ClassBudgetExceeded(BudgetExceeded):
    def __init__(self, D, needed, budget):
        self.D = D
        self.needed = needed
        self.budget = budget
        super().__init__(
            f"discriminant {D} needs a scan of {needed} coefficients, budget is {budget}"
        )

    def __reduce__(self):
        return type(self), (self.D, self.needed, self.budget)
