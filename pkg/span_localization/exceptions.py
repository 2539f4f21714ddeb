from typing import Any


class CospanMismatch(ValueError):
    def __init__(self, f: str, g: str, cod_f: str, cod_g: str):
        self.cospan = (f, g)
        super().__init__(f"Cospan ({f}, {g}) has different codomains {cod_f} and {cod_g}.")


class BudgetExceeded(ValueError):
    """
    Enumeration stopped because its search outgrew the budget.
    :param explored: search nodes visited when the budget ran out.
    :param budget: the budget that was exceeded.
    :param what: name of the search.
    :param estimate: size of the unpruned search space, an upper bound on the nodes the search could
    visit. Defaults to explored when the search cannot size itself.
    """
    def __init__(self, explored: int, budget: int, what: str = "search", estimate: int | None = None):
        self.explored = explored
        self.budget = budget
        self.estimate = max(explored, estimate) if estimate is not None else explored
        super().__init__(f"Budget exceeded in {what}: search space estimate {self.estimate}, "
                         f"{explored} nodes explored > budget {budget}.")


class NonMonotone(ValueError):
    pass


class MissingPullback(ValueError):
    def __init__(self, f: str, g: str):
        self.cospan = (f, g)
        super().__init__(f"Cospan ({f}, {g}) has no pullback.")


class DimensionBoundTooLow(ValueError):
    pass


class IllDefinedComposition(ValueError):
    def __init__(self, first: Any, second: Any, message: str):
        self.witness = (first, second)
        super().__init__(message)


class NotCartesian(ValueError):
    def __init__(self, square: Any):
        self.square = square
        super().__init__(f"Square {tuple(square)} is not a pullback.")


class DocumentError(ValueError):
    pass
