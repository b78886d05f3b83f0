"""Fitness-evaluation accounting.

Every invocation of a problem's objective set is one evaluation (FE).
Runs are budgeted in FEs, split between the decomposition stage (variable
grouping) and the optimization stage; the counters are the accounting of
record for all reports.
"""

from dataclasses import dataclass


class BudgetExhausted(RuntimeError):
    """Raised when a charge would push total evaluations past the limit."""


@dataclass
class EvaluationBudget:
    """Monotone FE counters with a hard limit.

    Attributes:
        limit: Maximum total evaluations allowed.
        used_decomposition: Evaluations spent probing variable interactions.
        used_optimization: Evaluations spent on optimization (including
            sample base points that seed the archive).
    """

    limit: int
    used_decomposition: int = 0
    used_optimization: int = 0

    def __post_init__(self) -> None:
        if self.limit < 0:
            raise ValueError(f"budget limit must be nonnegative, got {self.limit}")

    @property
    def used_total(self) -> int:
        return self.used_decomposition + self.used_optimization

    @property
    def remaining(self) -> int:
        return self.limit - self.used_total

    def charge_decomposition(self, n: int = 1) -> None:
        """Charge n decomposition evaluations; raises before exceeding the limit."""
        if n < 0:
            raise ValueError("cannot charge a negative number of evaluations")
        if n > self.remaining:
            raise BudgetExhausted(
                f"decomposition charge of {n} exceeds remaining budget {self.remaining}"
            )
        self.used_decomposition += n

    def charge_optimization(self, n: int = 1) -> None:
        """Charge n optimization evaluations; raises before exceeding the limit."""
        if n < 0:
            raise ValueError("cannot charge a negative number of evaluations")
        if n > self.remaining:
            raise BudgetExhausted(
                f"optimization charge of {n} exceeds remaining budget {self.remaining}"
            )
        self.used_optimization += n
