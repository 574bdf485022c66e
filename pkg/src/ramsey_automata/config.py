import os
from dataclasses import dataclass

BUDGET_ENV = "RAMSEY_STATE_BUDGET"


class BudgetError(RuntimeError):
    """A construction exceeded its state budget."""


@dataclass
class Budget:
    max_states: int = 400_000
    # determinization is exponential; keep it separately capped
    max_subsets: int = 20_000

    @classmethod
    def from_env(cls) -> "Budget":
        raw = os.environ.get(BUDGET_ENV)
        if not raw:
            return cls()
        n = int(raw)
        return cls(max_states=n, max_subsets=max(1, n // 20))

    def check(self, count: int, what: str = "states") -> None:
        if count > self.max_states:
            raise BudgetError(f"{what}: {count} exceeds budget {self.max_states}")


def default_budget() -> Budget:
    return Budget.from_env()


@dataclass
class WitnessConfig:
    horizon: int = 8
    sample_triples: int = 200
    seed: int = 0
