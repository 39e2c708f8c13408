import logging
from typing import Optional

from app.config import settings
from app.core.exceptions import SearchBudgetExceeded

logger = logging.getLogger(__name__)


class SearchBudget:
    """Node counter shared by the exhaustive searches of one analysis call."""

    def __init__(self, limit: Optional[int] = None, label: str = "search"):
        self.limit = limit if limit is not None else settings.SEARCH_BUDGET
        self.label = label
        self.spent = 0

    def tick(self, n: int = 1) -> None:
        self.spent += n
        if self.spent > self.limit:
            logger.warning(f"{self.label} exhausted its budget of {self.limit} nodes")
            raise SearchBudgetExceeded(f"{self.label} exceeded {self.limit} nodes", budget=self.limit, search=self.label)

    def __repr__(self) -> str:
        return f"SearchBudget({self.label}: {self.spent}/{self.limit})"


def budget_of(budget: "Optional[SearchBudget | int]", label: str) -> SearchBudget:
    if isinstance(budget, SearchBudget):
        return budget
    return SearchBudget(budget, label)
