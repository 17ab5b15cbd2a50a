"""Abstract base class for verification suites"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List

import pandas as pd

from ..core.config import Config
from ..core.errors import CoboScopeError


@dataclass
class CheckResult:
    """One exact check: its name, outcome and a short detail line."""

    name: str
    passed: bool
    detail: str = ""


class VerificationSuite(ABC):
    """
    Base class for verification suites.

    Every suite subclasses this and implements run(). Checks compare exact
    values and report failures as results; they never raise.
    """

    name: str = "suite"
    description: str = ""

    @abstractmethod
    def run(self, config: Config) -> List[CheckResult]:
        """
        Run every check of the suite.

        Args:
            config: Truncation orders, bounds and seed to use

        Returns:
            One CheckResult per check, in a fixed order
        """

    def safe_run(self, config: Config) -> List[CheckResult]:
        """run(), turning an unexpected library error into a failed check."""
        try:
            return self.run(config)
        except CoboScopeError as e:
            return [CheckResult(f"{self.name} raised", False, f"{type(e).__name__}: {e}")]

    def to_dataframe(self, config: Config) -> pd.DataFrame:
        """
        Run the suite and collect the results in a standard DataFrame.

        Returns:
            DataFrame with columns: suite, check, passed, detail
        """
        rows = [{"suite": self.name, "check": r.name, "passed": r.passed, "detail": r.detail}
                for r in self.safe_run(config)]
        return pd.DataFrame(rows, columns=["suite", "check", "passed", "detail"])
