"""Exception aggregating every problem found in an experiment configuration."""

from typing import List

from hetroute.common.exceptions.hetroute_error import HetRouteError


class ConfigValidationError(HetRouteError):
    """Raised once per configuration with the full list of problems."""

    def __init__(self, problems: List[str]):
        report = "\n".join(f"  - {problem}" for problem in problems)
        super().__init__(f"Invalid configuration ({len(problems)} problem(s)):\n{report}")
        self.problems = problems
