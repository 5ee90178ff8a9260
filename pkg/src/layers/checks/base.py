"""
Base classes for verification checks in QuantumTruth.

A check runs one family of module operations at a given N and folds the
outcome into a CheckReport, the unit of every JSON report.
"""

import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from src.config import config
from src.layers.algebra.rmatrix import Corruption
from src.layers.qgroups.catalog import RelationCorruption
from src.layers.casimir.base import IdentityResult, serialize

PASS = "pass"
FAIL = "fail"
ERROR = "error"

# failures kept in a witness
WITNESS_LIMIT = 20


@dataclass
class CheckParams:
    """
    Inputs shared by every check.

    Attributes:
        n: Matrix size N
        q0: Rational specialization point for numeric checks
        degree_cap: Completion degree cap (None: 2N + slack)
        thresholds: Filtration thresholds M
        window: Filtration window
        seed: Seed of randomized property tests
        corrupt_r: Optional perturbation of one R entry
        corrupt_relation: Optional perturbation of one defining relation
    """
    n: int = 2
    q0: Fraction = field(default_factory=lambda: config.numeric.q0)
    degree_cap: Optional[int] = None
    thresholds: List[int] = field(default_factory=lambda: list(config.numeric.thresholds))
    window: int = field(default_factory=lambda: config.numeric.window)
    seed: int = field(default_factory=lambda: config.numeric.seed)
    corrupt_r: Optional[Corruption] = None
    corrupt_relation: Optional[RelationCorruption] = None

    def effective_degree_cap(self) -> int:
        return self.degree_cap or config.limits.degree_cap(self.n)

    def with_n(self, n: int) -> "CheckParams":
        return CheckParams(n, self.q0, self.degree_cap, list(self.thresholds), self.window, self.seed,
                           self.corrupt_r, self.corrupt_relation)

    def to_dict(self, names: Tuple[str, ...]) -> Dict[str, Any]:
        values = {
            "n": self.n,
            "q": str(self.q0),
            "degree_cap": self.effective_degree_cap(),
            "thresholds": list(self.thresholds),
            "window": self.window,
            "seed": self.seed,
        }
        out = {name: values[name] for name in names}
        if self.corrupt_r is not None:
            (row, col), delta = self.corrupt_r
            out["corrupt_r"] = {"entry": [list(row), list(col)], "delta": serialize(delta)}
        if self.corrupt_relation is not None:
            index, delta = self.corrupt_relation
            out["corrupt_relation"] = {"index": index, "delta": serialize(delta)}
        return out


@dataclass
class CheckReport:
    """
    Outcome of one check.

    Only the six schema fields are serialized; ``details`` keeps the full
    IdentityResult for CSV tables and console output.
    """
    check: str
    params: Dict[str, Any]
    status: str
    witness: Optional[Any] = None
    elapsed_ms: int = 0
    convention_notes: List[str] = field(default_factory=list)
    details: Optional[IdentityResult] = field(default=None, repr=False, compare=False)
    resource_exceeded: bool = field(default=False, compare=False)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def exit_code(self) -> int:
        if self.passed:
            return 0
        return 3 if self.resource_exceeded else 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "params": serialize(self.params),
            "status": self.status,
            "witness": serialize(self.witness),
            "elapsed_ms": int(self.elapsed_ms),
            "convention_notes": list(self.convention_notes),
        }


def aggregate_exit_code(reports: List[CheckReport]) -> int:
    """0 when every report passed, 3 when a resource cap was hit, 1 otherwise."""
    codes = {report.exit_code for report in reports}
    if codes <= {0}:
        return 0
    return 3 if 3 in codes else 1


def witness_of(result: IdentityResult) -> Optional[Dict[str, Any]]:
    if result.passed:
        return None
    witness: Dict[str, Any] = {"failures": result.failures[:WITNESS_LIMIT]}
    if len(result.failures) > WITNESS_LIMIT:
        witness["omitted"] = len(result.failures) - WITNESS_LIMIT
    if "residual" in result.metrics:
        witness["residual"] = result.metrics["residual"]
    return witness


class Check(ABC):
    """
    Abstract base class for all checks.

    Each check should:
    1. Implement verify() to run its module operations at params.n
    2. Optionally override is_available() to check dependencies
    """

    # params entries that appear in the report
    param_names: Tuple[str, ...] = ("n", "degree_cap")

    def __init__(self, check_id: str, description: str = ""):
        """
        Initialize check.

        Args:
            check_id: Identifier used on the command line
            description: Human-readable description
        """
        self.check_id = check_id
        self.description = description

    @abstractmethod
    def verify(self, params: CheckParams) -> IdentityResult:
        """
        Run the check.

        Args:
            params: Shared check inputs

        Returns:
            IdentityResult whose failures become the witness
        """
        pass

    def run(self, params: CheckParams) -> CheckReport:
        """verify() timed and folded into a CheckReport; exceptions propagate."""
        start = time.perf_counter()
        result = self.verify(params)
        elapsed = int((time.perf_counter() - start) * 1000)
        return CheckReport(
            check=self.check_id,
            params=params.to_dict(self.param_names),
            status=PASS if result.passed else FAIL,
            witness=witness_of(result),
            elapsed_ms=elapsed,
            convention_notes=list(dict.fromkeys(result.notes)),
            details=result,
        )

    def is_available(self) -> bool:
        """
        Check if this check can run (dependencies available).

        Returns:
            True if all required libraries are installed
        """
        return True

    def get_required_libraries(self) -> List[str]:
        return ['sympy']

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(check_id='{self.check_id}')"


class NumericCheck(Check):
    """Base class for checks that specialize at a rational q0."""

    param_names = ("n", "q", "degree_cap")

    def is_available(self) -> bool:
        return config.features.numpy_available and config.features.scipy_available

    def get_required_libraries(self) -> List[str]:
        return ['sympy', 'numpy', 'scipy']
