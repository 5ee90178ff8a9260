"""
Result container shared by the identity verifiers.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List

from src.layers.algebra.ncalg import NcElement
from src.layers.algebra.qfield import QScalar, to_text


@dataclass
class IdentityResult:
    """
    Outcome of verifying one identity family.

    Attributes:
        name: Identity family
        passed: True when every instance held exactly
        metrics: Values worth reporting (scalars, sizes, derived coefficients)
        failures: Human-readable failing instances
        notes: Convention decisions taken on the way
    """
    name: str
    passed: bool = True
    metrics: Dict[str, Any] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def fail(self, message: str):
        self.passed = False
        self.failures.append(message)

    def extend(self, prefix: str, failures: List[str]):
        for failure in failures:
            self.fail(f"{prefix}: {failure}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'passed': self.passed,
            'metrics': serialize(self.metrics),
            'failures': list(self.failures),
            'notes': list(self.notes),
        }


def serialize(value: Any) -> Any:
    """Exact values become text, containers are walked."""
    if isinstance(value, dict):
        return {str(k): serialize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [serialize(v) for v in value]
    if isinstance(value, NcElement):
        return value.to_text()
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    if isinstance(value, QScalar):
        return to_text(value)
    if hasattr(value, "item"):
        return value.item()
    return str(value)
