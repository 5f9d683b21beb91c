"""
TraceStep / SolverTrace - per-step records of a subset-selection run
"""

from dataclasses import dataclass, field, asdict
from typing import Any, Dict, List, Optional


@dataclass
class TraceStep:
    """
    One step of a subset-selection solver.

    Attributes:
        order: Step sequence number (1, 2, 3, ...)
        action: What happened ("layer", "improve", "add", "remove", "start", "accept", "finish", "insert")
        indices: Front indices touched by the step
        hypervolume: Hypervolume of the current subset after the step
        metrics: Optional step-level numbers (contribution, population size, ...)
    """
    order: int
    action: str
    indices: List[int] = field(default_factory=list)
    hypervolume: float = 0.0
    metrics: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        """Convert step to dictionary for JSON serialization"""
        return asdict(self)

    def __repr__(self) -> str:
        return f"TraceStep(order={self.order}, action='{self.action}', hypervolume={self.hypervolume})"


class SolverTrace:
    """Ordered list of TraceStep records; recording can be switched off."""

    def __init__(self, method: str, enabled: bool = True, metadata: Optional[Dict[str, Any]] = None):
        self.method = method
        self.enabled = enabled
        self.metadata = metadata or {}
        self.steps: List[TraceStep] = []

    def record(self, action: str, indices: List[int], hypervolume: float, **metrics: Any) -> None:
        if not self.enabled:
            return
        self.steps.append(
            TraceStep(
                order=len(self.steps) + 1,
                action=action,
                indices=[int(i) for i in indices],
                hypervolume=float(hypervolume),
                metrics=metrics,
            )
        )

    def __len__(self) -> int:
        return len(self.steps)

    def hypervolumes(self) -> List[float]:
        return [step.hypervolume for step in self.steps]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "method": self.method,
            "metadata": self.metadata,
            "steps": [step.to_dict() for step in self.steps],
        }
