"""
Benchmark records
"""

from dataclasses import dataclass, asdict
from typing import Any, Dict, Optional

# CSV column order.
COLUMNS = ("algorithm_id", "d", "n", "k", "wall_time_ns", "value", "seed", "git_describe")


@dataclass(frozen=True)
class BenchRecord:
    """One timed call of a core algorithm."""
    algorithm_id: str
    d: int
    n: int
    k: Optional[int]
    wall_time_ns: int
    value: float
    seed: int
    git_describe: str

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        return {column: data[column] for column in COLUMNS}

    def __repr__(self) -> str:
        return f"BenchRecord(algorithm_id='{self.algorithm_id}', d={self.d}, n={self.n}, wall_time_ns={self.wall_time_ns})"
