"""Result records shared by the solvers."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .exchange import AugmentingPath, PartitionState
from .oracle import QueryStats


class PhaseResult(NamedTuple):
    state: PartitionState
    progressed: bool
    distance: float  # d(s, T) seen at the start of the phase
    augmentations: int


@dataclass
class PhaseRecord:
    kind: str
    distance: Optional[int]
    augmentations: int
    queries: int

    def to_dict(self):
        return {"kind": self.kind, "d_T": self.distance, "augmentations": self.augmentations, "queries": self.queries}


@dataclass
class AugmentEvent:
    """Handed to ``on_augment`` observers after every augmentation."""

    before: PartitionState
    path: AugmentingPath
    after: PartitionState
    recycle: object = None  # RecycleState during edge recycling


@dataclass
class SolveReport:
    algo: str
    state: PartitionState
    stats: QueryStats
    log: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def p(self) -> int:
        return self.state.size

    def to_dict(self) -> dict:
        return {
            "algo": self.algo,
            "p": self.p,
            "partition": self.state.as_lists(),
            "stats": self.stats.to_dict(),
            "phases": [r.to_dict() for r in self.log],
            **self.extra,
        }
