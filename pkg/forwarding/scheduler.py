"""
Smooth weighted round-robin used to split traffic over candidate queues.
"""

from dataclasses import dataclass, field
from typing import Hashable, Iterable


@dataclass
class SplitScheduler:
    """
    Credit state for one (node, destination) candidate set.

    Weights are link rates in bit/s, so long-run shares follow the
    bandwidth of each outgoing link.
    """

    weights: dict[Hashable, float] = field(default_factory=dict)
    credits: dict[Hashable, float] = field(default_factory=dict)

    def set_weight(self, key: Hashable, weight: float) -> None:
        if weight <= 0:
            raise ValueError("split weights must be positive")
        self.weights[key] = weight
        self.credits.setdefault(key, 0.0)


def weighted_pick(eligible: Iterable[Hashable], sched: SplitScheduler) -> Hashable:
    """
    Add each eligible weight to its credit, pick the highest credit (ties
    go to the lowest id) and charge the winner the total eligible weight.
    """
    members = sorted(set(eligible))
    if not members:
        raise ValueError("weighted_pick needs at least one eligible queue")
    total = 0.0
    for key in members:
        weight = sched.weights[key]
        sched.credits[key] = sched.credits.get(key, 0.0) + weight
        total += weight
    winner = members[0]
    for key in members[1:]:
        if sched.credits[key] > sched.credits[winner]:
            winner = key
    sched.credits[winner] -= total
    return winner
