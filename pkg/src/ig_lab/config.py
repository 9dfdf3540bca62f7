"""Search caps and run configuration.

Every search in the package is bounded: word length, BFS state budget,
witness length for multiplier searches, and the largest group order the
table machinery will materialise.  Negative answers from capped searches
are "no at these caps", never absolute; callers that need the distinction
get CapExceeded when a budget was actually hit.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Caps:
    max_word_len: int = 12
    max_bfs_states: int = 2_000_000
    witness_len: int = 6
    max_group_order: int = 5000

    def __post_init__(self):
        if min(self.max_word_len, self.max_bfs_states, self.witness_len, self.max_group_order) <= 0:
            raise ValueError("all caps must be positive")

    def with_(self, **kw) -> "Caps":
        return replace(self, **kw)

    def probe(self) -> "Caps":
        """Reduced per-probe budget for loops that fire many searches.

        Group enumeration and sweep phases run thousands of oracle probes;
        giving each one the full BFS budget would turn a single honest
        GroupNotFiniteWithinCap into a multi-minute stall.
        """
        return replace(self, max_bfs_states=max(10_000, self.max_bfs_states // 40))

    def to_json(self) -> dict:
        return {
            "max_word_len": self.max_word_len,
            "max_bfs_states": self.max_bfs_states,
            "witness_len": self.witness_len,
            "max_group_order": self.max_group_order,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Caps":
        return cls(**{k: int(v) for k, v in data.items()})


DEFAULT_CAPS = Caps()
