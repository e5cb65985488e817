"""Monotone access structures over n parties and related queries.

Parties are numbered 1..n.  A structure is either a (k, n) threshold or a
general monotone family given by its minimal authorized sets; a subset is
authorized when it contains a minimal authorized set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Sequence

_ENUMERATION_LIMIT = 12


@dataclass(frozen=True)
class AccessStructure:
    """Threshold (minimal_authorized empty, k set) or general monotone family."""

    n: int
    k: int | None = None
    minimal_authorized: frozenset[FrozenSet[int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one party")
        if self.k is not None:
            if not 1 <= self.k <= self.n:
                raise ValueError(f"threshold k={self.k} outside [1, {self.n}]")
            if self.minimal_authorized:
                raise ValueError("threshold structures carry no explicit minimal sets")
            return
        if not self.minimal_authorized:
            raise ValueError("general structure needs at least one authorized set")
        for s in self.minimal_authorized:
            if not s or not all(1 <= i <= self.n for i in s):
                raise ValueError(f"minimal set {set(s)} outside parties 1..{self.n}")
        for a, b in itertools.permutations(self.minimal_authorized, 2):
            if a < b:
                raise ValueError("minimal sets must form an antichain")

    @staticmethod
    def threshold(k: int, n: int) -> "AccessStructure":
        return AccessStructure(n=n, k=k)

    @staticmethod
    def general(n: int, minimal_sets: Iterable[Iterable[int]]) -> "AccessStructure":
        return AccessStructure(
            n=n,
            minimal_authorized=frozenset(frozenset(s) for s in minimal_sets),
        )

    @property
    def is_threshold(self) -> bool:
        return self.k is not None

    def parties(self) -> range:
        return range(1, self.n + 1)

    def _check_subset(self, subset: Iterable[int]) -> frozenset[int]:
        s = frozenset(subset)
        if not all(1 <= i <= self.n for i in s):
            raise ValueError(f"subset {set(s)} contains parties outside 1..{self.n}")
        return s

    def to_json(self) -> dict:
        if self.is_threshold:
            return {"threshold": {"k": self.k, "n": self.n}}
        return {
            "general": {
                "n": self.n,
                "minimal": sorted(sorted(s) for s in self.minimal_authorized),
            }
        }

    @staticmethod
    def from_json(obj: dict) -> "AccessStructure":
        if "threshold" in obj:
            spec = obj["threshold"]
            return AccessStructure.threshold(spec["k"], spec["n"])
        if "general" in obj:
            spec = obj["general"]
            return AccessStructure.general(spec["n"], spec["minimal"])
        raise ValueError(f"unrecognized access structure encoding: {obj!r}")


def is_authorized(structure: AccessStructure, subset: Iterable[int]) -> bool:
    """Threshold: |S| >= k.  General: S contains some minimal authorized set."""
    s = structure._check_subset(subset)
    if structure.is_threshold:
        return len(s) >= structure.k
    return any(m <= s for m in structure.minimal_authorized)


def is_admissible_partition(
    structure: AccessStructure, partition: Sequence[Iterable[int]]
) -> bool:
    """True iff the blocks partition 1..n and no block is authorized."""
    blocks = [structure._check_subset(b) for b in partition]
    total = 0
    seen: set[int] = set()
    for b in blocks:
        total += len(b)
        seen |= b
    if total != structure.n or seen != set(structure.parties()):
        raise ValueError("blocks must partition the full party set exactly once")
    return not any(is_authorized(structure, b) for b in blocks)


def maximal_unauthorized(structure: AccessStructure) -> set[FrozenSet[int]]:
    """All unauthorized sets whose strict supersets are all authorized.

    Exhaustive over the 2^n subsets; refuses n beyond the enumeration limit.
    """
    if structure.n > _ENUMERATION_LIMIT:
        raise ValueError(
            f"exhaustive enumeration capped at n <= {_ENUMERATION_LIMIT}"
        )
    parties = list(structure.parties())
    result: set[FrozenSet[int]] = set()
    for size in range(structure.n + 1):
        for combo in itertools.combinations(parties, size):
            s = frozenset(combo)
            if is_authorized(structure, s):
                continue
            extensions = [s | {p} for p in parties if p not in s]
            if all(is_authorized(structure, e) for e in extensions):
                result.add(s)
    return result
