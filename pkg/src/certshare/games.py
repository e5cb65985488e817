"""Adaptive corruption/deletion game engine and transcript records.

One engine drives the adaptive experiment for any scheme that can hand out
share objects and verify certificates; the abort rules are fixed by the
experiment, not the scheme: corrupting may never leave an authorized set of
undeleted corrupted shares, and a rejected certificate ends the game.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Protocol

from .access import AccessStructure, is_authorized


@dataclass
class Transcript:
    """Ordered event log of one experiment; output None encodes an abort."""

    events: list[dict]
    output: Optional[Any]

    @property
    def aborted(self) -> bool:
        return self.output is None

    def events_of(self, kind: str) -> list[dict]:
        return [e for e in self.events if e["type"] == kind]

    def corruption_order(self) -> list[int]:
        return [e["party"] for e in self.events_of("corrupt")]

    def deletion_order(self) -> list[int]:
        return [e["party"] for e in self.events_of("delete")]

    def to_json(self) -> dict:
        return {"events": self.events, "output": self.output}


class AdaptiveScheme(Protocol):
    structure: AccessStructure

    def share_for(self, index: int) -> Any: ...

    def verify(self, index: int, cert: Any) -> bool: ...


@dataclass
class GameInfo:
    """What the adversary legitimately knows between rounds."""

    structure: AccessStructure
    corrupted: frozenset[int]
    deleted: frozenset[int]
    round: int


@dataclass
class GameState:
    """Challenger-side bookkeeping for one adaptive game."""

    n: int
    corrupted: set[int] = field(default_factory=set)
    deleted: set[int] = field(default_factory=set)
    custody: Dict[int, str] = field(default_factory=dict)
    events: list[dict] = field(default_factory=list)

    def __post_init__(self):
        for i in range(1, self.n + 1):
            self.custody.setdefault(i, "intact")


def run_adaptive_game(
    scheme: AdaptiveScheme, adversary, rng, max_rounds: int = 100_000
) -> Transcript:
    """Round loop of the adaptive deletion experiment.

    Each round the adversary sees exactly the shares it has corrupted and
    chooses to end, corrupt a new share, or delete by presenting a
    certificate.  An invalid certificate or an authorized corrupted-minus-
    deleted set aborts immediately with output None.
    """
    structure = scheme.structure
    state = GameState(structure.n)
    for round_no in range(max_rounds):
        view = {i: scheme.share_for(i) for i in sorted(state.corrupted)}
        info = GameInfo(
            structure=structure,
            corrupted=frozenset(state.corrupted),
            deleted=frozenset(state.deleted),
            round=round_no,
        )
        action = adversary.next_action(view, info, rng)
        kind = action[0]
        if kind == "end":
            payload = action[1] if len(action) > 1 else None
            state.events.append({"type": "output", "round": round_no})
            return Transcript(state.events, output={"register": payload})
        if kind == "corrupt":
            party = action[1]
            if not 1 <= party <= structure.n:
                raise ValueError(f"party {party} out of range")
            if party in state.corrupted:
                raise ValueError(f"party {party} is already corrupted")
            state.corrupted.add(party)
            if state.custody[party] == "intact":
                state.custody[party] = "corrupted"
            state.events.append({"type": "corrupt", "party": party, "round": round_no})
            if is_authorized(structure, state.corrupted - state.deleted):
                state.events.append(
                    {"type": "abort", "round": round_no, "reason": "authorized-undeleted-set"}
                )
                return Transcript(state.events, output=None)
            continue
        if kind == "delete":
            party, cert = action[1], action[2]
            accepted = scheme.verify(party, cert)
            state.events.append(
                {"type": "verify", "party": party, "accepted": accepted, "round": round_no}
            )
            if not accepted:
                state.events.append(
                    {"type": "abort", "round": round_no, "reason": "invalid-certificate"}
                )
                return Transcript(state.events, output=None)
            state.deleted.add(party)
            state.custody[party] = "deleted"
            state.events.append({"type": "delete", "party": party, "round": round_no})
            continue
        raise ValueError(f"unknown action kind {kind!r}")
    raise RuntimeError("adversary never ended the experiment")


def ordering_invariant_holds(transcript: Transcript, k: int) -> bool:
    """In a non-aborted run, the b'th deletion precedes the (k-1+b)'th
    corruption; equivalently the undeleted corrupted set never reaches k."""
    if transcript.aborted:
        return True
    corrupted: set[int] = set()
    deleted: set[int] = set()
    for event in transcript.events:
        if event["type"] == "corrupt":
            corrupted.add(event["party"])
        elif event["type"] == "delete":
            deleted.add(event["party"])
        if len(corrupted - deleted) > k - 1:
            return False
    return True
