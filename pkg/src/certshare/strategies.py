"""Adversary strategies for the deletion games.

Adaptive-game strategies expose next_action(view, info, rng) and return
("end", payload), ("corrupt", i), or ("delete", i, cert).  Block strategies
for the no-signaling game expose run_block(shares, rng) -> (certs, residual).
Strategies keep their own memory of measured values; the challenger only
ever sees indices and certificates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

from . import bk2of2
from .access import AccessStructure, is_authorized
from .acd import AcdShare, acd_delete
from .css import creconstruct
from .nscd import NscdShare, nscd_delete
from .qsim import Basis, ProductShare


def honest_certificate(share, rng):
    """Fourier-measure the whole quantum part of either scheme's share."""
    if isinstance(share, AcdShare):
        return acd_delete(share, rng)
    if isinstance(share, NscdShare):
        return nscd_delete(share, rng)
    raise TypeError(f"no deletion rule for {type(share).__name__}")


@dataclass
class HonestDelete:
    """Corrupt each target in order, delete it honestly, then end."""

    targets: Sequence[int]
    _pos: int = 0
    _pending: Optional[int] = None

    def next_action(self, view, info, rng):
        if self._pending is not None:
            party = self._pending
            self._pending = None
            return ("delete", party, honest_certificate(view[party], rng))
        if self._pos < len(self.targets):
            party = self.targets[self._pos]
            self._pos += 1
            self._pending = party
            return ("corrupt", party)
        return ("end", {"kind": "honest-delete"})


@dataclass
class CorruptAllThenEnd:
    """Corrupt parties 1..count without ever deleting; exercises the abort
    rule once the undeleted corrupted set becomes authorized."""

    count: int
    _next: int = 1

    def next_action(self, view, info, rng):
        if self._next <= self.count:
            party = self._next
            self._next += 1
            return ("corrupt", party)
        return ("end", {"kind": "corrupt-only"})


@dataclass
class Scripted:
    """Replay a fixed action list; "honest" deletion certs are computed on
    the fly from the corrupted share."""

    script: Sequence[tuple]
    _pos: int = 0

    def next_action(self, view, info, rng):
        if self._pos >= len(self.script):
            return ("end", {"kind": "scripted"})
        step = self.script[self._pos]
        self._pos += 1
        if step[0] == "delete" and len(step) == 3 and step[2] == "honest":
            return ("delete", step[1], honest_certificate(view[step[1]], rng))
        return step


@dataclass
class GuessGCheater:
    """Corrupt one share; Fourier-measure all but g positions, fabricate the
    rest, and present the result as a deletion certificate.

    The g fabricated positions are measured computationally instead, so
    their data content survives; each one that collides with a hidden check
    position passes verification only with probability 1/q.
    """

    g: int
    target: int = 1
    retained: Optional[list] = None
    _corrupted: bool = False
    _deleted: bool = False

    def next_action(self, view, info, rng):
        if not self._corrupted:
            self._corrupted = True
            return ("corrupt", self.target)
        if not self._deleted:
            self._deleted = True
            share: AcdShare = view[self.target]
            t = len(share.positions)
            keep = set(
                int(j) for j in rng.choice(t, size=self.g, replace=False)
            )
            spec = share.positions.spec
            cert = []
            retained = {}
            for idx, pos in enumerate(share.positions.positions):
                if idx in keep:
                    # computational measurement: data survives, cert is a guess
                    if pos.basis is Basis.COMPUTATIONAL:
                        value = pos.value
                    else:
                        value = spec.random_elem(rng)
                    retained[idx] = value
                    cert.append(value)
                else:
                    if pos.basis is Basis.FOURIER:
                        cert.append(pos.value)
                    else:
                        cert.append(spec.random_elem(rng))
            self.retained = retained
            return ("delete", self.target, cert)
        return ("end", {"kind": "guess-cheater", "retained": len(self.retained or {})})


@dataclass
class CorruptDeleteRetain:
    """The adaptive attack on the no-signaling compiler.

    Classical slices can never be deleted, so after corrupt-and-delete on
    enough shares the attacker can rebuild every inner classical part.  From
    then on each newly corrupted share is read out (data positions measured
    computationally) before a still-valid certificate is produced from its
    check positions; the experiment sees only honest-looking deletions while
    the attacker keeps the underlying classical shares.

    Against the adaptive threshold scheme the same mindset degenerates into
    measuring everything computationally and hoping the certificate passes,
    which succeeds only with the blind-guess probability.
    """

    structure: AccessStructure
    recovered: Optional[bytes] = None
    _slices: Dict[int, Dict[int, bytes]] = field(default_factory=dict)
    _outer_shares: Dict[int, bytes] = field(default_factory=dict)
    _phase: str = "corrupt"
    _current: int = 0

    def next_action(self, view, info, rng):
        n = self.structure.n
        if self._phase == "corrupt":
            self._current += 1
            if self._current > n:
                return self._finish(rng)
            self._phase = "delete"
            return ("corrupt", self._current)
        if self._phase == "delete":
            self._phase = "corrupt"
            party = self._current
            share = view[party]
            if isinstance(share, NscdShare):
                return ("delete", party, self._delete_nscd(share, rng))
            return ("delete", party, self._delete_acd_retain_all(share, rng))
        return self._finish(rng)

    def _delete_nscd(self, share: NscdShare, rng):
        self._slices[share.index] = dict(share.classical_slice)
        cparts = self._try_inner_cshare(share.index, share)
        if cparts is None:
            # not enough slices yet: delete honestly, information is lost
            return nscd_delete(share, rng)
        cert_bits: list[int] = []
        data_bits: list[int] = []
        for b, (theta, masked) in enumerate(cparts):
            qbits = share.bit_qshare(b)
            s = masked
            for pos, ti in zip(qbits.positions, theta):
                if ti == 1:
                    # check position: honest Hadamard measurement keeps the
                    # certificate valid
                    cert_bits.append(pos.value.to_int())
                else:
                    # data position: computational readout, certificate bit
                    # is arbitrary
                    outcome = pos.value.to_int()
                    s ^= outcome
                    cert_bits.append(int(rng.integers(2)))
            data_bits.append(s)
        self._outer_shares[share.index] = bk2of2._bytes_of(data_bits)
        return tuple(cert_bits)

    def _try_inner_cshare(self, outer_index: int, share: NscdShare):
        holders = set(self._slices)
        if not is_authorized(self.structure, holders):
            return None
        replicas = {j: self._slices[j][outer_index] for j in holders}
        packed = creconstruct(self.structure, replicas)
        if packed is None:
            return None
        return bk2of2.cshare_from_bytes(packed, share.kappa, share.n_bits)

    def _delete_acd_retain_all(self, share: AcdShare, rng):
        outcomes, _ = share.positions.measure_computational(rng)
        return outcomes

    def _finish(self, rng):
        if self._outer_shares and is_authorized(self.structure, self._outer_shares.keys()):
            self.recovered = creconstruct(self.structure, self._outer_shares)
        payload = {
            "kind": "corrupt-delete-retain",
            "recovered": self.recovered.hex() if self.recovered else None,
        }
        return ("end", payload)


# -- block strategies for the no-signaling game -------------------------------


@dataclass
class HonestDeleteBlock:
    """Delete every share in the block honestly."""

    def run_block(self, shares: Dict[int, NscdShare], rng):
        certs = {i: nscd_delete(sh, rng) for i, sh in shares.items()}
        residual = {"deleted": sorted(shares)}
        return certs, residual


@dataclass
class DeleteSubsetBlock:
    """Delete only the listed parties; leave the rest undeleted."""

    to_delete: Sequence[int]

    def run_block(self, shares: Dict[int, NscdShare], rng):
        certs = {}
        for i, sh in shares.items():
            certs[i] = nscd_delete(sh, rng) if i in set(self.to_delete) else None
        residual = {"deleted": sorted(set(self.to_delete) & set(shares))}
        return certs, residual


@dataclass
class NoDeleteBlock:
    """Keep everything, delete nothing."""

    def run_block(self, shares: Dict[int, NscdShare], rng):
        return {i: None for i in shares}, {"deleted": []}


def make_strategy(spec: dict, structure: Optional[AccessStructure] = None):
    """Build a strategy from a config record (CLI experiment files)."""
    kind = spec["kind"]
    if kind == "honest_delete":
        return HonestDelete(tuple(spec["targets"]))
    if kind == "corrupt_all_then_end":
        return CorruptAllThenEnd(int(spec["count"]))
    if kind == "guess_g_cheater":
        return GuessGCheater(int(spec["g"]), int(spec.get("target", 1)))
    if kind == "corrupt_delete_retain":
        if structure is None:
            raise ValueError("corrupt_delete_retain needs an access structure")
        return CorruptDeleteRetain(structure)
    if kind == "scripted":
        return Scripted([tuple(step) for step in spec["events"]])
    raise ValueError(f"unknown strategy kind {kind!r}")
