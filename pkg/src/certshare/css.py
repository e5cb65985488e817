"""Classical secret sharing: Shamir for thresholds, replicated for general
monotone structures, plus the privacy simulator for unauthorized sets.

Secrets are byte strings processed block-wise over GF(2^8).  Replicated
sharing hands each party the additive pads of every maximal unauthorized set
it does not belong to; an authorized set jointly sees all pads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional

from .access import AccessStructure, is_authorized, maximal_unauthorized
from .gf import FieldSpec

SHAMIR_FIELD = FieldSpec.of(2, 8)

SCHEME_SHAMIR = "shamir"
SCHEME_REPLICATED = "replicated"


@dataclass(frozen=True)
class ClassicalShareSet:
    structure: AccessStructure
    shares: tuple[bytes, ...]
    scheme_tag: str

    def __post_init__(self):
        if len(self.shares) != self.structure.n:
            raise ValueError("need exactly one share per party")

    def share_map(self) -> Dict[int, bytes]:
        return {i + 1: s for i, s in enumerate(self.shares)}


def _scheme_for(structure: AccessStructure) -> str:
    return SCHEME_SHAMIR if structure.is_threshold else SCHEME_REPLICATED


def _shamir_split(k: int, n: int, secret: bytes, rng) -> list[bytes]:
    spec = SHAMIR_FIELD
    shares = [bytearray() for _ in range(n)]
    for byte in secret:
        # random degree-(k-1) polynomial with f(0) = byte, evaluated at 1..n
        coeffs = [spec.elem(byte)] + [spec.random_elem(rng) for _ in range(k - 1)]
        for i in range(1, n + 1):
            x = spec.elem(i)
            acc = spec.zero()
            for c in reversed(coeffs):
                acc = acc * x + c
            shares[i - 1].append(acc.to_int())
    return [bytes(s) for s in shares]


def _shamir_reconstruct(k: int, provided: Dict[int, bytes]) -> Optional[bytes]:
    if len(provided) < k:
        return None
    spec = SHAMIR_FIELD
    indices = sorted(provided)[:k]
    lengths = {len(provided[i]) for i in indices}
    if len(lengths) != 1:
        raise ValueError("shares have inconsistent lengths")
    length = lengths.pop()
    # Lagrange weights at 0 for the chosen evaluation points.
    weights = []
    for i in indices:
        xi = spec.elem(i)
        num = spec.one()
        den = spec.one()
        for j in indices:
            if j == i:
                continue
            xj = spec.elem(j)
            num = num * (spec.zero() - xj)
            den = den * (xi - xj)
        weights.append(num / den)
    out = bytearray()
    for pos in range(length):
        acc = spec.zero()
        for w, i in zip(weights, indices):
            acc = acc + w * spec.elem(provided[i][pos])
        out.append(acc.to_int())
    return bytes(out)


def _replica_sets(structure: AccessStructure) -> list[frozenset[int]]:
    return sorted(maximal_unauthorized(structure), key=lambda s: sorted(s))


def _xor(a: bytes, b: bytes) -> bytes:
    return bytes(x ^ y for x, y in zip(a, b))


def _encode_replicated(pads: Dict[int, bytes], pad_count: int, length: int) -> bytes:
    # Per-party share: for every replica index either a presence byte + pad
    # bytes, or an absence byte.  Fixed layout keeps shares self-describing.
    out = bytearray([pad_count, length])
    for j in range(pad_count):
        if j in pads:
            out.append(1)
            out.extend(pads[j])
        else:
            out.append(0)
    return bytes(out)


def _decode_replicated(share: bytes) -> Dict[int, bytes]:
    pad_count, length = share[0], share[1]
    pads: Dict[int, bytes] = {}
    pos = 2
    for j in range(pad_count):
        flag = share[pos]
        pos += 1
        if flag:
            pads[j] = bytes(share[pos : pos + length])
            pos += length
    return pads


def _replicated_split(structure: AccessStructure, secret: bytes, rng) -> list[bytes]:
    replicas = _replica_sets(structure)
    if not replicas:
        # every nonempty set is authorized; hand the secret to everyone
        return [
            _encode_replicated({0: secret}, 1, len(secret))
            for _ in structure.parties()
        ]
    pads = [bytes(rng.integers(0, 256, len(secret)).tolist()) for _ in replicas[:-1]]
    last = secret
    for p in pads:
        last = _xor(last, p)
    pads.append(last)
    shares = []
    for party in structure.parties():
        visible = {j: pads[j] for j, t in enumerate(replicas) if party not in t}
        shares.append(_encode_replicated(visible, len(replicas), len(secret)))
    return shares


def _replicated_reconstruct(
    structure: AccessStructure, provided: Dict[int, bytes]
) -> Optional[bytes]:
    collected: Dict[int, bytes] = {}
    pad_count = None
    length = None
    for share in provided.values():
        pad_count, length = share[0], share[1]
        collected.update(_decode_replicated(share))
    if pad_count is None or len(collected) != pad_count:
        return None
    out = bytes(length)
    for j in range(pad_count):
        out = _xor(out, collected[j])
    return out


def csplit(structure: AccessStructure, secret: bytes, rng) -> ClassicalShareSet:
    """Split a byte-string secret; the scheme follows the structure kind."""
    if not secret:
        raise ValueError("secret must be nonempty")
    if structure.is_threshold:
        shares = _shamir_split(structure.k, structure.n, secret, rng)
        tag = SCHEME_SHAMIR
    else:
        shares = _replicated_split(structure, secret, rng)
        tag = SCHEME_REPLICATED
    return ClassicalShareSet(structure, tuple(shares), tag)


def creconstruct(
    structure: AccessStructure, provided: Dict[int, bytes]
) -> Optional[bytes]:
    """Secret for an authorized index set, None otherwise."""
    for i in provided:
        if not 1 <= i <= structure.n:
            raise ValueError(f"party index {i} outside 1..{structure.n}")
    if not is_authorized(structure, provided.keys()):
        return None
    if structure.is_threshold:
        return _shamir_reconstruct(structure.k, provided)
    return _replicated_reconstruct(structure, provided)


def csim(
    structure: AccessStructure, parties: Iterable[int], length: int, rng
) -> Dict[int, bytes]:
    """Sample shares for an unauthorized set, matching the csplit marginal.

    Shamir marginals on fewer than k points are independent uniform field
    elements; replicated marginals are uniform pads consistent across the
    requesting parties (at least one pad stays hidden, so all visible ones
    are free).
    """
    subset = structure._check_subset(parties)
    if is_authorized(structure, subset):
        raise ValueError("simulator is only defined for unauthorized sets")
    if structure.is_threshold:
        return {
            i: bytes(rng.integers(0, 256, length).tolist()) for i in sorted(subset)
        }
    replicas = _replica_sets(structure)
    pads = [bytes(rng.integers(0, 256, length).tolist()) for _ in replicas]
    out = {}
    for party in sorted(subset):
        visible = {j: pads[j] for j, t in enumerate(replicas) if party not in t}
        out[party] = _encode_replicated(visible, len(replicas), length)
    return out
