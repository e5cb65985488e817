"""No-signaling certified deletion for any monotone access structure.

Compiler: classically split the secret into per-party shares, wrap each in
the deletable 2-of-2 scheme, then classically split each resulting classical
part again so every party holds one replica of every instance.  Deleting a
share destroys its quantum part; the winning condition of the no-signaling
game demands a verified deletion inside every authorized set, i.e. the
undeleted complement must be unauthorized.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Sequence

from . import bk2of2
from .access import AccessStructure, is_admissible_partition, is_authorized
from .css import creconstruct, csplit
from .games import Transcript
from .qsim import ProductShare


@dataclass(frozen=True)
class NscdShare:
    """Party i's register: its deletable quantum part plus its replica of
    every outer instance's classical share."""

    index: int
    qshare: ProductShare  # bit instances concatenated, kappa positions each
    classical_slice: Dict[int, bytes]  # outer index j -> csh_{j, i}
    n_bits: int
    kappa: int

    def __post_init__(self):
        if len(self.classical_slice) != self._expected_parties():
            raise ValueError("classical slice must hold one replica per party")
        if len(self.qshare) != self.n_bits * self.kappa:
            raise ValueError("quantum part has the wrong position count")

    def _expected_parties(self) -> int:
        return max(self.classical_slice) if self.classical_slice else 0

    def bit_qshare(self, bit: int) -> ProductShare:
        lo = bit * self.kappa
        return ProductShare(self.qshare.positions[lo : lo + self.kappa])


@dataclass(frozen=True)
class NscdKeys:
    vk: tuple[bk2of2.Bk22MultiKey, ...]
    kappa: int
    n_bits: int


def derive_kappa(lam: int, n: int) -> int:
    return max(lam, n) ** 2


def nscd_split(
    structure: AccessStructure,
    lam: int,
    secret: bytes,
    rng,
    *,
    insecure_kappa_override: Optional[int] = None,
) -> tuple[list[NscdShare], NscdKeys]:
    """Three-layer split: classical shares, deletable wrapping, replica split.

    insecure_kappa_override forces a tiny inner security parameter so
    exhaustive or dense-simulation tests stay tractable; it removes the
    deletion security margin and must never be used outside experiments.
    """
    if lam < 1:
        raise ValueError("security parameter must be >= 1")
    kappa = insecure_kappa_override or derive_kappa(lam, structure.n)
    n = structure.n
    outer = csplit(structure, secret, rng)
    qparts: list[bk2of2.Bk22MultiShare] = []
    keys: list[bk2of2.Bk22MultiKey] = []
    slices: list[Dict[int, bytes]] = [dict() for _ in range(n)]
    n_bits = None
    for i, sh_i in enumerate(outer.shares, start=1):
        qshare, vk_i = bk2of2.bk_split_bytes(kappa, sh_i, rng)
        if n_bits is None:
            n_bits = len(qshare.bits)
        elif n_bits != len(qshare.bits):
            raise ValueError("classical shares of unequal bit length")
        qparts.append(qshare)
        keys.append(vk_i)
        inner = csplit(structure, bk2of2.cshare_to_bytes(qshare), rng)
        for j, csh_ij in enumerate(inner.shares, start=1):
            slices[j - 1][i] = csh_ij
    shares = []
    for i in range(1, n + 1):
        flat = []
        for bit_share in qparts[i - 1].bits:
            flat.extend(bit_share.qshare.positions)
        shares.append(
            NscdShare(
                index=i,
                qshare=ProductShare(tuple(flat)),
                classical_slice=slices[i - 1],
                n_bits=n_bits,
                kappa=kappa,
            )
        )
    return shares, NscdKeys(tuple(keys), kappa, n_bits)


def reconstruct_inner_cshare(
    structure: AccessStructure,
    shares: Dict[int, NscdShare],
    outer_index: int,
) -> Optional[list[tuple[tuple[int, ...], int]]]:
    """Rebuild (theta, masked) pairs of instance outer_index from replicas."""
    replicas = {j: sh.classical_slice[outer_index] for j, sh in shares.items()}
    some = next(iter(shares.values()))
    packed = creconstruct(structure, replicas)
    if packed is None:
        return None
    return bk2of2.cshare_from_bytes(packed, some.kappa, some.n_bits)


def nscd_reconstruct(
    structure: AccessStructure, shares: Dict[int, NscdShare], rng
) -> Optional[bytes]:
    """Secret for an authorized share set, None otherwise."""
    if not is_authorized(structure, shares.keys()):
        return None
    outer_shares: Dict[int, bytes] = {}
    for i, share in shares.items():
        cparts = reconstruct_inner_cshare(structure, shares, i)
        if cparts is None:
            return None
        bits = []
        for b, (theta, masked) in enumerate(cparts):
            qbits = share.bit_qshare(b)
            outcomes, _ = qbits.measure_computational(rng)
            s = masked
            for o, ti in zip(outcomes, theta):
                if ti == 0:
                    s ^= o.to_int()
            bits.append(s)
        outer_shares[i] = bk2of2._bytes_of(bits)
    return creconstruct(structure, outer_shares)


def nscd_delete(share: NscdShare, rng) -> tuple[int, ...]:
    """Hadamard-measure the whole quantum part; the flat bit string is the
    certificate (kappa bits per secret bit instance)."""
    outcomes, _ = share.qshare.measure_fourier(rng)
    return tuple(o.to_int() for o in outcomes)


def nscd_verify(keys: NscdKeys, index: int, cert: Sequence[int]) -> bool:
    if not 1 <= index <= len(keys.vk):
        raise ValueError(f"share index {index} out of range")
    if len(cert) != keys.n_bits * keys.kappa:
        raise ValueError("certificate has the wrong length")
    vk = keys.vk[index - 1]
    for b, key in enumerate(vk.bits):
        chunk = tuple(cert[b * keys.kappa : (b + 1) * keys.kappa])
        if not bk2of2.bk_verify(key, chunk):
            return False
    return True


def run_nscd_game(
    structure: AccessStructure,
    partition: Sequence[Sequence[int]],
    adversaries: Sequence,
    secret: bytes,
    lam: int,
    rng,
    *,
    insecure_kappa_override: Optional[int] = None,
) -> Transcript:
    """No-signaling experiment: one adversary per partition block, blocks
    never exchange data (each strategy only ever receives its own block).

    The run wins (outputs the residual registers) iff every authorized set
    contains a verified-deleted share, i.e. the complement of the verified
    deletions is unauthorized; otherwise the output is None.
    """
    if len(partition) != len(adversaries):
        raise ValueError("need exactly one adversary per block")
    if not is_admissible_partition(structure, partition):
        raise ValueError("partition has an authorized block; game undefined")
    events: list[dict] = []
    shares, keys = nscd_split(
        structure, lam, secret, rng, insecure_kappa_override=insecure_kappa_override
    )
    events.append({"type": "split", "parties": structure.n, "kappa": keys.kappa})
    verified: set[int] = set()
    residuals = []
    for block, adversary in zip(partition, adversaries):
        block_set = sorted(block)
        events.append({"type": "corrupt", "block": block_set})
        block_shares = {i: shares[i - 1] for i in block_set}
        certs, residual = adversary.run_block(block_shares, rng)
        residuals.append(residual)
        for i in block_set:
            cert = certs.get(i)
            if cert is None:
                events.append({"type": "delete", "party": i, "skipped": True})
                continue
            ok = nscd_verify(keys, i, cert)
            events.append({"type": "verify", "party": i, "accepted": ok})
            if ok:
                verified.add(i)
    undeleted = set(range(1, structure.n + 1)) - verified
    if is_authorized(structure, undeleted):
        events.append({"type": "abort", "reason": "undeleted-set-authorized"})
        return Transcript(events, output=None)
    events.append({"type": "output"})
    return Transcript(events, output={"registers": residuals})
