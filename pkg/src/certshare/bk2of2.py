"""Two-out-of-two secret sharing with certified deletion (conjugate coding).

A single-bit secret s splits into a quantum share H^theta|x> and a classical
share (theta, s XOR parity of x over the data positions).  Deleting means
measuring every position in the Hadamard basis; the certificate is checked
against x at the positions where theta_i = 1.  Multi-bit secrets run one
independent instance per bit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import FieldSpec
from .qsim import Basis, ProductShare

GF2 = FieldSpec.of(2, 1)


@dataclass(frozen=True)
class Bk22Key:
    x: tuple[int, ...]
    theta: tuple[int, ...]


@dataclass(frozen=True)
class Bk22Share:
    """Full split record: deletable quantum part, classical part, dealer key.

    Serialization keeps vk separate; it rides along here so one object
    carries a complete instance.  masked = s XOR parity of x over the data
    positions (theta_i = 0), and qshare position i is Fourier iff theta_i = 1.
    """

    qshare: ProductShare
    theta: tuple[int, ...]
    masked: int
    vk: Bk22Key

    @property
    def security(self) -> int:
        return len(self.theta)

    def cshare(self) -> tuple[tuple[int, ...], int]:
        return (self.theta, self.masked)


def _sample_theta(lam: int, rng) -> tuple[int, ...]:
    # all-ones would leave no data position; resample it away
    while True:
        theta = tuple(int(b) for b in rng.integers(0, 2, lam))
        if not all(theta):
            return theta


def bk_split_with(x: tuple[int, ...], theta: tuple[int, ...], s: int) -> Bk22Share:
    """Deterministic split from explicit randomness (exhaustive tests)."""
    if len(x) != len(theta) or all(theta):
        raise ValueError("x/theta must have equal length, theta not all-ones")
    masked = s
    for xi, ti in zip(x, theta):
        if ti == 0:
            masked ^= xi
    qshare = ProductShare.of(
        [
            (Basis.FOURIER if ti else Basis.COMPUTATIONAL, GF2.elem(xi))
            for xi, ti in zip(x, theta)
        ]
    )
    return Bk22Share(qshare, theta, masked, Bk22Key(tuple(x), theta))


def bk_split(lam: int, s: int, rng) -> Bk22Share:
    """Split a single bit at security parameter lam >= 1."""
    if lam < 1:
        raise ValueError("security parameter must be >= 1")
    if s not in (0, 1):
        raise ValueError("secret must be a bit")
    theta = _sample_theta(lam, rng)
    x = tuple(int(b) for b in rng.integers(0, 2, lam))
    return bk_split_with(x, theta, s)


def bk_reconstruct(share: Bk22Share, rng) -> int:
    """Measure data positions computationally and unmask the secret."""
    outcomes, _ = share.qshare.measure_computational(rng)
    s = share.masked
    for o, ti in zip(outcomes, share.theta):
        if ti == 0:
            s ^= o.to_int()
    return s


def bk_delete(qshare: ProductShare, rng) -> tuple[int, ...]:
    """Hadamard-basis measurement of every position."""
    outcomes, _ = qshare.measure_fourier(rng)
    return tuple(o.to_int() for o in outcomes)


def bk_verify(vk: Bk22Key, cert: tuple[int, ...]) -> bool:
    """Accept iff the certificate matches x at every check position."""
    if len(cert) != len(vk.x):
        raise ValueError("certificate length does not match the key")
    return all(c == xi for c, xi, ti in zip(cert, vk.x, vk.theta) if ti == 1)


# -- multi-bit wrapper (independent parallel instances) -----------------------


@dataclass(frozen=True)
class Bk22MultiShare:
    bits: tuple[Bk22Share, ...]

    @property
    def security(self) -> int:
        return self.bits[0].security


@dataclass(frozen=True)
class Bk22MultiKey:
    bits: tuple[Bk22Key, ...]


def bk_split_bytes(lam: int, secret: bytes, rng) -> tuple[Bk22MultiShare, Bk22MultiKey]:
    shares = []
    keys = []
    for bit in _bits_of(secret):
        sh = bk_split(lam, bit, rng)
        shares.append(sh)
        keys.append(sh.vk)
    return Bk22MultiShare(tuple(shares)), Bk22MultiKey(tuple(keys))


def bk_reconstruct_bytes(share: Bk22MultiShare, rng) -> bytes:
    return _bytes_of([bk_reconstruct(sh, rng) for sh in share.bits])


def bk_delete_multi(share: Bk22MultiShare, rng) -> tuple[tuple[int, ...], ...]:
    return tuple(bk_delete(sh.qshare, rng) for sh in share.bits)


def bk_verify_multi(vk: Bk22MultiKey, cert: tuple[tuple[int, ...], ...]) -> bool:
    if len(cert) != len(vk.bits):
        raise ValueError("certificate bit-count does not match the key")
    return all(bk_verify(k, c) for k, c in zip(vk.bits, cert))


def cshare_to_bytes(share: Bk22MultiShare) -> bytes:
    """Pack the classical parts (theta, masked) of every bit instance."""
    bits: list[int] = []
    for sh in share.bits:
        bits.extend(sh.theta)
        bits.append(sh.masked)
    return _pack_bits(bits)


def cshare_from_bytes(data: bytes, lam: int, n_bits: int) -> list[tuple[tuple[int, ...], int]]:
    """Unpack per-bit (theta, masked) pairs; needs the sizing context."""
    bits = _unpack_bits(data, (lam + 1) * n_bits)
    out = []
    for i in range(n_bits):
        chunk = bits[i * (lam + 1) : (i + 1) * (lam + 1)]
        out.append((tuple(chunk[:lam]), chunk[lam]))
    return out


def _bits_of(data: bytes) -> list[int]:
    return [(byte >> i) & 1 for byte in data for i in range(8)]


def _bytes_of(bits) -> bytes:
    out = bytearray()
    for pos in range(0, len(bits), 8):
        byte = 0
        for i, b in enumerate(bits[pos : pos + 8]):
            byte |= (b & 1) << i
        out.append(byte)
    return bytes(out)


def _pack_bits(bits) -> bytes:
    return _bytes_of(bits)


def _unpack_bits(data: bytes, count: int) -> list[int]:
    bits = _bits_of(data)
    if len(bits) < count:
        raise ValueError("bit string too short")
    return bits[:count]
