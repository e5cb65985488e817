"""Two-tier quantum simulation over field-valued qudits.

Honest protocol runs use ProductShare, a per-position record of (basis,
value) that never materializes amplitudes, so realistic share sizes stay
cheap.  Adversarial and extractor experiments use DenseState, a complex
amplitude vector over a register layout, with QFTs over Z_p^k, joint
measurements, coherent linear maps, partial trace, and the deletion
predicate projector.

Convention: the Fourier encoding of value r is QFT|r>, and measuring "in the
Fourier basis" projects onto {QFT|r>}, i.e. applies the inverse QFT before a
computational measurement.  For p = 2 the QFT is a Hadamard layer and the
two directions coincide.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Optional, Sequence

import numpy as np

from .gf import FieldElem, FieldMatrix, FieldSpec

DEFAULT_DIM_CAP = 1 << 22
NORM_TOL = 1e-12
PHYSICS_TOL = 1e-9


class Basis(enum.Enum):
    COMPUTATIONAL = "computational"
    FOURIER = "fourier"


class LayoutError(ValueError):
    """A register name or dimension did not match the state's layout."""


@dataclass(frozen=True)
class Register:
    name: str
    n_qudits: int
    spec: FieldSpec


@dataclass(frozen=True)
class QuditLayout:
    registers: tuple[Register, ...]
    cap: int = DEFAULT_DIM_CAP

    def __post_init__(self):
        names = [r.name for r in self.registers]
        if len(set(names)) != len(names):
            raise LayoutError("register names must be unique")
        if self.total_dim > self.cap:
            raise LayoutError(
                f"dense dimension {self.total_dim} exceeds cap {self.cap}"
            )

    @staticmethod
    def of(*regs: tuple[str, int, FieldSpec], cap: int = DEFAULT_DIM_CAP) -> "QuditLayout":
        return QuditLayout(tuple(Register(*r) for r in regs), cap)

    @property
    def total_dim(self) -> int:
        d = 1
        for r in self.registers:
            d *= r.spec.order**r.n_qudits
        return d

    @property
    def dims(self) -> tuple[int, ...]:
        out = []
        for r in self.registers:
            out.extend([r.spec.order] * r.n_qudits)
        return tuple(out)

    def register(self, name: str) -> Register:
        for r in self.registers:
            if r.name == name:
                return r
        raise LayoutError(f"no register named {name!r}")

    def axes(self, name: str) -> list[int]:
        start = 0
        for r in self.registers:
            if r.name == name:
                return list(range(start, start + r.n_qudits))
            start += r.n_qudits
        raise LayoutError(f"no register named {name!r}")

    def extended(self, name: str, n_qudits: int, spec: FieldSpec) -> "QuditLayout":
        if any(r.name == name for r in self.registers):
            raise LayoutError(f"register {name!r} already exists")
        return QuditLayout(self.registers + (Register(name, n_qudits, spec),), self.cap)

    def without(self, keep: Sequence[str]) -> "QuditLayout":
        return QuditLayout(
            tuple(r for r in self.registers if r.name in set(keep)), self.cap
        )


@lru_cache(maxsize=None)
def _qft_matrix(spec: FieldSpec) -> np.ndarray:
    """k-fold tensor of the Z_p QFT: F[x, y] = p^{-k/2} w_p^{(x . y)_{Z_p}}."""
    p, k, q = spec.p, spec.k, spec.order
    omega = np.exp(2j * np.pi / p)
    digits = np.zeros((q, k), dtype=np.int64)
    for v in range(q):
        digits[v] = spec._unpack(v)
    phase = digits @ digits.T % p  # (x . y) mod p via coefficient vectors
    return omega**phase / math.sqrt(q)


@dataclass(frozen=True)
class DenseState:
    layout: QuditLayout
    amplitudes: np.ndarray
    tolerance: float = NORM_TOL

    def __post_init__(self):
        if self.amplitudes.shape != (self.layout.total_dim,):
            raise LayoutError("amplitude vector length must match the layout")
        norm = np.linalg.norm(self.amplitudes)
        if abs(norm - 1.0) > max(self.tolerance, 1e-9):
            raise ValueError(f"state norm {norm} is not 1 within tolerance")

    @staticmethod
    def from_amplitudes(layout: QuditLayout, amps: np.ndarray, normalize: bool = False) -> "DenseState":
        vec = np.asarray(amps, dtype=np.complex128).reshape(-1)
        if normalize:
            norm = np.linalg.norm(vec)
            if norm == 0:
                raise ValueError("cannot normalize the zero vector")
            vec = vec / norm
        return DenseState(layout, vec)

    @staticmethod
    def basis_state(layout: QuditLayout, values: Dict[str, Sequence[FieldElem]]) -> "DenseState":
        """Computational basis state; unspecified registers sit at |0...0>."""
        idx = 0
        for reg in layout.registers:
            vals = values.get(reg.name)
            if vals is None:
                vals = [reg.spec.zero()] * reg.n_qudits
            if len(vals) != reg.n_qudits:
                raise LayoutError(f"register {reg.name!r} needs {reg.n_qudits} values")
            for v in vals:
                if v.spec != reg.spec:
                    raise LayoutError("value field does not match register field")
                idx = idx * reg.spec.order + v.to_int()
        amps = np.zeros(layout.total_dim, dtype=np.complex128)
        amps[idx] = 1.0
        return DenseState(layout, amps)

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.layout.dims)


@dataclass(frozen=True)
class DensityMatrix:
    layout: QuditLayout
    matrix: np.ndarray
    tolerance: float = PHYSICS_TOL

    def __post_init__(self):
        d = self.layout.total_dim
        if self.matrix.shape != (d, d):
            raise LayoutError("matrix shape must match the layout dimension")
        if not np.allclose(self.matrix, self.matrix.conj().T, atol=self.tolerance):
            raise ValueError("density matrix must be Hermitian")
        if abs(np.trace(self.matrix).real - 1.0) > self.tolerance:
            raise ValueError("density matrix must have unit trace")
        if np.linalg.eigvalsh(self.matrix).min() < -1e-9:
            raise ValueError("density matrix must be positive semidefinite")


def _apply_single_qudit(tensor: np.ndarray, matrix: np.ndarray, axis: int) -> np.ndarray:
    moved = np.moveaxis(tensor, axis, 0)
    shape = moved.shape
    applied = matrix @ moved.reshape(shape[0], -1)
    return np.moveaxis(applied.reshape(shape), 0, axis)


def qft_per_subfield(state: DenseState, register: str, *, inverse: bool = False) -> DenseState:
    """Apply the QFT over Z_p^k independently to each qudit of the register.

    For p = 2 this is a Hadamard on each underlying qubit.
    """
    reg = state.layout.register(register)
    matrix = _qft_matrix(reg.spec)
    if inverse:
        matrix = matrix.conj().T
    tensor = state.tensor()
    for axis in state.layout.axes(register):
        tensor = _apply_single_qudit(tensor, matrix, axis)
    return DenseState(state.layout, tensor.reshape(-1))


def _register_probabilities(state: DenseState, register: str) -> np.ndarray:
    axes = state.layout.axes(register)
    other = [a for a in range(len(state.layout.dims)) if a not in axes]
    tensor = state.tensor()
    probs = np.abs(np.transpose(tensor, axes + other)) ** 2
    reg_dim = int(np.prod([state.layout.dims[a] for a in axes]))
    return probs.reshape(reg_dim, -1).sum(axis=1)


def _collapse(state: DenseState, register: str, flat_value: int) -> DenseState:
    axes = state.layout.axes(register)
    dims = [state.layout.dims[a] for a in axes]
    tensor = state.tensor().copy()
    index: list = [slice(None)] * len(state.layout.dims)
    digits = []
    rem = flat_value
    for d in reversed(dims):
        digits.append(rem % d)
        rem //= d
    digits.reverse()
    for a, v in zip(axes, digits):
        index[a] = v
    mask = np.zeros_like(tensor)
    mask[tuple(index)] = tensor[tuple(index)]
    norm = np.linalg.norm(mask)
    if norm < 1e-15:
        raise ValueError("collapse onto a zero-probability branch")
    return DenseState(state.layout, (mask / norm).reshape(-1))


def measure_computational(
    state: DenseState, register: str, rng
) -> tuple[list[FieldElem], DenseState]:
    """Born-rule joint measurement of a register in the computational basis."""
    reg = state.layout.register(register)
    probs = _register_probabilities(state, register)
    probs = probs / probs.sum()
    flat = int(rng.choice(len(probs), p=probs))
    collapsed = _collapse(state, register, flat)
    # decode mixed-radix (uniform radix q), first qudit most significant
    q = reg.spec.order
    digits = []
    rem = flat
    for _ in range(reg.n_qudits):
        digits.append(rem % q)
        rem //= q
    digits.reverse()
    values = [reg.spec.elem(d) for d in digits]
    return values, collapsed


def measure_fourier(
    state: DenseState, register: str, rng
) -> tuple[list[FieldElem], DenseState]:
    """Measure in the Fourier basis {QFT|r>}; the collapsed state keeps the
    original frame, i.e. the register ends in the Fourier eigenstate of the
    reported outcome."""
    rotated = qft_per_subfield(state, register, inverse=True)
    values, collapsed = measure_computational(rotated, register, rng)
    return values, qft_per_subfield(collapsed, register)


def _grouped(state: DenseState, register: str) -> tuple[np.ndarray, list[int], int]:
    """View amplitudes as (rest, reg_dim) with the register axes last."""
    axes = state.layout.axes(register)
    n_axes = len(state.layout.dims)
    other = [a for a in range(n_axes) if a not in axes]
    perm = other + axes
    tensor = np.transpose(state.tensor(), perm)
    reg_dim = int(np.prod([state.layout.dims[a] for a in axes]))
    return tensor.reshape(-1, reg_dim), perm, reg_dim


def _ungroup(
    grouped: np.ndarray, layout: QuditLayout, perm: list[int]
) -> np.ndarray:
    dims = layout.dims
    shaped = grouped.reshape([dims[a] for a in perm])
    inv = np.argsort(perm)
    return np.transpose(shaped, inv).reshape(-1)


def copy_isometry(
    state: DenseState, src: str, dst: str, basis: Basis
) -> DenseState:
    """Append a fresh register and copy src into it in the given basis.

    Computational: |x>|0> -> |x>|x> extended linearly (addition into the
    fresh register).  Fourier: the same map conjugated by QFTs, so Fourier
    values are replicated instead.
    """
    if basis is Basis.FOURIER:
        rotated = qft_per_subfield(state, src, inverse=True)
        copied = copy_isometry(rotated, src, dst, Basis.COMPUTATIONAL)
        copied = qft_per_subfield(copied, src)
        return qft_per_subfield(copied, dst)
    reg = state.layout.register(src)
    new_layout = state.layout.extended(dst, reg.n_qudits, reg.spec)
    grouped, perm, reg_dim = _grouped(state, src)
    out = np.zeros((grouped.shape[0], reg_dim, reg_dim), dtype=np.complex128)
    idx = np.arange(reg_dim)
    out[:, idx, idx] = grouped
    # src axes were moved to the end; dst sits after them in the new layout
    n_old = len(state.layout.dims)
    reg_axes = state.layout.axes(src)
    other = [a for a in range(n_old) if a not in reg_axes]
    dims = [state.layout.dims[a] for a in other + reg_axes] + [reg.spec.order] * reg.n_qudits
    shaped = out.reshape(dims)
    inv = list(np.argsort(other + reg_axes)) + list(range(n_old, n_old + reg.n_qudits))
    return DenseState(new_layout, np.transpose(shaped, inv).reshape(-1))


_LINEAR_MAP_CACHE: dict = {}


def _linear_map_lookup(matrix: FieldMatrix, n_src: int) -> np.ndarray:
    key = (matrix.spec, matrix.entries, n_src)
    cached = _LINEAR_MAP_CACHE.get(key)
    if cached is not None:
        return cached
    spec = matrix.spec
    q = spec.order
    src_dim = q**n_src
    rows = [[e.to_int() for e in matrix.row(i)] for i in range(matrix.rows)]
    out = np.zeros(src_dim, dtype=np.int64)
    digits = np.zeros(n_src, dtype=np.int64)
    for s in range(src_dim):
        rem = s
        for j in range(n_src - 1, -1, -1):
            digits[j] = rem % q
            rem //= q
        y = 0
        for row in rows:
            acc = 0
            for j in range(n_src):
                xj = digits[j]
                if xj and row[j]:
                    acc = spec._add_packed(acc, spec._mul_packed(row[j], int(xj)))
            y = y * q + acc
        out[s] = y
    _LINEAR_MAP_CACHE[key] = out
    return out


def apply_linear_map(
    state: DenseState, matrix: FieldMatrix, src: str, dst: str
) -> DenseState:
    """Coherently write the field-linear image of src into a fresh register:
    |x> -> |x> |Mx>, with M applied over the register's field."""
    reg = state.layout.register(src)
    if reg.spec != matrix.spec:
        raise LayoutError("matrix field does not match the source register")
    if matrix.cols != reg.n_qudits:
        raise LayoutError("matrix width must equal the source qudit count")
    new_layout = state.layout.extended(dst, matrix.rows, reg.spec)
    grouped, _, reg_dim = _grouped(state, src)
    dst_dim = reg.spec.order**matrix.rows
    lookup = _linear_map_lookup(matrix, reg.n_qudits)
    out = np.zeros((grouped.shape[0], reg_dim, dst_dim), dtype=np.complex128)
    idx = np.arange(reg_dim)
    out[:, idx, lookup] = grouped
    n_old = len(state.layout.dims)
    reg_axes = state.layout.axes(src)
    other = [a for a in range(n_old) if a not in reg_axes]
    dims = [state.layout.dims[a] for a in other + reg_axes] + [reg.spec.order] * matrix.rows
    shaped = out.reshape(dims)
    inv = list(np.argsort(other + reg_axes)) + list(range(n_old, n_old + matrix.rows))
    return DenseState(new_layout, np.transpose(shaped, inv).reshape(-1))


def partial_trace(state, keep: Sequence[str]) -> DensityMatrix:
    """Trace out every register not named in keep (order follows the layout)."""
    if not keep:
        raise LayoutError("must keep at least one register")
    layout = state.layout
    keep_set = set(keep)
    for name in keep_set:
        layout.register(name)
    keep_axes: list[int] = []
    drop_axes: list[int] = []
    for reg in layout.registers:
        axes = layout.axes(reg.name)
        (keep_axes if reg.name in keep_set else drop_axes).extend(axes)
    dims = layout.dims
    k_dim = int(np.prod([dims[a] for a in keep_axes])) if keep_axes else 1
    new_layout = layout.without(list(keep_set))
    if isinstance(state, DenseState):
        tensor = np.transpose(state.tensor(), keep_axes + drop_axes)
        g = tensor.reshape(k_dim, -1)
        rho = g @ g.conj().T
        return DensityMatrix(new_layout, rho)
    if isinstance(state, DensityMatrix):
        n = len(dims)
        perm = keep_axes + drop_axes
        full = state.matrix.reshape(dims + dims)
        full = np.transpose(full, perm + [a + n for a in perm])
        d_dim = int(np.prod([dims[a] for a in drop_axes])) if drop_axes else 1
        full = full.reshape(k_dim, d_dim, k_dim, d_dim)
        rho = np.einsum("arbr->ab", full)
        return DensityMatrix(new_layout, rho)
    raise TypeError("expected DenseState or DensityMatrix")


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    """Half the trace norm of (a - b); in [0, 1] for density matrices."""
    if a.layout.dims != b.layout.dims:
        raise LayoutError("density matrices live on different layouts")
    eigs = np.linalg.eigvalsh(a.matrix - b.matrix)
    return float(0.5 * np.abs(eigs).sum())


def dm_tensor(a: DensityMatrix, b: DensityMatrix) -> DensityMatrix:
    layout = QuditLayout(a.layout.registers + b.layout.registers,
                         max(a.layout.cap, b.layout.cap))
    return DensityMatrix(layout, np.kron(a.matrix, b.matrix))


def uniform_density(layout: QuditLayout) -> DensityMatrix:
    d = layout.total_dim
    return DensityMatrix(layout, np.eye(d, dtype=np.complex128) / d)


def _hamming_mask(reg: Register, cert_values: Sequence[int], threshold: float) -> np.ndarray:
    """Boolean mask over the register subspace: distance(v, cert) < threshold,
    Hamming distance counted per qudit over the register's field."""
    q = reg.spec.order
    dist = np.zeros((q,) * reg.n_qudits, dtype=np.int64)
    for axis, cert in enumerate(cert_values):
        shape = [1] * reg.n_qudits
        shape[axis] = q
        dist = dist + (np.arange(q) != cert).astype(np.int64).reshape(shape)
    return (dist < threshold).reshape(-1)


def deletion_predicate(
    state: DenseState,
    register: str,
    cert_data: Sequence[FieldElem],
    ell: int,
    rng,
) -> tuple[bool, DenseState, float]:
    """Projective test that a register was (almost) fully deleted.

    Measures {P, I-P} where P projects onto Fourier encodings of vectors
    within field-Hamming distance < ell/2 of the certificate's data part:
    rotate out of the Fourier basis, keep amplitudes inside the Hamming ball,
    rotate back.  Returns the sampled branch, the collapsed state, and the
    exact acceptance probability.
    """
    reg = state.layout.register(register)
    if len(cert_data) != reg.n_qudits:
        raise LayoutError("certificate length must match the register size")
    for c in cert_data:
        if c.spec != reg.spec:
            raise LayoutError("certificate field does not match the register")
    rotated = qft_per_subfield(state, register, inverse=True)
    grouped, perm, reg_dim = _grouped(rotated, register)
    mask = _hamming_mask(reg, [c.to_int() for c in cert_data], ell / 2)
    weights = (np.abs(grouped) ** 2).sum(axis=0)
    p_accept = float(weights[mask].sum())
    p_accept = min(max(p_accept, 0.0), 1.0)
    accept = bool(rng.random() < p_accept)
    selected = mask if accept else ~mask
    projected = grouped * selected[None, :]
    norm = np.linalg.norm(projected)
    if norm < 1e-15:
        raise ValueError("measurement selected a zero-probability branch")
    flat = _ungroup(projected / norm, rotated.layout, perm)
    collapsed = DenseState(rotated.layout, flat)
    return accept, qft_per_subfield(collapsed, register), p_accept


# -- product-state representation --------------------------------------------


@dataclass(frozen=True)
class ProductPosition:
    basis: Basis
    value: FieldElem


@dataclass(frozen=True)
class ProductShare:
    """Unentangled share: one (basis, value) pair per qudit position."""

    positions: tuple[ProductPosition, ...]

    def __post_init__(self):
        if not self.positions:
            raise ValueError("a share needs at least one position")
        specs = {p.value.spec for p in self.positions}
        if len(specs) != 1:
            raise ValueError("all positions must share one field")

    @staticmethod
    def of(pairs: Iterable[tuple[Basis, FieldElem]]) -> "ProductShare":
        return ProductShare(tuple(ProductPosition(b, v) for b, v in pairs))

    @property
    def spec(self) -> FieldSpec:
        return self.positions[0].value.spec

    def __len__(self) -> int:
        return len(self.positions)

    def measure_computational(self, rng) -> tuple[list[FieldElem], "ProductShare"]:
        """Measure every position computationally: stored values come out of
        computational positions, Fourier positions collapse uniformly."""
        spec = self.spec
        outcomes = []
        for pos in self.positions:
            if pos.basis is Basis.COMPUTATIONAL:
                outcomes.append(pos.value)
            else:
                outcomes.append(spec.random_elem(rng))
        collapsed = ProductShare.of([(Basis.COMPUTATIONAL, v) for v in outcomes])
        return outcomes, collapsed

    def measure_fourier(self, rng) -> tuple[list[FieldElem], "ProductShare"]:
        """Measure every position in the Fourier basis; dual of the above."""
        spec = self.spec
        outcomes = []
        for pos in self.positions:
            if pos.basis is Basis.FOURIER:
                outcomes.append(pos.value)
            else:
                outcomes.append(spec.random_elem(rng))
        collapsed = ProductShare.of([(Basis.FOURIER, v) for v in outcomes])
        return outcomes, collapsed

    def to_dense(self, register: str = "S", cap: int = DEFAULT_DIM_CAP) -> DenseState:
        """One-way embedding into the dense simulator."""
        spec = self.spec
        layout = QuditLayout.of((register, len(self.positions), spec), cap=cap)
        qft = _qft_matrix(spec)
        amps = np.ones(1, dtype=np.complex128)
        for pos in self.positions:
            if pos.basis is Basis.COMPUTATIONAL:
                column = np.zeros(spec.order, dtype=np.complex128)
                column[pos.value.to_int()] = 1.0
            else:
                column = qft[:, pos.value.to_int()]
            amps = np.kron(amps, column)
        return DenseState(layout, amps)
