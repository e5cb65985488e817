"""Numerical verification of high-rate seedless extraction from quantum
sources of low Fourier-weight entropy.

An instance fixes a field F = GF(p^k), a source register X of M F-qudits, an
output size m, and a matrix R in F^{m x M} whose every m columns are linearly
independent.  Sources are superpositions of shifted low-weight vectors
|u + w> with side information attached to u.  Running the extractor (QFT per
Z_p sub-qudit, coherent multiplication by R, trace out X) must leave the
output register exactly uniform and unentangled from the side register.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .gf import FieldElem, FieldMatrix, FieldSpec, check_column_independence, interpolation_matrix
from .qsim import (
    DenseState,
    DensityMatrix,
    QuditLayout,
    apply_linear_map,
    dm_tensor,
    partial_trace,
    qft_per_subfield,
    trace_distance,
    uniform_density,
)

SIDE_REGISTER = "A"
SOURCE_REGISTER = "X"
OUTPUT_REGISTER = "Y"


def max_source_weight(m_len: int, out_len: int) -> int:
    """Largest integer Hamming weight strictly below (M - m)/2."""
    gap = m_len - out_len
    return max((gap - 1) // 2, 0)


def hamming_weight(vector: Sequence[FieldElem]) -> int:
    return sum(0 if v.is_zero else 1 for v in vector)


@dataclass(frozen=True)
class ExtractorInstance:
    field: FieldSpec
    source_len: int  # M
    output_len: int  # m
    matrix: FieldMatrix  # m x M
    offset: tuple[FieldElem, ...]  # w
    side_dim: int = 4
    dim_cap: int = 1 << 24

    def __post_init__(self):
        if self.matrix.rows != self.output_len or self.matrix.cols != self.source_len:
            raise ValueError("matrix shape must be output_len x source_len")
        if len(self.offset) != self.source_len:
            raise ValueError("offset must have source length")
        if not check_column_independence(self.matrix, self.output_len):
            raise ValueError("every m columns of the matrix must be independent")

    @property
    def weight_bound(self) -> int:
        return max_source_weight(self.source_len, self.output_len)

    def layout(self) -> QuditLayout:
        side_spec = FieldSpec.of_order(self.side_dim)
        return QuditLayout.of(
            (SIDE_REGISTER, 1, side_spec),
            (SOURCE_REGISTER, self.source_len, self.field),
            cap=self.dim_cap,
        )


def low_weight_vectors(
    field: FieldSpec, length: int, max_weight: int
) -> list[tuple[FieldElem, ...]]:
    """All vectors in F^length with Hamming weight <= max_weight."""
    zero = field.zero()
    nonzero = [field.elem(v) for v in range(1, field.order)]
    out = []
    for weight in range(max_weight + 1):
        for support in itertools.combinations(range(length), weight):
            for values in itertools.product(nonzero, repeat=weight):
                vec = [zero] * length
                for pos, val in zip(support, values):
                    vec[pos] = val
                out.append(tuple(vec))
    return out


def _vector_index(field: FieldSpec, vector: Sequence[FieldElem]) -> int:
    idx = 0
    for v in vector:
        idx = idx * field.order + v.to_int()
    return idx


def sample_source_state(
    inst: ExtractorInstance,
    rng,
    offset: Optional[Sequence[FieldElem]] = None,
    side_vectors: Optional[dict] = None,
) -> DenseState:
    """Superposition over all admissible-weight u of |psi_u>|u + w>.

    Side vectors default to independent complex-Gaussian draws (Haar-like
    directions with random weights), so the side register is genuinely
    entangled with the source rather than a product factor.
    """
    w = tuple(offset) if offset is not None else inst.offset
    field = inst.field
    layout = inst.layout()
    terms = low_weight_vectors(field, inst.source_len, inst.weight_bound)
    amps = np.zeros(layout.total_dim, dtype=np.complex128)
    source_dim = field.order**inst.source_len
    for u in terms:
        shifted = tuple(a + b for a, b in zip(u, w))
        x_idx = _vector_index(field, shifted)
        if side_vectors is not None:
            psi = np.asarray(side_vectors[u], dtype=np.complex128)
        else:
            psi = rng.normal(size=inst.side_dim) + 1j * rng.normal(size=inst.side_dim)
        for a in range(inst.side_dim):
            amps[a * source_dim + x_idx] = psi[a]
    return DenseState.from_amplitudes(layout, amps, normalize=True)


def run_extractor(inst: ExtractorInstance, state: DenseState) -> DensityMatrix:
    """The three-step procedure: per-sub-qudit QFT on X, coherent linear map
    into a fresh output register, trace out X."""
    if state.layout.register(SOURCE_REGISTER).spec != inst.field:
        raise ValueError("state source register does not match the instance")
    rotated = qft_per_subfield(state, SOURCE_REGISTER)
    expanded = apply_linear_map(rotated, inst.matrix, SOURCE_REGISTER, OUTPUT_REGISTER)
    keep = [r.name for r in expanded.layout.registers if r.name != SOURCE_REGISTER]
    return partial_trace(expanded, keep)


def expected_output(inst: ExtractorInstance, state: DenseState) -> DensityMatrix:
    """Side marginal of the source state, tensored with a uniform output."""
    side = partial_trace(state, [SIDE_REGISTER])
    out_layout = QuditLayout.of(
        (OUTPUT_REGISTER, inst.output_len, inst.field), cap=inst.dim_cap
    )
    return dm_tensor(side, uniform_density(out_layout))


def verify_theorem(inst: ExtractorInstance, trials: int, rng) -> float:
    """Max trace distance between the extractor output and the ideal product
    state over fresh random sources, with a fresh random offset each trial."""
    worst = 0.0
    for trial in range(trials):
        if trial == 0:
            offset = inst.offset
        else:
            offset = tuple(
                inst.field.random_elem(rng) for _ in range(inst.source_len)
            )
        state = sample_source_state(inst, rng, offset=offset)
        got = run_extractor(inst, state)
        want = expected_output(inst, state)
        worst = max(worst, trace_distance(got, want))
    return worst


def verify_sum_roots(order: int) -> float:
    """Max |sum over the cyclic group of w^x| over nontrivial roots w."""
    if order < 2:
        raise ValueError("group order must be >= 2")
    xs = np.arange(order)
    worst = 0.0
    for j in range(1, order):
        omega = np.exp(2j * np.pi * j / order)
        worst = max(worst, abs((omega**xs).sum()))
    return worst


def _solution_space(matrix: FieldMatrix, y: Sequence[FieldElem]):
    """Particular solution and kernel basis of R x = y over the field."""
    from .gf import _solve_linear

    spec = matrix.spec
    rows = [matrix.row(i) for i in range(matrix.rows)]
    particular = _solve_linear(spec, rows, list(y))
    if particular is None:
        return None, []
    # kernel via solving against each free column after elimination
    n = matrix.cols
    kernel = []
    # brute-force kernel basis: eliminate and read off free variables
    work = [[matrix.entry(i, j) for j in range(n)] for i in range(matrix.rows)]
    aug = [row[:] for row in work]
    pivots = []
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, len(aug)) if not aug[r][col].is_zero), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        inv = aug[rank][col].inverse()
        aug[rank] = [v * inv for v in aug[rank]]
        for r in range(len(aug)):
            if r != rank and not aug[r][col].is_zero:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(n) if c not in pivots]
    for fc in free:
        vec = [spec.zero()] * n
        vec[fc] = spec.one()
        for r, pc in enumerate(pivots):
            vec[pc] = -aug[r][fc]
        kernel.append(vec)
    return particular, kernel


def verify_subclaim(
    field: FieldSpec,
    matrix: FieldMatrix,
    u: Sequence[FieldElem],
    y: Sequence[FieldElem],
    j_set: Sequence[int],
) -> float:
    """|sum over {x : Rx = y} of w_p^{(u . x)_{Z_p}}|, by brute enumeration.

    Preconditions (the claim's three hypotheses) are enforced: u nonzero
    somewhere, u zero on the index set J of size m, and the J-submatrix of R
    of full rank.  The phase pairs coefficient vectors over Z_p.
    """
    if all(v.is_zero for v in u):
        raise ValueError("u must be nonzero somewhere")
    if len(j_set) != matrix.rows:
        raise ValueError("J must have exactly m indices")
    if any(not u[j].is_zero for j in j_set):
        raise ValueError("u must vanish on J")
    if matrix.columns_submatrix(list(j_set)).rank() != matrix.rows:
        raise ValueError("R_J must have full rank")
    particular, kernel = _solution_space(matrix, y)
    if particular is None:
        return 0.0
    p = field.p
    omega = np.exp(2j * np.pi / p)
    total = 0.0 + 0.0j
    for combo in itertools.product(range(field.order), repeat=len(kernel)):
        x = list(particular)
        for count, basis_vec in zip(combo, kernel):
            c = field.elem(count)
            x = [xi + c * bi for xi, bi in zip(x, basis_vec)]
        phase = 0
        for ui, xi in zip(u, x):
            phase += sum(a * b for a, b in zip(ui.coeffs, xi.coeffs))
        total += omega ** (phase % p)
    return abs(total)


# -- canned instances ---------------------------------------------------------


def xor_instance(field_order: int, source_len: int, side_dim: int = 4) -> ExtractorInstance:
    """The all-ones single-row matrix (parity extractor) over any field."""
    field = FieldSpec.of_order(field_order)
    matrix = FieldMatrix.from_int_rows(field, [[1] * source_len])
    offset = tuple(field.zero() for _ in range(source_len))
    return ExtractorInstance(field, source_len, 1, matrix, offset)


def projective_instance(
    field_order: int, source_len: int, side_dim: int = 4, dim_cap: int = 1 << 24
) -> ExtractorInstance:
    """Two output rows whose columns are distinct projective-line points, so
    every pair of columns is independent (an MDS parity-check shape)."""
    field = FieldSpec.of_order(field_order)
    columns = [(field.zero(), field.one())]
    for v in range(field.order):
        columns.append((field.one(), field.elem(v)))
    if source_len > len(columns):
        raise ValueError("projective line too short for this source length")
    cols = columns[:source_len]
    matrix = FieldMatrix.from_rows(
        field, [[c[0] for c in cols], [c[1] for c in cols]]
    )
    offset = tuple(field.zero() for _ in range(source_len))
    return ExtractorInstance(field, source_len, 2, matrix, offset, side_dim, dim_cap)


def interpolation_block_instance(
    field_order: int,
    deg: int,
    n_targets: int,
    source_len: int,
    side_dim: int = 4,
    dim_cap: int = 1 << 24,
) -> ExtractorInstance:
    """A block of columns of an interpolation operator: n_targets rows, the
    first source_len columns; inherits pairwise independence of any
    n_targets columns from the interpolation matrix."""
    field = FieldSpec.of_order(field_order)
    if deg + 1 + n_targets > field.order:
        raise ValueError("field too small for disjoint sources and targets")
    sources = [field.elem(v) for v in range(1, deg + 2)]
    remaining = [v for v in range(field.order) if not 1 <= v <= deg + 1]
    targets = [field.elem(v) for v in remaining[:n_targets]]
    full = interpolation_matrix(deg, sources, targets)
    block = full.columns_submatrix(list(range(source_len)))
    offset = tuple(field.zero() for _ in range(source_len))
    return ExtractorInstance(
        field, source_len, n_targets, block, offset, side_dim, dim_cap
    )


@dataclass(frozen=True)
class NegativeControl:
    """A hand-built source + matrix pair outside the theorem's hypotheses,
    with machinery to measure how far the output lands from uniform."""

    field: FieldSpec
    source_len: int
    output_len: int
    matrix: FieldMatrix
    terms: tuple[tuple[FieldElem, ...], ...]

    def distance(self, dim_cap: int = 1 << 22) -> float:
        side = FieldSpec.of_order(2)
        layout = QuditLayout.of(
            (SIDE_REGISTER, 1, side), (SOURCE_REGISTER, self.source_len, self.field),
            cap=dim_cap,
        )
        source_dim = self.field.order**self.source_len
        amps = np.zeros(layout.total_dim, dtype=np.complex128)
        for a, term in enumerate(self.terms):
            amps[a * source_dim + _vector_index(self.field, term)] = 1.0
        state = DenseState.from_amplitudes(layout, amps, normalize=True)
        rotated = qft_per_subfield(state, SOURCE_REGISTER)
        expanded = apply_linear_map(rotated, self.matrix, SOURCE_REGISTER, OUTPUT_REGISTER)
        got = partial_trace(expanded, [SIDE_REGISTER, OUTPUT_REGISTER])
        side_marginal = partial_trace(state, [SIDE_REGISTER])
        out_layout = QuditLayout.of((OUTPUT_REGISTER, self.output_len, self.field))
        want = dm_tensor(side_marginal, uniform_density(out_layout))
        return trace_distance(got, want)


def bad_matrix_control() -> NegativeControl:
    """Repeated columns break the independence hypothesis: a weight-2 source
    aligned with the repetition leaves the output correlated with the side."""
    field = FieldSpec.of(2, 1)
    matrix = FieldMatrix.from_int_rows(
        field, [[1, 1, 0, 0, 0, 0, 0], [0, 0, 1, 0, 1, 0, 1]]
    )
    zero = tuple(field.zero() for _ in range(7))
    u = [field.zero()] * 7
    u[0] = field.one()
    u[1] = field.one()
    return NegativeControl(field, 7, 2, matrix, (zero, tuple(u)))


def weight_boundary_control() -> NegativeControl:
    """Weight exactly ceil((M-m)/2) on both branches: their difference has
    full support, the subclaim hypotheses fail, and uniformity breaks."""
    field = FieldSpec.of(2, 1)
    matrix = FieldMatrix.from_int_rows(field, [[1, 1, 1, 1]])
    u1 = [field.one(), field.one(), field.zero(), field.zero()]
    u2 = [field.zero(), field.zero(), field.one(), field.one()]
    return NegativeControl(field, 4, 1, matrix, (tuple(u1), tuple(u2)))
