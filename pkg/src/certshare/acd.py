"""Adaptive-certified-deletion threshold secret sharing.

A secret in K = GF(2^ceil(log2(nt+1))) is the constant term of a random
degree-deg_p polynomial.  Each of the n shares holds t K-qudit positions:
t' = t - r data positions carrying computational-basis evaluations, and r
check positions carrying Fourier-encoded random values that double as
verification material and as decoding noise.  Any k shares contain few
enough check positions to error-correct the polynomial; deletion is a
Hadamard measurement of everything, verified at the check positions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence

from .access import AccessStructure
from .gf import FieldElem, FieldSpec, Polynomial, poly_eval_batch, rs_correct
from .games import Transcript, run_adaptive_game
from .qsim import Basis, ProductShare

VARIANT_LOOSE = "loose"
VARIANT_TIGHT = "tight"
VARIANT_MANUAL = "manual"


@dataclass(frozen=True)
class AcdParams:
    """Scheme parameters; t positions per share split into r checks and
    t' = t - r data slots, ell bounds the information surviving a verified
    deletion, deg_p = (k-1)t' + (n-k+1)ell is the polynomial degree."""

    n: int
    k: int
    t: int
    r: int
    ell: int
    deg_p: int
    field: FieldSpec
    lam: int
    variant: str

    @property
    def t_prime(self) -> int:
        return self.t - self.r

    def eval_index(self, i: int, j: int) -> int:
        """Field point of share i, position j: (i-1)t + j in [1, nt]; the
        point 0 is reserved for the secret."""
        if not (1 <= i <= self.n and 1 <= j <= self.t):
            raise ValueError("share or position index out of range")
        return (i - 1) * self.t + j


@dataclass(frozen=True)
class ParamCheck:
    ok: bool
    diagnostic: str

    def __bool__(self) -> bool:
        return self.ok


def validate_params(p: AcdParams) -> ParamCheck:
    """Re-check the correctness inequality and structural constraints on the
    rounded integers; this is the final authority on parameter validity."""
    if p.t_prime <= 0:
        return ParamCheck(False, f"t'={p.t_prime} must be positive (r >= t)")
    if p.deg_p < 0:
        return ParamCheck(False, "polynomial degree must be nonnegative")
    if not 1 <= p.k <= p.n:
        return ParamCheck(False, f"threshold k={p.k} outside [1, {p.n}]")
    if 2 * p.k * p.r >= p.k * p.t - p.deg_p:
        return ParamCheck(
            False,
            f"correctness inequality fails: 2kr={2*p.k*p.r} !< kt-deg={p.k*p.t - p.deg_p}",
        )
    if (p.n - p.k + 1) * p.ell >= p.t:
        return ParamCheck(
            False,
            f"positivity fails: (n-k+1)*ell={(p.n-p.k+1)*p.ell} !< t={p.t}",
        )
    if p.field.order < p.n * p.t + 1:
        return ParamCheck(
            False,
            f"field order {p.field.order} < nt+1 = {p.n * p.t + 1}",
        )
    return ParamCheck(True, "ok")


def default_field(n: int, t: int) -> FieldSpec:
    """The binary field with 2^ceil(log2(nt+1)) elements."""
    bits = max((n * t).bit_length(), 1)
    return FieldSpec.of(2, bits)


def _exact_log2(lam: int) -> Fraction:
    if lam >= 2 and (lam & (lam - 1)) == 0:
        return Fraction(lam.bit_length() - 1)
    return Fraction(math.log2(lam))


def _floor_div_sqrt(numerator: int, radicand: int) -> int:
    """floor(numerator / sqrt(radicand)) for nonnegative integers."""
    return math.isqrt(numerator * numerator // radicand)


def derive_params(lam: int, n: int, k: int, variant: str) -> AcdParams:
    """Evaluate the loose or tight parameter formulas (log = log2).

    Rounding: r and t round up; ell = t*log(lam)/sqrt(r) rounds down, which
    keeps the correctness inequality satisfiable on integers (rounding ell
    up provably violates it for some admissible inputs).  If the rounded
    tuple still misses the inequality, t is bumped minimally; validate_params
    remains the final authority.
    """
    if not 1 <= k <= n:
        raise ValueError(f"threshold k={k} outside [1, {n}]")
    if lam < 2:
        raise ValueError("security parameter must be >= 2")
    if variant not in (VARIANT_LOOSE, VARIANT_TIGHT):
        raise ValueError(f"unknown variant {variant!r}")
    log_lam = _exact_log2(lam)
    a = (n - k + 1) * log_lam
    if variant == VARIANT_LOOSE:
        r = math.ceil((lam + a) ** 2)
        t_exact = (k + 1) * r * (1 + a / lam) + 1
        t = math.ceil(t_exact)
    else:
        r = math.ceil(lam + a**2)
        # sqrt(r) exceeds a by the positivity condition; bound it from below
        # with a high-precision rational so the ceiling never undershoots.
        sqrt_r = Fraction(math.isqrt(r * 10**28), 10**14)
        if sqrt_r <= a:
            raise ValueError("positivity condition fails for these inputs")
        t_exact = (k + 1) * r * (1 + a / (sqrt_r - a)) + 1
        t = math.ceil(t_exact)

    def build(t_val: int) -> AcdParams:
        num = t_val * log_lam
        if num.denominator == 1:
            ell = _floor_div_sqrt(int(num), r)
        else:
            ell = math.floor(float(num) / math.sqrt(r))
        deg = (k - 1) * (t_val - r) + (n - k + 1) * ell
        return AcdParams(
            n=n, k=k, t=t_val, r=r, ell=ell, deg_p=deg,
            field=default_field(n, t_val), lam=lam, variant=variant,
        )

    params = build(t)
    bumps = 0
    while not validate_params(params) and bumps < 100_000:
        t += 1
        bumps += 1
        params = build(t)
    check = validate_params(params)
    if not check:
        raise RuntimeError(f"derived parameters invalid: {check.diagnostic}")
    return params


def manual_params(
    n: int,
    k: int,
    t: int,
    r: int,
    ell: int,
    lam: int = 2,
    field: Optional[FieldSpec] = None,
) -> AcdParams:
    """Directly supplied parameters; deg_p follows the standard formula."""
    deg = (k - 1) * (t - r) + (n - k + 1) * ell
    return AcdParams(
        n=n, k=k, t=t, r=r, ell=ell, deg_p=deg,
        field=field or default_field(n, t), lam=lam, variant=VARIANT_MANUAL,
    )


@dataclass(frozen=True)
class AcdShare:
    index: int
    positions: ProductShare

    def check_count(self) -> int:
        return sum(1 for p in self.positions.positions if p.basis is Basis.FOURIER)


@dataclass(frozen=True)
class AcdVerificationKey:
    """Per share: the data index set J_i and the check values y_{i,j}."""

    data_indices: tuple[tuple[int, ...], ...]  # per share, sorted, size t'
    check_values: tuple[Dict[int, FieldElem], ...]  # per share, j -> y_{i,j}


def acd_split(
    params: AcdParams, secret: FieldElem, rng
) -> tuple[list[AcdShare], AcdVerificationKey]:
    """Sample f with f(0) = secret and lay out data/check positions."""
    check = validate_params(params)
    if not check:
        raise ValueError(f"invalid parameters: {check.diagnostic}")
    field = params.field
    if secret.spec != field:
        raise ValueError("secret must live in the scheme field")
    f = Polynomial.random_with_constant(field, params.deg_p, secret, rng)
    per_share_data = [
        tuple(sorted(int(j) + 1 for j in rng.choice(params.t, size=params.t_prime, replace=False)))
        for _ in range(params.n)
    ]
    data_xs = [
        field.elem(params.eval_index(i, j))
        for i in range(1, params.n + 1)
        for j in per_share_data[i - 1]
    ]
    data_evals = iter(poly_eval_batch(f, data_xs))
    shares = []
    all_checks: list[Dict[int, FieldElem]] = []
    for i in range(1, params.n + 1):
        data_set = set(per_share_data[i - 1])
        checks: Dict[int, FieldElem] = {}
        positions = []
        for j in range(1, params.t + 1):
            if j in data_set:
                positions.append((Basis.COMPUTATIONAL, next(data_evals)))
            else:
                y = field.random_elem(rng)
                checks[j] = y
                positions.append((Basis.FOURIER, y))
        shares.append(AcdShare(i, ProductShare.of(positions)))
        all_checks.append(checks)
    return shares, AcdVerificationKey(tuple(per_share_data), tuple(all_checks))


def acd_delete(share: AcdShare, rng) -> list[FieldElem]:
    """Hadamard-measure every underlying qubit; regrouped per K-position."""
    outcomes, _ = share.positions.measure_fourier(rng)
    return outcomes


def acd_verify(
    vk: AcdVerificationKey, index: int, cert: Sequence[FieldElem]
) -> bool:
    """Accept iff the certificate matches the key on every check position."""
    if not 1 <= index <= len(vk.data_indices):
        raise ValueError(f"share index {index} out of range")
    checks = vk.check_values[index - 1]
    expected_len = len(vk.data_indices[index - 1]) + len(checks)
    if len(cert) != expected_len:
        raise ValueError("certificate has the wrong length")
    return all(cert[j - 1] == y for j, y in checks.items())


def acd_reconstruct_from_values(
    params: AcdParams, measured: Dict[int, list[FieldElem]]
) -> Optional[FieldElem]:
    """Decode from computational measurement outcomes of >= k shares."""
    if len(measured) < params.k:
        return None
    chosen = sorted(measured)[: params.k]
    field = params.field
    points = []
    for i in chosen:
        values = measured[i]
        if len(values) != params.t:
            raise ValueError("measured share has the wrong position count")
        for j in range(1, params.t + 1):
            points.append((field.elem(params.eval_index(i, j)), values[j - 1]))
    f = rs_correct(params.deg_p, points)
    if f is None:
        return None
    return f.constant_term()


def acd_reconstruct(
    params: AcdParams, shares: Dict[int, AcdShare], rng
) -> Optional[FieldElem]:
    """Measure the k lexicographically smallest shares and error-correct."""
    if len(shares) < params.k:
        return None
    chosen = sorted(shares)[: params.k]
    measured = {}
    for i in chosen:
        outcomes, _ = shares[i].positions.measure_computational(rng)
        measured[i] = outcomes
    return acd_reconstruct_from_values(params, measured)


@dataclass
class _AcdGameScheme:
    params: AcdParams
    shares: list[AcdShare]
    vk: AcdVerificationKey
    structure: AccessStructure

    def share_for(self, index: int) -> AcdShare:
        return self.shares[index - 1]

    def verify(self, index: int, cert) -> bool:
        try:
            return acd_verify(self.vk, index, cert)
        except ValueError:
            return False


def run_acd_game(params: AcdParams, adversary, secret: FieldElem, rng) -> Transcript:
    """Adaptive experiment against this scheme; see games.run_adaptive_game."""
    shares, vk = acd_split(params, secret, rng)
    scheme = _AcdGameScheme(
        params, shares, vk, AccessStructure.threshold(params.k, params.n)
    )
    return run_adaptive_game(scheme, adversary, rng)
