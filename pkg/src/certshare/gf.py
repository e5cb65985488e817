"""Exact arithmetic over prime and extension fields GF(p^k).

Elements are stored as coefficient vectors over Z_p (lowest power first), so
the per-Z_p structure used by the quantum Fourier transform is the native
representation.  For fields small enough to table (order <= 2^20) a discrete
log / antilog pair is built once per field and used as an internal fast path;
the coefficient-vector view stays authoritative.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

_TABLE_LIMIT = 1 << 20

# Canonical moduli for common fields, little-endian coefficients, monic.
# Anything not listed falls back to the lexicographically smallest
# irreducible monic polynomial, which is deterministic per (p, k).
_CANONICAL_MODULI: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),             # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),          # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),       # x^4 + x + 1
    (2, 5): (1, 0, 1, 0, 0, 1),    # x^5 + x^2 + 1
    (2, 6): (1, 1, 0, 0, 0, 0, 1), # x^6 + x + 1
    (2, 8): (1, 1, 0, 1, 1, 0, 0, 0, 1),  # x^8 + x^4 + x^3 + x + 1
    (2, 13): (1, 1, 0, 1, 1) + (0,) * 8 + (1,),   # x^13 + x^4 + x^3 + x + 1
    (2, 15): (1, 1) + (0,) * 13 + (1,),           # x^15 + x + 1
    (2, 17): (1, 0, 0, 1) + (0,) * 13 + (1,),     # x^17 + x^3 + 1
    (3, 2): (1, 0, 1),             # x^2 + 1
}


class FieldMismatchError(ValueError):
    """Two elements from different field specs were mixed in one operation."""


def _poly_mod_p(coeffs: list[int], p: int) -> list[int]:
    return [c % p for c in coeffs]


def _poly_trim(coeffs: list[int]) -> list[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_mul_zp(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_divmod_zp(a: Sequence[int], b: Sequence[int], p: int):
    a = list(a)
    db, da = len(b) - 1, len(a) - 1
    inv_lead = pow(b[-1], p - 2, p) if p > 2 else b[-1]
    quot = [0] * max(da - db + 1, 0)
    while len(_poly_trim(a)) - 1 >= db and a:
        da = len(a) - 1
        shift = da - db
        factor = (a[-1] * inv_lead) % p
        quot[shift] = factor
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * bi) % p
        _poly_trim(a)
    return quot, a


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= k/2 over Z_p."""
    k = len(modulus) - 1
    if k < 1 or modulus[-1] % p == 0:
        return False
    if k == 1:
        return True
    for deg in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            divisor = list(tail) + [1]
            _, rem = _poly_divmod_zp(list(modulus), divisor, p)
            if not _poly_trim(list(rem)):
                return False
    return True


def _smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    if k == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=k):
        candidate = list(tail) + [1]
        if _is_irreducible(candidate, p):
            return tuple(candidate)
    raise RuntimeError(f"no irreducible polynomial of degree {k} over Z_{p}")


def _factorize(n: int) -> list[int]:
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    return factors


@dataclass(frozen=True)
class FieldSpec:
    """A finite field GF(p^k) with a fixed irreducible modulus.

    The modulus is a monic degree-k polynomial over Z_p, little-endian.
    Elements are length-k coefficient vectors; the packed-integer view of an
    element is sum(c_i * p^i), giving values in [0, p^k).
    """

    p: int
    k: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p**0.5) + 1)):
            raise ValueError(f"characteristic {self.p} is not prime")
        if self.k < 1:
            raise ValueError("extension degree must be >= 1")
        if len(self.modulus) != self.k + 1 or self.modulus[-1] % self.p != 1:
            raise ValueError("modulus must be monic of degree k")
        if any(c < 0 or c >= self.p for c in self.modulus):
            raise ValueError("modulus coefficients must lie in [0, p)")
        if not _is_irreducible(self.modulus, self.p):
            raise ValueError(f"modulus {self.modulus} is reducible over Z_{self.p}")

    @property
    def order(self) -> int:
        cached = getattr(self, "_order", None)
        if cached is None:
            cached = self.p**self.k
            object.__setattr__(self, "_order", cached)
        return cached

    @staticmethod
    @lru_cache(maxsize=None)
    def of(p: int, k: int, modulus: Optional[tuple[int, ...]] = None) -> "FieldSpec":
        if modulus is None:
            modulus = _CANONICAL_MODULI.get((p, k)) or _smallest_irreducible(p, k)
        return FieldSpec(p, k, tuple(modulus))

    @staticmethod
    def of_order(q: int, modulus: Optional[tuple[int, ...]] = None) -> "FieldSpec":
        """Field of the given prime-power order with the canonical modulus."""
        factors = _factorize(q)
        if len(factors) != 1:
            raise ValueError(f"{q} is not a prime power")
        p = factors[0]
        k = 0
        n = q
        while n > 1:
            n //= p
            k += 1
        if p**k != q:
            raise ValueError(f"{q} is not a prime power")
        return FieldSpec.of(p, k, tuple(modulus) if modulus else None)

    # -- element constructors -------------------------------------------------

    def elem(self, value) -> "FieldElem":
        """Build an element from a packed integer or a coefficient sequence.

        Elements of tabled fields are interned, so repeated construction is a
        list lookup and identical values share one immutable instance.
        """
        if isinstance(value, FieldElem):
            if value.spec is not self and value.spec != self:
                raise FieldMismatchError("element belongs to a different field")
            return value
        if isinstance(value, int):
            if not 0 <= value < self.order:
                raise ValueError(f"packed value {value} out of range for order {self.order}")
            cache = _ELEM_CACHE.get(self)
            if cache is None and self.order <= _TABLE_LIMIT:
                cache = _ELEM_CACHE[self] = [None] * self.order
            if cache is not None:
                cached = cache[value]
                if cached is None:
                    cached = cache[value] = FieldElem(self, tuple(self._unpack(value)))
                return cached
            return FieldElem(self, tuple(self._unpack(value)))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.k:
            raise ValueError(f"need exactly {self.k} coefficients")
        return self.elem(self._pack(coeffs))

    def zero(self) -> "FieldElem":
        return self.elem(0)

    def one(self) -> "FieldElem":
        return self.elem(1)

    def random_elem(self, rng) -> "FieldElem":
        return self.elem(int(rng.integers(self.order)))

    def all_elements(self) -> Iterator["FieldElem"]:
        for v in range(self.order):
            yield self.elem(v)

    # -- packed-integer arithmetic (internal workhorses) ----------------------

    def _mul_packed(self, a: int, b: int) -> int:
        tables = _tables(self)
        if tables is not None:
            if a == 0 or b == 0:
                return 0
            return tables.exp[(tables.log[a] + tables.log[b]) % (self.order - 1)]
        return self._mul_packed_poly(a, b)

    def _mul_packed_poly(self, a: int, b: int) -> int:
        pa = self._unpack(a)
        pb = self._unpack(b)
        prod = _poly_mul_zp(pa, pb, self.p)
        _, rem = _poly_divmod_zp(prod, list(self.modulus), self.p) if len(prod) > self.k else ([], prod)
        rem = rem + [0] * (self.k - len(rem))
        return self._pack(rem)

    def _inv_packed(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        tables = _tables(self)
        if tables is not None:
            return tables.exp[(self.order - 1 - tables.log[a]) % (self.order - 1)]
        return self._pow_packed(a, self.order - 2)

    def _pow_packed(self, a: int, e: int) -> int:
        result = 1
        base = a
        while e:
            if e & 1:
                result = self._mul_packed_poly(result, base)
            base = self._mul_packed_poly(base, base)
            e >>= 1
        return result

    def _add_packed(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        out = 0
        mult = 1
        for _ in range(self.k):
            out += ((a % self.p + b % self.p) % self.p) * mult
            a //= self.p
            b //= self.p
            mult *= self.p
        return out

    def _neg_packed(self, a: int) -> int:
        if self.p == 2:
            return a
        out = 0
        mult = 1
        for _ in range(self.k):
            out += ((-(a % self.p)) % self.p) * mult
            a //= self.p
            mult *= self.p
        return out

    def _unpack(self, a: int) -> list[int]:
        coeffs = []
        for _ in range(self.k):
            coeffs.append(a % self.p)
            a //= self.p
        return coeffs

    def _pack(self, coeffs: Sequence[int]) -> int:
        out = 0
        for c in reversed(list(coeffs)):
            out = out * self.p + (c % self.p)
        return out


class _Tables:
    __slots__ = ("exp", "log")

    def __init__(self, exp: list[int], log: list[int]):
        self.exp = exp
        self.log = log


_TABLE_CACHE: dict[FieldSpec, Optional[_Tables]] = {}
_ELEM_CACHE: dict[FieldSpec, list] = {}


def _tables(spec: FieldSpec) -> Optional[_Tables]:
    if spec in _TABLE_CACHE:
        return _TABLE_CACHE[spec]
    q = spec.order
    if q > _TABLE_LIMIT or q == 2:
        # GF(2) has a trivial multiplicative group; tables gain nothing.
        result = None if q > _TABLE_LIMIT else _Tables([1], [0, 0])
        _TABLE_CACHE[spec] = result
        return result
    group_order = q - 1
    prime_factors = _factorize(group_order)
    gen = None
    for candidate in range(2, q):
        if all(
            spec._pow_packed(candidate, group_order // f) != 1 for f in prime_factors
        ):
            gen = candidate
            break
    if gen is None:  # pragma: no cover - a generator always exists
        _TABLE_CACHE[spec] = None
        return None
    exp = [1] * group_order
    log = [0] * q
    acc = 1
    for i in range(group_order):
        exp[i] = acc
        log[acc] = i
        acc = spec._mul_packed_poly(acc, gen)
    tables = _Tables(exp, log)
    _TABLE_CACHE[spec] = tables
    return tables


@dataclass(frozen=True)
class FieldElem:
    """An element of GF(p^k): a length-k coefficient vector over Z_p."""

    spec: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.spec.k:
            raise ValueError("coefficient vector has the wrong length")
        if any(c < 0 or c >= self.spec.p for c in self.coeffs):
            raise ValueError("coefficients must lie in [0, p)")

    def _check(self, other: "FieldElem") -> None:
        if not isinstance(other, FieldElem):
            raise TypeError(f"expected FieldElem, got {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatchError("elements of different fields cannot be mixed")

    def to_int(self) -> int:
        packed = getattr(self, "_packed", None)
        if packed is None:
            packed = self.spec._pack(self.coeffs)
            object.__setattr__(self, "_packed", packed)
        return packed

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        p = self.spec.p
        return self.spec.elem(
            tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        p = self.spec.p
        return self.spec.elem(
            tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> "FieldElem":
        p = self.spec.p
        return self.spec.elem(tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        self._check(other)
        return self.spec.elem(self.spec._mul_packed(self.to_int(), other.to_int()))

    def inverse(self) -> "FieldElem":
        return self.spec.elem(self.spec._inv_packed(self.to_int()))

    def __truediv__(self, other: "FieldElem") -> "FieldElem":
        return self * other.inverse()

    def __pow__(self, e: int) -> "FieldElem":
        if e < 0:
            return self.inverse() ** (-e)
        result = self.spec.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __repr__(self):
        return f"GF({self.spec.order}):{self.to_int()}"


def field_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    """Product in GF(p^k): polynomial multiplication reduced by the modulus."""
    return a * b


def field_inv(a: FieldElem) -> FieldElem:
    """Multiplicative inverse; raises ZeroDivisionError on zero."""
    return a.inverse()


@dataclass(frozen=True)
class Polynomial:
    """Polynomial over one field, coefficients lowest degree first.

    Normalized so the leading coefficient is nonzero; the zero polynomial has
    an empty coefficient tuple and degree -1.
    """

    spec: FieldSpec
    coeffs: tuple[FieldElem, ...]

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1].is_zero:
            raise ValueError("leading coefficient must be nonzero (use Polynomial.make)")

    @staticmethod
    def make(spec: FieldSpec, coeffs: Iterable[FieldElem]) -> "Polynomial":
        cs = list(coeffs)
        while cs and cs[-1].is_zero:
            cs.pop()
        return Polynomial(spec, tuple(cs))

    @staticmethod
    def from_ints(spec: FieldSpec, ints: Iterable[int]) -> "Polynomial":
        return Polynomial.make(spec, [spec.elem(v) for v in ints])

    @staticmethod
    def zero(spec: FieldSpec) -> "Polynomial":
        return Polynomial(spec, ())

    @staticmethod
    def random_with_constant(
        spec: FieldSpec, deg: int, constant: FieldElem, rng
    ) -> "Polynomial":
        """Uniform among polynomials of degree <= deg with f(0) = constant."""
        coeffs = [constant] + [spec.random_elem(rng) for _ in range(deg)]
        return Polynomial.make(spec, coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def constant_term(self) -> FieldElem:
        return self.coeffs[0] if self.coeffs else self.spec.zero()

    def __call__(self, x: FieldElem) -> FieldElem:
        return poly_eval(self, x)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        zero = self.spec.zero()
        a = list(self.coeffs) + [zero] * (n - len(self.coeffs))
        b = list(other.coeffs) + [zero] * (n - len(other.coeffs))
        return Polynomial.make(self.spec, [x + y for x, y in zip(a, b)])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + Polynomial.make(other.spec, [-c for c in other.coeffs])

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not self.coeffs or not other.coeffs:
            return Polynomial.zero(self.spec)
        zero = self.spec.zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial.make(self.spec, out)

    def scale(self, c: FieldElem) -> "Polynomial":
        return Polynomial.make(self.spec, [c * a for a in self.coeffs])

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        zero = self.spec.zero()
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = other.coeffs[-1].inverse()
        quot = [zero] * max(len(rem) - db, 0)
        while len(rem) - 1 >= db and rem:
            factor = rem[-1] * inv_lead
            shift = len(rem) - 1 - db
            quot[shift] = factor
            for i, b in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - factor * b
            while rem and rem[-1].is_zero:
                rem.pop()
        return Polynomial.make(self.spec, quot), Polynomial.make(self.spec, rem)


def poly_eval(f: Polynomial, x: FieldElem) -> FieldElem:
    """Horner evaluation of f at x."""
    if x.spec != f.spec:
        raise FieldMismatchError("point and polynomial live in different fields")
    acc = f.spec.zero()
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


def poly_eval_batch(f: Polynomial, xs: Sequence[FieldElem]) -> list[FieldElem]:
    """Evaluate f at many points; uses the table fast path when available."""
    from . import _gffast

    spec = f.spec
    if _gffast.available(spec) and len(xs) * max(f.degree, 0) > 4096:
        packed = _gffast.eval_batch(
            spec,
            [c.to_int() for c in f.coeffs],
            [x.to_int() for x in xs],
        )
        return [spec.elem(int(v)) for v in packed]
    return [poly_eval(f, x) for x in xs]


@dataclass(frozen=True)
class FieldMatrix:
    """Row-major matrix over one field."""

    spec: FieldSpec
    rows: int
    cols: int
    entries: tuple[FieldElem, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count must equal rows*cols")

    @staticmethod
    def from_rows(spec: FieldSpec, rows: Sequence[Sequence[FieldElem]]) -> "FieldMatrix":
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        flat = []
        for row in rows:
            if len(row) != n_cols:
                raise ValueError("ragged rows")
            flat.extend(spec.elem(e) for e in row)
        return FieldMatrix(spec, n_rows, n_cols, tuple(flat))

    @staticmethod
    def from_int_rows(spec: FieldSpec, rows: Sequence[Sequence[int]]) -> "FieldMatrix":
        return FieldMatrix.from_rows(
            spec, [[spec.elem(v) for v in row] for row in rows]
        )

    def entry(self, i: int, j: int) -> FieldElem:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[FieldElem]:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def column(self, j: int) -> list[FieldElem]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def matvec(self, v: Sequence[FieldElem]) -> list[FieldElem]:
        if len(v) != self.cols:
            raise ValueError("vector length must equal column count")
        out = []
        for i in range(self.rows):
            acc = self.spec.zero()
            for j in range(self.cols):
                acc = acc + self.entry(i, j) * v[j]
            out.append(acc)
        return out

    def columns_submatrix(self, col_indices: Sequence[int]) -> "FieldMatrix":
        flat = []
        for i in range(self.rows):
            for j in col_indices:
                flat.append(self.entry(i, j))
        return FieldMatrix(self.spec, self.rows, len(col_indices), tuple(flat))

    def rank(self) -> int:
        spec = self.spec
        work = [[self.entry(i, j).to_int() for j in range(self.cols)] for i in range(self.rows)]
        rank = 0
        for col in range(self.cols):
            pivot = next((r for r in range(rank, self.rows) if work[r][col] != 0), None)
            if pivot is None:
                continue
            work[rank], work[pivot] = work[pivot], work[rank]
            inv = spec._inv_packed(work[rank][col])
            work[rank] = [spec._mul_packed(v, inv) for v in work[rank]]
            for r in range(self.rows):
                if r != rank and work[r][col] != 0:
                    factor = work[r][col]
                    work[r] = [
                        spec._add_packed(
                            work[r][j],
                            spec._neg_packed(spec._mul_packed(factor, work[rank][j])),
                        )
                        for j in range(self.cols)
                    ]
            rank += 1
            if rank == self.rows:
                break
        return rank


def interpolation_matrix(
    deg: int, source_xs: Sequence[FieldElem], target_xs: Sequence[FieldElem]
) -> FieldMatrix:
    """Linear map from evaluations at source points to evaluations at targets.

    Row t, column s holds the Lagrange basis value L_s(target_t) for the basis
    defined by the deg+1 source points, so R @ (f(x) for x in sources) equals
    (f(y) for y in targets) for every polynomial f of degree <= deg.
    """
    if len(source_xs) != deg + 1:
        raise ValueError(f"need exactly {deg + 1} source points, got {len(source_xs)}")
    if len(set(x.to_int() for x in source_xs)) != len(source_xs):
        raise ValueError("source points must be pairwise distinct")
    if len(set(y.to_int() for y in target_xs)) != len(target_xs):
        raise ValueError("target points must be pairwise distinct")
    spec = source_xs[0].spec
    rows = []
    for y in target_xs:
        row = []
        for j, xj in enumerate(source_xs):
            num = spec.one()
            den = spec.one()
            for i, xi in enumerate(source_xs):
                if i == j:
                    continue
                num = num * (y - xi)
                den = den * (xj - xi)
            row.append(num / den)
        rows.append(row)
    return FieldMatrix.from_rows(spec, rows)


def lagrange_weights_at(
    source_xs: Sequence[FieldElem], y: FieldElem
) -> list[FieldElem]:
    """Weights w with f(y) = sum w_j * f(x_j) for deg <= len(sources)-1."""
    matrix = interpolation_matrix(len(source_xs) - 1, source_xs, [y])
    return matrix.row(0)


def check_column_independence(matrix: FieldMatrix, m: int) -> bool:
    """True iff every m-subset of columns has rank m (exhaustive check).

    Vacuously true when the matrix has fewer than m columns, matching the
    convention that an empty family of subsets satisfies the property.
    """
    if m > matrix.rows:
        raise ValueError(f"m={m} exceeds row count {matrix.rows}")
    for subset in itertools.combinations(range(matrix.cols), m):
        if matrix.columns_submatrix(subset).rank() != m:
            return False
    return True


# -- Reed-Solomon correction -------------------------------------------------


def _gao_pure(
    deg: int, xs: list[FieldElem], ys: list[FieldElem]
) -> Optional[Polynomial]:
    spec = xs[0].spec
    n = len(xs)
    one = spec.one()
    # g0 = prod (X - x_i)
    g0 = Polynomial.make(spec, [one])
    for x in xs:
        g0 = g0 * Polynomial.make(spec, [-x, one])
    # g1 interpolates all points (Newton form, then monomial basis).
    dd = list(ys)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
    g1 = Polynomial.make(spec, [dd[n - 1]])
    for i in range(n - 2, -1, -1):
        g1 = g1 * Polynomial.make(spec, [-xs[i], one]) + Polynomial.make(spec, [dd[i]])
    # Partial extended Euclid: stop at the first remainder g with
    # 2*deg(g) < n + deg + 1; its cofactor v is the error locator candidate.
    r0, r1 = g0, g1
    v0 = Polynomial.zero(spec)
    v1 = Polynomial.make(spec, [one])
    while 2 * r1.degree >= n + deg + 1:
        q, rem = r0.divmod(r1)
        r0, r1 = r1, rem
        v0, v1 = v1, v0 - q * v1
    if not v1.coeffs:
        return None
    f, rem = r1.divmod(v1)
    if rem.coeffs or f.degree > deg:
        return None
    return f


def rs_correct(
    deg: int, points: Sequence[tuple[FieldElem, FieldElem]]
) -> Optional[Polynomial]:
    """Recover the degree-<=deg polynomial behind noisy evaluations.

    Gao decoding: extended Euclid on (prod(X - x_i), interpolant).  Recovery
    is guaranteed whenever fewer than (s - deg + 1)/2 of the s pairs disagree
    with the underlying polynomial.  Returns None when no polynomial within
    the error radius fits; never silently returns a polynomial disagreeing
    with more than (s - deg - 1)/2 points.
    """
    if len(points) <= deg:
        raise ValueError("need more than deg points")
    xs = [x for x, _ in points]
    ys = [y for _, y in points]
    if len(set(x.to_int() for x in xs)) != len(xs):
        raise ValueError("x-values must be pairwise distinct")
    spec = xs[0].spec
    from . import _gffast

    if _gffast.available(spec) and len(points) >= 64:
        packed = _gffast.gao_decode(
            spec, deg, [x.to_int() for x in xs], [y.to_int() for y in ys]
        )
        if packed is None:
            return None
        return Polynomial.from_ints(spec, [int(v) for v in packed])
    return _gao_pure(deg, xs, ys)


def rs_correct_berlekamp_welch(
    deg: int, points: Sequence[tuple[FieldElem, FieldElem]]
) -> Optional[Polynomial]:
    """Berlekamp-Welch decoder; agrees with rs_correct on its whole radius.

    Solves Q(x_i) = y_i * E(x_i) with E monic of degree e for descending e,
    returning Q/E on the first consistent system.  Quadratic-size linear
    algebra, intended for cross-checks at small instance sizes.
    """
    if len(points) <= deg:
        raise ValueError("need more than deg points")
    xs = [x for x, _ in points]
    ys = [y for _, y in points]
    if len(set(x.to_int() for x in xs)) != len(xs):
        raise ValueError("x-values must be pairwise distinct")
    spec = xs[0].spec
    s = len(points)
    e_max = max((s - deg - 1) // 2, 0)
    for e in range(e_max, -1, -1):
        # Unknowns: E_0..E_{e-1} (E monic deg e), Q_0..Q_{deg+e}.
        n_e, n_q = e, deg + e + 1
        rows = []
        rhs = []
        for x, y in zip(xs, ys):
            xp = [spec.one()]
            for _ in range(max(n_e, n_q) - 1):
                xp.append(xp[-1] * x)
            row = [y * xp[j] for j in range(n_e)]
            row += [-xp[j] for j in range(n_q)]
            rows.append(row)
            rhs.append(-(y * xp[e] if e else y))
        solution = _solve_linear(spec, rows, rhs)
        if solution is None:
            continue
        e_coeffs = solution[:n_e] + [spec.one()]
        q_coeffs = solution[n_e:]
        e_poly = Polynomial.make(spec, e_coeffs)
        q_poly = Polynomial.make(spec, q_coeffs)
        f, rem = q_poly.divmod(e_poly)
        if rem.coeffs or f.degree > deg:
            continue
        mismatches = sum(1 for x, y in zip(xs, ys) if poly_eval(f, x) != y)
        if 2 * mismatches <= s - deg - 1:
            return f
    return None


def _solve_linear(spec, rows, rhs) -> Optional[list[FieldElem]]:
    """One solution of A x = b over the field, or None if inconsistent."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, n_rows) if not aug[r][col].is_zero), None)
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        inv = aug[rank][col].inverse()
        aug[rank] = [v * inv for v in aug[rank]]
        for r in range(n_rows):
            if r != rank and not aug[r][col].is_zero:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, n_rows):
        if not aug[r][-1].is_zero:
            return None
    solution = [spec.zero()] * n_cols
    for r, col in enumerate(pivots):
        solution[col] = aug[r][-1]
    return solution
