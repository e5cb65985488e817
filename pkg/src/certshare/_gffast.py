"""Bulk kernels for characteristic-2 fields with discrete-log tables.

Internal fast path behind gf.rs_correct and gf.poly_eval_batch; the scalar
FieldElem implementation remains the reference for every operation here.
Elements travel as packed integers (the base-p coefficient encoding), and all
arithmetic goes through exp/log tables, so these kernels only activate for
tabled fields with p == 2 where subtraction is XOR.
"""

from __future__ import annotations

import os
from collections import OrderedDict

import numpy as np

# The workqueue layer is always compiled into numba; selecting it up front
# avoids a noisy probe for TBB/OpenMP on hosts with older runtimes.
os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

try:
    from numba import njit, prange

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        return wrap if not (args and callable(args[0])) else args[0]

    prange = range


_NP_TABLES: dict = {}
_G0_CACHE: OrderedDict = OrderedDict()
_G0_CACHE_LIMIT = 64


def available(spec) -> bool:
    if not _HAVE_NUMBA or spec.p != 2 or spec.order == 2:
        return False
    return _np_tables(spec) is not None


def _np_tables(spec):
    if spec in _NP_TABLES:
        return _NP_TABLES[spec]
    from . import gf

    tables = gf._tables(spec)
    if tables is None:
        _NP_TABLES[spec] = None
        return None
    qm1 = spec.order - 1
    logt = np.zeros(spec.order, dtype=np.int32)
    for v, lg in enumerate(tables.log):
        logt[v] = lg
    expt = np.zeros(2 * qm1, dtype=np.int32)
    for i in range(2 * qm1):
        expt[i] = tables.exp[i % qm1]
    result = (logt, expt, qm1)
    _NP_TABLES[spec] = result
    return result


@njit(cache=True, parallel=True)
def _eval_batch_kernel(coeffs, xs, logt, expt, qm1):  # pragma: no cover - jit
    out = np.empty(xs.size, np.int32)
    nc = coeffs.size
    for i in prange(xs.size):
        x = xs[i]
        if x == 0:
            out[i] = coeffs[0]
            continue
        lx = logt[x]
        acc = 0
        for j in range(nc - 1, -1, -1):
            if acc != 0:
                acc = expt[logt[acc] + lx]
            acc ^= coeffs[j]
        out[i] = acc
    return out


@njit(cache=True)
def _build_g0_kernel(xs, logt, expt, qm1):  # pragma: no cover - jit
    n = xs.size
    g = np.zeros(n + 1, np.int32)
    g[0] = 1
    dlen = 0
    for i in range(n):
        xi = xs[i]
        if xi == 0:
            for j in range(dlen + 1, 0, -1):
                g[j] = g[j - 1]
            g[0] = 0
        else:
            lx = logt[xi]
            g[dlen + 1] = g[dlen]
            for j in range(dlen, 0, -1):
                t = 0
                if g[j] != 0:
                    t = expt[logt[g[j]] + lx]
                g[j] = g[j - 1] ^ t
            if g[0] != 0:
                g[0] = expt[logt[g[0]] + lx]
        dlen += 1
    return g


@njit(cache=True)
def _newton_dd_kernel(xs, ys, logt, expt, qm1):  # pragma: no cover - jit
    n = xs.size
    dd = ys.astype(np.int32)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            num = dd[i] ^ dd[i - 1]
            if num == 0:
                dd[i] = 0
            else:
                den = xs[i] ^ xs[i - level]
                dd[i] = expt[logt[num] + qm1 - logt[den]]
    return dd


@njit(cache=True)
def _newton_to_monomial_kernel(xs, dd, logt, expt, qm1):  # pragma: no cover - jit
    n = xs.size
    f = np.zeros(n, np.int32)
    f[0] = dd[n - 1]
    flen = 1
    for idx in range(n - 2, -1, -1):
        xi = xs[idx]
        if xi == 0:
            for j in range(flen, 0, -1):
                f[j] = f[j - 1]
            f[0] = dd[idx]
        else:
            lx = logt[xi]
            f[flen] = f[flen - 1]
            for j in range(flen - 1, 0, -1):
                t = 0
                if f[j] != 0:
                    t = expt[logt[f[j]] + lx]
                f[j] = f[j - 1] ^ t
            t0 = 0
            if f[0] != 0:
                t0 = expt[logt[f[0]] + lx]
            f[0] = dd[idx] ^ t0
        flen += 1
    return f


@njit(cache=True)
def _gao_eea_kernel(g0, g1, n, deg, logt, expt, qm1):  # pragma: no cover - jit
    size = n + 2
    r_prev = np.zeros(size, np.int32)
    r_cur = np.zeros(size, np.int32)
    v_prev = np.zeros(size, np.int32)
    v_cur = np.zeros(size, np.int32)
    r_prev[: g0.size] = g0
    r_cur[: g1.size] = g1
    v_cur[0] = 1
    d_prev = n
    d_cur = n - 1
    while d_cur >= 0 and r_cur[d_cur] == 0:
        d_cur -= 1
    dv_prev = -1
    dv_cur = 0
    while d_cur >= 0 and 2 * d_cur >= n + deg + 1:
        linv = qm1 - logt[r_cur[d_cur]]
        d_rem = d_prev
        dv_next = dv_prev
        while d_rem >= d_cur:
            c = r_prev[d_rem]
            if c != 0:
                shift = d_rem - d_cur
                lf = logt[expt[logt[c] + linv]]
                for j in range(0, d_cur + 1):
                    b = r_cur[j]
                    if b != 0:
                        r_prev[shift + j] ^= expt[logt[b] + lf]
                for j in range(0, dv_cur + 1):
                    b = v_cur[j]
                    if b != 0:
                        v_prev[shift + j] ^= expt[logt[b] + lf]
                if shift + dv_cur > dv_next:
                    dv_next = shift + dv_cur
            d_rem -= 1
            while d_rem >= 0 and r_prev[d_rem] == 0:
                d_rem -= 1
            if d_rem < 0:
                break
        while dv_next >= 0 and v_prev[dv_next] == 0:
            dv_next -= 1
        tmp = r_prev
        r_prev = r_cur
        r_cur = tmp
        tmpd = d_prev
        d_prev = d_cur
        d_cur = d_rem
        tmp = v_prev
        v_prev = v_cur
        v_cur = tmp
        dv_prev = dv_cur
        dv_cur = dv_next
        if tmpd < 0:
            break
    # r_cur is the first remainder below the degree threshold; divide by the
    # matching cofactor v_cur and demand an exact quotient of degree <= deg.
    out = np.zeros(deg + 1, np.int32)
    if dv_cur < 0:
        return 0, out
    if d_cur < 0:
        return 1, out
    if d_cur - dv_cur > deg:
        return 0, out
    linv = qm1 - logt[v_cur[dv_cur]]
    dg = d_cur
    while dg >= dv_cur:
        c = r_cur[dg]
        if c != 0:
            shift = dg - dv_cur
            factor = expt[logt[c] + linv]
            out[shift] = factor
            lf = logt[factor]
            for j in range(0, dv_cur + 1):
                b = v_cur[j]
                if b != 0:
                    r_cur[shift + j] ^= expt[logt[b] + lf]
        dg -= 1
        while dg >= 0 and r_cur[dg] == 0:
            dg -= 1
    # any nonzero residue below deg(v) means the division was inexact
    ok = 1
    for j in range(0, dv_cur):
        if r_cur[j] != 0:
            ok = 0
    return ok, out


def eval_batch(spec, coeff_ints, x_ints):
    logt, expt, qm1 = _np_tables(spec)
    coeffs = np.asarray(coeff_ints if coeff_ints else [0], dtype=np.int32)
    xs = np.asarray(x_ints, dtype=np.int32)
    return _eval_batch_kernel(coeffs, xs, logt, expt, qm1)


def _cached_g0(spec, xs: np.ndarray):
    key = (spec, xs.tobytes())
    cached = _G0_CACHE.get(key)
    if cached is not None:
        _G0_CACHE.move_to_end(key)
        return cached
    logt, expt, qm1 = _np_tables(spec)
    g0 = _build_g0_kernel(xs, logt, expt, qm1)
    _G0_CACHE[key] = g0
    if len(_G0_CACHE) > _G0_CACHE_LIMIT:
        _G0_CACHE.popitem(last=False)
    return g0


def gao_decode(spec, deg, x_ints, y_ints):
    """Packed-int Gao decode; returns coefficient ints or None on failure."""
    logt, expt, qm1 = _np_tables(spec)
    xs = np.asarray(x_ints, dtype=np.int32)
    ys = np.asarray(y_ints, dtype=np.int32)
    n = xs.size
    g0 = _cached_g0(spec, xs)
    dd = _newton_dd_kernel(xs, ys, logt, expt, qm1)
    g1 = _newton_to_monomial_kernel(xs, dd, logt, expt, qm1)
    ok, coeffs = _gao_eea_kernel(g0, g1, n, deg, logt, expt, qm1)
    if not ok:
        return None
    return coeffs
