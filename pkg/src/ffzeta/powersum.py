"""Vectorized sums over all monic polynomials of a fixed degree.

Each batch holds monic polynomials as rows of a code matrix.  Powers n^j are
built from the base-p digits of j: small powers n^e (e < p) by row-wise
convolution, then each factor (n^(d_i))^(p^i) is a Frobenius spread, so only
sparse shift-adds are needed.  The last factor is folded into the sum over the
batch as a matrix product.
"""

from __future__ import annotations

import numpy as np

from .field import FqField

CHUNK = 1024


def base_digits(n: int, b: int) -> list[int]:
    out = []
    while n:
        n, d = divmod(n, b)
        out.append(d)
    return out


def digit_sum(n: int, b: int) -> int:
    return sum(base_digits(n, b))


def monic_rows(q: int, d: int, start: int, stop: int) -> np.ndarray:
    """Rows for monic polynomials number start..stop-1 of degree d (little-endian codes)."""
    idx = np.arange(start, stop, dtype=np.int64)
    rows = np.empty((len(idx), d + 1), dtype=np.int64)
    for k in range(d):
        rows[:, k] = idx % q
        idx //= q
    rows[:, d] = 1
    return rows


def _conv_rows(field: FqField, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    B, na = a.shape
    nb = b.shape[1]
    out = np.zeros((B, na + nb - 1), dtype=np.int64)
    if field.m == 1:
        for k in range(nb):
            out[:, k : k + na] += a * b[:, k : k + 1]
        return out % field.p
    for k in range(nb):
        out[:, k : k + na] = field.add(out[:, k : k + na], field.mul(a, b[:, k : k + 1]))
    return out


def _spread_rows(field: FqField, acc: np.ndarray, small: np.ndarray, stride: int, frob: int) -> np.ndarray:
    """acc * small^(p^frob) where small is given unspread; stride = p^frob."""
    B, na = acc.shape
    ns = small.shape[1]
    width = na + (ns - 1) * stride
    if field.m == 1:
        p = field.p
        bound = ns * (p - 1) ** 2
        dt = np.int16 if bound < 2**15 else (np.int32 if bound < 2**31 else np.int64)
        out = np.zeros((B, width), dtype=dt)
        a = acc.astype(dt)
        s = small.astype(dt)
        for k in range(ns):
            out[:, k * stride : k * stride + na] += a * s[:, k : k + 1]
        return (out % p).astype(np.int16 if p < 2**15 else np.int64)
    sm = field.frob(small, frob)
    out = np.zeros((B, width), dtype=np.int64)
    for k in range(ns):
        sl = slice(k * stride, k * stride + na)
        out[:, sl] = field.add(out[:, sl], field.mul(acc.astype(np.int64), sm[:, k : k + 1]))
    return out


def _small_powers(field: FqField, rows: np.ndarray, need: set[int]) -> dict[int, np.ndarray]:
    pw = {0: np.ones((rows.shape[0], 1), dtype=np.int64), 1: rows}
    cur = rows
    for e in range(2, max(need | {1}) + 1):
        cur = _conv_rows(field, cur, rows)
        pw[e] = cur
    return pw


def sum_of_powers(field: FqField, d: int, j: int) -> np.ndarray:
    """Coefficients of sum over monic n of degree d of n^j (length d*j + 1, little-endian)."""
    q, p = field.q, field.p
    total = np.zeros(d * j + 1, dtype=np.int64)
    count = q**d
    if j == 0:
        total[0] = field.from_int(count % p)
        return total
    ds = base_digits(j, p)
    top = len(ds) - 1
    for start in range(0, count, CHUNK):
        rows = monic_rows(q, d, start, min(count, start + CHUNK))
        pw = _small_powers(field, rows, {x for x in ds if x})
        acc = np.ones((rows.shape[0], 1), dtype=np.int64)
        for i in range(top):
            if ds[i]:
                acc = _spread_rows(field, acc, pw[ds[i]], p**i, i)
        last = pw[ds[top]]
        stride = p**top
        if field.m == 1:
            # fold the top digit factor into the batch sum: G[k] = sum_b last[b,k] * acc[b]
            G = (last.astype(np.float64).T @ acc.astype(np.float64)).astype(np.int64) % p
            for k in range(G.shape[0]):
                total[k * stride : k * stride + G.shape[1]] += G[k]
            total %= p
        else:
            lastf = field.frob(last, top)
            acc = acc.astype(np.int64)
            for k in range(lastf.shape[1]):
                part = field.sum(field.mul(acc, lastf[:, k : k + 1]), axis=0)
                sl = slice(k * stride, k * stride + acc.shape[1])
                total[sl] = field.add(total[sl], part)
    return total


# ---------------------------------------------------------------------------
# truncated 1-unit series, one per row


def _mul_trunc_rows(field: FqField, a: np.ndarray, b: np.ndarray, Q: int) -> np.ndarray:
    out = np.zeros((a.shape[0], Q), dtype=np.int64)
    if field.m == 1:
        for k in range(Q):
            if k >= a.shape[1]:
                break
            out[:, k:] += a[:, k : k + 1] * b[:, : Q - k]
            if k % 64 == 63:
                out %= field.p
        return out % field.p
    for k in range(min(Q, a.shape[1])):
        out[:, k:] = field.add(out[:, k:], field.mul(a[:, k : k + 1], b[:, : Q - k]))
    return out


def _spread_trunc(field: FqField, a: np.ndarray, i: int, Q: int) -> np.ndarray:
    step = field.p**i
    out = np.zeros_like(a)
    n = (Q - 1) // step + 1
    out[:, : (n - 1) * step + 1 : step] = field.frob(a[:, :n], i) if field.m > 1 else a[:, :n]
    return out


def unit_rows(rows: np.ndarray, Q: int) -> np.ndarray:
    """<n> = n / T^deg n as a power series in 1/T, truncated to Q terms, one per row."""
    d = rows.shape[1] - 1
    out = np.zeros((rows.shape[0], Q), dtype=np.int64)
    w = min(Q, d + 1)
    out[:, :w] = rows[:, ::-1][:, :w]
    return out


def pow_unit_rows(field: FqField, U: np.ndarray, e_digits: list[int], Q: int) -> np.ndarray:
    """U^e for 1-unit rows U and an exponent given by its base-p digits."""
    B = U.shape[0]
    out = np.zeros((B, Q), dtype=np.int64)
    out[:, 0] = 1
    need = {x for x in e_digits if x}
    if not need:
        return out
    small = {1: U}
    cur = U
    for e in range(2, max(need) + 1):
        cur = _mul_trunc_rows(field, cur, U, Q)
        small[e] = cur
    for i, dgt in enumerate(e_digits):
        if dgt and field.p**i < Q:
            out = _mul_trunc_rows(field, out, _spread_trunc(field, small[dgt], i, Q), Q)
    return out


def sum_unit_powers(field: FqField, d: int, e_digits: list[int], Q: int) -> np.ndarray:
    """Sum over monic n of degree d of <n>^e mod pi^Q (length Q)."""
    q = field.q
    total = np.zeros(Q, dtype=np.int64)
    if Q <= 0:
        return total
    if d >= Q:
        # each residue class mod pi^Q is hit q^(d-Q+1) times
        return total
    count = q**d
    for start in range(0, count, CHUNK):
        rows = monic_rows(q, d, start, min(count, start + CHUNK))
        P = pow_unit_rows(field, unit_rows(rows, Q), e_digits, Q)
        total = field.add(total, field.sum(P, axis=0))
    return total
