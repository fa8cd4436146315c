"""Hot numeric kernels.

Each kernel has a numba ``@njit`` version and a pure-numpy version with the
same contract. The numba path is used when numba imports cleanly and the
environment variable ``QSRG_VERIFY_PURE_NUMPY`` is unset (or "0"). Both
variants stay importable as ``<name>_numba`` / ``<name>_numpy`` so tests and
the benchmark can compare them directly.
"""

from __future__ import annotations

import os

import numpy as np

# Mersenne prime 2**31 - 1: products of two residues stay below 2**62.
MODULUS = 2147483647

_FLAG = os.environ.get("QSRG_VERIFY_PURE_NUMPY", "").strip().lower()
_WANT_NUMBA = _FLAG in ("", "0", "false", "no")

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _WANT_NUMBA


# ---------------------------------------------------------------------------
# pure numpy
# ---------------------------------------------------------------------------


def is_associative_numpy(table: np.ndarray) -> bool:
    n = table.shape[0]
    # (ab)c and a(bc) for all triples; chunked over a to bound memory.
    step = max(1, (1 << 22) // max(1, n * n))
    for start in range(0, n, step):
        rows = table[start : start + step]
        left = table[rows]  # [a, b, c] -> (ab)c
        right = table[np.arange(start, start + rows.shape[0])[:, None, None], table[None, :, :]]
        if not np.array_equal(left, right):
            return False
    return True


def cayley_adjacency_numpy(table: np.ndarray, inverses: np.ndarray, mask: np.ndarray) -> np.ndarray:
    # A[u, v] = 1 iff u * v^-1 lies in the connection set
    return mask[table[:, inverses]].astype(np.uint8)


def rank_mod_p_numpy(matrix: np.ndarray, p: int = MODULUS) -> int:
    a = np.mod(np.asarray(matrix, dtype=np.int64), p)
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        f = a[r + 1 :, c].copy()
        hit = np.flatnonzero(f)
        if hit.size:
            sub = a[r + 1 :, c:]
            sub[hit] = (sub[hit] - (f[hit, None] * a[r, c:]) % p) % p
        r += 1
    return r


def common_neighbor_counts_numpy(bits: np.ndarray) -> np.ndarray:
    n = bits.shape[0]
    out = np.empty((n, n), dtype=np.int32)
    for u in range(n):
        out[u] = np.bitwise_count(bits[u] & bits).sum(axis=1, dtype=np.int32)
    return out


def int_matmul_numpy(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)


# ---------------------------------------------------------------------------
# numba
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _is_associative_nb(table):
        n = table.shape[0]
        for a in range(n):
            for b in range(n):
                ab = table[a, b]
                for c in range(n):
                    if table[ab, c] != table[a, table[b, c]]:
                        return False
        return True

    @numba.njit(cache=True)
    def _cayley_adjacency_nb(table, inverses, mask):
        n = table.shape[0]
        out = np.zeros((n, n), dtype=np.uint8)
        for u in range(n):
            for v in range(n):
                if mask[table[u, inverses[v]]]:
                    out[u, v] = 1
        return out

    @numba.njit(cache=True)
    def _powmod(base, exp, p):
        result = 1
        base = base % p
        while exp > 0:
            if exp & 1:
                result = (result * base) % p
            base = (base * base) % p
            exp >>= 1
        return result

    @numba.njit(cache=True)
    def _rank_mod_p_nb(matrix, p):
        rows, cols = matrix.shape
        a = np.empty((rows, cols), dtype=np.int64)
        for i in range(rows):
            for j in range(cols):
                x = matrix[i, j] % p
                if x < 0:
                    x += p
                a[i, j] = x
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, cols):
                    t = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = t
            inv = _powmod(a[r, c], p - 2, p)
            for j in range(c, cols):
                a[r, j] = (a[r, j] * inv) % p
            for i in range(r + 1, rows):
                f = a[i, c]
                if f != 0:
                    for j in range(c, cols):
                        x = (a[i, j] - f * a[r, j]) % p
                        if x < 0:
                            x += p
                        a[i, j] = x
            r += 1
        return r

    @numba.njit(cache=True)
    def _popcount64(x):
        x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
        x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
        x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
        return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)

    @numba.njit(cache=True)
    def _common_neighbor_counts_nb(bits):
        n, words = bits.shape
        out = np.empty((n, n), dtype=np.int32)
        for u in range(n):
            for v in range(u, n):
                s = 0
                for w in range(words):
                    s += _popcount64(bits[u, w] & bits[v, w])
                out[u, v] = s
                out[v, u] = s
        return out

    @numba.njit(cache=True)
    def _int_matmul_nb(a, b):
        n, m = a.shape
        q = b.shape[1]
        out = np.zeros((n, q), dtype=np.int64)
        for i in range(n):
            for k in range(m):
                x = a[i, k]
                if x != 0:
                    for j in range(q):
                        out[i, j] += x * b[k, j]
        return out

    def is_associative_numba(table: np.ndarray) -> bool:
        return bool(_is_associative_nb(np.ascontiguousarray(table, dtype=np.int64)))

    def cayley_adjacency_numba(table, inverses, mask) -> np.ndarray:
        return _cayley_adjacency_nb(
            np.ascontiguousarray(table, dtype=np.int64),
            np.ascontiguousarray(inverses, dtype=np.int64),
            np.ascontiguousarray(mask, dtype=np.bool_),
        )

    def rank_mod_p_numba(matrix: np.ndarray, p: int = MODULUS) -> int:
        return int(_rank_mod_p_nb(np.ascontiguousarray(matrix, dtype=np.int64), p))

    def common_neighbor_counts_numba(bits: np.ndarray) -> np.ndarray:
        return _common_neighbor_counts_nb(np.ascontiguousarray(bits, dtype=np.uint64))

    def int_matmul_numba(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return _int_matmul_nb(
            np.ascontiguousarray(a, dtype=np.int64), np.ascontiguousarray(b, dtype=np.int64)
        )


if USE_NUMBA:
    is_associative = is_associative_numba
    cayley_adjacency = cayley_adjacency_numba
    rank_mod_p = rank_mod_p_numba
    common_neighbor_counts = common_neighbor_counts_numba
    int_matmul = int_matmul_numba
else:
    is_associative = is_associative_numpy
    cayley_adjacency = cayley_adjacency_numpy
    rank_mod_p = rank_mod_p_numpy
    common_neighbor_counts = common_neighbor_counts_numpy
    int_matmul = int_matmul_numpy


def pack_rows(adjacency: np.ndarray) -> np.ndarray:
    """Pack a 0/1 matrix into little-endian uint64 bit rows."""
    n = adjacency.shape[0]
    packed = np.packbits(np.asarray(adjacency, dtype=np.uint8), axis=1, bitorder="little")
    pad = (-packed.shape[1]) % 8
    if pad or packed.shape[1] == 0:
        packed = np.concatenate([packed, np.zeros((n, pad or 8), dtype=np.uint8)], axis=1)
    return np.ascontiguousarray(packed).view(np.uint64)


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
