"""Inner loops over the box ``0 <= a <= d`` of multiplicity vectors.

Vectors are indexed in mixed radix with the *first* component as the least
significant digit, radices ``d_i + 1``.  In this order the complement
``d - a`` of index ``t`` has index ``N - 1 - t``, which is what lets the
decomposition scan stop at the midpoint.

Two interchangeable implementations exist: numba ``@njit`` loops that update
``M a`` incrementally, and a chunked pure-numpy path.  Set
``CURVECONN_DISABLE_NUMBA=1`` (or run without numba installed) to use numpy.
Both return the first index attaining the optimum, so results are identical.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

INT64_SAFE = 2 ** 62
NUMPY_CHUNK = 1 << 15


def _env_disabled() -> bool:
    return os.environ.get("CURVECONN_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}


try:
    if _env_disabled():
        raise ImportError("disabled by CURVECONN_DISABLE_NUMBA")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


class KernelOverflowError(OverflowError):
    """The int64 kernels cannot represent the values of this instance exactly."""


def check_range(M: np.ndarray, k: np.ndarray, d: np.ndarray) -> None:
    """Raise unless every intermediate of the kernels fits in int64."""
    s = int(sum(int(x) for x in d))
    mmax = max((abs(int(x)) for x in M.flat), default=0)
    kmax = max((abs(int(x)) for x in k.flat), default=0)
    bound = 4 * (mmax * s * s + kmax * s) + 4
    count = 1
    for x in d:
        count *= int(x) + 1
    if bound >= INT64_SAFE or count >= INT64_SAFE:
        raise KernelOverflowError(
            f"values up to ~{bound} exceed the int64 kernel range; instance is too large")


# --- pure numpy -----------------------------------------------------------

def decode(idx: np.ndarray, radices: np.ndarray) -> np.ndarray:
    """Mixed-radix digits, first component least significant."""
    rest = np.array(idx, dtype=np.int64, copy=True)
    out = np.empty((rest.shape[0], radices.shape[0]), dtype=np.int64)
    for i in range(radices.shape[0]):
        out[:, i] = rest % radices[i]
        rest //= radices[i]
    return out


def min_pairing_numpy(M, w, radices, lo, hi):
    """Minimum of ``a.w - a.M.a`` over indices ``lo..hi`` inclusive."""
    best, best_idx = np.iinfo(np.int64).max, -1
    for start in range(lo, hi + 1, NUMPY_CHUNK):
        stop = min(start + NUMPY_CHUNK, hi + 1)
        A = decode(np.arange(start, stop, dtype=np.int64), radices)
        vals = A @ w - np.einsum("ij,ij->i", A @ M, A)
        j = int(np.argmin(vals))
        if vals[j] < best:
            best, best_idx = int(vals[j]), start + j
    return best, best_idx


def max_genus_numpy(M, k, radices, lo, hi):
    """Maximum of ``a.M.a + k.a`` over indices ``lo..hi`` inclusive."""
    best, best_idx = np.iinfo(np.int64).min, -1
    for start in range(lo, hi + 1, NUMPY_CHUNK):
        stop = min(start + NUMPY_CHUNK, hi + 1)
        A = decode(np.arange(start, stop, dtype=np.int64), radices)
        vals = np.einsum("ij,ij->i", A @ M, A) + A @ k
        j = int(np.argmax(vals))
        if vals[j] > best:
            best, best_idx = int(vals[j]), start + j
    return best, best_idx


# --- numba ----------------------------------------------------------------

def _min_pairing_loop(M, w, radices, lo, hi):
    n = radices.shape[0]
    a = np.zeros(n, dtype=np.int64)
    rest = lo
    for i in range(n):
        a[i] = rest % radices[i]
        rest //= radices[i]
    v = np.zeros(n, dtype=np.int64)
    for r in range(n):
        for c in range(n):
            v[r] += M[r, c] * a[c]
    q = 0
    lin = 0
    for i in range(n):
        q += a[i] * v[i]
        lin += a[i] * w[i]
    best = lin - q
    best_idx = lo
    for t in range(lo + 1, hi + 1):
        j = 0
        # carry: digits at their maximum drop back to zero
        while a[j] == radices[j] - 1:
            dj = a[j]
            q += -2 * dj * v[j] + dj * dj * M[j, j]
            lin -= dj * w[j]
            for r in range(n):
                v[r] -= dj * M[r, j]
            a[j] = 0
            j += 1
        q += 2 * v[j] + M[j, j]
        lin += w[j]
        for r in range(n):
            v[r] += M[r, j]
        a[j] += 1
        val = lin - q
        if val < best:
            best = val
            best_idx = t
    return best, best_idx


def _max_genus_loop(M, k, radices, lo, hi):
    n = radices.shape[0]
    a = np.zeros(n, dtype=np.int64)
    rest = lo
    for i in range(n):
        a[i] = rest % radices[i]
        rest //= radices[i]
    v = np.zeros(n, dtype=np.int64)
    for r in range(n):
        for c in range(n):
            v[r] += M[r, c] * a[c]
    q = 0
    kl = 0
    for i in range(n):
        q += a[i] * v[i]
        kl += a[i] * k[i]
    best = q + kl
    best_idx = lo
    for t in range(lo + 1, hi + 1):
        j = 0
        while a[j] == radices[j] - 1:
            dj = a[j]
            q += -2 * dj * v[j] + dj * dj * M[j, j]
            kl -= dj * k[j]
            for r in range(n):
                v[r] -= dj * M[r, j]
            a[j] = 0
            j += 1
        q += 2 * v[j] + M[j, j]
        kl += k[j]
        for r in range(n):
            v[r] += M[r, j]
        a[j] += 1
        val = q + kl
        if val > best:
            best = val
            best_idx = t
    return best, best_idx


if HAVE_NUMBA:
    min_pairing_numba = njit(cache=True, nogil=True)(_min_pairing_loop)
    max_genus_numba = njit(cache=True, nogil=True)(_max_genus_loop)
    min_pairing = min_pairing_numba
    max_genus = max_genus_numba
    BACKEND = "numba"
else:
    min_pairing_numba = max_genus_numba = None
    min_pairing = min_pairing_numpy
    max_genus = max_genus_numpy
    BACKEND = "numpy"


# --- range splitting ------------------------------------------------------

PARALLEL_THRESHOLD = 1 << 18


def default_workers() -> int:
    return max(1, min(8, os.cpu_count() or 1))


def split_range(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    total = hi - lo + 1
    parts = max(1, min(parts, total))
    step, extra = divmod(total, parts)
    out, start = [], lo
    for p in range(parts):
        size = step + (1 if p < extra else 0)
        out.append((start, start + size - 1))
        start += size
    return out


def reduce_first(results, better) -> tuple[int, int]:
    """Combine per-range ``(value, index)`` pairs; ties go to the lower index.

    Order-independent, so any execution schedule gives the same answer.
    """
    best = None
    for val, idx in results:
        if idx < 0:
            continue
        if best is None or better(val, best[0]) or (val == best[0] and idx < best[1]):
            best = (val, idx)
    return best


def scan(kernel, args, lo: int, hi: int, better, workers: int | None = None):
    """Run ``kernel(*args, lo, hi)`` over ``lo..hi``, split across threads when large."""
    if hi < lo:
        return None
    workers = default_workers() if workers is None else workers
    if workers <= 1 or hi - lo + 1 < PARALLEL_THRESHOLD:
        return reduce_first([kernel(*args, lo, hi)], better)
    ranges = split_range(lo, hi, workers * 4)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda r: kernel(*args, r[0], r[1]), ranges))
    return reduce_first(results, better)
