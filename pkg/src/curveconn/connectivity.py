"""Connectedness numbers by exhaustive scan of the decomposition lattice.

The connectedness number of ``D`` is ``min A.(D-A)`` over all splittings
``D = A + B`` into non-zero effective parts.  A pair ``{A, D-A}`` is
visited once, with ``A`` the smaller of the two in the enumeration order
(reverse-lexicographic: the last coordinate is the most significant).
"""

from __future__ import annotations

import itertools
import math
import operator
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import _kernels
from .checks import FAIL, PASS, Check
from .config import Decomposition, Divisor, is_subdivisor
from .intersection import intersect

INFINITY = math.inf


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int, what: str = "candidates"):
        super().__init__(
            f"enumeration needs {required} {what} but the budget allows {budget}; "
            f"rerun with --max-candidates {required} or a smaller divisor")
        self.required = required
        self.budget = budget


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class EnumerationBudget:
    max_candidates: int = 10_000_000

    def __post_init__(self):
        if self.max_candidates <= 0:
            raise ValueError("max_candidates must be positive")


DEFAULT_BUDGET = EnumerationBudget()


@dataclass(frozen=True)
class ConnectivityResult:
    divisor: Divisor
    conn: float | int
    argmin: Decomposition | None
    candidates_examined: int

    def to_dict(self) -> dict:
        return {
            "divisor": list(self.divisor.mult),
            "conn": "infinity" if self.conn == INFINITY else self.conn,
            "argmin": self.argmin.to_dict() if self.argmin else None,
            "candidates_examined": self.candidates_examined,
        }

    @classmethod
    def from_dict(cls, cfg, doc: dict) -> "ConnectivityResult":
        argmin = doc["argmin"]
        return cls(
            divisor=cfg.divisor(doc["divisor"]),
            conn=INFINITY if doc["conn"] == "infinity" else int(doc["conn"]),
            argmin=None if argmin is None else Decomposition(cfg.divisor(argmin["a"]),
                                                             cfg.divisor(argmin["b"])),
            candidates_examined=int(doc["candidates_examined"]),
        )


def box_size(d: Divisor) -> int:
    return math.prod(m + 1 for m in d.mult)


def index_of(mult, radices) -> int:
    idx, w = 0, 1
    for m, r in zip(mult, radices):
        idx += m * w
        w *= r
    return idx


def digits_of(idx: int, radices) -> tuple[int, ...]:
    out = []
    for r in radices:
        idx, m = divmod(idx, r)
        out.append(m)
    return tuple(out)


def _decomposition_count(d: Divisor, budget: EnumerationBudget) -> int:
    total = box_size(d)
    if total - 2 > 2 * budget.max_candidates:
        raise BudgetExceeded((total - 1) // 2, budget.max_candidates, "unordered decompositions")
    return (total - 1) // 2


def enumerate_decompositions(d: Divisor,
                             budget: EnumerationBudget = DEFAULT_BUDGET) -> Iterator[Decomposition]:
    """Yield each unordered splitting ``{a, d-a}`` once, ``a`` first in order."""
    half = _decomposition_count(d, budget)
    radices = [m + 1 for m in d.mult]
    cfg = d.config
    for t in range(1, half + 1):
        a = digits_of(t, radices)
        yield Decomposition(cfg.divisor(a), cfg.divisor(tuple(x - y for x, y in zip(d.mult, a))))


def _kernel_args(d: Divisor):
    cfg = d.config
    M, k, dv = cfg.matrix(), cfg.kvec(), d.array()
    _kernels.check_range(M, k, dv)
    w = np.array([sum(cfg.M[i][j] * d.mult[j] for j in range(cfg.n)) for i in range(cfg.n)],
                 dtype=np.int64)
    return M, w, dv + 1


def _pick_min_pairing(backend: str | None):
    if backend is None:
        return _kernels.min_pairing
    if backend == "numpy":
        return _kernels.min_pairing_numpy
    if backend == "numba":
        if _kernels.min_pairing_numba is None:
            raise RuntimeError("numba backend unavailable")
        return _kernels.min_pairing_numba
    raise ValueError(f"unknown backend {backend!r}")


def connectedness_number(d: Divisor, budget: EnumerationBudget = DEFAULT_BUDGET, *,
                         workers: int | None = None,
                         backend: str | None = None) -> ConnectivityResult:
    """Minimum of ``a.(d-a)`` over all decompositions, with the first minimiser.

    Returns ``conn = inf`` and no argmin when ``d`` is a single reduced
    component.  The scan may be split across threads; the reduction keeps
    the lowest index among ties, so the answer does not depend on the split.
    """
    half = _decomposition_count(d, budget)
    if half == 0:
        return ConnectivityResult(d, INFINITY, None, 0)
    kernel = _pick_min_pairing(backend)
    M, w, radices = _kernel_args(d)
    val, idx = _kernels.scan(kernel, (M, w, radices), 1, half, operator.lt, workers)
    a = digits_of(idx, radices.tolist())
    cfg = d.config
    dec = Decomposition(cfg.divisor(a), cfg.divisor(tuple(x - y for x, y in zip(d.mult, a))))
    return ConnectivityResult(d, int(val), dec, half)


@lru_cache(maxsize=1 << 16)
def _conn_value(d: Divisor, max_candidates: int):
    return connectedness_number(d, EnumerationBudget(max_candidates)).conn


def conn_value(d: Divisor, budget: EnumerationBudget = DEFAULT_BUDGET):
    """Cached connectedness number (value only)."""
    return _conn_value(d, budget.max_candidates)


def is_m_connected(d: Divisor, m: int, budget: EnumerationBudget = DEFAULT_BUDGET) -> bool:
    return conn_value(d, budget) >= m


def connectedness_bruteforce(d: Divisor) -> ConnectivityResult:
    """Reference answer from plain enumeration of all ordered splittings.

    Shares nothing with the kernel path: Python integers, ``itertools``
    order, and the canonical representative picked by comparing reversed
    tuples.
    """
    cfg = d.config
    best, best_key, count = None, None, 0
    for a in itertools.product(*(range(m + 1) for m in d.mult)):
        b = tuple(x - y for x, y in zip(d.mult, a))
        if not any(a) or not any(b):
            continue
        count += 1
        val = intersect(cfg.divisor(a), cfg.divisor(b))
        rep = min(a, b, key=lambda v: v[::-1])
        key = rep[::-1]
        if best is None or val < best or (val == best and key < best_key):
            best, best_key = val, key
    if best is None:
        return ConnectivityResult(d, INFINITY, None, 0)
    a = best_key[::-1]
    dec = Decomposition(cfg.divisor(a), cfg.divisor(tuple(x - y for x, y in zip(d.mult, a))))
    return ConnectivityResult(d, best, dec, count // 2 + count % 2)


def decomposition_table(d: Divisor, budget: EnumerationBudget = DEFAULT_BUDGET):
    """All unordered splittings as an ``(h, n)`` array of ``a`` plus their pairings."""
    half = _decomposition_count(d, budget)
    if half == 0:
        return np.zeros((0, d.config.n), dtype=np.int64), np.zeros(0, dtype=np.int64)
    M, w, radices = _kernel_args(d)
    A = _kernels.decode(np.arange(1, half + 1, dtype=np.int64), radices)
    vals = A @ w - np.einsum("ij,ij->i", A @ M, A)
    return A, vals


def split_connectivity_check(d: Divisor, m: int,
                             budget: EnumerationBudget = DEFAULT_BUDGET) -> Check:
    """Connectedness of the parts of splittings that attain ``m``.

    For ``d`` m-connected: both parts of any ``d = a + b`` with ``a.b = m``
    must be ``floor((m+1)/2)``-connected, and every part minimal (under
    ``<=``) among those attaining ``m`` must be ``floor((m+3)/2)``-connected.
    """
    if not is_m_connected(d, m, budget):
        raise PreconditionError(f"{d} is not {m}-connected")
    cfg = d.config
    A, vals = decomposition_table(d, budget)
    parts_level = (m + 1) // 2
    minimal_level = (m + 3) // 2
    attaining = set()
    for row in A[vals == m]:
        a = tuple(int(x) for x in row)
        attaining.add(a)
        attaining.add(tuple(x - y for x, y in zip(d.mult, a)))
    # splittings are visited as unordered pairs, so check parts via the set
    for a in sorted(attaining, key=lambda v: v[::-1]):
        if not is_m_connected(cfg.divisor(a), parts_level, budget):
            return Check("split_parts", FAIL,
                         f"part {a} of a splitting with a.b={m} is not {parts_level}-connected",
                         witness=list(a), values={"m": m})
    minimal = [a for a in attaining
               if not any(b != a and all(x <= y for x, y in zip(b, a)) for b in attaining)]
    for a in sorted(minimal, key=lambda v: v[::-1]):
        if not is_m_connected(cfg.divisor(a), minimal_level, budget):
            return Check("split_minimal", FAIL,
                         f"minimal part {a} attaining {m} is not {minimal_level}-connected",
                         witness=list(a), values={"m": m})
    return Check("split_connectivity", PASS,
                 f"{len(attaining)} attaining parts, {len(minimal)} minimal",
                 values={"m": m, "attaining": len(attaining), "minimal": len(minimal)})


def is_proper_subdivisor(a: Divisor, d: Divisor) -> bool:
    return is_subdivisor(a, d) and a.mult != d.mult
